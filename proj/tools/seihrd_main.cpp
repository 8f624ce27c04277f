#include <iostream>

#include "seihrd/cli.hpp"

int main(int argc, char** argv) { return seihrd::run_cli(argc, argv, std::cout, std::cerr); }
