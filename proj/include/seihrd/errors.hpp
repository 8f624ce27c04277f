#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace seihrd {

/// Invalid or inconsistent model/CIR parameter.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or incomplete configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The ODE solver could not advance (step size underflow or non-finite state).
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double time,
                     std::optional<std::size_t> path = std::nullopt)
        : std::runtime_error(what), time_(time), path_(path) {}

    double time() const noexcept { return time_; }
    std::optional<std::size_t> path_index() const noexcept { return path_; }

private:
    double time_;
    std::optional<std::size_t> path_;
};

}  // namespace seihrd
