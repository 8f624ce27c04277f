#pragma once

#include <cstdint>
#include <random>

namespace seihrd {

using Rng = std::mt19937_64;

/// Engine for Monte Carlo path `path_index`. Depends only on the pair, so a path
/// draws the same numbers whatever thread or order it runs in.
inline Rng make_path_rng(std::uint64_t master_seed, std::uint64_t path_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(path_index), static_cast<std::uint32_t>(path_index >> 32)};
    return Rng(seq);
}

}  // namespace seihrd
