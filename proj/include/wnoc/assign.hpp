#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wnoc/config.hpp"
#include "wnoc/rng.hpp"

namespace wnoc {

// Contiguous blocks, balanced so block sizes differ by at most one; the
// first (n_nodes % n_groups) blocks take the extra member.
std::vector<std::uint32_t> uniform_static(std::uint32_t n_nodes, std::uint32_t n_groups);

// Longest-processing-time greedy: nodes sorted by load descending (ties by
// lower node index), each assigned to the currently least-loaded group (ties
// by lower group index). An all-zero load vector degrades to uniform_static.
std::vector<std::uint32_t> greedy_balanced(std::span<const double> loads,
                                           std::uint32_t n_groups);

// Per-group load sums for a node->group map.
std::vector<double> group_loads(std::span<const double> loads,
                                std::span<const std::uint32_t> groups,
                                std::uint32_t n_groups);

// Fresh uniform draw; used per transmission attempt.
ChannelId random_channel(Rng& rng, std::uint32_t n_channels);

}  // namespace wnoc
