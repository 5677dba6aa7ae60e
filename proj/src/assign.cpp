#include "wnoc/assign.hpp"

#include <algorithm>
#include <numeric>

namespace wnoc {

std::vector<std::uint32_t> uniform_static(std::uint32_t n_nodes, std::uint32_t n_groups) {
  if (n_groups == 0 || n_groups > n_nodes)
    throw ConfigError("n_channels: need 1 <= n_channels <= n_nodes");
  const std::uint32_t q = n_nodes / n_groups;
  const std::uint32_t r = n_nodes % n_groups;
  std::vector<std::uint32_t> map(n_nodes);
  const std::uint32_t fat_span = r * (q + 1);  // nodes covered by the larger blocks
  for (std::uint32_t i = 0; i < n_nodes; ++i)
    map[i] = (i < fat_span) ? i / (q + 1) : r + (i - fat_span) / q;
  return map;
}

std::vector<std::uint32_t> greedy_balanced(std::span<const double> loads,
                                           std::uint32_t n_groups) {
  const auto n = static_cast<std::uint32_t>(loads.size());
  if (n_groups == 0 || n_groups > n)
    throw ConfigError("n_channels: need 1 <= n_channels <= n_nodes");
  bool all_zero = std::all_of(loads.begin(), loads.end(), [](double w) { return w == 0.0; });
  if (all_zero) return uniform_static(n, n_groups);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return loads[a] > loads[b]; });

  std::vector<std::uint32_t> map(n, 0);
  std::vector<double> bin(n_groups, 0.0);
  for (std::uint32_t node : order) {
    std::uint32_t best = 0;
    for (std::uint32_t g = 1; g < n_groups; ++g)
      if (bin[g] < bin[best]) best = g;
    map[node] = best;
    bin[best] += loads[node];
  }
  return map;
}

std::vector<double> group_loads(std::span<const double> loads,
                                std::span<const std::uint32_t> groups,
                                std::uint32_t n_groups) {
  std::vector<double> bin(n_groups, 0.0);
  for (std::size_t i = 0; i < loads.size(); ++i) bin[groups[i]] += loads[i];
  return bin;
}

ChannelId random_channel(Rng& rng, std::uint32_t n_channels) {
  return static_cast<ChannelId>(rng.uniform_int(0, n_channels - 1));
}

}  // namespace wnoc
