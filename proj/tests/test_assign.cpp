#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "wnoc/assign.hpp"
#include "wnoc/rng.hpp"

using namespace wnoc;

namespace {

std::vector<double> group_totals(const std::vector<double>& loads,
                                 const std::vector<std::uint32_t>& map,
                                 std::uint32_t n_groups) {
  std::vector<double> tot(n_groups, 0.0);
  for (std::size_t i = 0; i < loads.size(); ++i) tot[map[i]] += loads[i];
  return tot;
}

// Exact minimal max-group load over all partitions (exponential; small n only).
double brute_force_optimum(const std::vector<double>& loads, std::uint32_t n_groups) {
  const std::size_t n = loads.size();
  std::vector<double> tot(n_groups, 0.0);
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, std::size_t i) -> void {
    double cur = *std::max_element(tot.begin(), tot.end());
    if (cur >= best) return;  // prune
    if (i == n) {
      best = cur;
      return;
    }
    for (std::uint32_t g = 0; g < n_groups; ++g) {
      tot[g] += loads[i];
      self(self, i + 1);
      tot[g] -= loads[i];
      if (tot[g] == 0.0) break;  // empty groups are interchangeable
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace

TEST_CASE("uniform blocks split node ranges contiguously") {
  const auto map16 = uniform_static(16, 4);
  CHECK(map16[0] == 0);
  CHECK(map16[3] == 0);
  CHECK(map16[4] == 1);
  CHECK(map16[5] == 1);
  CHECK(map16[7] == 1);
  CHECK(map16[8] == 2);
  CHECK(map16[12] == 3);
  CHECK(map16[15] == 3);

  // identity when groups == nodes
  const auto map4 = uniform_static(4, 4);
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(map4[i] == i);

  // remainder spread over the leading blocks: sizes 3,3,2,2
  const auto map10 = uniform_static(10, 4);
  std::map<std::uint32_t, int> sizes;
  for (auto g : map10) sizes[g]++;
  CHECK(sizes[0] == 3);
  CHECK(sizes[1] == 3);
  CHECK(sizes[2] == 2);
  CHECK(sizes[3] == 2);
  CHECK(std::is_sorted(map10.begin(), map10.end()));
}

TEST_CASE("greedy balance splits the worked load vector evenly") {
  const std::vector<double> loads = {5 / 16.0, 4 / 16.0, 3 / 16.0,
                                     2 / 16.0, 1 / 16.0, 1 / 16.0};
  const auto map = greedy_balanced(loads, 2);
  const auto tot = group_totals(loads, map, 2);
  CHECK(tot[0] == doctest::Approx(8 / 16.0));
  CHECK(tot[1] == doctest::Approx(8 / 16.0));
  // the two heaviest pairs that must not share a group
  CHECK(map[0] == map[3]);  // 5 with 2
  CHECK(map[1] == map[2]);  // 4 with 3
  CHECK(map[0] != map[1]);
  // optimal split: uniform halves would give 12/16 vs 4/16
  const auto uni = uniform_static(6, 2);
  const auto uni_tot = group_totals(loads, uni, 2);
  const double uni_max = std::max(uni_tot[0], uni_tot[1]);
  CHECK(uni_max > 8 / 16.0);
  CHECK(brute_force_optimum(loads, 2) == doctest::Approx(8 / 16.0));
}

TEST_CASE("greedy with equal loads matches uniform split sizes") {
  const std::vector<double> loads(16, 1.0 / 16.0);
  const auto map = greedy_balanced(loads, 2);
  std::map<std::uint32_t, int> sizes;
  for (auto g : map) sizes[g]++;
  CHECK(sizes[0] == 8);
  CHECK(sizes[1] == 8);
}

TEST_CASE("single group and all-zero fallbacks") {
  const std::vector<double> loads = {0.4, 0.1, 0.5};
  const auto one = greedy_balanced(loads, 1);
  CHECK(std::all_of(one.begin(), one.end(), [](auto g) { return g == 0; }));

  const std::vector<double> zero(8, 0.0);
  CHECK(greedy_balanced(zero, 4) == uniform_static(8, 4));
}

TEST_CASE("permuting equal-load nodes preserves the group-load multiset") {
  std::vector<double> loads = {0.3, 0.2, 0.2, 0.1, 0.1, 0.1};
  auto tot_a = group_totals(loads, greedy_balanced(loads, 3), 3);
  std::swap(loads[1], loads[2]);
  std::swap(loads[3], loads[5]);
  auto tot_b = group_totals(loads, greedy_balanced(loads, 3), 3);
  std::sort(tot_a.begin(), tot_a.end());
  std::sort(tot_b.begin(), tot_b.end());
  for (std::size_t i = 0; i < 3; ++i) CHECK(tot_a[i] == doctest::Approx(tot_b[i]));
}

TEST_CASE("greedy stays within the LPT bound of the exact optimum") {
  Rng rng(99, StreamPurpose::SweepRun, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.uniform_int(0, 7));
    const std::uint32_t nc = 2 + static_cast<std::uint32_t>(rng.uniform_int(0, 1));
    std::vector<double> loads(n);
    for (auto& x : loads) x = rng.next_double();
    const auto map = greedy_balanced(loads, nc);
    const auto tot = group_totals(loads, map, nc);
    const double greedy_max = *std::max_element(tot.begin(), tot.end());
    const double opt = brute_force_optimum(loads, nc);
    const double bound = (4.0 / 3.0 - 1.0 / (3.0 * nc)) * opt;
    CHECK(greedy_max <= bound * (1 + 1e-12));
  }
}

TEST_CASE("random channel draws are uniform and reproducible") {
  Rng always(1, StreamPurpose::BrsChannel, 0);
  for (int i = 0; i < 100; ++i) CHECK(random_channel(always, 1) == 0);

  Rng rng(1, StreamPurpose::BrsChannel, 7);
  std::vector<std::uint64_t> counts(4, 0);
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) counts[random_channel(rng, 4)]++;
  for (auto c : counts)
    CHECK(static_cast<double>(c) / draws == doctest::Approx(0.25).epsilon(0.02));

  Rng a(5, StreamPurpose::BrsChannel, 3);
  Rng b(5, StreamPurpose::BrsChannel, 3);
  for (int i = 0; i < 50; ++i) CHECK(random_channel(a, 4) == random_channel(b, 4));
}
