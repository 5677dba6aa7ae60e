#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "wnoc/config.hpp"
#include "wnoc/mac_brs.hpp"
#include "wnoc/mac_token.hpp"

namespace wnoc {

struct RunResult {
  std::uint64_t generated_total = 0;
  std::uint64_t delivered_total = 0;
  std::uint64_t generated_in_window = 0;
  std::uint64_t delivered_in_window = 0;
  std::uint64_t backlog = 0;  // queued (including in flight) at run end
  Cycle warmup_cycles = 0;
  Cycle measure_cycles = 0;
  std::uint64_t seed = 0;

  // Latency in cycles, generation to end of last transmission cycle, for
  // packets generated inside the measurement window and delivered by run
  // end. Order is deterministic.
  std::vector<std::uint32_t> latency_samples;

  std::vector<double> channel_utilization;     // fraction of measured cycles busy
  std::vector<double> channel_single_fraction; // busy with exactly one transmitter

  std::uint64_t collisions = 0;        // aborted transmissions (window)
  std::uint64_t collision_cycles = 0;  // channel-cycles lost to collisions (window)
  std::uint64_t busy_senses = 0;
  std::uint64_t backoff_draws = 0;
  std::uint32_t max_backoff_exponent = 0;
  std::uint64_t token_hops = 0;
  std::uint64_t token_jumps = 0;
  std::uint64_t token_idle_visits = 0;

  double throughput() const {
    return measure_cycles == 0
               ? 0.0
               : static_cast<double>(delivered_in_window) /
                     static_cast<double>(measure_cycles);
  }
};

struct RunOptions {
  std::ostream* phy_trace = nullptr;      // "cycle channel state nodes..."
  std::ostream* traffic_trace = nullptr;  // "cycle source destination"
  // Replaces the synthetic generators; must be sorted by cycle.
  const std::vector<std::pair<Cycle, NodeId>>* replay = nullptr;
};

// Executes one simulation. Strictly single threaded and a pure function of
// the config, so callers may run many configs concurrently.
RunResult run(const SimConfig& cfg, const RunOptions& opt = {});

}  // namespace wnoc
