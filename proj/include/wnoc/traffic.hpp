#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wnoc/config.hpp"
#include "wnoc/rng.hpp"

namespace wnoc {

inline constexpr Cycle kNever = std::numeric_limits<Cycle>::max();

// Gaussian kernel over circular node-index distance to the hotspot,
// normalized to sum 1. Large sigma degrades to uniform, small sigma
// concentrates everything on the hotspot.
std::vector<double> spatial_weights(std::uint32_t n_nodes, double sigma,
                                    std::uint32_t hotspot);

// Per-node packet arrival stream, at most one packet per cycle.
//
//  hurst == 0.5  memoryless: Bernoulli(rate) per cycle, generated with
//                geometric gap draws (exactly equivalent, O(arrivals)).
//  hurst  > 0.5  Pareto ON/OFF: shape alpha = 3 - 2H for both period
//                distributions, ON minimum 4 cycles, one packet per ON
//                cycle; the OFF minimum is set so the long-run mean rate
//                equals `rate` via E[period] = alpha * x_m / (alpha - 1).
class ArrivalProcess {
 public:
  ArrivalProcess() = default;
  // rate in packets/cycle, must be < 1 (a node cannot exceed one per cycle).
  ArrivalProcess(double rate, double hurst, Rng rng);

  // True if a packet arrives at cycle t. Call once per cycle with
  // monotonically increasing t.
  bool poll(Cycle t);

  double alpha() const { return alpha_; }
  double on_min() const { return on_min_; }
  double off_min() const { return off_min_; }

 private:
  void roll_period();
  double pareto(double xm);

  Rng rng_;
  double rate_ = 0.0;
  double alpha_ = 0.0;
  double on_min_ = 0.0;
  double off_min_ = 0.0;
  bool bursty_ = false;
  // Memoryless state: next arrival cycle.
  Cycle next_ = kNever;
  // ON/OFF state: current ON interval [on_start_, on_end_), followed by an
  // OFF period ending at period_end_.
  double on_start_ = 0.0;
  double on_end_ = 0.0;
  double period_end_ = 0.0;
};

// Aggregate packets-per-cycle series produced by the per-node generators of
// `cfg` (no MAC involved). Used by the burstiness self-check tooling.
std::vector<double> injection_series(const SimConfig& cfg, Cycle cycles);

// Rescaled-range (R/S) slope over dyadic window sizes. Requires
// series.size() >= 2^14 and a non-constant series; throws ConfigError
// otherwise. Windows with degenerate blocks are skipped.
double estimate_hurst(std::span<const double> series);

}  // namespace wnoc
