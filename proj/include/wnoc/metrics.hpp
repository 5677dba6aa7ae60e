#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wnoc/config.hpp"
#include "wnoc/engine.hpp"

namespace wnoc {

struct BoxStats {
  std::size_t n = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;   // most extreme samples within 1.5*IQR of the box
  double whisker_high = 0.0;
  double p99 = 0.0;
  std::size_t outliers = 0;   // samples beyond the whiskers
};

// Quartiles use linear interpolation between order statistics (the common
// spreadsheet/numpy default). Throws ConfigError on an empty sample set.
BoxStats box_stats(std::vector<double> samples);

struct SweepPoint {
  double offered_load = 0.0;
  double delivered_throughput = 0.0;
  BoxStats latency;  // n == 0 when nothing was delivered
  std::uint64_t collisions = 0;
  std::uint64_t token_jumps = 0;
  std::uint64_t backlog = 0;
  std::uint64_t seed = 0;
};

// Offered-load grid for saturation sweeps: fractions of the channel-capacity
// bound, ending in overload. Points that would push a single node past one
// packet/cycle (possible under extreme hotspot concentration) are dropped.
std::vector<double> default_load_grid(const SimConfig& cfg);

// Independent-run batch executors. Both produce identical results in
// identical order; the parallel one fans runs out with OpenMP when
// available. workers <= 0 picks the OpenMP default.
std::vector<RunResult> run_batch_serial(std::span<const SimConfig> cfgs);
std::vector<RunResult> run_batch_parallel(std::span<const SimConfig> cfgs, int workers);

// One run per load; run seeds are derived from cfg.seed and the point index.
std::vector<SweepPoint> saturation_sweep(const SimConfig& cfg,
                                         std::span<const double> loads, int workers);

double saturation_throughput(std::span<const SweepPoint> points);

// Mean delivered latency at a near-zero aggregate load (0.01 packets/cycle).
double zero_load_latency(const SimConfig& cfg);

// Fixed column schema shared by every sweep CSV.
extern const char* const kCsvHeader;
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const SimConfig& cfg, const SweepPoint& p);

SweepPoint sweep_point_from_run(const SimConfig& cfg, const RunResult& run);

}  // namespace wnoc
