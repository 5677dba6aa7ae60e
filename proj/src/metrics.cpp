#include "wnoc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#include "wnoc/rng.hpp"
#include "wnoc/traffic.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace wnoc {

namespace {

double quantile_sorted(const std::vector<double>& x, double p) {
  const double h = static_cast<double>(x.size() - 1) * p;
  const auto i = static_cast<std::size_t>(h);
  if (i + 1 >= x.size()) return x.back();
  return x[i] + (h - static_cast<double>(i)) * (x[i + 1] - x[i]);
}

}  // namespace

BoxStats box_stats(std::vector<double> samples) {
  if (samples.empty()) throw ConfigError("box_stats: empty sample set");
  std::sort(samples.begin(), samples.end());
  BoxStats s;
  s.n = samples.size();
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  s.min = samples.front();
  s.max = samples.back();
  s.q1 = quantile_sorted(samples, 0.25);
  s.median = quantile_sorted(samples, 0.50);
  s.q3 = quantile_sorted(samples, 0.75);
  s.p99 = quantile_sorted(samples, 0.99);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  // Whiskers sit on the most extreme samples still inside the fences.
  s.whisker_low = s.q1;
  s.whisker_high = s.q3;
  for (double v : samples)
    if (v >= lo_fence) {
      s.whisker_low = v;
      break;
    }
  for (auto it = samples.rbegin(); it != samples.rend(); ++it)
    if (*it <= hi_fence) {
      s.whisker_high = *it;
      break;
    }
  for (double v : samples)
    if (v < s.whisker_low || v > s.whisker_high) ++s.outliers;
  return s;
}

std::vector<double> default_load_grid(const SimConfig& cfg) {
  static constexpr double kFractions[] = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6,
                                          0.7,  0.8, 0.9, 1.0, 1.2, 1.5};
  const double cap_bound = cfg.max_throughput();
  // A single node cannot inject more than one packet per cycle, so extreme
  // hotspot profiles bound the reachable aggregate load.
  const std::vector<double> w = spatial_weights(cfg.n_nodes, cfg.sigma, cfg.hotspot_node);
  const double reachable = 0.999 / *std::max_element(w.begin(), w.end());
  std::vector<double> grid;
  for (double f : kFractions) {
    const double load = f * cap_bound;
    if (load < reachable) grid.push_back(load);
  }
  if (grid.empty()) grid.push_back(reachable * 0.5);
  return grid;
}

std::vector<RunResult> run_batch_serial(std::span<const SimConfig> cfgs) {
  std::vector<RunResult> out(cfgs.size());
  for (std::size_t i = 0; i < cfgs.size(); ++i) out[i] = run(cfgs[i]);
  return out;
}

std::vector<RunResult> run_batch_parallel(std::span<const SimConfig> cfgs, int workers) {
#if defined(_OPENMP)
  std::vector<RunResult> out(cfgs.size());
  std::vector<std::exception_ptr> errors(cfgs.size());
  const auto count = static_cast<std::int64_t>(cfgs.size());
  if (workers > 0) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = run(cfgs[static_cast<std::size_t>(i)]);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = run(cfgs[static_cast<std::size_t>(i)]);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
#else
  (void)workers;
  return run_batch_serial(cfgs);
#endif
}

std::vector<SweepPoint> saturation_sweep(const SimConfig& cfg,
                                         std::span<const double> loads, int workers) {
  if (loads.empty()) throw ConfigError("sweep: empty load grid");
  for (std::size_t i = 1; i < loads.size(); ++i)
    if (loads[i] <= loads[i - 1]) throw ConfigError("sweep: load grid must be increasing");
  std::vector<SimConfig> cfgs(loads.size(), cfg);
  for (std::size_t i = 0; i < loads.size(); ++i) {
    cfgs[i].offered_load = loads[i];
    cfgs[i].seed = derive_key(cfg.seed, StreamPurpose::SweepRun, i);
  }
  const std::vector<RunResult> runs = run_batch_parallel(cfgs, workers);
  std::vector<SweepPoint> points(loads.size());
  for (std::size_t i = 0; i < loads.size(); ++i)
    points[i] = sweep_point_from_run(cfgs[i], runs[i]);
  return points;
}

double saturation_throughput(std::span<const SweepPoint> points) {
  double best = 0.0;
  for (const SweepPoint& p : points) best = std::max(best, p.delivered_throughput);
  return best;
}

double zero_load_latency(const SimConfig& cfg) {
  SimConfig c = cfg;
  c.offered_load = 0.01;
  const RunResult r = run(c);
  std::vector<double> lat(r.latency_samples.begin(), r.latency_samples.end());
  return box_stats(std::move(lat)).mean;
}

SweepPoint sweep_point_from_run(const SimConfig& cfg, const RunResult& r) {
  SweepPoint p;
  p.offered_load = cfg.offered_load;
  p.delivered_throughput = r.throughput();
  if (!r.latency_samples.empty()) {
    std::vector<double> lat(r.latency_samples.begin(), r.latency_samples.end());
    p.latency = box_stats(std::move(lat));
  }
  p.collisions = r.collisions;
  p.token_jumps = r.token_jumps;
  p.backlog = r.backlog;
  p.seed = r.seed;
  return p;
}

const char* const kCsvHeader =
    "protocol,assignment,n_channels,n_nodes,sigma,hurst,offered_load,"
    "delivered_throughput,lat_mean,lat_min,lat_q1,lat_median,lat_q3,"
    "lat_whisker_high,lat_p99,outlier_count,collisions,token_jumps,backlog,seed";

void write_csv_header(std::ostream& os) { os << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& os, const SimConfig& cfg, const SweepPoint& p) {
  char buf[512];
  char lat[7][32];
  if (p.latency.n == 0) {
    for (auto& f : lat) std::snprintf(f, sizeof(f), "nan");
  } else {
    std::snprintf(lat[0], sizeof(lat[0]), "%.4f", p.latency.mean);
    std::snprintf(lat[1], sizeof(lat[1]), "%.4f", p.latency.min);
    std::snprintf(lat[2], sizeof(lat[2]), "%.4f", p.latency.q1);
    std::snprintf(lat[3], sizeof(lat[3]), "%.4f", p.latency.median);
    std::snprintf(lat[4], sizeof(lat[4]), "%.4f", p.latency.q3);
    std::snprintf(lat[5], sizeof(lat[5]), "%.4f", p.latency.whisker_high);
    std::snprintf(lat[6], sizeof(lat[6]), "%.4f", p.latency.p99);
  }
  std::snprintf(buf, sizeof(buf),
                "%s,%s,%u,%u,%g,%g,%.6f,%.6f,%s,%s,%s,%s,%s,%s,%s,%zu,%llu,%llu,%llu,%llu",
                to_string(cfg.protocol), to_string(cfg.assignment), cfg.n_channels,
                cfg.n_nodes, cfg.sigma, cfg.hurst, p.offered_load,
                p.delivered_throughput, lat[0], lat[1], lat[2], lat[3], lat[4], lat[5],
                lat[6], p.latency.outliers,
                static_cast<unsigned long long>(p.collisions),
                static_cast<unsigned long long>(p.token_jumps),
                static_cast<unsigned long long>(p.backlog),
                static_cast<unsigned long long>(p.seed));
  os << buf << '\n';
}

}  // namespace wnoc
