#include "wnoc/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wnoc {

std::vector<double> spatial_weights(std::uint32_t n_nodes, double sigma,
                                    std::uint32_t hotspot) {
  if (n_nodes == 0) throw ConfigError("n_nodes: must be >= 1");
  if (!(sigma > 0.0)) throw ConfigError("sigma: must be > 0");
  if (hotspot >= n_nodes) throw ConfigError("hotspot_node: must be < n_nodes");
  std::vector<double> w(n_nodes);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  double sum = 0.0;
  for (std::uint32_t i = 0; i < n_nodes; ++i) {
    const std::uint32_t raw = i > hotspot ? i - hotspot : hotspot - i;
    const double d = static_cast<double>(std::min(raw, n_nodes - raw));
    w[i] = std::exp(-d * d * inv);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return w;
}

ArrivalProcess::ArrivalProcess(double rate, double hurst, Rng rng)
    : rng_(rng), rate_(rate) {
  if (rate < 0.0) throw ConfigError("offered_load: per-node rate < 0");
  if (rate >= 1.0)
    throw ConfigError(
        "offered_load: per-node rate >= 1 packet/cycle is unreachable "
        "(concentrate less or lower the load)");
  if (rate == 0.0) return;  // never fires
  bursty_ = hurst > 0.5;
  if (!bursty_) {
    // First success of a per-cycle Bernoulli(rate), counted from cycle 0.
    const double g = std::floor(std::log(rng_.next_double_pos()) / std::log1p(-rate));
    next_ = g > 9e18 ? kNever : static_cast<Cycle>(g);
    return;
  }
  alpha_ = 3.0 - 2.0 * hurst;  // heavy-tail shape; Hurst = (3 - alpha) / 2
  on_min_ = 4.0;
  // One packet per ON cycle, so mean rate = E[on] / (E[on] + E[off]); with
  // E[period] = alpha * x_m / (alpha - 1) this pins the OFF minimum.
  off_min_ = on_min_ * (1.0 - rate) / rate;
  // Start mid-period at a uniform phase so nodes are not synchronized.
  roll_period();
  const double shift = rng_.next_double() * (period_end_ - on_start_);
  on_start_ -= shift;
  on_end_ -= shift;
  period_end_ -= shift;
}

double ArrivalProcess::pareto(double xm) {
  return xm * std::pow(rng_.next_double_pos(), -1.0 / alpha_);
}

void ArrivalProcess::roll_period() {
  on_start_ = period_end_;
  on_end_ = on_start_ + pareto(on_min_);
  period_end_ = on_end_ + pareto(off_min_);
}

bool ArrivalProcess::poll(Cycle t) {
  if (!bursty_) {
    if (next_ != t) return false;
    const double g =
        1.0 + std::floor(std::log(rng_.next_double_pos()) / std::log1p(-rate_));
    next_ = (g > 9e18 || t > kNever - static_cast<Cycle>(g)) ? kNever
                                                             : t + static_cast<Cycle>(g);
    return true;
  }
  const double now = static_cast<double>(t);
  while (now >= period_end_) roll_period();
  return now >= on_start_ && now < on_end_;
}

std::vector<double> injection_series(const SimConfig& cfg, Cycle cycles) {
  const SimConfig c = validate_config(cfg);
  const std::vector<double> w = spatial_weights(c.n_nodes, c.sigma, c.hotspot_node);
  std::vector<ArrivalProcess> proc(c.n_nodes);
  for (std::uint32_t n = 0; n < c.n_nodes; ++n)
    proc[n] = ArrivalProcess(c.offered_load * w[n], c.hurst,
                             Rng(c.seed, StreamPurpose::Arrival, n));
  std::vector<double> series(cycles, 0.0);
  for (Cycle t = 0; t < cycles; ++t) {
    double count = 0.0;
    for (auto& p : proc) count += p.poll(t) ? 1.0 : 0.0;
    series[t] = count;
  }
  return series;
}

double estimate_hurst(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < (1u << 14))
    throw ConfigError("hurst estimate: need at least 2^14 samples");

  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : series) var += (x - mean) * (x - mean);
  if (var == 0.0) throw ConfigError("hurst estimate: series is constant");

  std::vector<double> log_m, log_rs;
  for (std::size_t m = 64; m <= n / 8; m *= 2) {
    const std::size_t blocks = n / m;
    double acc = 0.0;
    std::size_t valid = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const double* x = series.data() + b * m;
      double mu = 0.0;
      for (std::size_t i = 0; i < m; ++i) mu += x[i];
      mu /= static_cast<double>(m);
      double ss = 0.0, cum = 0.0, lo = 0.0, hi = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = x[i] - mu;
        ss += d * d;
        cum += d;
        lo = std::min(lo, cum);
        hi = std::max(hi, cum);
      }
      const double s = std::sqrt(ss / static_cast<double>(m));
      if (s == 0.0) continue;  // flat block carries no range information
      acc += (hi - lo) / s;
      ++valid;
    }
    if (valid == 0) continue;
    log_m.push_back(std::log(static_cast<double>(m)));
    log_rs.push_back(std::log(acc / static_cast<double>(valid)));
  }
  if (log_m.size() < 2)
    throw ConfigError("hurst estimate: not enough usable window sizes");

  // Least-squares slope of log(R/S) against log(window).
  const double k = static_cast<double>(log_m.size());
  const double mx = std::accumulate(log_m.begin(), log_m.end(), 0.0) / k;
  const double my = std::accumulate(log_rs.begin(), log_rs.end(), 0.0) / k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < log_m.size(); ++i) {
    sxy += (log_m[i] - mx) * (log_rs[i] - my);
    sxx += (log_m[i] - mx) * (log_m[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace wnoc
