// Times the serial batch executor against the OpenMP one on an identical
// set of independent runs and verifies that both produce the same results.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wnoc/metrics.hpp"
#include "wnoc/presets.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool same_results(const std::vector<wnoc::RunResult>& a,
                  const std::vector<wnoc::RunResult>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].delivered_in_window != b[i].delivered_in_window) return false;
    if (a[i].generated_in_window != b[i].generated_in_window) return false;
    if (a[i].backlog != b[i].backlog) return false;
    if (a[i].collisions != b[i].collisions) return false;
    if (a[i].token_jumps != b[i].token_jumps) return false;
    if (a[i].latency_samples != b[i].latency_samples) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel batch executor benchmark"};
  std::string config_path;
  int repeats = 2;
  int workers = 0;
  wnoc::Cycle warmup = 20000, measure = 200000;
  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--repeats", repeats, "timing repetitions per executor");
  app.add_option("--workers", workers, "parallel worker cap (<=0: OpenMP default)");
  app.add_option("--warmup-cycles", warmup, "warmup cycles per run");
  app.add_option("--measure-cycles", measure, "measured cycles per run");
  CLI11_PARSE(app, argc, argv);

  try {
    wnoc::SimConfig base;
    if (!config_path.empty()) base = wnoc::load_config_file(config_path, base);
    base.warmup_cycles = warmup;
    base.measure_cycles = measure;

    // One run per default-grid load, both protocols: a realistic sweep batch.
    std::vector<wnoc::SimConfig> batch;
    for (wnoc::Protocol proto : {wnoc::Protocol::Brs, wnoc::Protocol::Token}) {
      wnoc::SimConfig cfg = base;
      cfg.protocol = proto;
      for (double load : wnoc::default_load_grid(cfg)) {
        cfg.offered_load = load;
        batch.push_back(wnoc::validate_config(cfg));
      }
    }
    std::printf("batch of %zu runs, %llu cycles each\n", batch.size(),
                static_cast<unsigned long long>(warmup + measure));

    std::vector<wnoc::RunResult> serial, parallel;
    double best_serial = 1e300, best_parallel = 1e300;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = Clock::now();
      serial = wnoc::run_batch_serial(batch);
      best_serial = std::min(best_serial, seconds_since(t0));
    }
    for (int r = 0; r < repeats; ++r) {
      auto t0 = Clock::now();
      parallel = wnoc::run_batch_parallel(batch, workers);
      best_parallel = std::min(best_parallel, seconds_since(t0));
    }

    std::printf("serial    %8.3f s\n", best_serial);
    std::printf("parallel  %8.3f s  (speedup %.2fx)\n", best_parallel,
                best_serial / best_parallel);
    if (!same_results(serial, parallel)) {
      std::fprintf(stderr, "MISMATCH: executors disagree\n");
      return 2;
    }
    std::printf("results identical across executors\n");
    return 0;
  } catch (const wnoc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
