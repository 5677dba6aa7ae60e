// Command-line front end: single runs, load sweeps, canned experiment
// families, and a burstiness self-check for the traffic generator.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wnoc/assign.hpp"
#include "wnoc/engine.hpp"
#include "wnoc/metrics.hpp"
#include "wnoc/presets.hpp"
#include "wnoc/traffic.hpp"

namespace {

using namespace wnoc;

// Field overrides collected as strings so file parsing and flag parsing
// share one code path (apply_config_kv).
struct ConfigCli {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key=value config file");
    static const char* keys[] = {
        "n_nodes",      "n_channels",       "protocol",
        "assignment",   "packet_bits",      "preamble_bits",
        "bits_per_cycle", "offered_load",   "sigma",
        "hurst",        "hotspot_node",     "warmup_cycles",
        "measure_cycles", "seed",           "brs_w0",
        "brs_cmax",     "token_hop_cycles", "token_service_limit",
        "collision_full_loss"};
    for (const char* key : keys) {
      std::string dashed = std::string("--") + key;
      for (auto& c : dashed)
        if (c == '_') c = '-';
      std::string names = dashed;
      if (dashed != std::string("--") + key) names += ",--" + std::string(key);
      cmd->add_option_function<std::string>(
          names,
          [this, key](const std::string& v) { overrides.emplace_back(key, v); },
          std::string("override ") + key);
    }
  }

  SimConfig resolve() const {
    SimConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
    if (const char* env = std::getenv("WNOC_SEED"))
      apply_config_kv(cfg, "seed", env);  // flags still win over the environment
    for (const auto& [k, v] : overrides) apply_config_kv(cfg, k, v);
    return validate_config(cfg);
  }
};

void dump_assignment(std::ostream& os, const SimConfig& cfg) {
  const std::vector<double> w = spatial_weights(cfg.n_nodes, cfg.sigma, cfg.hotspot_node);
  std::vector<double> loads(cfg.n_nodes);
  for (std::uint32_t i = 0; i < cfg.n_nodes; ++i) loads[i] = cfg.offered_load * w[i];
  os << "# node  load  " << (cfg.protocol == Protocol::Token ? "ring" : "channel")
     << '\n';
  if (cfg.protocol == Protocol::Brs && cfg.assignment == Assignment::AS1) {
    for (std::uint32_t i = 0; i < cfg.n_nodes; ++i) {
      char line[64];
      std::snprintf(line, sizeof(line), "%6u  %.6f  random\n", i, loads[i]);
      os << line;
    }
    return;
  }
  std::vector<std::uint32_t> map;
  if (cfg.protocol == Protocol::Token && cfg.assignment == Assignment::AS2) {
    map.assign(cfg.n_nodes, 0);  // single shared ring
  } else if (cfg.assignment == Assignment::AS3) {
    map = greedy_balanced(loads, cfg.n_channels);
  } else {
    map = uniform_static(cfg.n_nodes, cfg.n_channels);
  }
  for (std::uint32_t i = 0; i < cfg.n_nodes; ++i) {
    char line[64];
    std::snprintf(line, sizeof(line), "%6u  %.6f  %u\n", i, loads[i], map[i]);
    os << line;
  }
}

std::vector<std::pair<Cycle, NodeId>> load_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open replay trace '" + path + "'");
  std::vector<std::pair<Cycle, NodeId>> events;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Cycle t;
    NodeId src;
    if (!(ss >> t >> src))
      throw ConfigError("replay line " + std::to_string(lineno) +
                        ": expected 'cycle source [destination]'");
    events.emplace_back(t, src);
  }
  return events;
}

int cmd_run(const ConfigCli& cli, const std::string& csv_path, bool dump_assign,
            const std::string& phy_trace_path, const std::string& traffic_trace_path,
            const std::string& replay_path) {
  const SimConfig cfg = cli.resolve();
  RunOptions opt;
  std::ofstream phy_trace, traffic_trace;
  std::vector<std::pair<Cycle, NodeId>> replay;
  if (!phy_trace_path.empty()) {
    phy_trace.open(phy_trace_path);
    if (!phy_trace) throw ConfigError("cannot write '" + phy_trace_path + "'");
    opt.phy_trace = &phy_trace;
  }
  if (!traffic_trace_path.empty()) {
    traffic_trace.open(traffic_trace_path);
    if (!traffic_trace) throw ConfigError("cannot write '" + traffic_trace_path + "'");
    opt.traffic_trace = &traffic_trace;
  }
  if (!replay_path.empty()) {
    replay = load_replay(replay_path);
    opt.replay = &replay;
  }

  const RunResult r = run(cfg, opt);
  const SweepPoint p = sweep_point_from_run(cfg, r);

  std::printf("protocol            %s / %s\n", to_string(cfg.protocol),
              to_string(cfg.assignment));
  std::printf("nodes / channels    %u / %u\n", cfg.n_nodes, cfg.n_channels);
  std::printf("offered load        %.6f packets/cycle (sigma %g, hurst %g)\n",
              cfg.offered_load, cfg.sigma, cfg.hurst);
  std::printf("cycles              %llu warmup + %llu measured, seed %llu\n",
              static_cast<unsigned long long>(cfg.warmup_cycles),
              static_cast<unsigned long long>(cfg.measure_cycles),
              static_cast<unsigned long long>(cfg.seed));
  std::printf("delivered           %.6f packets/cycle (%llu packets, backlog %llu)\n",
              r.throughput(), static_cast<unsigned long long>(r.delivered_in_window),
              static_cast<unsigned long long>(r.backlog));
  if (p.latency.n > 0)
    std::printf("latency cycles      mean %.2f  median %.2f  q1 %.2f  q3 %.2f  p99 %.2f\n",
                p.latency.mean, p.latency.median, p.latency.q1, p.latency.q3,
                p.latency.p99);
  else
    std::printf("latency cycles      no delivered packets in window\n");
  if (cfg.protocol == Protocol::Brs)
    std::printf("contention          %llu collisions, %llu busy senses, max exponent %u\n",
                static_cast<unsigned long long>(r.collisions),
                static_cast<unsigned long long>(r.busy_senses),
                r.max_backoff_exponent);
  else
    std::printf("token               %llu hops, %llu jumps, %llu idle visits\n",
                static_cast<unsigned long long>(r.token_hops),
                static_cast<unsigned long long>(r.token_jumps),
                static_cast<unsigned long long>(r.token_idle_visits));
  std::printf("channel utilization");
  for (double u : r.channel_utilization) std::printf(" %.4f", u);
  std::printf("\n");

  if (dump_assign) dump_assignment(std::cout, cfg);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw ConfigError("cannot write '" + csv_path + "'");
    write_csv_header(csv);
    write_csv_row(csv, cfg, p);
  }
  return 0;
}

int cmd_sweep(const ConfigCli& cli, const std::string& loads_arg,
              const std::string& out_path, int workers) {
  const SimConfig cfg = cli.resolve();
  std::vector<double> grid;
  if (loads_arg.empty()) {
    grid = default_load_grid(cfg);
  } else {
    std::istringstream ss(loads_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument(item);
        grid.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("--loads: '" + item + "' is not a number");
      }
    }
  }
  const std::vector<SweepPoint> points = saturation_sweep(cfg, grid, workers);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw ConfigError("cannot write '" + out_path + "'");
    os = &file;
  }
  write_csv_header(*os);
  for (const SweepPoint& p : points) {
    SimConfig row_cfg = cfg;
    row_cfg.offered_load = p.offered_load;
    write_csv_row(*os, row_cfg, p);
  }
  std::fprintf(stderr, "saturation throughput %.6f packets/cycle\n",
               saturation_throughput(points));
  return 0;
}

int cmd_preset(const ConfigCli& cli, const std::string& name,
               const std::string& out_dir, int workers,
               const std::string& protocols, const std::string& assignments,
               bool no_plot) {
  PresetRequest req;
  req.name = name;
  req.base = cli.resolve();
  req.out_dir = out_dir;
  req.workers = workers;
  req.plot_script = !no_plot;
  if (!protocols.empty()) {
    req.protocols.clear();
    std::istringstream ss(protocols);
    std::string item;
    while (std::getline(ss, item, ',')) req.protocols.push_back(protocol_from_string(item));
  }
  if (!assignments.empty()) {
    req.assignments.clear();
    std::istringstream ss(assignments);
    std::string item;
    while (std::getline(ss, item, ','))
      req.assignments.push_back(assignment_from_string(item));
  }
  for (const std::string& path : run_preset(req)) std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_hurst_check(const ConfigCli& cli, Cycle cycles) {
  const SimConfig cfg = cli.resolve();
  const std::vector<double> series = injection_series(cfg, cycles);
  double sum = 0.0;
  for (double x : series) sum += x;
  const double rate = sum / static_cast<double>(cycles);
  const double h = estimate_hurst(series);
  std::printf("cycles              %llu\n", static_cast<unsigned long long>(cycles));
  std::printf("configured hurst    %.3f\n", cfg.hurst);
  std::printf("estimated hurst     %.3f\n", h);
  std::printf("offered load        %.6f packets/cycle\n", cfg.offered_load);
  std::printf("measured rate       %.6f packets/cycle\n", rate);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-channel wireless network-on-chip MAC simulator"};
  app.require_subcommand(1);

  ConfigCli run_cli, sweep_cli, preset_cli, hurst_cli;

  auto* run_cmd = app.add_subcommand("run", "execute a single simulation");
  run_cli.attach(run_cmd);
  std::string run_csv, run_phy_trace, run_traffic_trace, run_replay;
  bool run_dump = false;
  run_cmd->add_option("--csv", run_csv, "write the result as a one-row CSV");
  run_cmd->add_flag("--dump-assignment", run_dump, "print node/load/channel table");
  run_cmd->add_option("--phy-trace", run_phy_trace, "per-cycle channel event trace");
  run_cmd->add_option("--traffic-trace", run_traffic_trace,
                      "generated packet trace (cycle source destination)");
  run_cmd->add_option("--replay", run_replay, "drive arrivals from a trace file");

  auto* sweep_cmd = app.add_subcommand("sweep", "offered-load sweep to saturation");
  sweep_cli.attach(sweep_cmd);
  std::string sweep_loads, sweep_out;
  int sweep_workers = 0;
  sweep_cmd->add_option("--loads", sweep_loads, "comma-separated offered loads");
  sweep_cmd->add_option("--out", sweep_out, "CSV path (default stdout)");
  sweep_cmd->add_option("--workers", sweep_workers, "max concurrent runs");

  auto* preset_cmd = app.add_subcommand("preset", "canned experiment families");
  preset_cli.attach(preset_cmd);
  std::string preset_name, preset_dir = ".", preset_protocols, preset_assignments;
  int preset_workers = 0;
  bool preset_no_plot = false;
  preset_cmd->add_option("name", preset_name, "channels|nodes|sigma|hurst|summary")
      ->required();
  preset_cmd->add_option("--out-dir", preset_dir, "output directory");
  preset_cmd->add_option("--workers", preset_workers, "max concurrent runs");
  preset_cmd->add_option("--protocols", preset_protocols, "subset, e.g. brs,token");
  preset_cmd->add_option("--assignments", preset_assignments, "subset, e.g. as1,as3");
  preset_cmd->add_flag("--no-plot-script", preset_no_plot, "skip plot.py");

  auto* hurst_cmd =
      app.add_subcommand("hurst-check", "traffic generator burstiness self-check");
  hurst_cli.attach(hurst_cmd);
  Cycle hurst_cycles = 1u << 20;
  hurst_cmd->add_option("--cycles", hurst_cycles, "series length (default 2^20)");

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed())
      return cmd_run(run_cli, run_csv, run_dump, run_phy_trace, run_traffic_trace,
                     run_replay);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_cli, sweep_loads, sweep_out, sweep_workers);
    if (preset_cmd->parsed())
      return cmd_preset(preset_cli, preset_name, preset_dir, preset_workers,
                        preset_protocols, preset_assignments, preset_no_plot);
    if (hurst_cmd->parsed()) return cmd_hurst_check(hurst_cli, hurst_cycles);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const wnoc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal invariant violated: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
