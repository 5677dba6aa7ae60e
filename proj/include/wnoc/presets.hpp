#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wnoc/config.hpp"
#include "wnoc/metrics.hpp"

namespace wnoc {

// Flat key=value config file ('#' starts a comment). Unknown keys and
// malformed values raise ConfigError with the line number. An empty file
// leaves the compiled-in defaults untouched.
void apply_config_kv(SimConfig& cfg, const std::string& key, const std::string& value);
SimConfig parse_config_file(std::istream& in, SimConfig base = {});
SimConfig load_config_file(const std::string& path, SimConfig base = {});

// Canonical experiment families swept by the `preset` subcommand.
std::vector<std::uint32_t> preset_channel_grid();   // 1..4 channels
std::vector<std::uint32_t> preset_node_grid();      // 64..512 nodes
std::vector<double> preset_sigma_grid();            // hotspot .. uniform
std::vector<double> preset_hurst_grid();            // memoryless .. bursty

struct SummaryRow {
  SimConfig cfg;
  double zero_load_latency = 0.0;
  double saturation_throughput = 0.0;
  bool pareto = false;  // no row has strictly lower latency and higher throughput
};

void mark_pareto_frontier(std::span<SummaryRow> rows);

struct PresetRequest {
  std::string name;  // channels | nodes | sigma | hurst | summary
  SimConfig base;
  std::vector<Protocol> protocols = {Protocol::Brs, Protocol::Token};
  std::vector<Assignment> assignments = {Assignment::AS1, Assignment::AS2,
                                         Assignment::AS3};
  std::string out_dir = ".";
  int workers = 0;       // <= 0: library default
  bool plot_script = true;
};

// Runs the family sweeps and writes one CSV per (protocol, assignment) plus
// an optional plotting script; `summary` writes a single CSV of
// (zero-load latency, saturation throughput) per configuration with the
// Pareto frontier marked. Returns the paths written.
std::vector<std::string> run_preset(const PresetRequest& req);

// Applies one family value to a config (e.g. n_channels=2).
std::vector<SimConfig> preset_family_configs(const std::string& name,
                                             const SimConfig& base);

}  // namespace wnoc
