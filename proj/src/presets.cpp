#include "wnoc/presets.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wnoc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a non-negative integer (got '" + value + "')");
  }
}

double parse_f64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number (got '" + value + "')");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw ConfigError(key + ": expected a boolean (got '" + value + "')");
}

}  // namespace

void apply_config_kv(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n_nodes")
    cfg.n_nodes = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "n_channels")
    cfg.n_channels = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "protocol")
    cfg.protocol = protocol_from_string(value);
  else if (key == "assignment")
    cfg.assignment = assignment_from_string(value);
  else if (key == "packet_bits")
    cfg.packet_bits = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "preamble_bits")
    cfg.preamble_bits = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "bits_per_cycle")
    cfg.bits_per_cycle = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "offered_load")
    cfg.offered_load = parse_f64(key, value);
  else if (key == "sigma")
    cfg.sigma = parse_f64(key, value);
  else if (key == "hurst")
    cfg.hurst = parse_f64(key, value);
  else if (key == "hotspot_node")
    cfg.hotspot_node = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "warmup_cycles")
    cfg.warmup_cycles = parse_u64(key, value);
  else if (key == "measure_cycles")
    cfg.measure_cycles = parse_u64(key, value);
  else if (key == "seed")
    cfg.seed = parse_u64(key, value);
  else if (key == "brs_w0")
    cfg.brs_w0 = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "brs_cmax")
    cfg.brs_cmax = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "token_hop_cycles")
    cfg.token_hop_cycles = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "token_service_limit")
    cfg.token_service_limit = static_cast<std::uint32_t>(parse_u64(key, value));
  else if (key == "collision_full_loss")
    cfg.collision_full_loss = parse_bool(key, value);
  else
    throw ConfigError("unknown config key '" + key + "'");
}

SimConfig parse_config_file(std::istream& in, SimConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value, got '" + text + "'");
    try {
      apply_config_kv(base, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

SimConfig load_config_file(const std::string& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config_file(in, base);
}

std::vector<std::uint32_t> preset_channel_grid() { return {1, 2, 3, 4}; }
std::vector<std::uint32_t> preset_node_grid() { return {64, 128, 256, 512}; }
std::vector<double> preset_sigma_grid() { return {0.05, 0.1, 1, 10, 100}; }
std::vector<double> preset_hurst_grid() { return {0.5, 0.65, 0.75, 0.85}; }

std::vector<SimConfig> preset_family_configs(const std::string& name,
                                             const SimConfig& base) {
  std::vector<SimConfig> out;
  if (name == "channels") {
    for (std::uint32_t c : preset_channel_grid()) {
      SimConfig cfg = base;
      cfg.n_channels = c;
      out.push_back(cfg);
    }
  } else if (name == "nodes") {
    for (std::uint32_t n : preset_node_grid()) {
      SimConfig cfg = base;
      cfg.n_nodes = n;
      out.push_back(cfg);
    }
  } else if (name == "sigma") {
    for (double s : preset_sigma_grid()) {
      SimConfig cfg = base;
      cfg.sigma = s;
      out.push_back(cfg);
    }
  } else if (name == "hurst") {
    for (double h : preset_hurst_grid()) {
      SimConfig cfg = base;
      cfg.hurst = h;
      out.push_back(cfg);
    }
  } else {
    throw ConfigError("unknown preset family '" + name + "'");
  }
  return out;
}

void mark_pareto_frontier(std::span<SummaryRow> rows) {
  for (SummaryRow& r : rows) {
    r.pareto = true;
    for (const SummaryRow& other : rows) {
      if (&other == &r) continue;
      if (other.zero_load_latency < r.zero_load_latency &&
          other.saturation_throughput > r.saturation_throughput) {
        r.pareto = false;
        break;
      }
    }
  }
}

namespace {

const char* const kSummaryHeader =
    "protocol,assignment,n_channels,n_nodes,sigma,hurst,zero_load_latency,"
    "saturation_throughput,pareto,seed";

void write_summary_row(std::ostream& os, const SummaryRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%s,%u,%u,%g,%g,%.4f,%.6f,%d,%llu",
                to_string(r.cfg.protocol), to_string(r.cfg.assignment),
                r.cfg.n_channels, r.cfg.n_nodes, r.cfg.sigma, r.cfg.hurst,
                r.zero_load_latency, r.saturation_throughput, r.pareto ? 1 : 0,
                static_cast<unsigned long long>(r.cfg.seed));
  os << buf << '\n';
}

void emit_plot_script(const std::string& dir, const std::vector<std::string>& csvs) {
  std::ofstream py(dir + "/plot.py");
  py << "#!/usr/bin/env python3\n"
        "# Renders the CSV output next to this script.\n"
        "import glob, os\n"
        "import matplotlib\n"
        "matplotlib.use('Agg')\n"
        "import matplotlib.pyplot as plt\n"
        "import csv as csvmod\n"
        "\n"
        "here = os.path.dirname(os.path.abspath(__file__))\n"
        "\n"
        "def load(path):\n"
        "    with open(path) as f:\n"
        "        return list(csvmod.DictReader(f))\n"
        "\n"
        "for path in sorted(glob.glob(os.path.join(here, '*.csv'))):\n"
        "    rows = load(path)\n"
        "    if not rows:\n"
        "        continue\n"
        "    name = os.path.splitext(os.path.basename(path))[0]\n"
        "    fig, ax = plt.subplots(figsize=(7, 5))\n"
        "    if 'saturation_throughput' in rows[0]:\n"
        "        for r in rows:\n"
        "            x = float(r['saturation_throughput'])\n"
        "            y = float(r['zero_load_latency'])\n"
        "            marker = 'o' if r['protocol'] == 'brs' else 's'\n"
        "            ax.scatter(x, y, marker=marker)\n"
        "            ax.annotate(f\"{r['protocol']}/{r['assignment']}\", (x, y),\n"
        "                        fontsize=6)\n"
        "        ax.set_xlabel('saturation throughput [packets/cycle]')\n"
        "        ax.set_ylabel('zero-load latency [cycles]')\n"
        "        ax.set_yscale('log')\n"
        "    else:\n"
        "        groups = {}\n"
        "        for r in rows:\n"
        "            key = (r['n_channels'], r['n_nodes'], r['sigma'], r['hurst'])\n"
        "            groups.setdefault(key, []).append(r)\n"
        "        for key, g in sorted(groups.items()):\n"
        "            xs = [float(r['offered_load']) for r in g]\n"
        "            ys = [float(r['delivered_throughput']) for r in g]\n"
        "            ax.plot(xs, ys, marker='.', label='c%s n%s s%s h%s' % key)\n"
        "        ax.set_xlabel('offered load [packets/cycle]')\n"
        "        ax.set_ylabel('delivered throughput [packets/cycle]')\n"
        "        ax.legend(fontsize=6)\n"
        "    ax.set_title(name)\n"
        "    fig.tight_layout()\n"
        "    fig.savefig(os.path.join(here, name + '.png'), dpi=150)\n"
        "    plt.close(fig)\n"
        "print('wrote plots for', ";
  py << csvs.size() << ", 'csv files')\n";
}

std::string csv_path(const PresetRequest& req, const SimConfig& cfg) {
  std::ostringstream name;
  name << req.out_dir << '/' << req.name << '_' << to_string(cfg.protocol) << '_'
       << to_string(cfg.assignment) << ".csv";
  return name.str();
}

}  // namespace

std::vector<std::string> run_preset(const PresetRequest& req) {
  std::error_code ec;
  std::filesystem::create_directories(req.out_dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + req.out_dir +
                      "': " + ec.message());
  std::vector<std::string> written;
  const bool summary = req.name == "summary";
  const std::vector<std::string> families =
      summary ? std::vector<std::string>{"channels", "nodes", "sigma", "hurst"}
              : std::vector<std::string>{req.name};

  std::vector<SummaryRow> summary_rows;
  for (Protocol proto : req.protocols) {
    for (Assignment as : req.assignments) {
      std::ofstream csv;
      if (!summary) {
        SimConfig tag = req.base;
        tag.protocol = proto;
        tag.assignment = as;
        const std::string path = csv_path(req, tag);
        csv.open(path);
        if (!csv) throw ConfigError("cannot write '" + path + "'");
        write_csv_header(csv);
        written.push_back(path);
      }
      std::vector<std::string> seen;  // dedupes the base config across families
      for (const std::string& family : families) {
        for (SimConfig cfg : preset_family_configs(family, req.base)) {
          cfg.protocol = proto;
          cfg.assignment = as;
          validate_config(cfg);
          char key[128];
          std::snprintf(key, sizeof(key), "%u/%u/%g/%g", cfg.n_channels, cfg.n_nodes,
                        cfg.sigma, cfg.hurst);
          if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
          seen.emplace_back(key);
          const std::vector<double> grid = default_load_grid(cfg);
          const std::vector<SweepPoint> points =
              saturation_sweep(cfg, grid, req.workers);
          if (summary) {
            SummaryRow row;
            row.cfg = cfg;
            row.saturation_throughput = saturation_throughput(points);
            row.zero_load_latency = zero_load_latency(cfg);
            summary_rows.push_back(row);
          } else {
            for (const SweepPoint& p : points) {
              SimConfig row_cfg = cfg;
              row_cfg.offered_load = p.offered_load;
              write_csv_row(csv, row_cfg, p);
            }
          }
        }
      }
    }
  }

  if (summary) {
    mark_pareto_frontier(summary_rows);
    const std::string path = req.out_dir + "/summary.csv";
    std::ofstream csv(path);
    if (!csv) throw ConfigError("cannot write '" + path + "'");
    csv << kSummaryHeader << '\n';
    for (const SummaryRow& r : summary_rows) write_summary_row(csv, r);
    written.push_back(path);
  }
  if (req.plot_script) {
    emit_plot_script(req.out_dir, written);
    written.push_back(req.out_dir + "/plot.py");
  }
  return written;
}

}  // namespace wnoc
