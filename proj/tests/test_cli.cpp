#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wnoc/presets.hpp"

using namespace wnoc;

TEST_CASE("empty config file yields the documented defaults") {
  std::istringstream in("");
  const SimConfig cfg = parse_config_file(in);
  CHECK(cfg.n_nodes == 64);
  CHECK(cfg.n_channels == 4);
  CHECK(cfg.hurst == doctest::Approx(0.5));
  CHECK(cfg.sigma == doctest::Approx(1.0));
}

TEST_CASE("key=value parsing with comments and whitespace") {
  std::istringstream in(
      "# simulator parameters\n"
      "\n"
      "n_nodes = 128\n"
      "protocol=token\n"
      "assignment = AS3\n"
      "offered_load=0.45   \n"
      "hurst = 0.75\n"
      "collision_full_loss = true\n"
      "seed = 99\n");
  const SimConfig cfg = parse_config_file(in);
  CHECK(cfg.n_nodes == 128);
  CHECK(cfg.protocol == Protocol::Token);
  CHECK(cfg.assignment == Assignment::AS3);
  CHECK(cfg.offered_load == doctest::Approx(0.45));
  CHECK(cfg.hurst == doctest::Approx(0.75));
  CHECK(cfg.collision_full_loss);
  CHECK(cfg.seed == 99);
}

TEST_CASE("parse errors carry the line number and the field") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      parse_config_file(in);
      FAIL_CHECK("expected a parse failure for: " << text);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("n_nodes = 64\nwat = 3\n", "line 2");
  expect_error("wat = 3\n", "wat");
  expect_error("n_nodes sixty\n", "key=value");
  expect_error("n_channels = -2\n", "n_channels");
  expect_error("offered_load = lots\n", "offered_load");
  expect_error("collision_full_loss = maybe\n", "collision_full_loss");

  // Range checks run on the assembled config (after all override layers),
  // not per line: the file parse itself accepts any well-typed value.
  std::istringstream in("hurst = 1.2\n");
  const SimConfig out_of_range = parse_config_file(in);
  CHECK_THROWS_AS(validate_config(out_of_range), ConfigError);
}

TEST_CASE("later assignments override earlier values") {
  std::istringstream in("hurst = 0.5\n");
  SimConfig cfg = parse_config_file(in);
  apply_config_kv(cfg, "hurst", "0.85");  // what a command-line flag does
  CHECK(cfg.hurst == doctest::Approx(0.85));
}

TEST_CASE("families vary exactly one axis around the defaults") {
  const SimConfig base;
  const auto chans = preset_family_configs("channels", base);
  REQUIRE(chans.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(chans[i].n_channels == i + 1);
    CHECK(chans[i].n_nodes == 64);
  }
  const auto nodes = preset_family_configs("nodes", base);
  REQUIRE(nodes.size() == 4);
  CHECK(nodes[0].n_nodes == 64);
  CHECK(nodes[3].n_nodes == 512);
  const auto sigma = preset_family_configs("sigma", base);
  REQUIRE(sigma.size() == 5);
  CHECK(sigma[0].sigma == doctest::Approx(0.05));
  CHECK(sigma[4].sigma == doctest::Approx(100.0));
  const auto hurst = preset_family_configs("hurst", base);
  REQUIRE(hurst.size() == 4);
  CHECK(hurst[0].hurst == doctest::Approx(0.5));
  CHECK(hurst[3].hurst == doctest::Approx(0.85));
  CHECK_THROWS_AS(preset_family_configs("volume", base), ConfigError);
}

TEST_CASE("non-dominated rows are flagged as the frontier") {
  std::vector<SummaryRow> rows(4);
  rows[0].zero_load_latency = 10.0;
  rows[0].saturation_throughput = 0.5;
  rows[1].zero_load_latency = 5.0;  // dominates row 0
  rows[1].saturation_throughput = 0.8;
  rows[2].zero_load_latency = 20.0;  // highest throughput: on the frontier
  rows[2].saturation_throughput = 0.9;
  rows[3].zero_load_latency = 5.0;  // ties row 1 on latency, lower throughput
  rows[3].saturation_throughput = 0.7;
  mark_pareto_frontier(rows);
  CHECK_FALSE(rows[0].pareto);
  CHECK(rows[1].pareto);
  CHECK(rows[2].pareto);
  CHECK(rows[3].pareto);  // ties are not strict domination
}

TEST_CASE("preset run writes one csv per protocol and assignment") {
  const std::string dir = std::filesystem::temp_directory_path() /
                          "wnoc_preset_test";
  std::filesystem::remove_all(dir);
  PresetRequest req;
  req.name = "channels";
  req.base.warmup_cycles = 200;
  req.base.measure_cycles = 1000;
  req.protocols = {Protocol::Token};
  req.assignments = {Assignment::AS1};
  req.out_dir = dir;
  req.workers = 1;
  const auto written = run_preset(req);
  REQUIRE(written.size() == 2);  // csv + plot script
  CHECK(written[0].find("channels_token_AS1.csv") != std::string::npos);
  std::ifstream csv(written[0]);
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == kCsvHeader);
  std::string row;
  std::size_t rows = 0;
  while (std::getline(csv, row)) {
    ++rows;
    CHECK(row.find("token,AS1") == 0);
  }
  CHECK(rows >= 4 * 10);  // four channel counts, at least ten loads each
  std::ifstream plot(dir + "/plot.py");
  CHECK(plot.good());
  std::filesystem::remove_all(dir);
}

TEST_CASE("summary preset emits frontier-flagged rows") {
  const std::string dir = std::filesystem::temp_directory_path() /
                          "wnoc_summary_test";
  std::filesystem::remove_all(dir);
  PresetRequest req;
  req.name = "summary";
  req.base.warmup_cycles = 100;
  req.base.measure_cycles = 600;
  req.protocols = {Protocol::Token};
  req.assignments = {Assignment::AS1};
  req.out_dir = dir;
  req.workers = 1;
  req.plot_script = false;
  const auto written = run_preset(req);
  REQUIRE(written.size() == 1);
  std::ifstream csv(written[0]);
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "protocol,assignment,n_channels,n_nodes,sigma,hurst,"
        "zero_load_latency,saturation_throughput,pareto,seed");
  std::size_t rows = 0, frontier = 0;
  std::string row;
  while (std::getline(csv, row)) {
    ++rows;
    // pareto is the second-to-last comma-separated field
    const std::size_t last = row.rfind(',');
    const std::size_t prev = row.rfind(',', last - 1);
    frontier += row.substr(prev + 1, last - prev - 1) == "1";
  }
  // 4 + 4 + 5 + 4 family points minus the default config shared by all four
  CHECK(rows == 14);
  CHECK(frontier >= 1);
  CHECK(frontier < rows);
  std::filesystem::remove_all(dir);
}
