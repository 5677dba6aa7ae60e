#include "wnoc/config.hpp"

#include <sstream>

namespace wnoc {

const char* to_string(Protocol p) {
  return p == Protocol::Brs ? "brs" : "token";
}

const char* to_string(Assignment a) {
  switch (a) {
    case Assignment::AS1: return "AS1";
    case Assignment::AS2: return "AS2";
    default: return "AS3";
  }
}

Protocol protocol_from_string(const std::string& s) {
  if (s == "brs" || s == "BRS") return Protocol::Brs;
  if (s == "token" || s == "TOKEN") return Protocol::Token;
  throw ConfigError("protocol: expected 'brs' or 'token' (got '" + s + "')");
}

Assignment assignment_from_string(const std::string& s) {
  if (s == "as1" || s == "AS1") return Assignment::AS1;
  if (s == "as2" || s == "AS2") return Assignment::AS2;
  if (s == "as3" || s == "AS3") return Assignment::AS3;
  throw ConfigError("assignment: expected 'as1', 'as2' or 'as3' (got '" + s + "')");
}

std::uint32_t packet_duration_cycles(std::uint32_t packet_bits, std::uint32_t bits_per_cycle) {
  if (packet_bits == 0) throw ConfigError("packet_bits: must be > 0");
  if (bits_per_cycle == 0) throw ConfigError("bits_per_cycle: must be > 0");
  return (packet_bits + bits_per_cycle - 1) / bits_per_cycle;
}

std::uint32_t SimConfig::packet_cycles() const {
  return packet_duration_cycles(packet_bits, bits_per_cycle);
}

std::uint32_t SimConfig::preamble_cycles() const {
  return packet_duration_cycles(preamble_bits, bits_per_cycle);
}

double SimConfig::max_throughput() const {
  return static_cast<double>(n_channels) / static_cast<double>(packet_cycles());
}

namespace {

[[noreturn]] void fail(const char* field, const std::string& what) {
  throw ConfigError(std::string(field) + ": " + what);
}

}  // namespace

SimConfig validate_config(const SimConfig& cfg) {
  if (cfg.n_nodes < 2) fail("n_nodes", "must be >= 2 (got " + std::to_string(cfg.n_nodes) + ")");
  if (cfg.n_channels < 1) fail("n_channels", "must be >= 1");
  if (cfg.n_channels > cfg.n_nodes)
    fail("n_channels", "must be <= n_nodes (got " + std::to_string(cfg.n_channels) + " > " +
                           std::to_string(cfg.n_nodes) + ")");
  if (!(cfg.offered_load >= 0.0)) fail("offered_load", "must be >= 0");
  if (!(cfg.sigma > 0.0)) fail("sigma", "must be > 0");
  if (!(cfg.hurst >= 0.5 && cfg.hurst < 1.0))
    fail("hurst", "must lie in [0.5, 1) (got " + std::to_string(cfg.hurst) + ")");
  if (cfg.hotspot_node >= cfg.n_nodes) fail("hotspot_node", "must be < n_nodes");
  if (cfg.packet_bits == 0) fail("packet_bits", "must be > 0");
  if (cfg.bits_per_cycle == 0) fail("bits_per_cycle", "must be > 0");
  if (cfg.preamble_bits == 0) fail("preamble_bits", "must be > 0");
  if (cfg.preamble_bits > cfg.packet_bits)
    fail("preamble_bits", "must be <= packet_bits (preamble is part of the packet)");
  if (cfg.measure_cycles == 0) fail("measure_cycles", "must be >= 1");
  if (cfg.brs_w0 == 0) fail("brs_w0", "must be >= 1");
  if (cfg.brs_cmax > 32) fail("brs_cmax", "must be <= 32 (window would overflow)");
  if (cfg.token_hop_cycles == 0) fail("token_hop_cycles", "must be >= 1");
  return cfg;
}

}  // namespace wnoc
