#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wnoc {

using Cycle = std::uint64_t;
using NodeId = std::uint32_t;
using ChannelId = std::uint32_t;
using PacketId = std::uint64_t;

enum class Protocol { Brs, Token };
enum class Assignment { AS1, AS2, AS3 };

// Invalid user-supplied configuration. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant violation (double transmit, token duplication, ...).
// The CLI maps this to exit code 2.
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

const char* to_string(Protocol p);
const char* to_string(Assignment a);
Protocol protocol_from_string(const std::string& s);
Assignment assignment_from_string(const std::string& s);

struct SimConfig {
  std::uint32_t n_nodes = 64;
  std::uint32_t n_channels = 4;
  Protocol protocol = Protocol::Brs;
  Assignment assignment = Assignment::AS1;

  std::uint32_t packet_bits = 80;     // preamble included
  std::uint32_t preamble_bits = 20;
  std::uint32_t bits_per_cycle = 20;  // channel rate

  double offered_load = 0.1;  // aggregate packets/cycle over all nodes
  double sigma = 1.0;         // spatial concentration (low = hotspot)
  double hurst = 0.5;         // 0.5 = memoryless, (0.5,1) = bursty
  std::uint32_t hotspot_node = 0;

  Cycle warmup_cycles = 50000;
  Cycle measure_cycles = 500000;
  std::uint64_t seed = 1;

  std::uint32_t brs_w0 = 4;    // base contention window
  std::uint32_t brs_cmax = 8;  // exponent cap
  std::uint32_t token_hop_cycles = 1;
  std::uint32_t token_service_limit = 1;  // packets per visit, 0 = exhaustive
  bool collision_full_loss = false;       // colliding packets waste full duration

  std::uint32_t packet_cycles() const;
  std::uint32_t preamble_cycles() const;
  double max_throughput() const;  // packets/cycle, all channels combined
};

// ceil(packet_bits / bits_per_cycle); rejects zero arguments.
std::uint32_t packet_duration_cycles(std::uint32_t packet_bits, std::uint32_t bits_per_cycle);

// Returns the config unchanged or throws ConfigError naming the offending
// field and bound.
SimConfig validate_config(const SimConfig& cfg);

struct PacketRecord {
  PacketId id = 0;
  NodeId source = 0;
  ChannelId channel = 0;  // set on delivery
  Cycle generated_at = 0;
  Cycle delivered_at = 0;  // 0 while pending
};

}  // namespace wnoc
