#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "wnoc/assign.hpp"
#include "wnoc/config.hpp"
#include "wnoc/phy.hpp"
#include "wnoc/rng.hpp"

namespace wnoc {

using Queues = std::vector<std::deque<PacketRecord>>;

// Contention window for collision count c: w0 * 2^min(c, cmax).
std::uint32_t backoff_window(std::uint32_t c, std::uint32_t w0, std::uint32_t cmax);

struct BrsCounters {
  std::uint64_t collisions = 0;    // aborted transmissions
  std::uint64_t busy_senses = 0;   // attempts deferred by carrier sense
  std::uint64_t backoff_draws = 0;
  std::uint32_t max_exponent = 0;
};

// Random-access MAC: sense for one cycle, transmit if idle, otherwise back
// off without escalating; only collisions escalate the exponent, and there
// is no retry limit. Heads of the per-node FIFO queues are the only packets
// ever serviced.
class BrsMac {
 public:
  // static_map is empty for per-attempt random channels (AS1); otherwise it
  // fixes each node's channel (AS2/AS3).
  BrsMac(const SimConfig& cfg, std::vector<ChannelId> static_map, Medium* medium,
         Queues* queues);

  void step_all(Cycle t);
  void on_success(NodeId node);
  void on_collision(NodeId node);

  const BrsCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = BrsCounters{}; }
  std::uint32_t exponent(NodeId node) const { return nodes_[node].exponent; }
  bool in_backoff(NodeId node) const { return nodes_[node].phase == Phase::Backoff; }

 private:
  enum class Phase : std::uint8_t { Idle, Backoff, Transmitting };

  struct NodeState {
    Phase phase = Phase::Idle;
    bool pending_collision = false;
    std::uint32_t exponent = 0;
    std::uint32_t backoff_remaining = 0;
    Rng backoff_rng;
    Rng channel_rng;
  };

  void draw_backoff(NodeState& st);

  std::uint32_t n_;
  std::uint32_t n_channels_;
  std::uint32_t duration_;
  std::uint32_t w0_;
  std::uint32_t cmax_;
  bool random_channel_;
  std::vector<ChannelId> static_map_;
  Medium* medium_;
  Queues* queues_;
  std::vector<NodeState> nodes_;
  BrsCounters counters_;
};

}  // namespace wnoc
