#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wnoc/config.hpp"

namespace wnoc {

enum class ChannelState { Idle, Single, Collision };

struct Completion {
  NodeId node;
  ChannelId channel;
  PacketId packet;
  Cycle end;     // exclusive: first cycle after the last occupied one
  bool success;  // false = aborted by collision
};

// Shared multi-channel medium. Channels are independent; a transmission
// occupies exactly one channel for [start, end) cycles. Carrier sensing has
// a one-cycle delay: a channel reads busy only if some other node's
// transmission was active in the previous cycle and still is. Two nodes that
// start in the same cycle on the same channel therefore collide; the
// collision is detected at the end of the preamble and the channel is wasted
// for just those cycles (or for the full packet with collision_full_loss).
class Medium {
 public:
  Medium(std::uint32_t n_nodes, std::uint32_t n_channels,
         std::uint32_t preamble_cycles, bool collision_full_loss);

  void begin_tx(NodeId node, ChannelId channel, Cycle start, std::uint32_t duration,
                PacketId packet);

  // Sense from `self`: own transmissions are excluded.
  bool busy(ChannelId channel, NodeId self, Cycle now) const;

  // Settles cycle t: marks collisions, truncates aborted transmissions,
  // accounts channel states, and returns transmissions ending at t+1.
  // The returned reference stays valid until the next resolve() call.
  const std::vector<Completion>& resolve(Cycle t, std::ostream* trace = nullptr);

  // Window accounting (reset at measurement start).
  void reset_accounting();
  const std::vector<std::uint64_t>& busy_cycles() const { return busy_cycles_; }
  const std::vector<std::uint64_t>& single_cycles() const { return single_cycles_; }
  std::uint64_t collision_cycles() const { return collision_cycles_; }
  // Whole-run count, never reset; token runs must keep this at zero.
  std::uint64_t total_collision_cycles() const { return total_collision_cycles_; }

  bool node_transmitting(NodeId node) const { return transmitting_[node]; }

 private:
  struct Tx {
    NodeId node;
    PacketId packet;
    Cycle start;
    Cycle end;
    bool collided;
  };

  std::uint32_t n_nodes_;
  std::uint32_t n_channels_;
  std::uint32_t preamble_cycles_;
  bool collision_full_loss_;
  std::vector<std::vector<Tx>> active_;  // per channel
  std::vector<std::uint8_t> transmitting_;
  std::vector<Completion> completions_;
  std::vector<std::uint64_t> busy_cycles_;    // any activity
  std::vector<std::uint64_t> single_cycles_;  // exactly one transmitter
  std::uint64_t collision_cycles_ = 0;
  std::uint64_t total_collision_cycles_ = 0;
};

}  // namespace wnoc
