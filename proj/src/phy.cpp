#include "wnoc/phy.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace wnoc {

Medium::Medium(std::uint32_t n_nodes, std::uint32_t n_channels,
               std::uint32_t preamble_cycles, bool collision_full_loss)
    : n_nodes_(n_nodes),
      n_channels_(n_channels),
      preamble_cycles_(preamble_cycles),
      collision_full_loss_(collision_full_loss),
      active_(n_channels),
      transmitting_(n_nodes, 0),
      busy_cycles_(n_channels, 0),
      single_cycles_(n_channels, 0) {}

void Medium::begin_tx(NodeId node, ChannelId channel, Cycle start,
                      std::uint32_t duration, PacketId packet) {
  if (channel >= n_channels_)
    throw ProtocolViolation("begin_tx: channel " + std::to_string(channel) +
                            " out of range");
  if (transmitting_[node])
    throw ProtocolViolation("begin_tx: node " + std::to_string(node) +
                            " is already transmitting");
  if (duration == 0) throw ProtocolViolation("begin_tx: zero duration");
  transmitting_[node] = 1;
  active_[channel].push_back(Tx{node, packet, start, start + duration, false});
}

bool Medium::busy(ChannelId channel, NodeId self, Cycle now) const {
  for (const Tx& tx : active_[channel])
    if (tx.node != self && tx.start < now && tx.end > now) return true;
  return false;
}

const std::vector<Completion>& Medium::resolve(Cycle t, std::ostream* trace) {
  completions_.clear();
  for (ChannelId ch = 0; ch < n_channels_; ++ch) {
    auto& v = active_[ch];
    if (v.empty()) continue;

    ChannelState state = v.size() == 1 ? ChannelState::Single : ChannelState::Collision;
    if (state == ChannelState::Collision) {
      // Every participant learns at the end of its preamble; unless the
      // full-loss knob is set, the channel is then released.
      for (Tx& tx : v) {
        if (tx.collided) continue;
        tx.collided = true;
        if (!collision_full_loss_) tx.end = std::max(t + 1, tx.start + preamble_cycles_);
      }
      ++collision_cycles_;
      ++total_collision_cycles_;
    } else {
      ++single_cycles_[ch];
    }
    ++busy_cycles_[ch];

    if (trace) {
      *trace << t << ' ' << ch << ' '
             << (state == ChannelState::Single ? "single" : "collision");
      for (const Tx& tx : v) *trace << ' ' << tx.node;
      *trace << '\n';
    }

    // Completions keep channel order, then start order within the channel,
    // which is the order begin_tx was called in; the whole pipeline stays
    // deterministic.
    std::erase_if(v, [&](const Tx& tx) {
      if (tx.end != t + 1) return false;
      completions_.push_back(Completion{tx.node, ch, tx.packet, tx.end, !tx.collided});
      transmitting_[tx.node] = 0;
      return true;
    });
  }
  return completions_;
}

void Medium::reset_accounting() {
  std::fill(busy_cycles_.begin(), busy_cycles_.end(), 0);
  std::fill(single_cycles_.begin(), single_cycles_.end(), 0);
  collision_cycles_ = 0;
}

}  // namespace wnoc
