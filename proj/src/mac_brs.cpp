#include "wnoc/mac_brs.hpp"

#include <algorithm>

namespace wnoc {

std::uint32_t backoff_window(std::uint32_t c, std::uint32_t w0, std::uint32_t cmax) {
  return w0 << std::min(c, cmax);
}

BrsMac::BrsMac(const SimConfig& cfg, std::vector<ChannelId> static_map, Medium* medium,
               Queues* queues)
    : n_(cfg.n_nodes),
      n_channels_(cfg.n_channels),
      duration_(cfg.packet_cycles()),
      w0_(cfg.brs_w0),
      cmax_(cfg.brs_cmax),
      random_channel_(static_map.empty()),
      static_map_(std::move(static_map)),
      medium_(medium),
      queues_(queues),
      nodes_(cfg.n_nodes) {
  for (NodeId node = 0; node < n_; ++node) {
    nodes_[node].backoff_rng = Rng(cfg.seed, StreamPurpose::BrsBackoff, node);
    nodes_[node].channel_rng = Rng(cfg.seed, StreamPurpose::BrsChannel, node);
  }
}

void BrsMac::draw_backoff(NodeState& st) {
  const std::uint32_t w = backoff_window(st.exponent, w0_, cmax_);
  st.backoff_remaining =
      static_cast<std::uint32_t>(st.backoff_rng.uniform_int(1, w));
  st.phase = Phase::Backoff;
  ++counters_.backoff_draws;
}

void BrsMac::step_all(Cycle t) {
  for (NodeId node = 0; node < n_; ++node) {
    NodeState& st = nodes_[node];
    if (st.pending_collision) {
      // Feedback from the aborted attempt: escalate and retry later. The
      // exponent only ever grows here; a busy sense below re-draws from the
      // current window without escalating.
      st.pending_collision = false;
      ++st.exponent;
      counters_.max_exponent = std::max(counters_.max_exponent, st.exponent);
      ++counters_.collisions;
      draw_backoff(st);
      continue;
    }
    if (st.phase == Phase::Backoff) {
      if (--st.backoff_remaining > 0) continue;
      st.phase = Phase::Idle;  // attempt this same cycle
    }
    if (st.phase != Phase::Idle) continue;
    auto& q = (*queues_)[node];
    if (q.empty()) continue;
    const ChannelId ch = random_channel_
                             ? random_channel(st.channel_rng, n_channels_)
                             : static_map_[node];
    if (medium_->busy(ch, node, t)) {
      ++counters_.busy_senses;
      draw_backoff(st);
    } else {
      medium_->begin_tx(node, ch, t, duration_, q.front().id);
      st.phase = Phase::Transmitting;
    }
  }
}

void BrsMac::on_success(NodeId node) {
  NodeState& st = nodes_[node];
  st.phase = Phase::Idle;
  st.exponent = 0;
}

void BrsMac::on_collision(NodeId node) {
  NodeState& st = nodes_[node];
  st.phase = Phase::Idle;
  st.pending_collision = true;
}

}  // namespace wnoc
