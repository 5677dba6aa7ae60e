#include "wnoc/mac_token.hpp"

#include <algorithm>
#include <string>

#include "wnoc/assign.hpp"

namespace wnoc {

RingPlan build_rings(const SimConfig& cfg, std::span<const double> loads) {
  RingPlan plan;
  const std::uint32_t n = cfg.n_nodes;
  const std::uint32_t nc = cfg.n_channels;
  if (cfg.assignment == Assignment::AS2) {
    Ring all;
    all.members.resize(n);
    for (NodeId i = 0; i < n; ++i) all.members[i] = i;
    plan.rings.push_back(std::move(all));
    for (std::uint32_t k = 0; k < nc; ++k)
      plan.token_start.emplace_back(0u, static_cast<std::uint32_t>(
                                            (std::uint64_t{k} * n) / nc));
    return plan;
  }
  const std::vector<std::uint32_t> map =
      cfg.assignment == Assignment::AS1 ? uniform_static(n, nc)
                                        : greedy_balanced(loads, nc);
  plan.rings.resize(nc);
  for (NodeId i = 0; i < n; ++i) plan.rings[map[i]].members.push_back(i);
  for (std::uint32_t k = 0; k < nc; ++k) {
    if (plan.rings[k].members.empty())
      throw ProtocolViolation("build_rings: empty ring " + std::to_string(k));
    plan.token_start.emplace_back(k, 0u);
  }
  return plan;
}

TokenMac::TokenMac(const SimConfig& cfg, RingPlan plan, Medium* medium, Queues* queues)
    : duration_(cfg.packet_cycles()),
      hop_(cfg.token_hop_cycles),
      limit_(cfg.token_service_limit),
      medium_(medium),
      queues_(queues),
      rings_(std::move(plan.rings)),
      holder_token_(cfg.n_nodes, kNoToken) {
  for (std::size_t k = 0; k < rings_.size(); ++k)
    if (rings_[k].members.empty())
      throw ProtocolViolation("token: empty ring " + std::to_string(k));
  tokens_.reserve(plan.token_start.size());
  for (const auto& [ring, pos] : plan.token_start) {
    if (ring >= rings_.size() || pos >= rings_[ring].members.size())
      throw ProtocolViolation("token: start position outside its ring");
    tokens_.push_back(Token{ring, pos, true, 0, 0, false, 0});
  }
}

void TokenMac::depart(std::uint32_t id, Cycle t) {
  Token& tok = tokens_[id];
  if (!tok.in_transit) {
    holder_token_[tok.holder] = kNoToken;
    tok.in_transit = true;
  }
  tok.position = (tok.position + 1) % rings_[tok.ring].members.size();
  tok.arrives_at = t + hop_;
  tok.served = 0;
  tok.start_tx = false;
  ++counters_.hops;
}

void TokenMac::step_all(Cycle t) {
  // Held tokens whose previous packet just completed start the next one
  // before arrivals are handled, keeping the medium state consistent.
  for (std::uint32_t id = 0; id < tokens_.size(); ++id) {
    Token& tok = tokens_[id];
    if (tok.in_transit || !tok.start_tx) continue;
    tok.start_tx = false;
    auto& q = (*queues_)[tok.holder];
    if (q.empty())
      throw ProtocolViolation("token: scheduled transmission without a packet");
    medium_->begin_tx(tok.holder, static_cast<ChannelId>(id), t, duration_,
                      q.front().id);
  }
  for (std::uint32_t id = 0; id < tokens_.size(); ++id) {
    Token& tok = tokens_[id];
    if (!tok.in_transit || tok.arrives_at != t) continue;
    const NodeId dest = rings_[tok.ring].members[tok.position];
    if (holder_token_[dest] != kNoToken) {
      // Occupied node on the shared ring: skip it, one extra hop of delay.
      ++counters_.jumps;
      tok.position = (tok.position + 1) % rings_[tok.ring].members.size();
      tok.arrives_at = t + hop_;
      ++counters_.hops;
      continue;
    }
    if ((*queues_)[dest].empty()) {
      ++counters_.idle_visits;
      depart(id, t);
      continue;
    }
    tok.in_transit = false;
    tok.holder = dest;
    tok.served = 0;
    holder_token_[dest] = id;
    medium_->begin_tx(dest, static_cast<ChannelId>(id), t, duration_,
                      (*queues_)[dest].front().id);
  }
}

void TokenMac::on_tx_complete(NodeId node, Cycle t_end) {
  const std::uint32_t id = holder_token_[node];
  if (id == kNoToken)
    throw ProtocolViolation("token: completion for a node holding no token");
  Token& tok = tokens_[id];
  ++tok.served;
  const bool more = !(*queues_)[node].empty() && (limit_ == 0 || tok.served < limit_);
  if (more)
    tok.start_tx = true;  // back to back, next packet starts at t_end
  else
    depart(id, t_end);
}

}  // namespace wnoc
