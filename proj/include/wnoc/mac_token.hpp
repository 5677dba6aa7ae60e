#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "wnoc/config.hpp"
#include "wnoc/mac_brs.hpp"  // Queues
#include "wnoc/phy.hpp"

namespace wnoc {

struct Ring {
  std::vector<NodeId> members;
};

struct TokenCounters {
  std::uint64_t hops = 0;
  std::uint64_t jumps = 0;        // skips over a holding node (single ring only)
  std::uint64_t idle_visits = 0;  // visits that served no packet
};

struct RingPlan {
  std::vector<Ring> rings;
  // Initial (ring, position) per token; token i is bound to channel i.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> token_start;
};

// AS1: n_channels contiguous rings of near-equal size, token at member 0.
// AS2: one ring of all nodes, tokens spread at floor(k*N/Nc).
// AS3: rings built by load-balancing greedy assignment, token at member 0.
RingPlan build_rings(const SimConfig& cfg, std::span<const double> loads);

// Token-passing MAC. A token arriving at a node with queued packets
// transmits immediately on the token's channel; otherwise it departs in the
// same cycle. After each packet the token departs unless the service limit
// allows another. Every hop costs token_hop_cycles. On the shared ring
// (AS2) a token arriving at a node that already holds one jumps to the next
// position, paying one extra hop per skip.
class TokenMac {
 public:
  TokenMac(const SimConfig& cfg, RingPlan plan, Medium* medium, Queues* queues);

  void step_all(Cycle t);
  // Transmission of the token held by `node` finished at cycle end `t_end`.
  void on_tx_complete(NodeId node, Cycle t_end);

  const TokenCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = TokenCounters{}; }
  const std::vector<Ring>& rings() const { return rings_; }

 private:
  struct Token {
    std::uint32_t ring;
    std::uint32_t position;
    bool in_transit;
    Cycle arrives_at;
    NodeId holder;        // valid when !in_transit
    bool start_tx;        // held, next packet starts on the coming step
    std::uint32_t served;  // packets sent during the current visit
  };

  static constexpr std::uint32_t kNoToken = 0xffffffffu;

  void depart(std::uint32_t id, Cycle t);

  std::uint32_t duration_;
  std::uint32_t hop_;
  std::uint32_t limit_;
  Medium* medium_;
  Queues* queues_;
  std::vector<Ring> rings_;
  std::vector<Token> tokens_;
  std::vector<std::uint32_t> holder_token_;  // node -> token id or kNoToken
  TokenCounters counters_;
};

}  // namespace wnoc
