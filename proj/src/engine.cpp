#include "wnoc/engine.hpp"

#include <memory>
#include <ostream>
#include <string>

#include "wnoc/assign.hpp"
#include "wnoc/phy.hpp"
#include "wnoc/traffic.hpp"

namespace wnoc {

namespace {

// Destination stream, only materialized when a traffic trace is requested;
// results are unaffected because it draws from its own streams.
struct DestDraw {
  std::vector<Rng> rng;
  NodeId operator()(NodeId source, std::uint32_t n) {
    auto d = static_cast<NodeId>(rng[source].uniform_int(0, n - 2));
    return d >= source ? d + 1 : d;  // uniform over the other nodes
  }
};

}  // namespace

RunResult run(const SimConfig& raw, const RunOptions& opt) {
  const SimConfig cfg = validate_config(raw);
  const std::uint32_t n = cfg.n_nodes;
  const Cycle warmup = cfg.warmup_cycles;
  const Cycle total = warmup + cfg.measure_cycles;

  const std::vector<double> weights = spatial_weights(n, cfg.sigma, cfg.hotspot_node);
  std::vector<double> loads(n);
  for (std::uint32_t i = 0; i < n; ++i) loads[i] = cfg.offered_load * weights[i];

  std::vector<ArrivalProcess> arrivals;
  if (!opt.replay) {
    arrivals.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
      arrivals.emplace_back(loads[i], cfg.hurst, Rng(cfg.seed, StreamPurpose::Arrival, i));
  } else {
    Cycle prev = 0;
    for (const auto& [t, node] : *opt.replay) {
      if (t < prev) throw ConfigError("replay: arrivals must be sorted by cycle");
      if (node >= n) throw ConfigError("replay: node id out of range");
      prev = t;
    }
  }

  DestDraw dest;
  if (opt.traffic_trace) {
    dest.rng.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
      dest.rng.emplace_back(cfg.seed, StreamPurpose::Destination, i);
  }

  Medium medium(n, cfg.n_channels, cfg.preamble_cycles(), cfg.collision_full_loss);
  Queues queues(n);

  std::unique_ptr<BrsMac> brs;
  std::unique_ptr<TokenMac> token;
  if (cfg.protocol == Protocol::Brs) {
    std::vector<ChannelId> static_map;  // empty = random channel per attempt
    if (cfg.assignment == Assignment::AS2)
      static_map = uniform_static(n, cfg.n_channels);
    else if (cfg.assignment == Assignment::AS3)
      static_map = greedy_balanced(loads, cfg.n_channels);
    brs = std::make_unique<BrsMac>(cfg, std::move(static_map), &medium, &queues);
  } else {
    token = std::make_unique<TokenMac>(cfg, build_rings(cfg, loads), &medium, &queues);
  }

  RunResult res;
  res.warmup_cycles = warmup;
  res.measure_cycles = cfg.measure_cycles;
  res.seed = cfg.seed;

  PacketId next_id = 1;
  std::size_t replay_pos = 0;
  std::vector<Cycle> last_delivered_gen(n, 0);

  auto enqueue = [&](NodeId node, Cycle t) {
    queues[node].push_back(PacketRecord{next_id++, node, 0, t, 0});
    ++res.generated_total;
    if (t >= warmup) ++res.generated_in_window;
    if (opt.traffic_trace)
      *opt.traffic_trace << t << ' ' << node << ' ' << dest(node, n) << '\n';
  };

  for (Cycle t = 0; t < total; ++t) {
    if (opt.replay) {
      while (replay_pos < opt.replay->size() && (*opt.replay)[replay_pos].first == t)
        enqueue((*opt.replay)[replay_pos++].second, t);
    } else {
      for (std::uint32_t node = 0; node < n; ++node)
        if (arrivals[node].poll(t)) enqueue(node, t);
    }

    if (brs)
      brs->step_all(t);
    else
      token->step_all(t);

    for (const Completion& c : medium.resolve(t, opt.phy_trace)) {
      if (!c.success) {
        if (!brs) throw ProtocolViolation("token run produced a collision");
        brs->on_collision(c.node);
        continue;
      }
      auto& q = queues[c.node];
      if (q.empty() || q.front().id != c.packet)
        throw ProtocolViolation("delivery does not match queue head");
      PacketRecord pkt = q.front();
      q.pop_front();
      if (pkt.generated_at < last_delivered_gen[c.node])
        throw ProtocolViolation("per-node FIFO order violated");
      last_delivered_gen[c.node] = pkt.generated_at;
      ++res.delivered_total;
      // Count a delivery when its last occupied cycle is inside the window.
      if (c.end > warmup && c.end <= total) ++res.delivered_in_window;
      if (pkt.generated_at >= warmup)
        res.latency_samples.push_back(static_cast<std::uint32_t>(c.end - pkt.generated_at));
      if (brs)
        brs->on_success(c.node);
      else
        token->on_tx_complete(c.node, c.end);
    }

    if (t + 1 == warmup) {
      medium.reset_accounting();
      if (brs)
        brs->reset_counters();
      else
        token->reset_counters();
    }
  }

  for (const auto& q : queues) res.backlog += q.size();
  if (res.generated_total != res.delivered_total + res.backlog)
    throw ProtocolViolation("packet conservation violated: generated " +
                            std::to_string(res.generated_total) + " != delivered " +
                            std::to_string(res.delivered_total) + " + backlog " +
                            std::to_string(res.backlog));
  if (token && medium.total_collision_cycles() != 0)
    throw ProtocolViolation("token run produced collisions");

  const auto m = static_cast<double>(cfg.measure_cycles);
  res.channel_utilization.resize(cfg.n_channels);
  res.channel_single_fraction.resize(cfg.n_channels);
  for (std::uint32_t ch = 0; ch < cfg.n_channels; ++ch) {
    res.channel_utilization[ch] = static_cast<double>(medium.busy_cycles()[ch]) / m;
    res.channel_single_fraction[ch] =
        static_cast<double>(medium.single_cycles()[ch]) / m;
  }
  res.collision_cycles = medium.collision_cycles();
  if (brs) {
    const BrsCounters& bc = brs->counters();
    res.collisions = bc.collisions;
    res.busy_senses = bc.busy_senses;
    res.backoff_draws = bc.backoff_draws;
    res.max_backoff_exponent = bc.max_exponent;
  } else {
    const TokenCounters& tc = token->counters();
    res.token_hops = tc.hops;
    res.token_jumps = tc.jumps;
    res.token_idle_visits = tc.idle_visits;
  }
  return res;
}

}  // namespace wnoc
