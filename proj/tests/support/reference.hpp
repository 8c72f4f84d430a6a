#pragma once

// Independent reference computations for the test suites. Nothing here calls the
// solvers or the oracle it is used to check; only the instance model and
// earliest_schedule (itself checked against candidate-time search) are shared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "uwvrp/uwvrp.hpp"

namespace uwvrp::ref {

/// Tree distance by walking parent pointers from v back to u.
inline Ratio path_walk_distance(const Instance& inst, NodeId u, NodeId v) {
  std::vector<std::vector<std::pair<NodeId, Ratio>>> adj(inst.node_count());
  for (const Edge& e : inst.edges()) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<NodeId> parent(inst.node_count(), -2);
  std::vector<Ratio> up(inst.node_count());
  std::vector<NodeId> stack{u};
  parent[u] = -1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (const auto& [y, w] : adj[x])
      if (parent[y] == -2) {
        parent[y] = x;
        up[y] = w;
        stack.push_back(y);
      }
  }
  Ratio sum = 0;
  for (NodeId x = v; x != u; x = parent[x]) sum += up[x];
  return sum / inst.speed();
}

struct BestValue {
  Ratio profit = 0;
  Ratio min_cost = 0;  // cheapest run among those with maximum profit
};

inline Ratio order_cost(const Instance& inst, const std::vector<RequestIndex>& order) {
  Ratio c = 0;
  for (std::size_t i = 1; i < order.size(); ++i)
    c += inst.distance(inst.request(order[i - 1]).node, inst.request(order[i]).node);
  return c;
}

/// Plain enumeration of every subset and every order of it.
inline BestValue unpruned_best(const Instance& inst, const WindowMap& windows, const std::vector<RequestIndex>& ids) {
  BestValue best;
  const std::uint64_t full = std::uint64_t{1} << ids.size();
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    std::vector<RequestIndex> order;
    Ratio profit = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask >> i & 1) {
        order.push_back(ids[i]);
        profit += inst.request(ids[i]).profit;
      }
    if (profit < best.profit) continue;
    do {
      if (!earliest_schedule(inst, order, windows)) continue;
      Ratio cost = order_cost(inst, order);
      if (profit > best.profit || cost < best.min_cost) {
        best.profit = profit;
        best.min_cost = cost;
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return best;
}

inline std::vector<RequestIndex> window_ids(const WindowMap& windows) {
  std::vector<RequestIndex> ids;
  for (const auto& [id, w] : windows) ids.push_back(id);
  return ids;
}

/// k disjoint runs: every assignment of requests to {none, run 1..k}, each run
/// checked by trying all of its orders.
inline Ratio unpruned_k_opt(const Instance& inst, long k, const WindowMap& windows) {
  std::vector<RequestIndex> ids = window_ids(windows);
  std::map<std::uint64_t, bool> feasible;
  auto run_ok = [&](std::uint64_t mask) {
    auto it = feasible.find(mask);
    if (it != feasible.end()) return it->second;
    std::vector<RequestIndex> order;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask >> i & 1) order.push_back(ids[i]);
    bool ok = false;
    do ok = earliest_schedule(inst, order, windows).has_value();
    while (!ok && std::next_permutation(order.begin(), order.end()));
    return feasible[mask] = ok;
  };

  Ratio best = 0;
  std::vector<long> assign(ids.size(), 0);
  while (true) {
    std::vector<std::uint64_t> masks(k + 1, 0);
    for (std::size_t i = 0; i < ids.size(); ++i) masks[assign[i]] |= std::uint64_t{1} << i;
    bool ok = true;
    for (long j = 1; j <= k && ok; ++j) ok = run_ok(masks[j]);
    if (ok) {
      Ratio p = 0;
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (assign[i] != 0) p += inst.request(ids[i]).profit;
      if (p > best) best = p;
    }
    std::size_t pos = 0;
    while (pos < assign.size() && assign[pos] == k) assign[pos++] = 0;
    if (pos == assign.size()) break;
    ++assign[pos];
  }
  return best;
}

/// Whether some timing of `order` (up to three requests) is feasible, trying
/// service times of the form window start of an earlier request plus the travel
/// times accumulated since it.
inline bool candidate_time_feasible(const Instance& inst, const std::vector<RequestIndex>& order,
                                    const WindowMap& windows) {
  const std::size_t n = order.size();
  std::vector<std::vector<Ratio>> cands(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Ratio t = windows.at(order[j]).start;
      for (std::size_t l = j; l < i; ++l) t += inst.distance(inst.request(order[l]).node, inst.request(order[l + 1]).node);
      cands[i].push_back(t);
    }
  std::vector<Ratio> pick(n);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return true;
    for (const Ratio& t : cands[i]) {
      if (!windows.at(order[i]).contains(t)) continue;
      if (i > 0 && t - pick[i - 1] < inst.distance(inst.request(order[i - 1]).node, inst.request(order[i]).node))
        continue;
      pick[i] = t;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

/// Random connected general graph: a random tree plus extra edges (which may close cycles).
inline Instance random_general_instance(int nodes, int requests, const Ratio& horizon, std::uint64_t seed) {
  Instance tree = generate_random_instance(nodes, requests, horizon, seed);
  std::vector<Edge> edges = tree.edges();
  std::mt19937_64 rng(seed ^ 0xA5A5A5A5ULL);
  for (int extra = 0; extra < nodes / 2; ++extra) {
    NodeId u = static_cast<NodeId>(rng() % nodes), v = static_cast<NodeId>(rng() % nodes);
    if (u != v) edges.push_back({u, v, make_ratio(static_cast<long>(1 + rng() % 8), 8)});
  }
  return Instance("general-" + std::to_string(seed), MetricKind::general, nodes, edges, tree.requests());
}

}  // namespace uwvrp::ref
