#pragma once

// Seeded instance generators. Output depends only on the arguments: the engine is
// std::mt19937_64 (fully specified by the standard) and bounded draws use
// rejection sampling instead of the implementation-defined distributions.

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "uwvrp/schedule.hpp"

namespace uwvrp {

namespace detail {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  int node(int count) { return static_cast<int>(below(static_cast<std::uint64_t>(count))); }

 private:
  std::mt19937_64 engine_;
};

inline const std::vector<Ratio>& weight_grid() {
  static const std::vector<Ratio> grid = {Ratio(1, 8), Ratio(1, 4), Ratio(3, 8), Ratio(1, 2), Ratio(3, 4), Ratio(1)};
  return grid;
}

/// Uniform-attachment random tree: node i hangs off a uniformly chosen earlier node.
inline std::vector<Edge> random_tree(int node_count, Draw& draw) {
  std::vector<Edge> edges;
  for (int v = 1; v < node_count; ++v)
    edges.push_back({draw.node(v), v, weight_grid()[draw.below(weight_grid().size())]});
  return edges;
}

inline std::string request_id(std::size_t i, std::size_t count) {
  std::string digits = std::to_string(i);
  std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  return "r" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace detail

/// Random tree instance. Edge weights come from {1/8, 1/4, 3/8, 1/2, 3/4, 1},
/// releases from the 1/8 grid strictly inside (0, horizon - 1), profits from {1, 2, 3}.
inline Instance generate_random_instance(int node_count, int request_count, const Ratio& horizon, std::uint64_t seed) {
  if (node_count < 1 || request_count < 1) throw std::invalid_argument("counts must be at least 1");
  if (horizon <= 1) throw std::invalid_argument("horizon must exceed 1");
  std::int64_t slots = ceil_to_int(Ratio(8 * (horizon - 1))) - 1;
  if (slots < 1) throw std::invalid_argument("horizon leaves no release grid points");

  detail::Draw draw(seed);
  std::vector<Edge> edges = detail::random_tree(node_count, draw);
  std::vector<Request> requests;
  for (int i = 0; i < request_count; ++i) {
    Ratio release = make_ratio(static_cast<long>(1 + draw.below(static_cast<std::uint64_t>(slots))), 8);
    int node = draw.node(node_count);
    Ratio profit(static_cast<long>(1 + draw.below(3)));
    requests.push_back({detail::request_id(i, request_count), node, release, profit});
  }
  std::string name = "random-" + std::to_string(node_count) + "-" + std::to_string(request_count) + "-" +
                     std::to_string(seed);
  return Instance(name, MetricKind::tree, node_count, std::move(edges), std::move(requests));
}

struct FeasibleInstance {
  Instance instance;
  Run witness;  // serves every request inside its original window
};

/// Instance for which one vehicle provably suffices: a random timed walk on a
/// random tree is laid down first, and each request is planted at a stop of the
/// walk with a release that puts the stop time inside its window.
inline FeasibleInstance generate_feasible_opt1_instance(int node_count, int request_count, std::uint64_t seed) {
  if (node_count < 1 || request_count < 1) throw std::invalid_argument("counts must be at least 1");
  detail::Draw draw(seed);
  std::vector<Edge> edges = detail::random_tree(node_count, draw);
  Instance graph("scratch", MetricKind::tree, node_count, edges, {});

  struct Stop {
    NodeId node;
    Ratio time;
    std::string id;
  };
  std::vector<Stop> stops;
  std::vector<Request> requests;
  NodeId at = draw.node(node_count);
  Ratio t = make_ratio(static_cast<long>(8 + draw.below(8)), 8);
  for (int i = 0; i < request_count; ++i) {
    std::string id = detail::request_id(i, request_count);
    Ratio release = t - make_ratio(static_cast<long>(draw.below(8)), 8);
    Ratio profit(static_cast<long>(1 + draw.below(3)));
    requests.push_back({id, at, release, profit});
    stops.push_back({at, t, id});
    NodeId next = draw.node(node_count);
    t += graph.distance(at, next) + make_ratio(static_cast<long>(draw.below(5)), 8);
    at = next;
  }

  std::string name = "opt1-" + std::to_string(node_count) + "-" + std::to_string(request_count) + "-" +
                     std::to_string(seed);
  FeasibleInstance out{Instance(name, MetricKind::tree, node_count, std::move(edges), std::move(requests)),
                       Run{"witness", {}}};
  for (const Stop& s : stops) {
    RequestIndex id = out.instance.index_of(s.id);
    auto& visits = out.witness.visits;
    if (!visits.empty() && visits.back().node == s.node && visits.back().time == s.time)
      visits.back().served.push_back(id);
    else
      visits.push_back({s.node, s.time, {id}});
  }
  return out;
}

}  // namespace uwvrp
