#pragma once

// Single-vehicle solvers on trimmed instances (every effective window is one grid
// period), and the trim-then-solve wrapper for untrimmed unit windows.
//
// solve_trimmed_exact is the reference: an exhaustive search over service
// sequences. solve_trimmed_tree_dp is the scalable solver for tree metrics and is
// held to exact profit equality with the reference by the test suite.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "uwvrp/schedule.hpp"
#include "uwvrp/windows.hpp"

namespace uwvrp {

/// gamma is the sub-optimality factor of the trimmed-window solver (1 for both
/// solvers here); trimming costs another factor 3 on untrimmed windows.
struct SolverGuarantee {
  Ratio gamma = 1;

  Ratio overall_factor() const { return Ratio(3 * gamma); }
};

enum class TrimmedSolver { automatic, exact, tree_dp };

inline constexpr std::size_t default_exact_guard = 12;

namespace detail {

/// Depth-first search over service sequences in ascending id order. A prefix is
/// dropped when another prefix with the same served set, ending at the same node,
/// was reached no later and no costlier; that earlier prefix is also
/// lexicographically smaller, so the first best sequence found stays the
/// lexicographically smallest among the (max profit, min cost) optima.
class ExactSearch {
 public:
  ExactSearch(const Instance& inst, const WindowMap& windows, const std::set<RequestIndex>& available)
      : inst_(inst) {
    for (RequestIndex id : available) {
      auto w = windows.find(id);
      if (id >= inst.request_count() || w == windows.end())
        throw UnknownId("request index " + std::to_string(id) + " has no window");
      const Request& r = inst.request(id);
      candidates_.push_back({id, r.node, w->second.start, w->second.end, r.profit});
    }
  }

  std::vector<RequestIndex> solve() {
    search(0, -1, Ratio(0), Ratio(0), Ratio(0));
    return best_;
  }

 private:
  struct Candidate {
    RequestIndex id;
    NodeId node;
    Ratio start;
    Ratio end;
    Ratio profit;
  };

  struct Label {
    Ratio time;
    Ratio cost;
  };

  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, NodeId>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(k.second));
    }
  };

  // false if dominated; otherwise records the label and drops labels it dominates
  bool admit(std::uint64_t mask, NodeId node, const Ratio& time, const Ratio& cost) {
    auto& bucket = labels_[{mask, node}];
    for (const Label& l : bucket)
      if (l.time <= time && l.cost <= cost) return false;
    std::erase_if(bucket, [&](const Label& l) { return time <= l.time && cost <= l.cost; });
    bucket.push_back({time, cost});
    return true;
  }

  void search(std::uint64_t mask, NodeId node, const Ratio& time, const Ratio& cost, const Ratio& profit) {
    if (profit > best_profit_ || (profit == best_profit_ && cost < best_cost_)) {
      best_profit_ = profit;
      best_cost_ = cost;
      best_ = prefix_;
    }

    Ratio reachable = profit;
    for (std::size_t i = 0; i < candidates_.size(); ++i)
      if (!(mask >> i & 1) && (node < 0 || candidates_[i].end > time)) reachable += candidates_[i].profit;
    if (reachable < best_profit_ || (reachable == best_profit_ && cost >= best_cost_)) return;

    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      if (mask >> i & 1) continue;
      const Candidate& c = candidates_[i];
      Ratio t = c.start;
      Ratio next_cost = cost;
      if (node >= 0) {
        const Ratio& d = inst_.distances()(node, c.node);
        Ratio arrival = time + d;
        if (arrival > t) t = arrival;
        next_cost += d;
      }
      if (t >= c.end) continue;
      std::uint64_t next_mask = mask | (std::uint64_t{1} << i);
      if (!admit(next_mask, c.node, t, next_cost)) continue;
      prefix_.push_back(c.id);
      search(next_mask, c.node, t, next_cost, Ratio(profit + c.profit));
      prefix_.pop_back();
    }
  }

  const Instance& inst_;
  std::vector<Candidate> candidates_;
  std::unordered_map<std::pair<std::uint64_t, NodeId>, std::vector<Label>, KeyHash> labels_;
  std::vector<RequestIndex> prefix_;
  std::vector<RequestIndex> best_;
  Ratio best_profit_ = 0;
  Ratio best_cost_ = 0;
};

/// Service order of a maximum-profit, minimum-cost run over arbitrary windows.
inline std::vector<RequestIndex> exact_best_order(const Instance& inst, const WindowMap& windows,
                                                  const std::set<RequestIndex>& available, std::size_t guard) {
  if (available.size() > guard || available.size() > 64) throw GuardExceeded(available.size(), guard);
  return ExactSearch(inst, windows, available).solve();
}

inline Run schedule_or_throw(const Instance& inst, const std::vector<RequestIndex>& order, const WindowMap& windows) {
  auto run = earliest_schedule(inst, order, windows);
  if (!run) throw std::logic_error("solver produced an infeasible service order");
  return *std::move(run);
}

/// Exact solver for trimmed windows on a tree.
///
/// All requests of one period share one window, so a run decomposes into
/// per-period segments. A segment enters the period at a request node a, leaves
/// from a request node b and serves the node set S of a subtree containing a and
/// b; the shortest such walk is 2*W(S) - d(a, b). Per period and per (a, b) a
/// subtree DP yields the Pareto frontier of (walk length, profit). Segments are
/// stitched period by period with labels (exit node, time, profit, cost) under
/// three-way dominance.
class TreeDp {
 public:
  TreeDp(const TrimmedInstance& t, const std::set<RequestIndex>& available) : inst_(t.instance()), trimmed_(t) {
    if (!inst_.is_tree()) throw ValidationError("tree DP requires a tree metric");
    adj_.resize(inst_.node_count());
    for (const Edge& e : inst_.edges()) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    for (RequestIndex id : available) {
      auto it = t.assignment.find(id);
      if (it == t.assignment.end()) throw UnknownId("request index " + std::to_string(id) + " is not in the trimmed instance");
      periods_[it->second][inst_.request(id).node].push_back(id);
    }
  }

  std::vector<RequestIndex> solve() {
    labels_.push_back({-1, Ratio(0), Ratio(0), Ratio(0), -1, 0, -1});
    std::vector<int> live{0};
    for (const auto& [period, by_node] : periods_) {
      Window w = trimmed_.grid.period(period);
      segments_.emplace_back(period_segments(by_node, w.length()));
      group_requests_.push_back(&by_node);
      int seg_group = static_cast<int>(segments_.size()) - 1;
      const auto& segs = segments_.back();

      std::vector<int> grown = live;
      for (int li : live) {
        for (std::size_t si = 0; si < segs.size(); ++si) {
          const Segment& g = segs[si];
          const StitchLabel& from = labels_[li];
          Ratio t1 = w.start;
          Ratio move = 0;
          if (from.node >= 0) {
            move = inst_.distances()(from.node, g.entry);
            Ratio arrival = from.time + move;
            if (arrival > t1) t1 = arrival;
          }
          Ratio exit = t1 + g.walk;
          if (exit >= w.end) continue;
          labels_.push_back({g.exit, exit, Ratio(from.profit + g.profit), Ratio(from.cost + move + g.walk), li,
                             seg_group, static_cast<int>(si)});
          grown.push_back(static_cast<int>(labels_.size()) - 1);
        }
      }
      live = prune(grown);
    }

    int best = 0;
    for (int li : live) {
      const StitchLabel& l = labels_[li];
      const StitchLabel& b = labels_[best];
      if (l.profit > b.profit || (l.profit == b.profit && l.cost < b.cost)) best = li;
    }
    return reconstruct(best);
  }

 private:
  struct Segment {
    NodeId entry;
    NodeId exit;
    Ratio walk;
    Ratio profit;
    std::vector<NodeId> nodes;  // sorted
  };

  struct Partial {
    Ratio doubled;  // 2 * W(subtree)
    Ratio profit;
    std::vector<NodeId> nodes;
  };

  struct StitchLabel {
    NodeId node;  // -1 before the first service
    Ratio time;
    Ratio profit;
    Ratio cost;
    int parent;
    int seg_group;
    int seg;
  };

  using NodeRequests = std::map<NodeId, std::vector<RequestIndex>>;

  // keeps entries whose profit strictly beats every shorter-or-equal entry
  static std::vector<Partial> pareto(std::vector<Partial> v) {
    std::stable_sort(v.begin(), v.end(), [](const Partial& a, const Partial& b) {
      int c = cmp(a.doubled, b.doubled);
      return c < 0 || (c == 0 && a.profit > b.profit);
    });
    std::vector<Partial> out;
    for (Partial& p : v)
      if (out.empty() || p.profit > out.back().profit) out.push_back(std::move(p));
    return out;
  }

  std::vector<Segment> period_segments(const NodeRequests& by_node, const Ratio& budget) const {
    std::vector<Ratio> gain(inst_.node_count());
    for (const auto& [node, ids] : by_node)
      for (RequestIndex id : ids) gain[node] += inst_.request(id).profit;

    std::vector<Segment> out;
    for (const auto& [a, ids_a] : by_node) {
      std::vector<NodeId> parent(inst_.node_count(), -1), order;
      root_at(a, parent, order);
      for (const auto& [b, ids_b] : by_node) {
        const Ratio& dab = inst_.distances()(a, b);
        Ratio limit = budget + dab;  // walk = doubled - d(a,b) must stay below the budget
        std::vector<NodeId> toward_b(inst_.node_count(), -1);
        for (NodeId x = b; x != a; x = parent[x]) toward_b[parent[x]] = x;

        std::vector<std::vector<Partial>> f(inst_.node_count());
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
          NodeId x = *it;
          std::vector<Partial> cur{{Ratio(0), gain[x], {x}}};
          for (NodeId c : adj_[x]) {
            if (c == parent[x]) continue;
            Ratio twice = 2 * inst_.distances()(x, c);
            std::vector<Partial> next;
            if (c != toward_b[x]) next = cur;
            for (const Partial& p : cur)
              for (const Partial& q : f[c]) {
                Ratio len = p.doubled + q.doubled + twice;
                if (len >= limit) continue;
                std::vector<NodeId> nodes;
                std::merge(p.nodes.begin(), p.nodes.end(), q.nodes.begin(), q.nodes.end(), std::back_inserter(nodes));
                next.push_back({std::move(len), Ratio(p.profit + q.profit), std::move(nodes)});
              }
            cur = pareto(std::move(next));
          }
          f[x] = std::move(cur);
          for (NodeId c : adj_[x])
            if (c != parent[x]) std::vector<Partial>().swap(f[c]);
        }
        for (Partial& p : f[a]) {
          if (p.doubled >= limit) continue;
          out.push_back({a, b, Ratio(p.doubled - dab), std::move(p.profit), std::move(p.nodes)});
        }
      }
    }
    return out;
  }

  // parent pointers and a preorder for the tree rooted at `root`
  void root_at(NodeId root, std::vector<NodeId>& parent, std::vector<NodeId>& order) const {
    order.clear();
    std::vector<NodeId> stack{root};
    parent[root] = -1;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (auto it = adj_[x].rbegin(); it != adj_[x].rend(); ++it)
        if (*it != parent[x]) {
          parent[*it] = x;
          stack.push_back(*it);
        }
    }
  }

  std::vector<int> prune(const std::vector<int>& ids) const {
    std::vector<int> kept;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const StitchLabel& x = labels_[ids[i]];
      bool dominated = false;
      for (std::size_t j = 0; j < ids.size() && !dominated; ++j) {
        if (i == j) continue;
        const StitchLabel& y = labels_[ids[j]];
        if (y.node != x.node || y.time > x.time || y.profit < x.profit || y.cost > x.cost) continue;
        bool identical = y.time == x.time && y.profit == x.profit && y.cost == x.cost;
        dominated = !identical || j < i;
      }
      if (!dominated) kept.push_back(ids[i]);
    }
    return kept;
  }

  std::vector<RequestIndex> reconstruct(int label) const {
    std::vector<const StitchLabel*> chain;
    for (int li = label; labels_[li].parent >= 0; li = labels_[li].parent) chain.push_back(&labels_[li]);
    std::reverse(chain.begin(), chain.end());

    std::vector<RequestIndex> order;
    for (const StitchLabel* l : chain) {
      const Segment& g = segments_[l->seg_group][l->seg];
      const NodeRequests& by_node = *group_requests_[l->seg_group];
      for (NodeId x : segment_preorder(g)) {
        auto it = by_node.find(x);
        if (it != by_node.end()) order.insert(order.end(), it->second.begin(), it->second.end());
      }
    }
    return order;
  }

  // depth-first order of the segment's subtree from entry, finishing on the branch holding exit
  std::vector<NodeId> segment_preorder(const Segment& g) const {
    auto inside = [&](NodeId x) { return std::binary_search(g.nodes.begin(), g.nodes.end(), x); };
    std::vector<NodeId> parent(inst_.node_count(), -1), bfs{g.entry};
    std::vector<char> seen(inst_.node_count());
    seen[g.entry] = 1;
    for (std::size_t i = 0; i < bfs.size(); ++i)
      for (NodeId y : adj_[bfs[i]])
        if (inside(y) && !seen[y]) {
          seen[y] = 1;
          parent[y] = bfs[i];
          bfs.push_back(y);
        }
    std::vector<char> on_path(inst_.node_count());
    for (NodeId x = g.exit; x >= 0; x = parent[x]) on_path[x] = 1;

    std::vector<NodeId> out;
    std::vector<NodeId> stack{g.entry};
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      out.push_back(x);
      std::vector<NodeId> kids;
      NodeId path_kid = -1;
      for (NodeId y : adj_[x]) {
        if (!inside(y) || parent[y] != x) continue;
        if (on_path[y])
          path_kid = y;
        else
          kids.push_back(y);
      }
      if (path_kid >= 0) stack.push_back(path_kid);  // visited last
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  const Instance& inst_;
  const TrimmedInstance& trimmed_;
  std::vector<std::vector<NodeId>> adj_;
  std::map<std::int64_t, NodeRequests> periods_;
  std::vector<std::vector<Segment>> segments_;  // one group per period, in time order
  std::vector<const NodeRequests*> group_requests_;
  std::vector<StitchLabel> labels_;
};

}  // namespace detail

/// Maximum-profit run on the effective windows of `t`, restricted to `available`;
/// ties go to the cheapest run, then to the lexicographically smallest service
/// order. Exhaustive: throws GuardExceeded above `guard` available requests.
inline Run solve_trimmed_exact(const TrimmedInstance& t, const std::set<RequestIndex>& available,
                               std::size_t guard = default_exact_guard) {
  WindowMap windows = effective_windows(t);
  auto order = detail::exact_best_order(t.instance(), windows, available, guard);
  Run run = detail::schedule_or_throw(t.instance(), order, windows);
  run.label = "R";
  return run;
}

/// Same contract as solve_trimmed_exact on tree metrics (profit and cost), without
/// the exhaustive guard. Throws ValidationError on a general metric.
inline Run solve_trimmed_tree_dp(const TrimmedInstance& t, const std::set<RequestIndex>& available) {
  auto order = detail::TreeDp(t, available).solve();
  Run run = detail::schedule_or_throw(t.instance(), order, effective_windows(t));
  run.label = "R";
  return run;
}

/// automatic: tree DP on trees, exhaustive search otherwise.
inline Run solve_trimmed(const TrimmedInstance& t, const std::set<RequestIndex>& available,
                         TrimmedSolver solver = TrimmedSolver::automatic, std::size_t guard = default_exact_guard) {
  if (solver == TrimmedSolver::tree_dp || (solver == TrimmedSolver::automatic && t.instance().is_tree()))
    return solve_trimmed_tree_dp(t, available);
  return solve_trimmed_exact(t, available, guard);
}

/// Trims to half-unit periods and solves exactly on the trimmed windows. Trimmed
/// windows sit inside the originals, so the run is valid on the original windows
/// and collects at least a third of the single-vehicle optimum.
inline Run repairman_3approx(const Instance& inst, const std::set<RequestIndex>& available,
                             TrimmedSolver solver = TrimmedSolver::automatic,
                             std::size_t guard = default_exact_guard) {
  TrimmedInstance trimmed = trim_half_unit(inst);
  Run run = solve_trimmed(trimmed, available, solver, guard);
  if (!validate_run(inst, run, original_windows(inst)).feasible)
    throw std::logic_error("trimmed run is not feasible on original windows");
  return run;
}

}  // namespace uwvrp
