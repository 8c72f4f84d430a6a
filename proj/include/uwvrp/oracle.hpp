#pragma once

// Brute-force optima for 1..k vehicles under any window mapping. Used only as
// ground truth on small instances.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "uwvrp/schedule.hpp"

namespace uwvrp {

struct OracleGuard {
  std::size_t up_to_two_vehicles = 8;
  std::size_t three_or_more_vehicles = 6;

  std::size_t limit(long k) const { return k <= 2 ? up_to_two_vehicles : three_or_more_vehicles; }

  /// UWVRP_ORACLE_GUARD, when set to a positive integer, replaces both limits.
  static OracleGuard from_environment() {
    OracleGuard g;
    if (const char* env = std::getenv("UWVRP_ORACLE_GUARD")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0 && v <= 20) g.up_to_two_vehicles = g.three_or_more_vehicles = v;
    }
    return g;
  }
};

struct OracleResult {
  std::vector<Run> runs;  // descending profit
  std::vector<std::vector<RequestIndex>> served;  // per run, ascending
  std::vector<Ratio> per_run_profit;
  Ratio profit = 0;
};

namespace detail {

/// Earliest finishing time over all orders of each subset ending at each request.
/// Exact: with waiting allowed, arriving earlier at the same request never hurts.
class SubsetFeasibility {
 public:
  SubsetFeasibility(const Instance& inst, const WindowMap& windows) : inst_(inst) {
    for (const auto& [id, w] : windows) {
      if (id >= inst.request_count()) throw UnknownId("request index " + std::to_string(id) + " out of range");
      ids_.push_back(id);
      windows_.push_back(w);
    }
    const std::size_t n = ids_.size();
    const std::uint64_t full = std::uint64_t{1} << n;
    finish_.assign(full * n, std::nullopt);
    pred_.assign(full * n, -1);
    feasible_.assign(full, 0);
    feasible_[0] = 1;
    for (std::size_t i = 0; i < n; ++i) finish_[slot(std::uint64_t{1} << i, i)] = windows_[i].start;

    for (std::uint64_t mask = 1; mask < full; ++mask)
      for (std::size_t last = 0; last < n; ++last) {
        const auto& t = finish_[slot(mask, last)];
        if (!t) continue;
        feasible_[mask] = 1;
        for (std::size_t next = 0; next < n; ++next) {
          if (mask >> next & 1) continue;
          Ratio arrive = *t + inst.distances()(node(last), node(next));
          if (arrive < windows_[next].start) arrive = windows_[next].start;
          if (arrive >= windows_[next].end) continue;
          auto& dst = finish_[slot(mask | std::uint64_t{1} << next, next)];
          if (!dst || arrive < *dst) {
            dst = arrive;
            pred_[slot(mask | std::uint64_t{1} << next, next)] = static_cast<int>(last);
          }
        }
      }
  }

  std::size_t size() const noexcept { return ids_.size(); }
  bool feasible(std::uint64_t mask) const { return feasible_[mask] != 0; }
  RequestIndex id(std::size_t i) const { return ids_[i]; }

  Ratio profit(std::uint64_t mask) const {
    Ratio sum = 0;
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (mask >> i & 1) sum += inst_.request(ids_[i]).profit;
    return sum;
  }

  /// A feasible service order for a feasible mask.
  std::vector<RequestIndex> order(std::uint64_t mask) const {
    std::vector<RequestIndex> seq;
    if (mask == 0) return seq;
    int last = -1;
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if ((mask >> i & 1) && finish_[slot(mask, i)] && (last < 0 || *finish_[slot(mask, i)] < *finish_[slot(mask, last)]))
        last = static_cast<int>(i);
    while (last >= 0) {
      seq.push_back(ids_[last]);
      int prev = pred_[slot(mask, last)];
      mask &= ~(std::uint64_t{1} << last);
      last = prev;
    }
    return {seq.rbegin(), seq.rend()};
  }

 private:
  std::size_t slot(std::uint64_t mask, std::size_t last) const { return mask * ids_.size() + last; }
  NodeId node(std::size_t i) const { return inst_.request(ids_[i]).node; }

  const Instance& inst_;
  std::vector<RequestIndex> ids_;
  std::vector<Window> windows_;
  std::vector<std::optional<Ratio>> finish_;
  std::vector<int> pred_;
  std::vector<char> feasible_;
};

}  // namespace detail

/// Maximum total profit of k runs with disjoint served sets, each feasible on
/// `windows`. Requests are those keyed in `windows`.
///
/// Tie-break: the first run takes the most profitable served set that still
/// completes an optimal family (smallest bitmask on equal profit, bit i = i-th
/// request in id order); the remaining runs recurse on what is left. Runs come
/// out in descending profit.
inline OracleResult brute_force_opt(const Instance& inst, long k, const WindowMap& windows,
                                    OracleGuard guard = OracleGuard::from_environment()) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (windows.size() > guard.limit(k)) throw GuardExceeded(windows.size(), guard.limit(k));

  detail::SubsetFeasibility sets(inst, windows);
  const std::uint64_t full = std::uint64_t{1} << sets.size();
  std::vector<Ratio> set_profit(full);
  for (std::uint64_t m = 0; m < full; ++m) set_profit[m] = sets.profit(m);

  // best[j][U]: max profit of j disjoint feasible sets inside U
  std::vector<std::vector<Ratio>> best(k + 1, std::vector<Ratio>(full));
  for (long j = 1; j <= k; ++j)
    for (std::uint64_t u = 0; u < full; ++u) {
      Ratio top = best[j - 1][u];
      for (std::uint64_t s = u; s != 0; s = (s - 1) & u) {
        if (!sets.feasible(s)) continue;
        Ratio v = set_profit[s] + best[j - 1][u & ~s];
        if (v > top) top = v;
      }
      best[j][u] = top;
    }

  OracleResult result;
  result.profit = best[k][full - 1];
  std::uint64_t rest = full - 1;
  for (long j = k; j >= 1; --j) {
    std::uint64_t pick = 0;
    bool found = false;
    for (std::uint64_t s = 0; s < full; ++s) {
      if ((s & ~rest) != 0 || !sets.feasible(s)) continue;
      if (set_profit[s] + best[j - 1][rest & ~s] != best[j][rest]) continue;
      if (!found || set_profit[s] > set_profit[pick]) {
        pick = s;
        found = true;
      }
    }
    auto order = sets.order(pick);
    auto run = earliest_schedule(inst, order, windows);
    if (!run) throw std::logic_error("oracle reconstructed an infeasible order");
    run->label = "OPT" + std::to_string(k - j + 1);
    std::vector<RequestIndex> ids = order;
    std::sort(ids.begin(), ids.end());
    result.runs.push_back(*std::move(run));
    result.served.push_back(std::move(ids));
    result.per_run_profit.push_back(set_profit[pick]);
    rest &= ~pick;
  }
  return result;
}

/// entries[i][j]: profit of requests served both by optimal run i and by run j.
using CrossProfitMatrix = std::vector<std::vector<Ratio>>;

inline CrossProfitMatrix cross_profit(const Instance& inst, const OracleResult& optimal, const std::vector<Run>& runs) {
  CrossProfitMatrix m(optimal.served.size(), std::vector<Ratio>(runs.size()));
  for (std::size_t i = 0; i < optimal.served.size(); ++i) {
    std::set<RequestIndex> opt(optimal.served[i].begin(), optimal.served[i].end());
    for (std::size_t j = 0; j < runs.size(); ++j)
      for (RequestIndex id : runs[j].served())
        if (opt.contains(id)) m[i][j] += inst.request(id).profit;
  }
  return m;
}

}  // namespace uwvrp
