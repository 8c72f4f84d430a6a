#pragma once

// The two multivehicle algorithms: greedy multi-pass routing for k vehicles, and
// six-run coverage on a tree when a single vehicle could serve every request.

#include <array>
#include <set>
#include <string>
#include <vector>

#include "uwvrp/bounds.hpp"
#include "uwvrp/repairman.hpp"

namespace uwvrp {

struct FleetSolution {
  std::vector<Run> runs;  // R1..Rk
  std::set<RequestIndex> serviced;
  std::vector<Ratio> run_profit;
  Ratio total_profit = 0;
  Ratio guarantee;  // fraction of the k-vehicle optimum certified for trees
};

struct FleetOptions {
  TrimmedSolver solver = TrimmedSolver::automatic;
  std::size_t exact_guard = default_exact_guard;
};

/// Trims once, then runs the single-vehicle solver k times, each pass on the
/// requests earlier passes left unserved.
inline FleetSolution k_vehicle_greedy(const Instance& inst, long k, FleetOptions opts = {}) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  TrimmedInstance trimmed = trim_half_unit(inst);
  std::set<RequestIndex> available = inst.all_requests();

  FleetSolution sol;
  sol.guarantee = p_gamma(k, SolverGuarantee{}.gamma);
  for (long pass = 1; pass <= k; ++pass) {
    Run run = solve_trimmed(trimmed, available, opts.solver, opts.exact_guard);
    run.label = "R" + std::to_string(pass);
    for (RequestIndex id : run.served()) {
      available.erase(id);
      sol.serviced.insert(id);
    }
    sol.run_profit.push_back(run_profit(inst, run));
    sol.total_profit += sol.run_profit.back();
    sol.runs.push_back(std::move(run));
  }
  return sol;
}

enum class Certificate { covered, no_single_vehicle_tour };

inline std::string_view to_string(Certificate c) {
  return c == Certificate::covered ? "covered" : "no_single_vehicle_tour";
}

inline constexpr std::array<const char*, 6> cover_labels = {"E-1", "E0", "E+1", "O-1", "O0", "O+1"};

struct CoverSolution {
  std::vector<Run> runs;  // labelled as cover_labels
  Run even_base;          // run on the expanded even set before shifting
  Run odd_base;
  bool covered = false;
  std::vector<RequestIndex> uncovered;
  Certificate certificate = Certificate::no_single_vehicle_tour;
  bool coverage_guaranteed = true;  // false on general metrics, where six-run coverage is not guaranteed
};

/// Expands windows to two unit periods, splits by parity, solves each side
/// exactly (cheapest among maximum-coverage runs), then emits each side's run
/// shifted by -1, 0 and +1. Services on the six copies are credited against the
/// original windows in label order, so every request is credited at most once.
/// If anything stays uncovered, no single vehicle can serve all requests.
inline CoverSolution single_repair(const Instance& inst, FleetOptions opts = {}) {
  ExpandedPartition parts = expand_and_partition(inst);
  CoverSolution sol;
  sol.coverage_guaranteed = inst.is_tree();
  sol.even_base = solve_trimmed(parts.even, parts.even.requests(), opts.solver, opts.exact_guard);
  sol.odd_base = solve_trimmed(parts.odd, parts.odd.requests(), opts.solver, opts.exact_guard);
  sol.even_base.label = "E";
  sol.odd_base.label = "O";

  WindowMap original = original_windows(inst);
  std::set<RequestIndex> remaining = inst.all_requests();
  std::size_t label = 0;
  for (const Run* base : {&sol.even_base, &sol.odd_base})
    for (int delta : {-1, 0, 1}) {
      Run copy = reserve_services(inst, shift_run(*base, Ratio(delta)), original, remaining);
      copy.label = cover_labels[label++];
      for (RequestIndex id : copy.served()) remaining.erase(id);
      sol.runs.push_back(std::move(copy));
    }

  sol.uncovered.assign(remaining.begin(), remaining.end());
  sol.covered = sol.uncovered.empty();
  sol.certificate = sol.covered ? Certificate::covered : Certificate::no_single_vehicle_tour;
  return sol;
}

}  // namespace uwvrp
