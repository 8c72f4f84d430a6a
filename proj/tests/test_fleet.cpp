#include <gtest/gtest.h>

#include "support/reference.hpp"
#include "uwvrp/uwvrp.hpp"

using namespace uwvrp;

namespace {

Instance random_case(std::uint64_t seed, int max_requests) {
  int nodes = 1 + static_cast<int>(seed % 7);
  int requests = 1 + static_cast<int>((seed / 7) % max_requests);
  Ratio horizon = make_ratio(static_cast<long>(12 + seed % 20), 8);
  return generate_random_instance(nodes, requests, horizon, seed);
}

void expect_disjoint(const std::vector<uwvrp::Run>& runs) {
  std::set<RequestIndex> seen;
  for (const uwvrp::Run& r : runs)
    for (RequestIndex id : r.served()) EXPECT_TRUE(seen.insert(id).second) << "served twice: " << id;
}

}  // namespace

TEST(KVehicleGreedy, OneVehicleIsTheSingleVehicleAlgorithm) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = random_case(seed, 8);
    FleetSolution sol = k_vehicle_greedy(inst, 1);
    uwvrp::Run single = repairman_3approx(inst, inst.all_requests());
    ASSERT_EQ(sol.runs.size(), 1u);
    EXPECT_EQ(sol.runs[0].visits, single.visits);
    EXPECT_EQ(sol.runs[0].label, "R1");
    EXPECT_EQ(sol.guarantee, Ratio(1, 3));
  }
}

TEST(KVehicleGreedy, SpareVehiclesStayIdle) {
  Instance inst = parse_instance("instance o\nmetric tree\nspeed 1\nnodes 1\nrequest a 0 0.7 5\n");
  FleetSolution sol = k_vehicle_greedy(inst, 2);
  ASSERT_EQ(sol.runs.size(), 2u);
  EXPECT_EQ(sol.runs[0].served(), (std::vector<RequestIndex>{0}));
  EXPECT_TRUE(sol.runs[1].empty());
  EXPECT_EQ(sol.total_profit, Ratio(5));
  EXPECT_EQ(sol.guarantee, Ratio(11, 36));
}

TEST(KVehicleGreedy, RejectsZeroVehicles) {
  Instance inst = random_case(1, 3);
  EXPECT_THROW(k_vehicle_greedy(inst, 0), std::invalid_argument);
}

TEST(KVehicleGreedy, TwoVehiclesMeetTheirGuarantee) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Instance inst = random_case(seed, 8);
    FleetSolution sol = k_vehicle_greedy(inst, 2);
    expect_disjoint(sol.runs);
    for (const uwvrp::Run& r : sol.runs) ASSERT_TRUE(validate_run(inst, r, original_windows(inst)).feasible) << seed;
    Ratio opt = brute_force_opt(inst, 2, original_windows(inst)).profit;
    ASSERT_GE(sol.total_profit, Ratio(11, 36) * opt) << seed;
  }
}

TEST(KVehicleGreedy, ThreeVehiclesMeetTheirGuarantee) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance inst = random_case(seed, 6);
    FleetSolution sol = k_vehicle_greedy(inst, 3);
    expect_disjoint(sol.runs);
    Ratio opt = brute_force_opt(inst, 3, original_windows(inst)).profit;
    ASSERT_GE(sol.total_profit, Ratio(71, 243) * opt) << seed;
  }
}

TEST(KVehicleGreedy, ExactAndTreeDpAgreeOnProfit) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = random_case(seed, 10);
    FleetSolution a = k_vehicle_greedy(inst, 3, {TrimmedSolver::exact});
    FleetSolution b = k_vehicle_greedy(inst, 3, {TrimmedSolver::tree_dp});
    EXPECT_EQ(a.run_profit[0], b.run_profit[0]) << seed;
  }
}

TEST(SingleRepair, OneRequestIsCoveredBySixRuns) {
  Instance inst = parse_instance("instance o\nmetric tree\nspeed 1\nnodes 1\nrequest a 0 0.7 1\n");
  CoverSolution sol = single_repair(inst);
  ASSERT_EQ(sol.runs.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(sol.runs[i].label, cover_labels[i]);
  EXPECT_TRUE(sol.covered);
  EXPECT_EQ(sol.certificate, Certificate::covered);
  EXPECT_EQ(to_string(sol.certificate), "covered");
}

TEST(SingleRepair, FarApartSimultaneousRequestsCannotShareAVehicle) {
  Instance inst = parse_instance(
      "instance far\nmetric tree\nspeed 1\nnodes 2\nedge 0 1 10\nrequest a 0 0.5 1\nrequest b 1 0.5 1\n");
  CoverSolution sol = single_repair(inst);
  EXPECT_FALSE(sol.covered);
  EXPECT_EQ(sol.certificate, Certificate::no_single_vehicle_tour);
  EXPECT_EQ(sol.uncovered.size(), 1u);
  EXPECT_EQ(to_string(sol.certificate), "no_single_vehicle_tour");
}

TEST(SingleRepair, CoversEverySingleVehicleInstance) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    FeasibleInstance f = generate_feasible_opt1_instance(1 + seed % 9, 1 + seed % 14, seed);
    CoverSolution sol = single_repair(f.instance);
    ASSERT_TRUE(sol.covered) << seed;
    ASSERT_EQ(sol.runs.size(), 6u);
    expect_disjoint(sol.runs);
    for (const uwvrp::Run& r : sol.runs)
      ASSERT_TRUE(validate_run(f.instance, r, original_windows(f.instance)).feasible) << seed << ' ' << r.label;
  }
}

TEST(SingleRepair, RunsStayFeasibleWhenCoverageFails) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Instance inst = generate_random_instance(6, 10, Ratio(3), seed);
    CoverSolution sol = single_repair(inst);
    expect_disjoint(sol.runs);
    std::size_t served = 0;
    for (const uwvrp::Run& r : sol.runs) {
      served += r.served().size();
      ASSERT_TRUE(validate_run(inst, r, original_windows(inst)).feasible) << seed;
    }
    EXPECT_EQ(served + sol.uncovered.size(), inst.request_count());
    EXPECT_EQ(sol.covered, sol.uncovered.empty());
  }
}

TEST(SingleRepair, GeneralMetricIsFlagged) {
  Instance inst = ref::random_general_instance(5, 4, Ratio(3), 3);
  EXPECT_FALSE(single_repair(inst).coverage_guaranteed);
}
