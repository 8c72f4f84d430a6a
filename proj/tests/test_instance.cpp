#include <gtest/gtest.h>

#include "support/reference.hpp"
#include "uwvrp/uwvrp.hpp"

using namespace uwvrp;

namespace {

const char* kTwoNode = R"(# minimal
instance tiny
metric tree
speed 1
nodes 2
edge 0 1 1
request a 1 0.5 1
)";

}  // namespace

TEST(ParseInstance, MinimalTree) {
  Instance inst = parse_instance(kTwoNode);
  EXPECT_EQ(inst.name(), "tiny");
  EXPECT_EQ(inst.node_count(), 2);
  ASSERT_EQ(inst.request_count(), 1u);
  EXPECT_EQ(inst.request(0).release, Ratio(1, 2));
  EXPECT_EQ(inst.request(0).window().end, Ratio(3, 2));
}

TEST(ParseInstance, ExtraEdgeUnderTreeMetricIsNotATree) {
  std::string text = std::string(kTwoNode) + "edge 0 1 2\n";
  try {
    parse_instance(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("not a tree"), std::string::npos);
  }
}

TEST(ParseInstance, SpeedFoldsIntoTravelTime) {
  std::string text = kTwoNode;
  text.replace(text.find("speed 1"), 7, "speed 2");
  Instance inst = parse_instance(text);
  EXPECT_EQ(inst.distance(0, 1), Ratio(1, 2));
}

TEST(ParseInstance, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_instance("instance x\nmetric tree\nspeed 1\nnodes 2\nedge 0 1 1/0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 10u);
  }
  try {
    parse_instance("instance x\nmetric forest\nspeed 1\nnodes 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);
  }
  EXPECT_THROW(parse_instance("instance x\nmetric tree\nspeed 1\nnodes 1\nfoo 1\n"), ParseError);
  EXPECT_THROW(parse_instance("instance x\nmetric tree\nspeed 1\n"), ParseError);
  EXPECT_THROW(parse_instance("instance x\nmetric tree\nspeed 1\nnodes 2\nedge 0 1\n"), ParseError);
}

TEST(ParseInstance, ValidationFailures) {
  const std::string head = "instance x\nmetric general\nspeed 1\nnodes 3\n";
  EXPECT_THROW(parse_instance(head + "edge 0 1 1\n"), ValidationError);  // disconnected
  EXPECT_THROW(parse_instance(head + "edge 0 1 1\nedge 1 2 0\n"), ValidationError);
  EXPECT_THROW(parse_instance(head + "edge 0 1 1\nedge 1 2 1\nrequest a 0 1 1\nrequest a 1 2 1\n"),
               ValidationError);
  EXPECT_THROW(parse_instance(head + "edge 0 1 1\nedge 1 2 1\nrequest a 5 1 1\n"), ValidationError);
  EXPECT_THROW(parse_instance(head + "edge 0 1 1\nedge 1 2 1\nrequest a 0 1 0\n"), ValidationError);
  EXPECT_THROW(parse_instance("instance x\nmetric tree\nspeed 1\nnodes 3\nedge 0 1 1\nedge 0 1 1\n"),
               ValidationError);
  EXPECT_THROW(parse_instance("instance x\nmetric tree\nspeed 0\nnodes 1\n"), ValidationError);
}

TEST(ParseInstance, ProfitDefaultsToOne) {
  Instance inst = parse_instance("instance x\nmetric tree\nspeed 1\nnodes 1\nrequest a 0 3/2\n");
  EXPECT_EQ(inst.request(0).profit, Ratio(1));
}

TEST(Distance, IdentityAndPathSum) {
  Instance inst = parse_instance("instance p\nmetric tree\nspeed 1\nnodes 3\nedge 0 1 2\nedge 1 2 3\n");
  EXPECT_EQ(inst.distance(1, 1), Ratio(0));
  EXPECT_EQ(inst.distance(0, 2), Ratio(5));
  EXPECT_EQ(inst.distance(2, 0), Ratio(5));
  EXPECT_THROW(inst.distance(0, 3), UnknownId);
}

TEST(Distance, GeneralMetricUsesShortestPaths) {
  Instance inst = parse_instance(
      "instance g\nmetric general\nspeed 1\nnodes 3\nedge 0 1 1\nedge 1 2 1\nedge 0 2 5\n");
  EXPECT_EQ(inst.distance(0, 2), Ratio(2));
}

TEST(Distance, RandomTreesMatchPathWalk) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance inst = generate_random_instance(2 + static_cast<int>(seed % 12), 1, Ratio(3), seed);
    for (NodeId u = 0; u < inst.node_count(); ++u)
      for (NodeId v = 0; v < inst.node_count(); ++v)
        ASSERT_EQ(inst.distance(u, v), ref::path_walk_distance(inst, u, v)) << seed;
  }
}

TEST(Distance, TriangleInequalityAndSymmetry) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = seed % 2 ? generate_random_instance(7, 1, Ratio(3), seed)
                             : ref::random_general_instance(7, 1, Ratio(3), seed);
    int n = inst.node_count();
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) {
        ASSERT_EQ(inst.distance(u, v), inst.distance(v, u));
        for (NodeId w = 0; w < n; ++w) ASSERT_LE(inst.distance(u, w), inst.distance(u, v) + inst.distance(v, w));
      }
  }
}

TEST(Serialize, RoundTripIsIdentity) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = seed % 3 ? generate_random_instance(1 + seed % 9, 1 + seed % 7, Ratio(5, 2), seed)
                             : ref::random_general_instance(6, 4, Ratio(3), seed);
    EXPECT_EQ(parse_instance(serialize(inst)), inst);
  }
}

TEST(Serialize, CanonicalOrdering) {
  Instance inst = parse_instance(
      "instance c\nmetric tree\nspeed 3/2\nnodes 3\nedge 2 1 0.5\nedge 1 0 1\nrequest z 0 1 1\nrequest b 2 0.25 2\n");
  EXPECT_EQ(serialize(inst),
            "instance c\nmetric tree\nspeed 3/2\nnodes 3\nedge 0 1 1\nedge 1 2 1/2\nrequest b 2 1/4 2\nrequest z 0 1 1\n");
}

TEST(Generate, SmallestCaseRoundTrips) {
  Instance inst = generate_random_instance(2, 1, Ratio(2), 7);
  EXPECT_EQ(parse_instance(serialize(inst)), inst);
}

TEST(Generate, DeterministicForSeed) {
  EXPECT_EQ(serialize(generate_random_instance(9, 12, Ratio(4), 42)),
            serialize(generate_random_instance(9, 12, Ratio(4), 42)));
  EXPECT_NE(serialize(generate_random_instance(9, 12, Ratio(4), 42)),
            serialize(generate_random_instance(9, 12, Ratio(4), 43)));
}

TEST(Generate, RandomInstancesRespectRanges) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Ratio horizon(3 + static_cast<long>(seed % 4), 1);
    Instance inst = generate_random_instance(1 + seed % 10, 1 + seed % 9, horizon, seed);
    EXPECT_EQ(parse_instance(serialize(inst)), inst);
    for (const Request& r : inst.requests()) {
      EXPECT_GT(r.release, 0);
      EXPECT_LT(r.release, horizon - 1);
    }
  }
  EXPECT_THROW(generate_random_instance(2, 1, Ratio(1), 0), std::invalid_argument);
}

TEST(Generate, FeasibleOpt1WitnessServesEverything) {
  FeasibleInstance one = generate_feasible_opt1_instance(1, 1, 3);
  ASSERT_EQ(one.witness.visits.size(), 1u);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    FeasibleInstance f = generate_feasible_opt1_instance(1 + seed % 8, 1 + seed % 12, seed);
    RunReport rep = validate_run(f.instance, f.witness, original_windows(f.instance));
    EXPECT_TRUE(rep.feasible) << seed;
    EXPECT_EQ(rep.profit, f.instance.total_profit()) << seed;
  }
}
