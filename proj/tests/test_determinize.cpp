#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trrg/determinize.hpp"
#include "trrg/errors.hpp"

using namespace trrg;

namespace {

std::set<std::string> edge_lines(const TimedModel& m, bool with_guards) {
  std::set<std::string> out;
  for (const auto& e : m.edges()) {
    out.insert(e.source + " -" + e.action + (with_guards ? "[" + e.guard.to_string() + "]" : "") + "-> " + e.target);
  }
  return out;
}

}  // namespace

TEST(Determinize, CoffeeChoiceMergesIntoOneSubset) {
  const DeterministicModel d = determinize(fixtures::model("coffee.dot"));
  const auto edges = edge_lines(d.model, true);
  EXPECT_TRUE(edges.contains("s0 -coin[true]-> s1+s2"));
  EXPECT_TRUE(edges.contains("s1+s2 -tea[x>=1]-> s3"));
  EXPECT_TRUE(edges.contains("s1+s2 -coffee[x>=2]-> s4"));
  EXPECT_EQ(d.subset("s1+s2").members, (std::vector<std::string>{"s1", "s2"}));
  EXPECT_TRUE(determinism_violations(d.model).empty());
  EXPECT_FALSE(determinism_violations(d.source).empty());
}

TEST(Determinize, DeterministicInputIsReproduced) {
  for (const auto& name : fixtures::deterministic()) {
    const TimedModel m = fixtures::model(name);
    ASSERT_TRUE(determinism_violations(m).empty()) << name;
    const DeterministicModel d = determinize(m);
    EXPECT_EQ(d.model.initial(), m.initial()) << name;
    // Unreachable locations disappear; everything else maps one to one.
    EXPECT_LE(d.model.locations().size(), m.locations().size()) << name;
    std::set<std::string> original;
    for (const auto& e : m.edges()) {
      original.insert(e.source + " -" + e.action + "[" + e.guard.normalized().to_string() + "]-> " + e.target);
    }
    for (const auto& line : edge_lines(d.model, true)) EXPECT_TRUE(original.contains(line)) << name << ": " << line;
  }
}

TEST(Determinize, OverlappingWindowsArePartitioned) {
  const DeterministicModel d = determinize(fixtures::model("choice_window.dot"));
  const auto edges = edge_lines(d.model, true);
  EXPECT_TRUE(edges.contains("s0 -a[x<1]-> s1"));
  EXPECT_TRUE(edges.contains("s0 -a[x>=1 & x<2]-> s1+s2"));
  EXPECT_TRUE(edges.contains("s0 -a[x>=2]-> s2"));
  EXPECT_TRUE(determinism_violations(d.model).empty());
}

TEST(Determinize, DisjointGuardsMayResetDifferentClocks) {
  const DeterministicModel d = determinize(fixtures::model("lights.dot"));
  EXPECT_EQ(d.model.edges().size(), 4u);
}

TEST(Determinize, OutOfClassNondeterminismFailsLoudly) {
  try {
    determinize(fixtures::model("out_of_class.dot"));
    FAIL();
  } catch (const UnsupportedNondeterminism& e) {
    EXPECT_NE(std::string(e.what()).find("several clocks"), std::string::npos) << e.what();
  }
  const TimedModel resets({{"s0", {}, false}, {"s1", {}, false}, {"s2", {}, false}}, "s0", {"x", "y"},
                          {{"s0", Guard{}, "a", std::string("x"), "s1"}, {"s0", Guard{}, "a", std::string("y"), "s2"}},
                          {"a"});
  EXPECT_THROW(determinize(resets), UnsupportedNondeterminism);
}

TEST(Determinize, MatchesUntimedSubsetConstruction) {
  oracle::RandomModelOptions options;
  options.timed = false;
  options.max_locations = 5;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const TimedModel m = oracle::random_model(seed, options);
    const oracle::Subsets expected = oracle::untimed_subsets(m);
    const DeterministicModel d = determinize(m);
    std::set<std::string> locations;
    for (const auto& loc : d.model.locations()) locations.insert(loc.name);
    EXPECT_EQ(locations, expected.locations) << "seed " << seed;
    EXPECT_EQ(edge_lines(d.model, false), expected.edges) << "seed " << seed;
  }
}

TEST(Determinize, SubsetsInheritFinalityAndDurations) {
  const DeterministicModel d = determinize(fixtures::model("coffee.dot"));
  const auto& merged = d.subset("s1+s2");
  EXPECT_FALSE(merged.is_final);
  EXPECT_EQ(merged.durations.size(), 2u);
}
