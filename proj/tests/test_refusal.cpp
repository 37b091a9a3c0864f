#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trrg/refusal.hpp"
#include "trrg/region.hpp"

using namespace trrg;

TEST(Refusal, Fig1InitialStateForbidsOnlyB) {
  const DeterministicModel d = determinize(fixtures::model("fig1.dot"));
  EXPECT_EQ(forbidden_of(d, "s0"), (std::set<std::string>{"b"}));
  EXPECT_TRUE(permanent_of(d, "s0").empty());
  EXPECT_TRUE(temporary_of(d, "s0").empty());
}

TEST(Refusal, Fig1WaitsForTheDurationOfA) {
  const DeterministicModel d = determinize(fixtures::model("fig1.dot"));
  const auto temp = temporary_of(d, "s1");
  ASSERT_EQ(temp.size(), 1u);
  EXPECT_EQ(temp.begin()->to_string(), "b[x>=2]");
  EXPECT_EQ(temp.begin()->kind, RefusalKind::Temporary);
  EXPECT_EQ(forbidden_of(d, "s2"), (std::set<std::string>{"a", "b"}));
}

TEST(Refusal, TemporaryNeedsAPositiveLowerBound) {
  const DeterministicModel d = determinize(fixtures::model("alarm.dot"));
  std::set<std::string> temp;
  for (const auto& r : temporary_of(d, "armed")) temp.insert(r.to_string());
  // disarm (x<3) is available at once; trigger (x=3) has to wait.
  EXPECT_EQ(temp, (std::set<std::string>{"trigger[x=3]"}));
  std::set<std::string> ringing;
  for (const auto& r : temporary_of(d, "ringing")) ringing.insert(r.to_string());
  EXPECT_EQ(ringing, (std::set<std::string>{"stop[y>0]"}));
}

TEST(Refusal, CoffeeChoiceBecomesAPermanentRefusal) {
  const DeterministicModel d = determinize(fixtures::model("coffee.dot"));
  std::set<std::string> perm;
  for (const auto& r : permanent_of(d, "s1+s2")) perm.insert(r.to_string());
  EXPECT_EQ(perm, (std::set<std::string>{"coffee[x>=2]", "tea[x>=1]"}));
  EXPECT_EQ(forbidden_of(d, "s1+s2"), (std::set<std::string>{"coin"}));
}

TEST(Refusal, PermanentRefusalIsCheckedAgainstTheRegion) {
  const DeterministicModel d = determinize(fixtures::model("coffee.dot"));
  const Decorations dec = decorate(d);
  const RegionSpace space = make_space(max_constants(d.model));
  const RefusalSet& set = dec.at("s1+s2");
  EXPECT_TRUE(set.permanently_refuses("coffee", region_of({{"x", Time(5, 2)}}, space)));
  EXPECT_FALSE(set.permanently_refuses("coffee", region_of({{"x", Time(1)}}, space)));
  EXPECT_FALSE(set.permanently_refuses("coin", region_of({{"x", Time(5, 2)}}, space)));
  EXPECT_EQ(set.permanent_string(), "coffee[x>=2],tea[x>=1]");
}

TEST(Refusal, PartitionSanityHoldsOnFixturesAndRandomModels) {
  for (const auto& name : fixtures::valid()) {
    const DeterministicModel d = determinize(fixtures::model(name));
    EXPECT_TRUE(refusal_partition_violations(d, decorate(d)).empty()) << name;
  }
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const DeterministicModel d = determinize(oracle::random_model(seed));
    EXPECT_TRUE(refusal_partition_violations(d, decorate(d)).empty()) << "seed " << seed;
  }
}

TEST(Refusal, DeterministicInputsHaveNoPermanentRefusals) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    oracle::RandomModelOptions options;
    options.deterministic = true;
    const DeterministicModel d = determinize(oracle::random_model(seed, options));
    for (const auto& [location, set] : decorate(d)) EXPECT_TRUE(set.permanent.empty()) << "seed " << seed;
  }
}
