#include <gtest/gtest.h>

#include <random>

#include "pnlogic/conditions.hpp"
#include "pnlogic/fixtures.hpp"
#include "pnlogic/search.hpp"

namespace pnlogic {
namespace {

bool all_hold(const std::vector<ConditionReport>& reports) {
  for (const auto& r : reports)
    if (!r.holds) return false;
  return true;
}

// Condition (star) evaluated straight from its definition over P(W).
bool star_by_definition(const Frame& f) {
  const std::uint32_t sets = 1u << f.world_count();
  for (World w = 0; w < f.world_count(); ++w)
    for (std::uint32_t x = 0; x < sets; ++x) {
      if (!f.nbhd(w).contains(WorldSet(x))) continue;
      WorldSet owners;
      for (World v = 0; v < f.world_count(); ++v)
        if (f.nbhd(v).contains(WorldSet(x))) owners.insert(v);
      if (!f.nbhd(w).contains(owners)) return false;
    }
  return true;
}

TEST(ValidateFrame, KCountermodelFrameIsWellFormed) {
  EXPECT_TRUE(all_hold(validate_frame(fixtures::k_countermodel().frame())));
}

TEST(ValidateFrame, OneWorldEmptyNeighborhood) { EXPECT_TRUE(all_hold(validate_frame(Frame(1)))); }

TEST(ValidateFrame, Cond1ViolationWitness) {
  Frame f(2, {{0, 1}}, {Family{WorldSet{1}}, Family{}});
  auto reports = validate_frame(f);
  EXPECT_TRUE(reports[0].holds);
  ASSERT_FALSE(reports[1].holds);
  EXPECT_EQ(reports[1].witness->worlds, (std::vector<World>{0, 1}));
  EXPECT_EQ(reports[1].witness->sets, (std::vector<WorldSet>{WorldSet{1}}));
  EXPECT_TRUE(witness_violates(f, reports[1]));
}

TEST(ValidateFrame, OrderAxiomViolations) {
  auto transitivity = check_order_axioms(Frame(3, {{0, 1}, {1, 2}}));
  ASSERT_FALSE(transitivity.holds);
  EXPECT_EQ(transitivity.witness->rule, "transitivity");
  EXPECT_EQ(transitivity.witness->worlds, (std::vector<World>{0, 1, 2}));

  Frame cyc(2, {{0, 1}, {1, 0}});
  auto antisymmetry = check_order_axioms(cyc);
  ASSERT_FALSE(antisymmetry.holds);
  EXPECT_EQ(antisymmetry.witness->rule, "antisymmetry");
  EXPECT_TRUE(witness_violates(cyc, antisymmetry));
}

TEST(Frame, ReflexiveClosureIsCounted) {
  EXPECT_EQ(Frame(3, {{2, 0}}).reflexive_pairs_added(), 3u);
  EXPECT_EQ(Frame(2, {{0, 0}, {0, 1}}).reflexive_pairs_added(), 1u);
  EXPECT_TRUE(Frame(2).leq(1, 1));
}

TEST(Frame, RejectsOutOfRangeData) {
  EXPECT_THROW(Frame(0), std::invalid_argument);
  EXPECT_THROW(Frame(17), std::invalid_argument);
  EXPECT_THROW(Frame(2, {{0, 2}}), std::out_of_range);
  EXPECT_THROW(Frame(2, {}, {Family{WorldSet{3}}}), std::out_of_range);
  EXPECT_THROW(Model(Frame(2), {{"p", WorldSet{2}}}), std::out_of_range);
}

TEST(Family, CanonicalOrder) {
  Family a{WorldSet{1}, WorldSet{0}, WorldSet{1}};
  Family b{WorldSet{0}, WorldSet{1}};
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.sets().front(), WorldSet{0});
}

TEST(Cond2, Examples) {
  EXPECT_TRUE(check_cond2(Frame(2, {{0, 1}}, {Family{WorldSet{0, 1}}, Family{WorldSet{0, 1}}})).holds);

  Frame f(2, {{0, 1}}, {Family{WorldSet{0}}, Family{}});
  auto r = check_cond2(f);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->worlds, (std::vector<World>{0, 1}));
  EXPECT_EQ(r.witness->sets, (std::vector<WorldSet>{WorldSet{0}}));
  // The same frame satisfies cond1: 1 is not in {0}.
  EXPECT_TRUE(check_cond1(f).holds);

  EXPECT_TRUE(check_cond2(Frame(3, {}, {Family{WorldSet{0}}, Family{}, Family{WorldSet{1, 2}, WorldSet{}}})).holds);
}

TEST(Star, Examples) {
  EXPECT_TRUE(check_star(fixtures::star_without_four().frame()).holds);
  EXPECT_TRUE(check_star(Frame(3)).holds);

  Frame f(1, {}, {Family{WorldSet{}}});
  EXPECT_FALSE(star_by_definition(f));
  auto r = check_star(f);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->sets, (std::vector<WorldSet>{WorldSet{}, WorldSet{0}}));
  EXPECT_TRUE(witness_violates(f, r));
}

TEST(StarStar, Examples) {
  const Frame seven = fixtures::star_without_four().frame();
  auto r = check_starstar(seven);
  ASSERT_FALSE(r.holds);
  EXPECT_TRUE(witness_violates(seven, r));
  // {v} is a subset of {u,v} in N(v) but missing from N(v).
  EXPECT_TRUE(seven.nbhd(0).contains(WorldSet{0, 2}));
  EXPECT_FALSE(seven.nbhd(0).contains(WorldSet{0}));

  EXPECT_TRUE(check_starstar(Frame(2)).holds);

  std::vector<WorldSet> all;
  for (std::uint32_t m = 0; m < 8; ++m) all.push_back(WorldSet(m));
  EXPECT_TRUE(check_starstar(Frame(3, {}, {Family(all), Family(all), Family(all)})).holds);
}

TEST(ValidateModel, Examples) {
  EXPECT_TRUE(all_hold(validate_model(fixtures::k_countermodel())));

  Model bad(Frame(2, {{0, 1}}), {{"p", WorldSet{0}}});
  auto reports = validate_model(bad);
  ASSERT_EQ(reports.size(), 3u);
  ASSERT_FALSE(reports[2].holds);
  EXPECT_EQ(reports[2].witness->atom, "p");
  EXPECT_EQ(reports[2].witness->worlds, (std::vector<World>{0, 1}));
  EXPECT_TRUE(witness_violates(bad, reports[2]));

  EXPECT_TRUE(all_hold(validate_model(Model(Frame(2, {{0, 1}})))));
}

TEST(UpwardClosure, Examples) {
  EXPECT_EQ(upward_closure(Frame(2, {{0, 1}}), WorldSet{0}), (WorldSet{0, 1}));
  EXPECT_EQ(upward_closure(Frame(2), WorldSet{0}), WorldSet{0});
  EXPECT_EQ(upward_closure(Frame(2, {{0, 1}}), WorldSet{}), WorldSet{});
}

TEST(Property, UpwardClosureIsAClosureOperator) {
  for (const Frame& f : enumerate_frames(3, 0)) {
    const std::uint32_t sets = 1u << f.world_count();
    for (std::uint32_t a = 0; a < sets; ++a) {
      WorldSet ca = upward_closure(f, WorldSet(a));
      ASSERT_TRUE(WorldSet(a).subset_of(ca));
      ASSERT_EQ(upward_closure(f, ca), ca);
      ASSERT_TRUE(is_upward_closed(f, ca));
      for (std::uint32_t b = 0; b < sets; ++b)
        if (WorldSet(a).subset_of(WorldSet(b))) {
          ASSERT_TRUE(ca.subset_of(upward_closure(f, WorldSet(b))));
        }
    }
  }
}

TEST(Property, Cond2ImpliesCond1UpToThreeWorlds) {
  std::uint64_t frames = 0, strictly_weaker = 0;
  FrameEnumerator({1, 3, 2, {}, false}).run([&](const Frame& f) {
    ++frames;
    bool c1 = check_cond1(f).holds, c2 = check_cond2(f).holds;
    EXPECT_TRUE(!c2 || c1);
    if (c1 && !c2) ++strictly_weaker;
    return true;
  });
  EXPECT_GT(frames, 0u);
  EXPECT_GT(strictly_weaker, 0u);
}

TEST(Property, WitnessesReplay) {
  std::mt19937 rng(99);
  std::uint64_t failures = 0;
  FrameEnumerator({1, 2, 3, {}, false}).run([&](const Frame& f) {
    std::uniform_int_distribution<std::uint32_t> set(0, (1u << f.world_count()) - 1);
    Model m(f, {{"p", WorldSet(set(rng))}});
    for (const auto& r : all_conditions(m)) {
      EXPECT_EQ(r.holds, !r.witness.has_value());
      if (!r.holds) {
        ++failures;
        EXPECT_TRUE(witness_violates(m, r)) << r.describe();
      }
    }
    return true;
  });
  EXPECT_GT(failures, 0u);
}

TEST(Property, WellFormedFramesSatisfyCond1PointwiseAndStarMatchesDefinition) {
  std::mt19937 rng(3);
  for (const Frame& f : enumerate_frames(3, 2)) {
    if (rng() % 16 != 0) continue;
    for (World w = 0; w < f.world_count(); ++w)
      for (World v = 0; v < f.world_count(); ++v)
        if (f.leq(w, v))
          for (WorldSet x : f.nbhd(w))
            if (x.contains(v)) {
              ASSERT_TRUE(f.nbhd(v).contains(x));
            }
    ASSERT_EQ(check_star(f).holds, star_by_definition(f));
  }
}

}  // namespace
}  // namespace pnlogic
