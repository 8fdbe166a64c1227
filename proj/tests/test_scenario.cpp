#include <gtest/gtest.h>

#include "prefadapt/errors.hpp"
#include "prefadapt/scenario.hpp"
#include "test_support.hpp"

#include <cmath>

namespace prefadapt {
namespace {

using testing::pref;

TEST(NextSituation, ReproducibleStream) {
  const SituationGenerator gen = SituationGenerator::with_defaults(2, 2);
  Rng a(123);
  Rng b(123);
  const SituationGenerator fa = fix_demand(gen, a);
  const SituationGenerator fb = fix_demand(gen, b);
  for (int i = 0; i < 20; ++i) {
    const LpInstance x = next_situation(fa, a);
    const LpInstance y = next_situation(fb, b);
    ASSERT_EQ(x.a(), y.a());
    ASSERT_EQ(x.a0(), y.a0());
  }
}

TEST(NextSituation, DegenerateRangesGiveFixedFamily) {
  SituationGenerator gen = SituationGenerator::with_defaults(2, 1);
  gen.entry_low = gen.entry_high = 1.0;
  gen.avail_low = gen.avail_high = 2.0;
  Rng rng(5);
  const LpInstance inst = next_situation(gen, rng);
  EXPECT_EQ(inst.a(), (Matrix{{1, 1}, {1, 0}, {0, 1}}));
  EXPECT_EQ(inst.a0(), (Vector{{2, 2, 2}}));
}

TEST(NextSituation, FixedDemandHoldsAcrossSteps) {
  Rng rng(8);
  const SituationGenerator gen = fix_demand(SituationGenerator::with_defaults(3, 3), rng);
  const Matrix first = next_situation(gen, rng).a();
  const Matrix second = next_situation(gen, rng).a();
  EXPECT_EQ(first.topRows(3), second.topRows(3));

  SituationGenerator redraw = SituationGenerator::with_defaults(3, 3);
  redraw.redraw_demand = true;
  redraw = fix_demand(redraw, rng);
  EXPECT_NE(next_situation(redraw, rng).a().topRows(3), next_situation(redraw, rng).a().topRows(3));
}

TEST(NextSituation, DrawsEnumerateToFullPolytopes) {
  for (const std::size_t n : {2u, 3u, 4u}) {
    Rng rng(1000 + n);
    const SituationGenerator gen = fix_demand(SituationGenerator::with_defaults(n, n), rng);
    for (int i = 0; i < 100; ++i) {
      const LpInstance inst = next_situation(gen, rng);
      ASSERT_TRUE(is_feasible(inst, Vector::Zero(static_cast<Eigen::Index>(n))));
      ASSERT_GE(enumerate_vertices(inst).size(), n + 1);
    }
  }
}

TEST(NextSituation, RejectsBadRanges) {
  Rng rng(1);
  SituationGenerator gen = SituationGenerator::with_defaults(2, 2);
  gen.entry_low = 0.0;
  EXPECT_THROW(next_situation(gen, rng), InvalidArgument);
  gen = SituationGenerator::with_defaults(2, 2);
  gen.avail_low = 3.0;
  EXPECT_THROW(next_situation(gen, rng), InvalidArgument);
}

PreferenceSchedule two_target_step(std::size_t length) {
  return PreferenceSchedule{ScheduleKind::kStep, length, {pref({0.8, 0.6}), pref({0.6, 0.8})}, 0.0};
}

TEST(PreferenceAt, StepBoundary) {
  const PreferenceSchedule s = two_target_step(50);
  EXPECT_EQ(preference_at(s, 49), pref({0.8, 0.6}));
  EXPECT_EQ(preference_at(s, 50), pref({0.6, 0.8}));
  EXPECT_EQ(preference_at(s, 100), pref({0.8, 0.6}));
  EXPECT_EQ(epoch_at(s, 49), 0u);
  EXPECT_EQ(epoch_at(s, 50), 1u);
}

TEST(PreferenceAt, Fixed) {
  const PreferenceSchedule s{ScheduleKind::kFixed, 7, {pref({0.8, 0.6}), pref({0.6, 0.8})}, 0.0};
  for (std::size_t t : {0u, 7u, 1000u}) EXPECT_EQ(preference_at(s, t), pref({0.8, 0.6}));
}

TEST(PreferenceAt, DriftZeroRateIsConstant) {
  const PreferenceSchedule s{ScheduleKind::kDrift, 1, {pref({0.8, 0.6}), pref({0.6, 0.8})}, 0.0};
  EXPECT_EQ(preference_at(s, 500), pref({0.8, 0.6}));
}

TEST(PreferenceAt, DriftRotatesThenClamps) {
  const PreferenceSchedule s{ScheduleKind::kDrift, 1, {pref({1.0, 0.0}), pref({0.0, 1.0})}, 0.01};
  const Vector mid = preference_at(s, 50).c();
  EXPECT_NEAR(mid[0], std::cos(0.5), 1e-12);
  EXPECT_NEAR(mid[1], std::sin(0.5), 1e-12);
  EXPECT_EQ(preference_at(s, 1000), pref({0.0, 1.0}));
}

TEST(PreferenceAt, EmptyTargetsRejected) {
  EXPECT_THROW(preference_at(PreferenceSchedule{}, 0), InvalidArgument);
}

TEST(ScheduleProperty, AlwaysUnitAndNonnegative) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    PreferenceSchedule s{static_cast<ScheduleKind>(trial % 3), 1 + static_cast<std::size_t>(trial),
                         {testing::random_preference(n, rng), testing::random_preference(n, rng)},
                         rng.uniform(0.0, 0.05)};
    for (std::size_t t = 0; t < 300; ++t) {
      const Vector c = preference_at(s, t).c();
      ASSERT_NEAR(c.norm(), 1.0, 1e-9);
      ASSERT_GE(c.minCoeff(), 0.0);
    }
  }
}

TEST(ScheduleProperty, StepChangeCount) {
  for (const std::size_t length : {1u, 7u, 50u, 100u}) {
    const PreferenceSchedule s = two_target_step(length);
    const std::size_t horizon = 400;
    std::size_t changes = 0;
    for (std::size_t t = 1; t < horizon; ++t) changes += preference_at(s, t) == preference_at(s, t - 1) ? 0 : 1;
    EXPECT_EQ(changes, (horizon + length - 1) / length - 1);
  }
}

}  // namespace
}  // namespace prefadapt
