#include <gtest/gtest.h>

#include "prefadapt/errors.hpp"
#include "prefadapt/lp.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <numeric>

namespace prefadapt {
namespace {

using testing::pentagon;
using testing::pref;

std::vector<Vector> points_of(const std::vector<Vertex>& vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) out.push_back(v.x);
  return out;
}

bool contains_point(const std::vector<Vector>& pts, const Vector& x) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vector& p) { return same_point(p, x); });
}

TEST(Canonicalize, AppendsOneBoundRowPerVariable) {
  const LpInstance inst = pentagon();
  ASSERT_EQ(inst.m(), 3u);
  ASSERT_EQ(inst.n(), 2u);
  EXPECT_EQ(inst.a(), (Matrix{{1, 1}, {1, 0}, {0, 1}}));
  EXPECT_EQ(inst.a0(), (Vector{{4, 3, 3}}));
}

TEST(Canonicalize, BoundsOnly) {
  const LpInstance inst = canonicalize(Matrix(0, 1), Vector(0), Vector{{5.0}});
  EXPECT_EQ(inst.m(), 1u);
  EXPECT_EQ(inst.a(), (Matrix{{1.0}}));
  EXPECT_EQ(inst.a0(), (Vector{{5.0}}));
}

TEST(Canonicalize, RejectsNegativeBoundOrAvailability) {
  EXPECT_THROW(canonicalize(Matrix{{1.0, 1.0}}, Vector{{4.0}}, Vector{{3.0, -1.0}}), InvalidArgument);
  EXPECT_THROW(canonicalize(Matrix{{1.0, 1.0}}, Vector{{-4.0}}, Vector{{3.0, 3.0}}), InvalidArgument);
  EXPECT_THROW(canonicalize(Matrix{{1.0, 1.0, 1.0}}, Vector{{4.0}}, Vector{{3.0, 3.0}}), InvalidArgument);
}

TEST(LpInstance, RejectsUnboundedColumn) {
  EXPECT_THROW(LpInstance(Matrix{{1.0, 0.0}}, Vector{{1.0}}), InvalidArgument);
}

TEST(UnitPreference, Invariants) {
  EXPECT_THROW(UnitPreference(Vector{{0.8, 0.5}}), InvalidArgument);
  EXPECT_THROW(UnitPreference::normalized(Vector{{1.0, -0.1}}), InvalidArgument);
  EXPECT_THROW(UnitPreference::normalized(Vector{{0.0, 0.0}}), InvalidArgument);
  const UnitPreference c = UnitPreference::normalized(Vector{{3.0, 4.0}});
  EXPECT_NEAR(c.c()[0], 0.6, 1e-15);
  EXPECT_EQ(UnitPreference::normalized(c.c()), c);
}

TEST(SolveLp, PentagonFirstVector) {
  const LpSolution sol = solve_lp(pentagon(), pref({0.8, 0.6}));
  EXPECT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_TRUE(same_point(sol.vertex.x, Vector{{3.0, 1.0}}));
  EXPECT_NEAR(sol.value, 3.0, 1e-12);
}

TEST(SolveLp, PentagonSwappedVector) {
  const LpSolution sol = solve_lp(pentagon(), pref({0.6, 0.8}));
  EXPECT_TRUE(same_point(sol.vertex.x, Vector{{1.0, 3.0}}));
  EXPECT_NEAR(sol.value, 3.0, 1e-12);
}

TEST(SolveLp, SingleResource) {
  const LpInstance inst = canonicalize(Matrix(0, 1), Vector(0), Vector{{5.0}});
  const LpSolution sol = solve_lp(inst, pref({1.0}));
  EXPECT_NEAR(sol.vertex.x[0], 5.0, 1e-12);
  EXPECT_NEAR(sol.value, 5.0, 1e-12);
}

TEST(SolveLp, TieBreakIsLexicographicallySmallest) {
  // c = (1,1)/sqrt2 is optimal along the whole edge from (1,3) to (3,1).
  const LpSolution sol = solve_lp(pentagon(), pref({1.0, 1.0}));
  EXPECT_TRUE(same_point(sol.vertex.x, Vector{{1.0, 3.0}}));
  // c = e1: the edge x1 = 3 from (3,0) to (3,1).
  const LpSolution axis = solve_lp(pentagon(), pref({1.0, 0.0}));
  EXPECT_TRUE(same_point(axis.vertex.x, Vector{{3.0, 0.0}}));
}

TEST(SolveLp, ValueMatchesRecomputation) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const LpInstance inst = testing::random_instance(3, rng);
    const UnitPreference c = testing::random_preference(3, rng);
    const LpSolution sol = solve_lp(inst, c);
    EXPECT_NEAR(sol.value, objective_value(c, sol.vertex.x), 1e-7);
    EXPECT_GE(sol.vertex.active_set.size(), inst.n());
  }
}

TEST(EnumerateVertices, Pentagon) {
  const auto pts = points_of(enumerate_vertices(pentagon()));
  ASSERT_EQ(pts.size(), 5u);
  for (const Vector& expected : {Vector{{0, 0}}, Vector{{3, 0}}, Vector{{3, 1}}, Vector{{1, 3}}, Vector{{0, 3}}}) {
    EXPECT_TRUE(contains_point(pts, expected));
  }
}

TEST(EnumerateVertices, Interval) {
  const auto pts = points_of(enumerate_vertices(canonicalize(Matrix(0, 1), Vector(0), Vector{{5.0}})));
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_TRUE(contains_point(pts, Vector{{0.0}}));
  EXPECT_TRUE(contains_point(pts, Vector{{5.0}}));
}

TEST(EnumerateVertices, DegenerateCornerReportedOnce) {
  const auto vs = enumerate_vertices(canonicalize(Matrix{{1.0, 1.0}}, Vector{{2.0}}, Vector{{1.0, 1.0}}));
  ASSERT_EQ(vs.size(), 4u);
  const auto it = std::find_if(vs.begin(), vs.end(), [](const Vertex& v) { return same_point(v.x, Vector{{1, 1}}); });
  ASSERT_NE(it, vs.end());
  EXPECT_EQ(it->active_set.size(), 3u);
}

TEST(EnumerateVertices, SingleVertexPolytope) {
  const auto vs = enumerate_vertices(canonicalize(Matrix{{1.0, 1.0}}, Vector{{0.0}}, Vector{{1.0, 1.0}}));
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_TRUE(same_point(vs[0].x, Vector{{0, 0}}));
}

TEST(EnumerateVertices, DimensionLimit) {
  const std::size_t n = kMaxEnumerationVars + 1;
  const LpInstance big = canonicalize(Matrix(0, static_cast<Eigen::Index>(n)), Vector(0),
                                      Vector::Ones(static_cast<Eigen::Index>(n)));
  EXPECT_THROW(enumerate_vertices(big), DimensionLimitError);

  // n = 8 within the variable limit but 21 + 8 hyperplanes.
  const LpInstance wide = canonicalize(Matrix::Ones(13, 8), Vector::Ones(13), Vector::Ones(8));
  EXPECT_THROW(enumerate_vertices(wide), DimensionLimitError);
}

TEST(ObjectiveValue, Examples) {
  EXPECT_NEAR(objective_value(pref({0.8, 0.6}), Vector{{3.0, 1.0}}), 3.0, 1e-15);
  EXPECT_EQ(objective_value(pref({0.8, 0.6}), Vector::Zero(2)), 0.0);
  EXPECT_EQ(objective_value(pref({1.0, 0.0}), Vector{{0.0, 7.0}}), 0.0);
  EXPECT_THROW(objective_value(pref({1.0, 0.0}), Vector{{1.0}}), InvalidArgument);
}

// Simplex optimum equals the best enumerated vertex on random instances.
TEST(SolveLpProperty, AgreesWithVertexEnumeration) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const LpInstance inst = testing::random_instance(n, rng);
    const UnitPreference c = testing::random_preference(n, rng);
    const LpSolution sol = solve_lp(inst, c);
    double best = -1.0;
    for (const auto& v : enumerate_vertices(inst)) best = std::max(best, objective_value(c, v.x));
    ASSERT_NEAR(sol.value, best, 1e-6) << "trial " << trial;
    ASSERT_TRUE(is_feasible(inst, sol.vertex.x));
  }
}

TEST(SolveLpProperty, RowOrderDoesNotChangeArgmax) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const LpInstance inst = testing::random_instance(n, rng);
    // Include exact ties: axis directions and the diagonal.
    Vector w = trial % 4 == 0 ? Vector::Ones(static_cast<Eigen::Index>(n)) : testing::random_preference(n, rng).c();
    if (trial % 4 == 1) w = Vector::Unit(static_cast<Eigen::Index>(n), 0);
    const Vector base = solve_lp(inst, w).vertex.x;

    std::vector<std::size_t> order(inst.m());
    std::iota(order.begin(), order.end(), 0);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      const Vector again = solve_lp(inst.permuted_rows(order), w).vertex.x;
      ASSERT_TRUE(same_point(base, again)) << "trial " << trial;
    }
  }
}

TEST(SolveLpProperty, ScalingWeightsKeepsVertex) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const LpInstance inst = testing::random_instance(n, rng);
    const Vector c = testing::random_preference(n, rng).c();
    const LpSolution base = solve_lp(inst, c);
    for (const double lambda : {0.01, 0.5, 3.0, 250.0}) {
      const LpSolution scaled = solve_lp(inst, Vector(lambda * c));
      ASSERT_TRUE(same_point(base.vertex.x, scaled.vertex.x));
      ASSERT_NEAR(scaled.value, lambda * base.value, 1e-7 * std::max(1.0, lambda));
    }
  }
}

TEST(EnumerateVerticesProperty, FeasibleAndTight) {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const LpInstance inst = testing::random_instance(n, rng);
    const auto vs = enumerate_vertices(inst);
    ASSERT_GE(vs.size(), n + 1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      ASSERT_TRUE(is_feasible(inst, vs[i].x));
      ASSERT_GE(vs[i].active_set.size(), n);
      for (std::size_t j = i + 1; j < vs.size(); ++j) ASSERT_FALSE(same_point(vs[i].x, vs[j].x));
    }
  }
}

}  // namespace
}  // namespace prefadapt
