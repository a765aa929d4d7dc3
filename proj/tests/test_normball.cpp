#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thurston/normball.hpp"
#include "thurston/properties.hpp"
#include "thurston/random.hpp"

using namespace thurston;
using testutil::pm;
using testutil::Q;

namespace {

SumAbsNorm norm(std::size_t d, std::vector<RatVector> betas) { return SumAbsNorm::from_betas(d, betas); }
SumAbsNorm l1_3d() { return norm(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }
SumAbsNorm deflated_3d() { return norm(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}); }
std::vector<RatVector> octa_vertices() { return pm({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }
std::vector<RatVector> deflated_vertices() {
  const auto h = Q("1/2");
  return pm({{h, 0, 0}, {0, h, 0}, {0, 0, 1}, {h, -h, 0}});
}

}  // namespace

// ---- evaluate

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(l1_3d(), {1, 2, -3}), Rational(6));
  EXPECT_EQ(evaluate(SumAbsNorm(2, {{Rational(2), {1, 0}}}), {3, 5}), Rational(6));
  EXPECT_EQ(evaluate(deflated_3d(), {Q("1/2"), Q("-1/2"), 0}), Rational(1));
}

TEST(Evaluate, RejectsWrongLength) { EXPECT_THROW((void)evaluate(l1_3d(), {1, 2}), Error); }

TEST(SumAbsNorm, RejectsNonPositiveWeight) {
  EXPECT_THROW(SumAbsNorm(1, {{Rational(0), {1}}}), Error);
  EXPECT_THROW(SumAbsNorm(1, {{Rational(-1), {1}}}), Error);
}

// ---- is_norm

TEST(IsNorm, Examples) {
  EXPECT_TRUE(is_norm(norm(2, {{1, 0}, {0, 1}})));
  EXPECT_FALSE(is_norm(norm(2, {{1, 0}, {2, 0}})));
  EXPECT_TRUE(is_norm(norm(1, {{1}, {1}, {0}})));
}

// ---- unit balls

TEST(UnitBall, Square) {
  const auto n = norm(2, {{1, 0}, {0, 1}});
  EXPECT_EQ(unit_ball_deflate(n).vertices, pm({{1, 0}, {0, 1}}));
  EXPECT_EQ(unit_ball_oracle(n).vertices, pm({{1, 0}, {0, 1}}));
}

TEST(UnitBall, Octahedron) {
  EXPECT_EQ(unit_ball_deflate(l1_3d()).vertices, octa_vertices());
  EXPECT_EQ(unit_ball_oracle(l1_3d()).vertices, octa_vertices());
}

TEST(UnitBall, OctahedronDeflatedAlongXPlusY) {
  EXPECT_EQ(unit_ball_deflate(deflated_3d()).vertices, deflated_vertices());
  EXPECT_EQ(unit_ball_oracle(deflated_3d()).vertices, deflated_vertices());
}

TEST(UnitBall, ZeroAndRepeatedBetasAndWeights) {
  const auto a = SumAbsNorm(2, {{Rational(2), {1, 0}}, {Rational(1), {0, 0}}, {Rational(1), {0, 1}}});
  const auto b = norm(2, {{1, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(unit_ball_deflate(a), unit_ball_deflate(b));
  EXPECT_EQ(unit_ball_deflate(a).vertices, pm({{Q("1/2"), 0}, {0, 1}}));
}

TEST(UnitBall, NotANormIsRejected) {
  for (auto f : {unit_ball_deflate, +[](const SumAbsNorm& n) { return unit_ball_oracle(n); }}) {
    try {
      (void)f(norm(2, {{1, 0}, {2, 0}}));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotANorm);
    }
  }
}

TEST(UnitBall, OracleRefusesTooManyTerms) {
  std::vector<RatVector> betas(13, RatVector{1});
  try {
    (void)unit_ball_oracle(norm(1, betas));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
  }
  EXPECT_NO_THROW((void)unit_ball_oracle(norm(1, betas), 13));
}

TEST(UnitBall, DeflationMatchesBruteForceAndEveryVertexHasNormOne) {
  gen::Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    const auto d = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto k = static_cast<std::size_t>(rng.uniform(static_cast<long>(d), 5));
    const auto n = gen::spanning_norm(rng, d, k, -3, 3);
    const auto ball = unit_ball_deflate(n);
    EXPECT_EQ(ball.vertices, testutil::brute_force_ball(n));
    for (const auto& v : ball.vertices) EXPECT_EQ(evaluate(n, v), Rational(1));
  }
}

// ---- weight_solve

TEST(WeightSolve, OctahedronHasUnitWeightsOnCoordinatePlanes) {
  const auto w = weight_solve(convex_hull(octa_vertices(), 3));
  ASSERT_TRUE(w.has_value());
  ASSERT_EQ(w->size(), 3u);
  for (const auto& h : *w) EXPECT_EQ(h.weight, Rational(1));
}

TEST(WeightSolve, IcosahedronVariant) {
  const auto ok = weight_solve(props::icosahedron_variant(Q("1/4")));
  ASSERT_TRUE(ok.has_value());
  std::set<RatVector> planes;
  for (const auto& h : *ok) {
    EXPECT_EQ(h.weight, Rational(1));
    planes.insert(h.hyperplane);
  }
  EXPECT_EQ(planes, testutil::as_set({{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}}));
  EXPECT_FALSE(weight_solve(props::icosahedron_variant(Q("1/8"))).has_value());
}

TEST(WeightSolve, CubeIsInfeasible) { EXPECT_FALSE(weight_solve(props::cube()).has_value()); }

// ---- completion

TEST(Completion, CubeGivesTheSixDiagonalPlanes) {
  const auto c = completion(props::cube());
  EXPECT_EQ(c.functionals().size(), 6u);
  for (const auto& f : c.functionals()) EXPECT_EQ(f.weight, Rational(1));
  const auto ball = unit_ball_deflate(c);
  const auto& vs = ball.vertices;
  const auto has = [&](const RatVector& v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); };
  EXPECT_TRUE(has({0, 0, Q("1/4")}));
  EXPECT_TRUE(has({0, 0, Q("-1/4")}));
  EXPECT_TRUE(has({Q("1/6"), Q("1/6"), Q("1/6")}));
  EXPECT_TRUE(has({Q("-1/6"), Q("-1/6"), Q("-1/6")}));
  EXPECT_TRUE(cone_refines(ball, props::cube()));
  EXPECT_TRUE(is_complete(ball).complete);
}

TEST(Completion, OctahedronIsItsOwnCompletion) {
  const auto c = completion(convex_hull(octa_vertices(), 3));
  EXPECT_EQ(unit_ball_deflate(c).vertices, octa_vertices());
}

TEST(Completion, PolygonFansAreReproduced) {
  gen::Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const auto p = gen::polygon(rng, 5);
    const auto c = completion(p);
    ASSERT_TRUE(is_norm(c));
    const auto ball = unit_ball_deflate(c);
    EXPECT_TRUE(cone_refines(ball, p));
    EXPECT_TRUE(cone_refines(p, ball));
  }
}

// ---- pullback

TEST(Pullback, DiagonalEmbeddingHalved) {
  const auto out = pullback(norm(2, {{1, 0}, {0, 1}}), RatMatrix::from_columns({{1, 1}}, 2), Q("1/2"));
  EXPECT_EQ(out.dim(), 1u);
  for (Rational t : {Rational(3), Q("-5/2"), Rational(0)}) EXPECT_EQ(evaluate(out, {t}), abs(t));
}

TEST(Pullback, IdentityEmbedding) {
  const auto n = deflated_3d();
  EXPECT_EQ(pullback(n, RatMatrix::identity(3), 1), n);
  const auto half = pullback(n, RatMatrix::identity(3), Q("1/2"));
  for (std::size_t i = 0; i < n.functionals().size(); ++i)
    EXPECT_EQ(half.functionals()[i].weight, Q("1/2") * n.functionals()[i].weight);
}

TEST(Pullback, Preconditions) {
  EXPECT_THROW((void)pullback(l1_3d(), RatMatrix::from_columns({{1, 0, 0}, {2, 0, 0}}, 3), 1), Error);
  EXPECT_THROW((void)pullback(l1_3d(), RatMatrix::identity(3), 0), Error);
  EXPECT_THROW((void)pullback(l1_3d(), RatMatrix::identity(2), 1), Error);
}
