#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thurston/realize.hpp"
#include "thurston/random.hpp"

using namespace thurston;
using testutil::Q;

TEST(Realize, TwoEqualBetasFibered) {
  const auto r = realize({{1}, {1}}, {0, 0}, true);
  ASSERT_TRUE(r.verified());
  EXPECT_EQ(r.graph.vertices.size(), 2u);
  ASSERT_EQ(r.graph.edges.size(), 1u);
  EXPECT_EQ(r.k_multiplier, 1);
  EXPECT_EQ(r.chi_targets, (std::vector<Rational>{-4, -4}));
  EXPECT_EQ(r.abar, RatMatrix::from_rows({{1, -1}, {-1, 1}}, 2));
  const auto a = reduced_plumbing_matrix(r.graph);
  EXPECT_EQ(Rational(r.scale_N) * a, r.abar);
  // The graph's own norm on its kernel is |t| + |t| once the rescaling is undone.
  const auto nv = nonvanishing_norm(r.graph, r.rescaled_kernel);
  for (Rational t : {Rational(1), Q("-7/3")}) EXPECT_EQ(evaluate(nv.norm, {t}), Rational(2) * abs(t));
  EXPECT_TRUE(invariants(r.graph).fibered);
}

TEST(Realize, NotFiberedAppendsAZeroTerm) {
  const auto r = realize({{1}, {1}}, {0, 0}, false);
  ASSERT_TRUE(r.verified());
  EXPECT_EQ(r.graph.vertices.size(), 3u);
  EXPECT_EQ(r.genera.back(), 0u);
  EXPECT_EQ(r.target.functionals().back().beta, RatVector{0});
  EXPECT_FALSE(invariants(r.graph).fibered);
}

TEST(Realize, ExistingZeroTermIsNotDuplicated) {
  const auto r = realize({{1}, {0}}, {0, 1}, false);
  ASSERT_TRUE(r.verified());
  EXPECT_EQ(r.graph.vertices.size(), 2u);
}

TEST(Realize, Preconditions) {
  auto code_of = [](auto&& f) -> std::optional<ErrorCode> {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  EXPECT_EQ(code_of([] { (void)realize({{1, 0}, {2, 0}}, {0, 0}, true); }), ErrorCode::NotANorm);
  EXPECT_EQ(code_of([] { (void)realize({{1}, {1}}, {0}, true); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)realize({{1}, {0}}, {0, 0}, true); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)realize({}, {}, true); }), ErrorCode::NotANorm);
  EXPECT_EQ(code_of([] { (void)realize({{1}, {1, 0}}, {0, 0}, true); }), ErrorCode::DimensionMismatch);
}

TEST(Realize, RandomTargetsRoundTrip) {
  gen::Rng rng(47);
  for (int t = 0; t < 25; ++t) {
    const auto in = gen::realization_input(rng);
    const auto r = realize(in.betas, in.genera, in.fibered);
    ASSERT_TRUE(r.verified());
    const auto nv = nonvanishing_norm(r.graph, r.rescaled_kernel);
    for (int s = 0; s < 3; ++s) {
      const auto c = gen::rational_vector(rng, r.target.dim(), -3, 3, 3);
      EXPECT_EQ(evaluate(nv.norm, c), evaluate(r.target, c));
    }
    EXPECT_EQ(invariants(r.graph).fibered, in.fibered);
    for (std::size_t j = 0; j < r.graph.vertices.size(); ++j)
      EXPECT_EQ(derived_chi(r.graph.vertices[j], r.graph.degree(j)), r.chi_targets[j]);
  }
}

TEST(Realize, Deterministic) {
  const auto a = realize({{1, 2}, {Q("-1/2"), 1}, {3, 0}}, {1, 0, 2}, true);
  const auto b = realize({{1, 2}, {Q("-1/2"), 1}, {3, 0}}, {1, 0, 2}, true);
  EXPECT_EQ(a.abar, b.abar);
  EXPECT_EQ(a.scale_N, b.scale_N);
  ASSERT_EQ(a.graph.vertices.size(), b.graph.vertices.size());
  for (std::size_t j = 0; j < a.graph.vertices.size(); ++j)
    EXPECT_EQ(a.graph.vertices[j].surgeries, b.graph.vertices[j].surgeries);
}
