#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thurston/manifold.hpp"
#include "thurston/properties.hpp"
#include "thurston/random.hpp"

using namespace thurston;
using testutil::Q;

namespace {

std::vector<SurgeryPair> S(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<SurgeryPair> out;
  for (auto [p, q] : xs) out.push_back({BigInt(p), BigInt(q)});
  return out;
}

const auto kUnitWitness = S({{1, -1}, {2, 1}, {2, -1}, {2, 1}, {2, -1}});

SimplifiedGraph roundtrip() {
  return {{{0, 1, kUnitWitness}, {0, 1, kUnitWitness}}, {{0, 1, BigInt(-1)}}};
}

SimplifiedGraph triangle() {
  const auto w = S({{2, 1}, {2, -1}});
  return {{{0, 0, w}, {0, 0, w}, {0, 0, w}}, {{0, 1, BigInt(1)}, {1, 2, BigInt(1)}, {0, 2, BigInt(1)}}};
}

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

// ---- derived_chi

TEST(DerivedChi, Examples) {
  EXPECT_EQ(derived_chi({0, 1, kUnitWitness}, 1), Rational(-1));
  EXPECT_EQ(derived_chi({2, 0, {}}, 0), Rational(-2));
  EXPECT_EQ(derived_chi({0, Q("-1/3"), S({{3, 1}, {3, -1}, {3, 1}})}, 0), Rational(0));
}

TEST(DerivedChi, NegativeModuliCountByAbsoluteValue) {
  EXPECT_EQ(derived_chi({0, 0, S({{-3, 1}})}, 0), derived_chi({0, 0, S({{3, -1}})}, 0));
}

// ---- validate

TEST(Validate, RoundtripGraphIsOk) { EXPECT_TRUE(validate(roundtrip()).empty()); }

TEST(Validate, ChiZeroVertexIsReported) {
  SimplifiedGraph g{{{0, Q("-1/3"), S({{3, 1}, {3, -1}, {3, 1}})}}, {}};
  const auto v = validate(g);
  ASSERT_TRUE(has_kind(v, Violation::Kind::ChiNonNegative));
  EXPECT_EQ(v.front().index, 0u);
}

TEST(Validate, ZeroEdgeIsReported) {
  auto g = roundtrip();
  g.edges[0].p = 0;
  EXPECT_TRUE(has_kind(validate(g), Violation::Kind::ZeroEdge));
}

TEST(Validate, OtherViolations) {
  auto g = roundtrip();
  g.edges.push_back({0, 5, BigInt(1)});
  EXPECT_TRUE(has_kind(validate(g), Violation::Kind::EdgeOutOfRange));

  g = roundtrip();
  g.vertices[0].surgeries[1] = {BigInt(4), BigInt(2)};
  EXPECT_TRUE(has_kind(validate(g), Violation::Kind::NonCoprimeSurgery));

  g = roundtrip();
  g.vertices[0].surgeries[1].p = 0;
  EXPECT_TRUE(has_kind(validate(g), Violation::Kind::ZeroSurgery));

  g = roundtrip();
  g.vertices[1].euler_number = 2;
  EXPECT_TRUE(has_kind(validate(g), Violation::Kind::WitnessMismatch));
}

TEST(Validate, InvalidGraphIsRejectedDownstream) {
  auto g = roundtrip();
  g.edges[0].p = 0;
  try {
    (void)reduced_plumbing_matrix(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidGraph);
  }
}

// ---- reduced_plumbing_matrix

TEST(PlumbingMatrix, TwoVertices) {
  EXPECT_EQ(reduced_plumbing_matrix(roundtrip()), RatMatrix::from_rows({{1, -1}, {-1, 1}}, 2));
}

TEST(PlumbingMatrix, LoopCountsTwice) {
  SimplifiedGraph g{{{0, -1, S({{1, 1}, {2, 1}, {2, -1}})}}, {{0, 0, BigInt(2)}}};
  ASSERT_TRUE(validate(g).empty());
  EXPECT_EQ(reduced_plumbing_matrix(g), RatMatrix::from_rows({{0}}, 1));
}

TEST(PlumbingMatrix, IsolatedVertex) {
  SimplifiedGraph g{{{1, Q("-3/2"), S({{2, 3}})}}, {}};
  ASSERT_TRUE(validate(g).empty());
  EXPECT_EQ(reduced_plumbing_matrix(g), RatMatrix::from_rows({{Q("-3/2")}}, 1));
}

TEST(PlumbingMatrix, SymmetricAndPermutationEquivariant) {
  gen::Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    const auto g = gen::valid_graph(rng, 5);
    const auto a = reduced_plumbing_matrix(g);
    EXPECT_TRUE(a.is_symmetric());
    const auto h = gen::permuted(rng, g);
    EXPECT_EQ(invariants(h), invariants(g));
  }
}

// ---- thurston_value

TEST(ThurstonValue, Examples) {
  EXPECT_EQ(thurston_value(roundtrip(), {1, 1}), Rational(2));
  EXPECT_EQ(thurston_value(roundtrip(), {0, 0}), Rational(0));
  try {
    (void)thurston_value(roundtrip(), {1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRealizable);
  }
  EXPECT_THROW((void)thurston_value(roundtrip(), {1, 1, 1}), Error);
}

// ---- nonvanishing_norm

TEST(NonvanishingNorm, Roundtrip) {
  const auto nv = nonvanishing_norm(roundtrip());
  EXPECT_EQ(nv.basis, (std::vector<RatVector>{{1, 1}}));
  EXPECT_EQ(nv.norm, SumAbsNorm(1, {{1, {1}}, {1, {1}}}));
  EXPECT_EQ(evaluate(nv.norm, {Q("-3/2")}), Rational(3));
}

TEST(NonvanishingNorm, ZeroMatrixGivesCoordinateNorm) {
  SimplifiedGraph g{{{2, 0, {}}, {2, 0, {}}}, {}};
  const auto nv = nonvanishing_norm(g);
  EXPECT_EQ(nv.basis, (std::vector<RatVector>{{1, 0}, {0, 1}}));
  EXPECT_EQ(nv.norm, SumAbsNorm(2, {{2, {1, 0}}, {2, {0, 1}}}));
}

TEST(NonvanishingNorm, TrivialKernel) {
  SimplifiedGraph g{{{1, Q("-3/2"), S({{2, 3}})}}, {}};
  const auto nv = nonvanishing_norm(g);
  EXPECT_TRUE(nv.basis.empty());
  EXPECT_EQ(nv.norm.dim(), 0u);
}

TEST(NonvanishingNorm, AgreesWithThurstonValueOnRandomGraphs) {
  gen::Rng rng(37);
  int with_kernel = 0;
  for (int t = 0; t < 80; ++t) {
    const auto g = gen::valid_graph(rng, 5);
    const auto nv = nonvanishing_norm(g);
    with_kernel += nv.basis.empty() ? 0 : 1;
    for (int s = 0; s < 3 && !nv.basis.empty(); ++s) {
      const auto c = gen::int_vector(rng, nv.basis.size(), -4, 4);
      RatVector l = zero_vector(g.vertices.size());
      for (std::size_t j = 0; j < c.size(); ++j) l = l + c[j] * nv.basis[j];
      EXPECT_EQ(evaluate(nv.norm, c), thurston_value(g, l));
    }
  }
  EXPECT_GT(with_kernel, 0);
}

TEST(NonvanishingNorm, RejectsANonBasis) {
  EXPECT_THROW((void)nonvanishing_norm(roundtrip(), {{1, 0}}), Error);
  EXPECT_NO_THROW((void)nonvanishing_norm(roundtrip(), {{-2, -2}}));
}

// ---- invariants

TEST(Invariants, Roundtrip) {
  EXPECT_EQ(invariants(roundtrip()), (InvariantReport{0, 0, 1, 1, true}));
}

TEST(Invariants, Triangle) {
  ASSERT_TRUE(validate(triangle()).empty());
  EXPECT_EQ(invariants(triangle()), (InvariantReport{1, 1, 0, 1, false}));
}

TEST(Invariants, DisjointUnionDoubles) {
  const auto two = gen::disjoint_union(roundtrip(), roundtrip());
  const auto r = invariants(two);
  // b1 = E - V + C counts components, so it stays 0 for a forest.
  EXPECT_EQ(r, (InvariantReport{0, 0, 2, 2, true}));
}

TEST(Invariants, MatchIndependentComputationOnRandomGraphs) {
  gen::Rng rng(41);
  for (int t = 0; t < 80; ++t) {
    const auto g = gen::valid_graph(rng, 6);
    EXPECT_EQ(invariants(g), props::detail::invariants_by_hand(g));
  }
}

// ---- seifert_rank

TEST(SeifertRank, Examples) {
  EXPECT_EQ(seifert_rank(-1, Q("1/2"), true), 1);
  EXPECT_EQ(seifert_rank(-1, Q("1/2"), false), 0);
  EXPECT_EQ(seifert_rank(1, 0, false), 0);
  EXPECT_EQ(seifert_rank(-1, 0, false), 1);
}

// ---- witness_surgeries

TEST(WitnessSurgeries, Examples) {
  EXPECT_EQ(witness_surgeries(1, -1, 0, 1), kUnitWitness);
  EXPECT_EQ(witness_surgeries(0, -2, 0, 2), S({{2, 1}, {2, -1}, {2, 1}, {2, -1}}));
  EXPECT_EQ(witness_surgeries(Q("-1/3"), Q("-5/3"), 0, 1), S({{3, 1}, {2, 1}, {2, -1}, {2, 1}, {2, -1}}));
}

TEST(WitnessSurgeries, RecomputeTargetsExactly) {
  gen::Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const Rational e = rng.rational(-5, 5, 7);
    const auto genus = static_cast<std::size_t>(rng.uniform(0, 2));
    const auto degree = static_cast<std::size_t>(rng.uniform(0, 4));
    const Rational chi = -rng.rational(1, 20, 6);
    const auto plan = plan_witness(e, chi, genus, degree);
    if (!plan.achievable) {
      EXPECT_LT(plan.nearest_achievable_chi, chi);
      continue;
    }
    const VertexLabel v{genus, e, plan.surgeries};
    EXPECT_EQ(witness_euler(v), e);
    EXPECT_EQ(derived_chi(v, degree), chi);
  }
}

TEST(WitnessSurgeries, UnachievableNamesNearestChi) {
  try {
    (void)witness_surgeries(0, Q("-1/2"), 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unachievable);
    EXPECT_NE(std::string(e.what()).find("nearest achievable chi"), std::string::npos);
  }
  EXPECT_THROW((void)witness_surgeries(0, 0, 0, 0), Error);
}
