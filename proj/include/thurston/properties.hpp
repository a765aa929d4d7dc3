#pragma once

// Fixture checks and seeded property suites. Each check returns a report
// instead of asserting, so the same code backs `thurston verify` and the
// acceptance runner.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "thurston/json_io.hpp"
#include "thurston/linalg.hpp"
#include "thurston/manifold.hpp"
#include "thurston/normball.hpp"
#include "thurston/polytope.hpp"
#include "thurston/random.hpp"
#include "thurston/realize.hpp"

namespace thurston::props {

struct Report {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  ///< first failure, if any
  double seconds = 0;
};

namespace detail {

/// Runs `body` and records wall time; `body` fills in cases/passed/detail.
inline Report timed(std::string name, const std::function<void(Report&)>& body) {
  Report r;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("unexpected exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline void fail(Report& r, const std::string& msg) {
  if (r.passed) r.detail = msg;
  r.passed = false;
}

inline RatVector rv(std::initializer_list<Rational> xs) { return RatVector(xs); }

inline std::vector<RatVector> with_negatives(const std::vector<RatVector>& half) {
  std::vector<RatVector> out;
  for (const auto& v : half) {
    out.push_back(v);
    out.push_back(-v);
  }
  return out;
}

inline std::string show(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

/// Rank by fraction-free Bareiss elimination over the integers after clearing
/// denominators row by row. Kept apart from row_reduce on purpose.
inline std::size_t bareiss_rank(const RatMatrix& m) {
  std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) l = lcm(l, m(r, c).denominator());
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).numerator() * (l / m(r, c).denominator());
  }
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      for (std::size_t k = c + 1; k < m.cols(); ++k) a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

/// Invariants of a graph computed without components() or kernel_basis():
/// connected pieces by depth-first search, kernel dimension by Bareiss rank.
inline InvariantReport invariants_by_hand(const SimplifiedGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  long pieces = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++pieces;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  long genus = 0;
  for (const auto& v : g.vertices) genus += static_cast<long>(v.genus);
  InvariantReport r;
  r.b1_gamma = static_cast<long>(g.edges.size()) - static_cast<long>(n) + pieces;
  r.null_space_dim = r.b1_gamma + 2 * genus;
  r.kernel_dim = static_cast<long>(n) - static_cast<long>(bareiss_rank(reduced_plumbing_matrix(g)));
  r.b2 = r.kernel_dim + r.null_space_dim;
  // Vertex i has a zero row in the kernel matrix exactly when e_i lies in the
  // row space of A, i.e. appending e_i as a row leaves the rank unchanged.
  const RatMatrix a = reduced_plumbing_matrix(g);
  const std::size_t rank_a = bareiss_rank(a);
  bool zero_row = false;
  for (std::size_t i = 0; i < n && !zero_row; ++i) {
    RatMatrix ext(n + 1, n);
    for (std::size_t r0 = 0; r0 < n; ++r0)
      for (std::size_t c = 0; c < n; ++c) ext(r0, c) = a(r0, c);
    ext(n, i) = 1;
    zero_row = bareiss_rank(ext) == rank_a;
  }
  r.fibered = r.kernel_dim > 0 && !zero_row;
  return r;
}

}  // namespace detail

// ------------------------------------------------------------------ fixtures

inline RatPolytope octahedron() {
  return convex_hull(detail::with_negatives({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 3);
}

inline RatPolytope cube() {
  std::vector<RatVector> pts;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) pts.push_back({x, y, z});
  return convex_hull(pts, 3);
}

inline RatPolytope three_chain() {
  return convex_hull(detail::with_negatives({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 1, 1}}), 3);
}

/// Cube-completion ball with the axial apex moved to (0, 0, eps).
inline RatPolytope icosahedron_variant(const Rational& eps) {
  const Rational q(1, 4), s(1, 6);
  return convex_hull(detail::with_negatives({{q, 0, 0}, {0, q, 0}, {0, 0, eps}, {s, s, s}, {s, s, -s}, {s, -s, s},
                                             {s, -s, -s}}),
                     3);
}

/// The six planes x+-y, x+-z, y+-z as canonical normals.
inline std::set<RatVector> cube_diagonal_planes() {
  std::set<RatVector> out;
  for (RatVector v : std::vector<RatVector>{{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}})
    out.insert(canonical_line(v));
  return out;
}

inline Report octahedron_fixture() {
  return detail::timed("octahedron ball, completeness and ridge planes", [](Report& r) {
    const auto nrm = SumAbsNorm::from_betas(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto expected = octahedron();
    r.cases = 1;
    if (unit_ball_deflate(nrm) != expected) detail::fail(r, "deflation ball is not {+-e_i}");
    if (unit_ball_oracle(nrm) != expected) detail::fail(r, "oracle ball is not {+-e_i}");
    if (!is_complete(expected).complete) detail::fail(r, "octahedron reported incomplete");
    const std::vector<RatVector> planes{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    if (face_fan(expected).ridge_hyperplanes != planes) detail::fail(r, "ridge planes are not x=0, y=0, z=0");
  });
}

inline Report cube_fixture() {
  return detail::timed("cube incompleteness and completion", [](Report& r) {
    const auto c = cube();
    r.cases = 1;
    const auto report = is_complete(c);
    if (report.complete) detail::fail(r, "cube reported complete");
    std::set<RatVector> reported;
    for (const auto& v : report.violations) reported.insert(v.hyperplane);
    if (reported != cube_diagonal_planes()) detail::fail(r, "violating planes differ from x+-y, x+-z, y+-z");
    const auto ball = unit_ball_deflate(completion(c));
    const Rational q(1, 4), s(1, 6);
    for (const RatVector& v : detail::with_negatives({{0, 0, q}, {s, s, s}}))
      if (!std::binary_search(ball.vertices.begin(), ball.vertices.end(), v))
        detail::fail(r, "completion ball misses " + detail::show(v));
    if (!cone_refines(ball, c)) detail::fail(r, "completion ball does not refine the cube");
  });
}

inline Report three_chain_fixture() {
  return detail::timed("3-chain ball is incomplete", [](Report& r) {
    r.cases = 1;
    if (is_complete(three_chain()).complete) detail::fail(r, "3-chain reported complete");
  });
}

inline Report icosahedron_fixture() {
  return detail::timed("icosahedron weights at eps = 1/4 and 1/8", [](Report& r) {
    r.cases = 2;
    const auto w = weight_solve(icosahedron_variant(Rational(1, 4)));
    if (!w) {
      detail::fail(r, "eps = 1/4 reported infeasible");
    } else {
      std::set<RatVector> planes;
      for (const auto& h : *w) {
        planes.insert(h.hyperplane);
        if (h.weight != Rational(1)) detail::fail(r, "weight " + h.weight.str() + " on " + detail::show(h.hyperplane));
      }
      if (planes != cube_diagonal_planes()) detail::fail(r, "weights are not on the six diagonal planes");
    }
    if (weight_solve(icosahedron_variant(Rational(1, 8)))) detail::fail(r, "eps = 1/8 reported feasible");
  });
}

// ------------------------------------------------------------------ suites

inline Report oracle_equivalence(std::uint64_t seed, std::size_t count = 200) {
  return detail::timed("deflation ball equals oracle ball", [&](Report& r) {
    gen::Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      const auto d = static_cast<std::size_t>(rng.uniform(1, 4));
      const auto k = static_cast<std::size_t>(rng.uniform(static_cast<long>(d), 7));
      const auto nrm = gen::spanning_norm(rng, d, k, -5, 5);
      ++r.cases;
      const auto a = unit_ball_deflate(nrm);
      const auto b = unit_ball_oracle(nrm);
      if (a != b) detail::fail(r, "case " + std::to_string(i) + ": vertex sets differ");
      for (const auto& v : a.vertices)
        if (evaluate(nrm, v) != Rational(1)) detail::fail(r, "case " + std::to_string(i) + ": vertex off the sphere");
    }
  });
}

inline Report realization_roundtrip(std::uint64_t seed, std::size_t count = 100) {
  return detail::timed("realization ledger verifies", [&](Report& r) {
    gen::Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      const auto in = gen::realization_input(rng);
      ++r.cases;
      const auto res = realize(in.betas, in.genera, in.fibered);
      if (!res.verified()) detail::fail(r, "case " + std::to_string(i) + ": ledger failed");
      const auto& betas = res.target.functionals();
      const bool all_nonzero =
          std::none_of(betas.begin(), betas.end(), [](const Functional& f) { return is_zero(f.beta); });
      if (invariants(res.graph).fibered != all_nonzero)
        detail::fail(r, "case " + std::to_string(i) + ": fibered flag disagrees with the zero-row test");
      for (std::size_t j = 0; j < res.chi_targets.size(); ++j) {
        const Rational k = Rational(res.k_multiplier) * Rational(static_cast<long>(2 * res.genera[j] + betas.size() + 2));
        if (res.chi_targets[j] != -k) detail::fail(r, "case " + std::to_string(i) + ": chi target is not -K_j");
      }
    }
  });
}

inline Report invariant_formulas(std::uint64_t seed, std::size_t count = 100) {
  return detail::timed("invariants are additive over components", [&](Report& r) {
    gen::Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      const auto pieces = static_cast<std::size_t>(rng.uniform(1, 3));
      SimplifiedGraph whole;
      InvariantReport sum;
      sum.fibered = true;
      for (std::size_t p = 0; p < pieces; ++p) {
        const auto g = gen::valid_graph(rng, 4);
        const auto h = detail::invariants_by_hand(g);
        sum.b1_gamma += h.b1_gamma;
        sum.null_space_dim += h.null_space_dim;
        sum.kernel_dim += h.kernel_dim;
        sum.b2 += h.b2;
        sum.fibered = sum.fibered && h.fibered;
        whole = gen::disjoint_union(whole, g);
      }
      whole = gen::permuted(rng, whole);
      ++r.cases;
      const auto inv = invariants(whole);
      long genus = 0;
      for (const auto& v : whole.vertices) genus += static_cast<long>(v.genus);
      if (inv.null_space_dim != inv.b1_gamma + 2 * genus || inv.b2 != inv.kernel_dim + inv.null_space_dim)
        detail::fail(r, "case " + std::to_string(i) + ": report violates its own formulas");
      if (inv.b1_gamma != sum.b1_gamma || inv.null_space_dim != sum.null_space_dim ||
          inv.kernel_dim != sum.kernel_dim || inv.b2 != sum.b2)
        detail::fail(r, "case " + std::to_string(i) + ": union differs from the sum over its pieces");
      if (inv.fibered != sum.fibered)
        detail::fail(r, "case " + std::to_string(i) + ": union fibered flag differs from its pieces");
    }
  });
}

inline Report planar_program(std::uint64_t seed, std::size_t count = 50) {
  return detail::timed("planar polygons are realized", [&](Report& r) {
    gen::Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      const auto poly = gen::polygon(rng, 6);
      const std::string tag = "case " + std::to_string(i) + ": ";
      ++r.cases;
      if (!is_complete(poly).complete) {
        detail::fail(r, tag + "polygon reported incomplete");
        continue;
      }
      const auto w = weight_solve(poly);
      if (!w) {
        detail::fail(r, tag + "weights infeasible");
        continue;
      }
      std::vector<RatVector> betas;
      for (const auto& h : *w) betas.push_back(h.weight * h.hyperplane);
      const auto res = realize(betas, std::vector<std::size_t>(betas.size(), 0), true);
      if (!res.verified()) detail::fail(r, tag + "realization ledger failed");
      const auto nv = nonvanishing_norm(res.graph, res.rescaled_kernel);
      const auto ball = unit_ball_deflate(nv.norm);
      if (ball != poly) detail::fail(r, tag + "nonvanishing ball differs from the polygon");
      if (!cone_refines(ball, poly) || !cone_refines(poly, ball)) detail::fail(r, tag + "fans differ");
    }
  });
}

inline Report pullback_fuzz(std::uint64_t seed, std::size_t count = 1000) {
  return detail::timed("pullback by half scales the norm", [&](Report& r) {
    gen::Rng rng(seed);
    const Rational half(1, 2);
    for (std::size_t i = 0; i < count; ++i) {
      const auto d = static_cast<std::size_t>(rng.uniform(1, 4));
      const auto m = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(d)));
      const auto k = static_cast<std::size_t>(rng.uniform(0, 6));
      std::vector<Functional> terms;
      for (std::size_t t = 0; t < k; ++t)
        terms.push_back({rng.rational(1, 5, 3), gen::int_vector(rng, d, -5, 5)});
      const SumAbsNorm nrm(d, std::move(terms));
      const auto e = gen::injective_matrix(rng, d, m, -3, 3);
      const auto v = gen::rational_vector(rng, m, -7, 7, 5);
      ++r.cases;
      if (evaluate(pullback(nrm, e, half), v) != half * evaluate(nrm, e * v))
        detail::fail(r, "case " + std::to_string(i) + ": values differ");
    }
  });
}

inline Report witness_fuzz(std::uint64_t seed, std::size_t count = 300) {
  return detail::timed("surgery witnesses hit e and chi exactly", [&](Report& r) {
    gen::Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      const Rational e = rng.rational(-20, 20, rng.coin() ? 6 : 997);
      const auto genus = static_cast<std::size_t>(rng.uniform(0, 2));
      const auto degree = static_cast<std::size_t>(rng.uniform(0, 4));
      const Rational chi = -rng.rational(1, 60, 7);
      const auto plan = plan_witness(e, chi, genus, degree);
      ++r.cases;
      if (!plan.achievable) {
        const auto again = plan_witness(e, plan.nearest_achievable_chi, genus, degree);
        if (!again.achievable || plan.nearest_achievable_chi >= chi)
          detail::fail(r, "case " + std::to_string(i) + ": suggested chi is not achievable");
        continue;
      }
      const VertexLabel v{genus, e, plan.surgeries};
      if (witness_euler(v) != e || derived_chi(v, degree) != chi)
        detail::fail(r, "case " + std::to_string(i) + ": witness misses its targets");
      for (const auto& s : plan.surgeries)
        if (s.p == 0 || gcd(s.p, s.q) != 1) detail::fail(r, "case " + std::to_string(i) + ": bad surgery pair");
    }
  });
}

inline Report norm_coherence(std::uint64_t seed, std::size_t count = 100) {
  return detail::timed("kernel norm agrees with the graph formula", [&](Report& r) {
    gen::Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      const auto g = gen::valid_graph(rng, 5);
      const auto nv = nonvanishing_norm(g);
      const std::size_t d = nv.basis.size();
      const auto c = gen::rational_vector(rng, d, -4, 4, 3);
      RatVector l = zero_vector(g.vertices.size());
      for (std::size_t j = 0; j < d; ++j) l = l + c[j] * nv.basis[j];
      ++r.cases;
      if (evaluate(nv.norm, c) != thurston_value(g, l))
        detail::fail(r, "case " + std::to_string(i) + ": norm and graph formula disagree");
    }
  });
}

inline Report json_roundtrip(std::uint64_t seed, std::size_t count = 50) {
  return detail::timed("emitted JSON re-parses to an equal value", [&](Report& r) {
    gen::Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      const std::string tag = "case " + std::to_string(i) + ": ";
      ++r.cases;
      const auto g = gen::valid_graph(rng, 4);
      const auto gj = io::to_json(g);
      if (io::to_json(io::graph_from_json(io::json::parse(gj.dump()))) != gj) detail::fail(r, tag + "graph");
      const auto nrm = gen::spanning_norm(rng, 2, 3, -4, 4);
      const auto nj = io::to_json(nrm);
      if (io::norm_from_json(io::json::parse(nj.dump())) != nrm) detail::fail(r, tag + "norm");
      const auto ball = unit_ball_deflate(nrm);
      if (io::polytope_from_json(io::json::parse(io::to_json(ball).dump())) != ball) detail::fail(r, tag + "polytope");
      if (i % 5 == 0) {
        const auto in = gen::realization_input(rng);
        const auto rj = io::to_json(realize(in.betas, in.genera, in.fibered));
        if (io::to_json(io::realization_from_json(io::json::parse(rj.dump()))) != rj) detail::fail(r, tag + "realization");
      }
    }
  });
}

/// Everything above, with the fixture checks first.
inline std::vector<Report> full_suite(std::uint64_t seed) {
  return {octahedron_fixture(),      cube_fixture(),         three_chain_fixture(),
          icosahedron_fixture(),     oracle_equivalence(seed), realization_roundtrip(seed + 1),
          invariant_formulas(seed + 2), planar_program(seed + 3), pullback_fuzz(seed + 4),
          witness_fuzz(seed + 5),    norm_coherence(seed + 6), json_roundtrip(seed + 7)};
}

}  // namespace thurston::props
