#pragma once

// Seeded generators for fuzzing and property checks. Everything is driven by
// std::mt19937_64 with explicit integer ranges, so a seed fixes the output on
// every platform.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "thurston/linalg.hpp"
#include "thurston/manifold.hpp"
#include "thurston/normball.hpp"
#include "thurston/polytope.hpp"

namespace thurston::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi]. Implemented by rejection on the raw engine
  /// output because uniform_int_distribution is not portable across libraries.
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  bool coin() { return uniform(0, 1) == 1; }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1)); }

  /// num/den with num in [lo, hi], den in [1, max_den].
  Rational rational(long lo, long hi, long max_den) {
    const long num = uniform(lo, hi);
    return Rational(num, uniform(1, max_den));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline RatVector int_vector(Rng& rng, std::size_t n, long lo, long hi) {
  RatVector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(rng.uniform(lo, hi));
  return v;
}

inline RatVector rational_vector(Rng& rng, std::size_t n, long lo, long hi, long max_den) {
  RatVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.rational(lo, hi, max_den));
  return v;
}

/// Unit-weight norm with k integer betas in [lo, hi]^d whose nonzero members span.
inline SumAbsNorm spanning_norm(Rng& rng, std::size_t d, std::size_t k, long lo, long hi) {
  for (;;) {
    std::vector<RatVector> betas;
    for (std::size_t i = 0; i < k; ++i) betas.push_back(int_vector(rng, d, lo, hi));
    if (rank(betas, d) == d) return SumAbsNorm::from_betas(d, betas);
  }
}

struct RealizationInput {
  std::vector<RatVector> betas;
  std::vector<std::size_t> genera;
  bool fibered = true;
};

/// d <= 3, d <= n <= 5, betas with entries num/den, num in [-3,3], den in [1,3].
inline RealizationInput realization_input(Rng& rng) {
  RealizationInput in;
  const auto d = static_cast<std::size_t>(rng.uniform(1, 3));
  const auto n = static_cast<std::size_t>(rng.uniform(static_cast<long>(d), 5));
  in.fibered = rng.coin();
  for (;;) {
    in.betas.clear();
    in.genera.clear();
    for (std::size_t j = 0; j < n; ++j) {
      in.betas.push_back(rational_vector(rng, d, -3, 3, 3));
      in.genera.push_back(static_cast<std::size_t>(rng.uniform(0, 2)));
    }
    const bool any_zero = std::any_of(in.betas.begin(), in.betas.end(), [](const RatVector& b) { return is_zero(b); });
    if (in.fibered && any_zero) continue;
    if (rank(in.betas, d) == d) return in;
  }
}

/// A vertex label with a random witness, padded with (2, +-1) pairs until the
/// piece has negative characteristic at the given degree.
inline VertexLabel random_vertex(Rng& rng, std::size_t degree) {
  VertexLabel v;
  v.genus = static_cast<std::size_t>(rng.uniform(0, 2));
  const bool balanced = rng.uniform(0, 2) == 0;
  const long count = rng.uniform(0, 3);
  for (long s = 0; s < count; ++s) {
    long p = rng.uniform(1, 5), q = rng.uniform(-4, 4);
    while (gcd(BigInt(p), BigInt(q)) != 1) q = rng.uniform(-4, 4);
    if (rng.uniform(0, 4) == 0) p = -p;
    v.surgeries.push_back({p, q});
    if (balanced) v.surgeries.push_back({p, -q});
  }
  while (derived_chi(v, degree).sign() >= 0) {
    v.surgeries.push_back({2, 1});
    v.surgeries.push_back({2, -1});
  }
  v.euler_number = witness_euler(v);
  return v;
}

/// Random graph passing validate(): up to `max_vertices` pieces, loops and
/// multi-edges allowed, edge labels in +-[1,3].
inline SimplifiedGraph valid_graph(Rng& rng, std::size_t max_vertices) {
  SimplifiedGraph g;
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_vertices)));
  const auto m = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) + 1));
  for (std::size_t e = 0; e < m; ++e) {
    long p = rng.uniform(1, 3);
    if (rng.coin()) p = -p;
    g.edges.push_back({rng.index(n), rng.index(n), p});
  }
  for (std::size_t i = 0; i < n; ++i) g.vertices.push_back(random_vertex(rng, g.degree(i)));
  return g;
}

/// Disjoint union; the vertices of `b` follow those of `a`.
inline SimplifiedGraph disjoint_union(const SimplifiedGraph& a, const SimplifiedGraph& b) {
  SimplifiedGraph out = a;
  const std::size_t off = a.vertices.size();
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& e : b.edges) out.edges.push_back({e.u + off, e.v + off, e.p});
  return out;
}

/// Relabels vertices by a random permutation and shuffles the edge list.
inline SimplifiedGraph permuted(Rng& rng, const SimplifiedGraph& g) {
  std::vector<std::size_t> perm(g.vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  SimplifiedGraph out;
  out.vertices.resize(g.vertices.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out.vertices[perm[i]] = g.vertices[i];
  for (const auto& e : g.edges) out.edges.push_back({perm[e.u], perm[e.v], e.p});
  rng.shuffle(out.edges);
  return out;
}

/// Symmetric rational polygon with 2 to `max_pairs` vertex pairs.
inline RatPolytope polygon(Rng& rng, std::size_t max_pairs) {
  for (;;) {
    const auto m = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(max_pairs)));
    std::vector<RatVector> pts;
    for (std::size_t i = 0; i < m; ++i) {
      RatVector v{rng.rational(-6, 6, 4), rng.rational(1, 6, 4)};
      pts.push_back(v);
      pts.push_back(-v);
    }
    if (rank(pts, 2) < 2) continue;
    auto p = convex_hull(std::move(pts), 2);
    if (p.vertices.size() >= 4) return p;
  }
}

/// d x m matrix of rank m (m <= d) with entries in [lo, hi].
inline RatMatrix injective_matrix(Rng& rng, std::size_t d, std::size_t m, long lo, long hi) {
  for (;;) {
    RatMatrix e(d, m);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < m; ++c) e(r, c) = Rational(rng.uniform(lo, hi));
    if (rank(e) == m) return e;
  }
}

}  // namespace thurston::gen
