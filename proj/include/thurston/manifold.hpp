#pragma once

// Simplified decomposition graphs of closed oriented good graph manifolds and
// the Thurston norm data they determine.
//
// Conventions: a Seifert piece over a genus g base with b boundary tori and
// exceptional fibers (p_l, q_l) has
//   chi = 2 - 2g - b - sum_l (1 - 1/|p_l|),   e = -sum_l q_l / p_l,
// where e is measured against the regular fibers of the neighbouring pieces.
// The number of boundary tori of a vertex is its degree (a loop counts twice).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thurston/error.hpp"
#include "thurston/linalg.hpp"
#include "thurston/normball.hpp"

namespace thurston {

struct SurgeryPair {
  BigInt p;  // nonzero
  BigInt q;

  friend bool operator==(const SurgeryPair& a, const SurgeryPair& b) {
    return a.p == b.p && a.q == b.q;
  }
};

struct VertexLabel {
  std::size_t genus = 0;
  Rational euler_number;
  std::vector<SurgeryPair> surgeries;  // witness for (euler_number, chi)
};

struct GraphEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  BigInt p;  // fiber intersection number, nonzero
};

struct SimplifiedGraph {
  std::vector<VertexLabel> vertices;
  std::vector<GraphEdge> edges;

  std::size_t degree(std::size_t i) const {
    std::size_t d = 0;
    for (const auto& e : edges) d += static_cast<std::size_t>(e.u == i) + static_cast<std::size_t>(e.v == i);
    return d;
  }
};

inline Rational derived_chi(const VertexLabel& v, std::size_t degree) {
  Rational chi = Rational(2) - Rational(2 * static_cast<long>(v.genus)) -
                 Rational(static_cast<long>(degree));
  for (const auto& s : v.surgeries) {
    BigInt ap = abs(s.p);
    chi -= Rational(1) - Rational(BigInt(1), ap);
  }
  return chi;
}

/// -sum q/p over the surgeries.
inline Rational witness_euler(const VertexLabel& v) {
  Rational e;
  for (const auto& s : v.surgeries)
    if (s.p != 0) e -= Rational(s.q, s.p);
  return e;
}

struct Violation {
  enum class Kind {
    ChiNonNegative,
    ZeroEdge,
    EdgeOutOfRange,
    ZeroSurgery,
    NonCoprimeSurgery,
    WitnessMismatch,
  };
  Kind kind;
  std::size_t index;  // vertex or edge index, depending on kind
  std::string message;
};

inline std::string to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::ChiNonNegative: return "ChiNonNegative";
    case Violation::Kind::ZeroEdge: return "ZeroEdge";
    case Violation::Kind::EdgeOutOfRange: return "EdgeOutOfRange";
    case Violation::Kind::ZeroSurgery: return "ZeroSurgery";
    case Violation::Kind::NonCoprimeSurgery: return "NonCoprimeSurgery";
    case Violation::Kind::WitnessMismatch: return "WitnessMismatch";
  }
  return "Unknown";
}

inline std::vector<Violation> validate(const SimplifiedGraph& g) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t n = g.vertices.size();
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.u >= n || e.v >= n)
      out.push_back({K::EdgeOutOfRange, i, "edge " + std::to_string(i) + " references a missing vertex"});
    if (e.p == 0) out.push_back({K::ZeroEdge, i, "edge " + std::to_string(i) + " has p = 0"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = g.vertices[i];
    bool surgeries_ok = true;
    for (std::size_t s = 0; s < v.surgeries.size(); ++s) {
      const auto& sp = v.surgeries[s];
      const std::string where = "vertex " + std::to_string(i) + " surgery " + std::to_string(s);
      if (sp.p == 0) {
        out.push_back({K::ZeroSurgery, i, where + " has p = 0"});
        surgeries_ok = false;
      } else if (gcd(sp.p, sp.q) != 1) {
        out.push_back({K::NonCoprimeSurgery, i, where + " is not a coprime pair"});
      }
    }
    if (surgeries_ok && witness_euler(v) != v.euler_number)
      out.push_back({K::WitnessMismatch, i,
                     "vertex " + std::to_string(i) + ": surgeries give e = " +
                         witness_euler(v).str() + ", label says " + v.euler_number.str()});
    if (surgeries_ok) {
      const Rational chi = derived_chi(v, g.degree(i));
      if (chi.sign() >= 0)
        out.push_back({K::ChiNonNegative, i,
                       "vertex " + std::to_string(i) + " has chi = " + chi.str() + " >= 0"});
    }
  }
  return out;
}

namespace detail {
inline void require_valid(const SimplifiedGraph& g) {
  const auto v = validate(g);
  if (v.empty()) return;
  std::string msg;
  for (const auto& x : v) msg += (msg.empty() ? "" : "; ") + x.message;
  throw Error(ErrorCode::InvalidGraph, msg);
}
}  // namespace detail

inline std::vector<Rational> chis(const SimplifiedGraph& g) {
  std::vector<Rational> out;
  out.reserve(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    out.push_back(derived_chi(g.vertices[i], g.degree(i)));
  return out;
}

/// a_ii = e_i + 2 sum_{loops at i} 1/p,   a_ij = sum_{edges i-j} 1/p.
inline RatMatrix reduced_plumbing_matrix(const SimplifiedGraph& g) {
  detail::require_valid(g);
  const std::size_t n = g.vertices.size();
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = g.vertices[i].euler_number;
  for (const auto& e : g.edges) {
    const Rational inv(BigInt(1), e.p);
    if (e.u == e.v) {
      a(e.u, e.u) += Rational(2) * inv;
    } else {
      a(e.u, e.v) += inv;
      a(e.v, e.u) += inv;
    }
  }
  return a;
}

/// Thurston norm of the class whose fiber intersection numbers are l,
/// i.e. sum_i -chi_i |l_i|. Only tuples annihilated by the plumbing matrix
/// (up to a multiple) come from surfaces.
inline Rational thurston_value(const SimplifiedGraph& g, const RatVector& l) {
  const RatMatrix a = reduced_plumbing_matrix(g);
  if (l.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "tuple length differs from vertex count");
  if (!is_zero(a * l)) throw Error(ErrorCode::NotRealizable, "tuple is not annihilated by the plumbing matrix");
  const auto chi = chis(g);
  Rational x;
  for (std::size_t i = 0; i < l.size(); ++i) x -= chi[i] * abs(l[i]);
  return x;
}

struct NonvanishingNorm {
  SumAbsNorm norm;               ///< on coordinates with respect to `basis`
  std::vector<RatVector> basis;  ///< basis of ker A
};

/// Nonvanishing norm in the coordinates of a chosen basis of ker A: weight
/// -chi_i on the i-th row of the matrix whose columns are the basis.
inline NonvanishingNorm nonvanishing_norm(const SimplifiedGraph& g, std::vector<RatVector> basis) {
  const RatMatrix a = reduced_plumbing_matrix(g);
  const auto ker = kernel_basis(a);
  if (basis.size() != ker.size() || rank(basis, a.cols()) != basis.size() || !same_span(basis, ker))
    throw Error(ErrorCode::InvalidArgument, "vectors are not a basis of the plumbing kernel");
  const auto chi = chis(g);
  const std::size_t d = basis.size();
  std::vector<Functional> terms;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    RatVector row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = basis[j][i];
    terms.push_back({-chi[i], std::move(row)});
  }
  return {SumAbsNorm(d, std::move(terms)), std::move(basis)};
}

inline NonvanishingNorm nonvanishing_norm(const SimplifiedGraph& g) {
  return nonvanishing_norm(g, kernel_basis(reduced_plumbing_matrix(g)));
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
inline std::vector<std::vector<std::size_t>> components(const SimplifiedGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) {
    const auto a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] == n) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(i);
  }
  return comps;
}

/// Induced subgraph on `keep` (which must be a union of components for the
/// result to carry the same vertex degrees).
inline SimplifiedGraph induced_subgraph(const SimplifiedGraph& g, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> index(g.vertices.size(), g.vertices.size());
  SimplifiedGraph out;
  for (auto v : keep) {
    index[v] = out.vertices.size();
    out.vertices.push_back(g.vertices[v]);
  }
  for (const auto& e : g.edges)
    if (index[e.u] < g.vertices.size() && index[e.v] < g.vertices.size())
      out.edges.push_back({index[e.u], index[e.v], e.p});
  return out;
}

struct InvariantReport {
  long b1_gamma = 0;
  long null_space_dim = 0;
  long kernel_dim = 0;
  long b2 = 0;
  bool fibered = false;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

inline InvariantReport invariants(const SimplifiedGraph& g) {
  const auto nv = nonvanishing_norm(g);
  InvariantReport r;
  long genus_sum = 0;
  for (const auto& v : g.vertices) genus_sum += static_cast<long>(v.genus);
  r.b1_gamma = static_cast<long>(g.edges.size()) - static_cast<long>(g.vertices.size()) +
               static_cast<long>(components(g).size());
  r.null_space_dim = r.b1_gamma + 2 * genus_sum;
  r.kernel_dim = static_cast<long>(nv.basis.size());
  r.b2 = r.kernel_dim + r.null_space_dim;
  r.fibered = r.kernel_dim > 0 &&
              std::none_of(nv.norm.functionals().begin(), nv.norm.functionals().end(),
                           [](const Functional& f) { return is_zero(f.beta); });
  return r;
}

/// Dimension of the nonvanishing second homology of a single Seifert piece.
inline int seifert_rank(const Rational& chi, const Rational& e, bool has_boundary) {
  if (chi.sign() < 0 && (has_boundary || e.is_zero())) return 1;
  return 0;
}

struct WitnessPlan {
  std::vector<SurgeryPair> surgeries;
  bool achievable = false;
  bool used_fallback = false;       ///< balanced pairs came from a unit-fraction split of the deficit
  Rational nearest_achievable_chi;  ///< largest chi <= target, same residue mod 1, that the schedule reaches
};

namespace detail {

inline BigInt ceil_of(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
  return q;
}

/// Splits 0 < z = u/v < 1 into unit fractions with denominators at most v 2^k,
/// where 2^k >= v: write u 2^k = Q v + r and expand Q / 2^k and r / (v 2^k) in
/// binary. The greedy expansion is preferred when it ends in no more terms
/// without exceeding that denominator bound.
inline std::vector<BigInt> unit_fraction_split(const Rational& z) {
  const BigInt u = z.numerator(), v = z.denominator();
  const std::size_t k = mpz_sizeinbase(v.get_mpz_t(), 2);
  const BigInt two_k = BigInt(1) << k;
  const BigInt scaled = u * two_k;
  const BigInt q = scaled / v, r = scaled - q * v;
  std::vector<BigInt> binary;
  for (std::size_t i = 0; i < k; ++i)
    if (mpz_tstbit(q.get_mpz_t(), i)) binary.push_back(BigInt(1) << (k - i));
  for (std::size_t i = 0; i < k; ++i)
    if (mpz_tstbit(r.get_mpz_t(), i)) binary.push_back(v * (BigInt(1) << (k - i)));

  const BigInt bound = v * two_k;
  std::vector<BigInt> greedy;
  Rational rest = z;
  while (rest.sign() > 0 && greedy.size() <= binary.size()) {
    const BigInt p = ceil_of(Rational(1) / rest);
    if (p > bound) break;
    greedy.push_back(p);
    rest -= Rational(BigInt(1), p);
  }
  if (rest.is_zero() && greedy.size() <= binary.size()) return greedy;
  return binary;
}

/// x - floor(x).
inline Rational frac(const Rational& x) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
  return x - Rational(f);
}

}  // namespace detail

/// Surgeries realizing Euler number e and orbifold characteristic chi_target
/// on a genus-`genus` base with `degree` boundary tori.
///
///  1. one fiber (b, -a) for e = a/b in lowest terms (none if e = 0);
///  2. if the remaining deficit R has denominator delta > 1, c balanced pairs
///     (2 delta, +-1) with c the least count making the rest integral;
///  3. the integer remainder as (2, +-1) pairs, each lowering chi by exactly 1.
///
/// Step 2 costs up to 2 delta. When that overshoots, the balanced pairs are
/// taken as (p_i, +-1) with sum 1/p_i = z, where z is whichever of -R/2 and
/// -R/2 + 1/2 (mod 1) splits into fewer unit fractions; this costs about
/// 4 log2(delta) instead.
inline WitnessPlan plan_witness(const Rational& e, const Rational& chi_target, std::size_t genus,
                                std::size_t degree) {
  WitnessPlan plan;
  const Rational base = Rational(2) - Rational(2 * static_cast<long>(genus)) - Rational(static_cast<long>(degree));
  Rational residual = base - chi_target;  // required sum of (1 - 1/|p|)
  std::vector<SurgeryPair> head;
  if (!e.is_zero()) {
    head.push_back({e.denominator(), -e.numerator()});
    residual -= Rational(1) - Rational(BigInt(1), e.denominator());
  }

  // Balanced-pair moduli and what is left over for (2, +-1) pairs.
  std::vector<BigInt> moduli;
  Rational remainder = residual;
  const BigInt delta = residual.denominator();
  if (delta != 1) {
    const BigInt c = ((-residual.numerator()) % delta + delta) % delta;
    remainder = residual - Rational(c) * (Rational(2) - Rational(BigInt(1), delta));
    if (remainder.sign() >= 0) {
      moduli.assign(c.get_ui(), 2 * delta);
    } else {
      std::vector<BigInt> best;
      for (const Rational& z : {detail::frac(-residual / Rational(2)),
                                detail::frac(-residual / Rational(2) + Rational(1, 2))}) {
        if (z.is_zero()) continue;
        auto split = detail::unit_fraction_split(z);
        if (best.empty() || split.size() < best.size()) best = std::move(split);
      }
      Rational cost;
      for (const auto& p : best) cost += Rational(2) - Rational(BigInt(2), p);
      if (residual - cost > remainder) {
        remainder = residual - cost;
        moduli = std::move(best);
        plan.used_fallback = true;
      }
    }
  }

  if (chi_target.sign() >= 0 || remainder.sign() < 0) {
    // Lowering chi by an integer raises the remainder by the same amount.
    BigInt shift = remainder.sign() < 0 ? detail::ceil_of(-remainder) : BigInt(0);
    Rational suggestion = chi_target - Rational(shift);
    if (suggestion.sign() >= 0) suggestion -= Rational(suggestion.numerator() / suggestion.denominator() + 1);
    plan.nearest_achievable_chi = suggestion;
    plan.used_fallback = false;
    return plan;
  }
  plan.surgeries = std::move(head);
  for (const auto& p : moduli) {
    plan.surgeries.push_back({p, 1});
    plan.surgeries.push_back({p, -1});
  }
  for (BigInt i = 0; Rational(i) < remainder; ++i) {
    plan.surgeries.push_back({2, 1});
    plan.surgeries.push_back({2, -1});
  }
  plan.achievable = true;
  plan.nearest_achievable_chi = chi_target;
  return plan;
}

inline std::vector<SurgeryPair> witness_surgeries(const Rational& e, const Rational& chi_target,
                                                  std::size_t genus, std::size_t degree) {
  auto plan = plan_witness(e, chi_target, genus, degree);
  if (!plan.achievable)
    throw Error(ErrorCode::Unachievable,
                "chi = " + chi_target.str() + " with e = " + e.str() + ", genus " +
                    std::to_string(genus) + ", degree " + std::to_string(degree) +
                    " is not reachable; nearest achievable chi is " + plan.nearest_achievable_chi.str());
  return std::move(plan.surgeries);
}

}  // namespace thurston
