#pragma once

// Norms of the form  v -> sum_i w_i |<beta_i, v>|  and their unit balls.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "thurston/cone.hpp"
#include "thurston/error.hpp"
#include "thurston/linalg.hpp"
#include "thurston/polytope.hpp"

namespace thurston {

struct Functional {
  Rational weight;
  RatVector beta;

  friend bool operator==(const Functional&, const Functional&) = default;
};

/// Weighted family of linear functionals; weights are strictly positive,
/// betas may be zero or repeated.
class SumAbsNorm {
 public:
  SumAbsNorm() = default;
  SumAbsNorm(std::size_t dim, std::vector<Functional> functionals)
      : dim_(dim), functionals_(std::move(functionals)) {
    for (std::size_t i = 0; i < functionals_.size(); ++i) {
      if (functionals_[i].weight.sign() <= 0)
        throw Error(ErrorCode::InvalidArgument,
                    "functional " + std::to_string(i) + " has non-positive weight");
      if (functionals_[i].beta.size() != dim_)
        throw Error(ErrorCode::DimensionMismatch,
                    "functional " + std::to_string(i) + " has the wrong length");
    }
  }

  /// Unit weights.
  static SumAbsNorm from_betas(std::size_t dim, const std::vector<RatVector>& betas) {
    std::vector<Functional> f;
    f.reserve(betas.size());
    for (const auto& b : betas) f.push_back({Rational(1), b});
    return SumAbsNorm(dim, std::move(f));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Functional>& functionals() const { return functionals_; }

  /// w_i * beta_i for every term, zero terms included, in input order.
  std::vector<RatVector> folded() const {
    std::vector<RatVector> out;
    out.reserve(functionals_.size());
    for (const auto& f : functionals_) out.push_back(f.weight * f.beta);
    return out;
  }

  /// Folded betas with the zero ones dropped; these alone determine the ball.
  std::vector<RatVector> folded_nonzero() const {
    std::vector<RatVector> out;
    for (auto& b : folded())
      if (!is_zero(b)) out.push_back(std::move(b));
    return out;
  }

  std::size_t zero_terms() const {
    return static_cast<std::size_t>(std::count_if(functionals_.begin(), functionals_.end(),
                                                  [](const Functional& f) { return is_zero(f.beta); }));
  }

  friend bool operator==(const SumAbsNorm&, const SumAbsNorm&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Functional> functionals_;
};

inline Rational evaluate(const SumAbsNorm& nrm, const RatVector& v) {
  if (v.size() != nrm.dim())
    throw Error(ErrorCode::DimensionMismatch, "norm of dimension " + std::to_string(nrm.dim()) +
                                                  " evaluated at a vector of length " +
                                                  std::to_string(v.size()));
  Rational s;
  for (const auto& f : nrm.functionals()) s += f.weight * abs(dot(f.beta, v));
  return s;
}

inline bool is_norm(const SumAbsNorm& nrm) {
  return rank(nrm.folded_nonzero(), nrm.dim()) == nrm.dim();
}

/// Unit ball by inductive deflation: start from the cross-polytope of the
/// first independent d betas, then fold in the remaining betas one at a time.
/// Folding beta shrinks each vertex v to v / (1 + |<beta, v>|) and adds the
/// vertices of the section by beta^perp, which the fold leaves fixed.
inline RatPolytope unit_ball_deflate(const SumAbsNorm& nrm) {
  const std::size_t d = nrm.dim();
  const auto betas = nrm.folded_nonzero();
  if (rank(betas, d) != d) throw Error(ErrorCode::NotANorm, "betas do not span the space");
  if (d == 0) return RatPolytope{0, {}};

  std::vector<RatVector> base, rest;
  for (const auto& b : betas) {
    if (base.size() < d && !in_span(base, b))
      base.push_back(b);
    else
      rest.push_back(b);
  }

  std::vector<RatVector> verts;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<RatVector> others;
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) others.push_back(base[j]);
    RatVector u = kernel_basis(RatMatrix::from_rows(others, d)).front();
    u = Rational(1) / abs(dot(base[i], u)) * u;
    verts.push_back(u);
    verts.push_back(-u);
  }
  std::sort(verts.begin(), verts.end());
  RatPolytope ball{d, std::move(verts)};

  for (const auto& beta : rest) {
    std::vector<RatVector> next;
    if (d >= 2) next = section(ball, face_fan(ball), beta).vertices;
    for (const auto& v : ball.vertices)
      next.push_back(Rational(1) / (Rational(1) + abs(dot(beta, v))) * v);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    ball.vertices = std::move(next);
  }
  return ball;
}

inline constexpr std::size_t kDefaultMaxTerms = 12;

/// Unit ball from the sign-vector description: the norm is the maximum of
/// <sum_i s_i beta_i, v> over s in {+1,-1}^k, so the ball is cut out by those
/// 2^k inequalities. Its vertices are enumerated exactly and each one is
/// checked to have norm 1.
inline RatPolytope unit_ball_oracle(const SumAbsNorm& nrm, std::size_t max_terms = kDefaultMaxTerms) {
  const std::size_t d = nrm.dim();
  const auto betas = nrm.folded_nonzero();
  if (rank(betas, d) != d) throw Error(ErrorCode::NotANorm, "betas do not span the space");
  if (betas.size() > max_terms)
    throw Error(ErrorCode::ResourceLimit, std::to_string(betas.size()) +
                                              " nonzero terms exceed the sign-vector bound " +
                                              std::to_string(max_terms));
  if (d == 0) return RatPolytope{0, {}};

  std::set<RatVector> forms;
  const std::size_t k = betas.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    RatVector w = zero_vector(d);
    for (std::size_t i = 0; i < k; ++i) w = (mask >> i & 1U) ? w - betas[i] : w + betas[i];
    forms.insert(std::move(w));
  }
  std::vector<RatVector> candidates;
  for (auto& v : cone::vertices_of_unit_inequalities({forms.begin(), forms.end()}, d))
    if (evaluate(nrm, v) == Rational(1)) candidates.push_back(std::move(v));
  return convex_hull(std::move(candidates), d);
}

struct WeightedHyperplane {
  RatVector hyperplane;
  Rational weight;
};

namespace detail {
inline std::vector<RatVector> ridge_planes_or_axis(const RatPolytope& p) {
  if (p.dim == 1) return {RatVector{Rational(1)}};
  return face_fan(p).ridge_hyperplanes;
}
}  // namespace detail

/// Weights w_i > 0 with  sum_i w_i |<h_i, .>|  having unit ball p, where the
/// h_i are the ridge hyperplanes of p; nullopt when no such weights exist.
/// The candidate solves the vertex equations (free unknowns set to zero) and
/// is accepted only if its unit ball reproduces p exactly.
inline std::optional<std::vector<WeightedHyperplane>> weight_solve(
    const RatPolytope& p, std::size_t max_terms = kDefaultMaxTerms) {
  const auto planes = detail::ridge_planes_or_axis(p);
  RatMatrix m(p.vertices.size(), planes.size());
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    for (std::size_t i = 0; i < planes.size(); ++i) m(v, i) = abs(dot(planes[i], p.vertices[v]));
  const auto w = solve(m, RatVector(p.vertices.size(), Rational(1)));
  if (!w) return std::nullopt;
  if (std::any_of(w->begin(), w->end(), [](const Rational& x) { return x.sign() <= 0; }))
    return std::nullopt;

  std::vector<Functional> terms;
  std::vector<WeightedHyperplane> out;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    terms.push_back({(*w)[i], planes[i]});
    out.push_back({planes[i], (*w)[i]});
  }
  const RatPolytope ball = unit_ball_oracle(SumAbsNorm(p.dim, std::move(terms)), max_terms);
  RatPolytope target = p;
  std::sort(target.vertices.begin(), target.vertices.end());
  if (ball != target) return std::nullopt;
  return out;
}

/// Unit-weight norm on the ridge hyperplanes of p. Its ball is complete and
/// its facet cones subdivide those of p.
inline SumAbsNorm completion(const RatPolytope& p) {
  return SumAbsNorm::from_betas(p.dim, detail::ridge_planes_or_axis(p));
}

/// Norm on Q^m given by v -> scale * nrm(emb v).
inline SumAbsNorm pullback(const SumAbsNorm& nrm, const RatMatrix& emb, const Rational& scale) {
  if (emb.rows() != nrm.dim())
    throw Error(ErrorCode::DimensionMismatch, "embedding rows must match the norm dimension");
  if (scale.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "pullback scale must be positive");
  if (rank(emb) != emb.cols()) throw Error(ErrorCode::RankDeficient, "embedding is not injective");
  const RatMatrix et = emb.transpose();
  std::vector<Functional> out;
  out.reserve(nrm.functionals().size());
  for (const auto& f : nrm.functionals()) out.push_back({scale * f.weight, et * f.beta});
  return SumAbsNorm(emb.cols(), std::move(out));
}

inline SumAbsNorm scaled(const SumAbsNorm& nrm, const Rational& c) {
  if (c.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "norm scale must be positive");
  std::vector<Functional> out = nrm.functionals();
  for (auto& f : out) f.weight *= c;
  return SumAbsNorm(nrm.dim(), std::move(out));
}

}  // namespace thurston
