#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "thurston/linalg.hpp"
#include "thurston/normball.hpp"
#include "thurston/polytope.hpp"

namespace testutil {

using thurston::RatVector;
using thurston::Rational;

inline Rational Q(const char* s) { return Rational::parse(s); }

inline std::vector<RatVector> pm(const std::vector<RatVector>& half) {
  std::vector<RatVector> out;
  for (const auto& v : half) {
    out.push_back(v);
    out.push_back(-v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::set<RatVector> as_set(const std::vector<RatVector>& vs) { return {vs.begin(), vs.end()}; }

/// Facet normals by brute force: every n-subset of points whose affine hull
/// misses the origin defines a candidate hyperplane <l, x> = 1; keep it when
/// every point satisfies <l, x> <= 1. Independent of the double-description code.
inline std::set<RatVector> brute_force_facet_normals(const std::vector<RatVector>& pts, std::size_t n) {
  std::set<RatVector> out;
  const std::size_t m = pts.size();
  std::vector<std::size_t> idx(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<RatVector> rows;
      for (auto i : idx) rows.push_back(pts[i]);
      const auto l = thurston::solve(thurston::RatMatrix::from_rows(rows, n), RatVector(n, Rational(1)));
      if (!l || thurston::rank(rows, n) != n) return;
      for (const auto& p : pts)
        if (thurston::dot(*l, p) > Rational(1)) return;
      out.insert(*l);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// Unit-ball vertices straight from the sign-vector description: every
/// d-subset of the forms sum s_i beta_i, solved for <w, v> = 1, kept when the
/// norm of the solution is exactly 1 and it is extreme. Exponential; small inputs only.
inline std::vector<RatVector> brute_force_ball(const thurston::SumAbsNorm& nrm) {
  const std::size_t d = nrm.dim();
  const auto betas = nrm.folded_nonzero();
  std::set<RatVector> forms;
  for (std::size_t mask = 0; mask < (std::size_t{1} << betas.size()); ++mask) {
    RatVector w = thurston::zero_vector(d);
    for (std::size_t i = 0; i < betas.size(); ++i) w = (mask >> i & 1U) ? w - betas[i] : w + betas[i];
    forms.insert(w);
  }
  const std::vector<RatVector> fs(forms.begin(), forms.end());
  std::set<RatVector> candidates;
  std::vector<std::size_t> idx(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      std::vector<RatVector> rows;
      for (auto i : idx) rows.push_back(fs[i]);
      if (thurston::rank(rows, d) != d) return;
      const auto v = thurston::solve(thurston::RatMatrix::from_rows(rows, d), RatVector(d, Rational(1)));
      if (v && thurston::evaluate(nrm, *v) == Rational(1)) candidates.insert(*v);
      return;
    }
    for (std::size_t i = start; i < fs.size(); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return thurston::convex_hull({candidates.begin(), candidates.end()}, d).vertices;
}

}  // namespace testutil
