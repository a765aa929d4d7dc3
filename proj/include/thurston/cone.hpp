#pragma once

// Extreme rays of a pointed polyhedral cone {y : <a_k, y> >= 0 for all k},
// computed with the double description method in exact arithmetic.
//
// Rays are returned as primitive integral vectors (unique per ray), sorted
// lexicographically. Adjacency uses the combinatorial test: two rays are
// adjacent iff their common zero set has at least dim-2 constraints and is
// contained in the zero set of no third ray.

#include <algorithm>
#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "thurston/error.hpp"
#include "thurston/linalg.hpp"

namespace thurston::cone {

namespace detail {

struct Ray {
  RatVector y;
  boost::dynamic_bitset<> zeros;
};

inline int sign_of(const RatVector& a, const RatVector& y) { return dot(a, y).sign(); }

}  // namespace detail

inline std::vector<RatVector> extreme_rays(const std::vector<RatVector>& constraints,
                                           std::size_t dim) {
  using detail::Ray;
  const std::size_t m = constraints.size();
  for (const auto& a : constraints)
    if (a.size() != dim) throw Error(ErrorCode::DimensionMismatch, "cone constraint length");

  // Initial simplicial cone from the first `dim` independent constraints.
  std::vector<std::size_t> basis_rows;
  std::vector<RatVector> basis_vecs;
  for (std::size_t k = 0; k < m && basis_rows.size() < dim; ++k) {
    if (is_zero(constraints[k]) || in_span(basis_vecs, constraints[k])) continue;
    basis_rows.push_back(k);
    basis_vecs.push_back(constraints[k]);
  }
  if (basis_rows.size() < dim)
    throw Error(ErrorCode::DegenerateGeometry, "cone is not pointed (constraints do not span)");

  const RatMatrix inv = inverse(RatMatrix::from_rows(basis_vecs, dim));
  std::vector<Ray> rays;
  std::vector<bool> processed(m, false);
  for (auto k : basis_rows) processed[k] = true;
  for (std::size_t j = 0; j < dim; ++j) {
    Ray r{primitive_integral(inv.column(j)), boost::dynamic_bitset<>(m)};
    for (std::size_t i = 0; i < dim; ++i)
      if (i != j) r.zeros.set(basis_rows[i]);
    rays.push_back(std::move(r));
  }
  // Constraints parallel to, or repeated from, the basis also vanish on some
  // rays; they are handled by the generic update below.

  for (std::size_t k = 0; k < m; ++k) {
    if (processed[k]) continue;
    processed[k] = true;
    const RatVector& a = constraints[k];
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].y);
      const int s = val[i].sign();
      (s > 0 ? pos : (s < 0 ? neg : zer)).push_back(i);
    }
    if (neg.empty()) {
      for (auto i : zer) rays[i].zeros.set(k);
      continue;
    }

    std::vector<Ray> next;
    next.reserve(pos.size() + zer.size() + pos.size() * neg.size() / 2 + 1);
    for (auto i : pos) next.push_back(rays[i]);
    for (auto i : zer) {
      next.push_back(rays[i]);
      next.back().zeros.set(k);
    }
    for (auto p : pos) {
      for (auto q : neg) {
        boost::dynamic_bitset<> common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        RatVector y = val[p] * rays[q].y - val[q] * rays[p].y;
        common.set(k);
        next.push_back(Ray{primitive_integral(y), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<RatVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.y));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Vertices of the bounded polytope {x : <a_k, x> <= 1 for all k}; the origin
/// must be an interior point (always true for this right-hand side) and the
/// polytope must be bounded, i.e. the a_k positively span R^n.
inline std::vector<RatVector> vertices_of_unit_inequalities(const std::vector<RatVector>& normals,
                                                            std::size_t n) {
  std::vector<RatVector> cons;
  cons.reserve(normals.size() + 1);
  RatVector t_row = zero_vector(n + 1);
  t_row[n] = 1;
  cons.push_back(t_row);
  for (const auto& a : normals) {
    if (a.size() != n) throw Error(ErrorCode::DimensionMismatch, "inequality normal length");
    RatVector row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = -a[i];
    row[n] = 1;
    cons.push_back(std::move(row));
  }
  std::vector<RatVector> verts;
  for (const auto& y : extreme_rays(cons, n + 1)) {
    if (y[n].sign() <= 0) throw Error(ErrorCode::DegenerateGeometry, "unbounded inequality system");
    RatVector x(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    verts.push_back(Rational(1) / y[n] * x);
  }
  std::sort(verts.begin(), verts.end());
  return verts;
}

}  // namespace thurston::cone
