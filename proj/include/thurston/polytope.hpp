#pragma once

// Exact centrally symmetric polytopes: hulls, facets, ridges, ridge
// hyperplanes, hyperplane sections, completeness and fan refinement.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "thurston/cone.hpp"
#include "thurston/error.hpp"
#include "thurston/linalg.hpp"

namespace thurston {

/// Vertex description of a polytope. Values produced by convex_hull() are
/// full-dimensional, symmetric, minimal and lexicographically sorted;
/// section() produces the lower-dimensional variant.
struct RatPolytope {
  std::size_t dim = 0;
  std::vector<RatVector> vertices;

  friend bool operator==(const RatPolytope&, const RatPolytope&) = default;
};

struct Facet {
  RatVector normal;                   ///< <normal, x> = 1 on the facet
  std::vector<std::size_t> vertices;  ///< indices into RatPolytope::vertices
};

struct Ridge {
  std::pair<std::size_t, std::size_t> facets;
  std::vector<std::size_t> vertices;
};

struct FaceFan {
  std::vector<Facet> facets;
  std::vector<Ridge> ridges;
  std::vector<RatVector> ridge_hyperplanes;  ///< canonical_line() normals, sorted
};

namespace detail {

inline void check_dims(const std::vector<RatVector>& pts, std::size_t dim) {
  for (const auto& p : pts)
    if (p.size() != dim)
      throw Error(ErrorCode::DimensionMismatch,
                  "point of length " + std::to_string(p.size()) + " in dimension " +
                      std::to_string(dim));
}

inline std::vector<RatVector> subset(const std::vector<RatVector>& pts,
                                     const std::vector<std::size_t>& idx) {
  std::vector<RatVector> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(pts[i]);
  return out;
}

/// Facets of conv(pts) for a full-dimensional point set with the origin in
/// its interior: the vertices of the polar {l : <l,p> <= 1}.
inline std::vector<Facet> facets_of(const std::vector<RatVector>& pts, std::size_t dim) {
  std::vector<Facet> facets;
  for (auto& normal : cone::vertices_of_unit_inequalities(pts, dim)) {
    Facet f{std::move(normal), {}};
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (dot(f.normal, pts[i]) == Rational(1)) f.vertices.push_back(i);
    if (rank(subset(pts, f.vertices), dim) != dim)
      throw Error(ErrorCode::DegenerateGeometry, "facet vertex set does not span a hyperplane");
    facets.push_back(std::move(f));
  }
  return facets;
}

inline bool is_symmetric_set(const std::vector<RatVector>& sorted_pts) {
  return std::all_of(sorted_pts.begin(), sorted_pts.end(), [&](const RatVector& p) {
    return std::binary_search(sorted_pts.begin(), sorted_pts.end(), -p);
  });
}

}  // namespace detail

/// Minimal vertex set of the hull of a symmetric, full-dimensional point set.
inline RatPolytope convex_hull(std::vector<RatVector> points, std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::NotFullDimensional, "ambient dimension 0");
  detail::check_dims(points, dim);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (!detail::is_symmetric_set(points))
    throw Error(ErrorCode::NotSymmetric, "point set is not closed under negation");
  if (rank(points, dim) != dim)
    throw Error(ErrorCode::NotFullDimensional, "points do not span the ambient space");

  const auto facets = detail::facets_of(points, dim);
  std::vector<std::vector<RatVector>> tight(points.size());
  for (const auto& f : facets)
    for (auto i : f.vertices) tight[i].push_back(f.normal);

  RatPolytope out{dim, {}};
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!tight[i].empty() && rank(tight[i], dim) == dim) out.vertices.push_back(points[i]);
  return out;
}

inline FaceFan face_fan(const RatPolytope& p) {
  detail::check_dims(p.vertices, p.dim);
  if (p.dim == 0 || rank(p.vertices, p.dim) != p.dim)
    throw Error(ErrorCode::NotFullDimensional, "face_fan needs a full-dimensional polytope");
  FaceFan fan;
  fan.facets = detail::facets_of(p.vertices, p.dim);
  if (p.dim < 2) return fan;  // no ridges in dimension one

  std::set<RatVector> planes;
  for (std::size_t i = 0; i < fan.facets.size(); ++i) {
    for (std::size_t j = i + 1; j < fan.facets.size(); ++j) {
      std::vector<std::size_t> common;
      std::set_intersection(fan.facets[i].vertices.begin(), fan.facets[i].vertices.end(),
                            fan.facets[j].vertices.begin(), fan.facets[j].vertices.end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      const auto pts = detail::subset(p.vertices, common);
      const RatMatrix m = RatMatrix::from_rows(pts, p.dim);
      if (rank(m) != p.dim - 1) continue;
      const auto normal = kernel_basis(m);
      planes.insert(canonical_line(normal.front()));
      fan.ridges.push_back(Ridge{{i, j}, std::move(common)});
    }
  }
  fan.ridge_hyperplanes.assign(planes.begin(), planes.end());
  return fan;
}

/// Vertex index pairs spanning the 1-dimensional faces.
inline std::vector<std::pair<std::size_t, std::size_t>> edges(const RatPolytope& p,
                                                              const FaceFan& fan) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t nv = p.vertices.size();
  if (p.dim == 1) {
    if (nv == 2) out.emplace_back(0, 1);
    return out;
  }
  std::vector<boost::dynamic_bitset<>> on(nv, boost::dynamic_bitset<>(fan.facets.size()));
  for (std::size_t f = 0; f < fan.facets.size(); ++f)
    for (auto v : fan.facets[f].vertices) on[v].set(f);
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t w = u + 1; w < nv; ++w) {
      const auto common = on[u] & on[w];
      if (common.count() + 1 < p.dim) continue;
      std::vector<RatVector> normals;
      for (auto f = common.find_first(); f != boost::dynamic_bitset<>::npos; f = common.find_next(f))
        normals.push_back(fan.facets[f].normal);
      if (rank(normals, p.dim) == p.dim - 1) out.emplace_back(u, w);
    }
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> edges(const RatPolytope& p) {
  return edges(p, face_fan(p));
}

struct CompletenessViolation {
  RatVector hyperplane;
  std::size_t facet;
};

struct CompletenessReport {
  bool complete = true;
  std::vector<CompletenessViolation> violations;
};

/// A polytope is complete when no ridge hyperplane cuts through the interior
/// of a facet, i.e. no facet has vertices strictly on both sides of one.
inline CompletenessReport is_complete(const RatPolytope& p, const FaceFan& fan) {
  CompletenessReport rep;
  for (const auto& h : fan.ridge_hyperplanes) {
    for (std::size_t f = 0; f < fan.facets.size(); ++f) {
      bool pos = false, neg = false;
      for (auto v : fan.facets[f].vertices) {
        const int s = dot(h, p.vertices[v]).sign();
        pos = pos || s > 0;
        neg = neg || s < 0;
      }
      if (pos && neg) rep.violations.push_back({h, f});
    }
  }
  rep.complete = rep.violations.empty();
  return rep;
}

inline CompletenessReport is_complete(const RatPolytope& p) { return is_complete(p, face_fan(p)); }

/// p intersected with the hyperplane beta^perp: vertices of p on it plus the
/// crossing points of edges that change side.
inline RatPolytope section(const RatPolytope& p, const FaceFan& fan, const RatVector& beta) {
  if (beta.size() != p.dim) throw Error(ErrorCode::DimensionMismatch, "section normal length");
  if (is_zero(beta)) throw Error(ErrorCode::ZeroNormal, "section by a zero normal");
  std::vector<Rational> side(p.vertices.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i) side[i] = dot(beta, p.vertices[i]);

  std::vector<RatVector> pts;
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    if (side[i].is_zero()) pts.push_back(p.vertices[i]);
  for (auto [u, w] : edges(p, fan)) {
    if (side[u].sign() * side[w].sign() >= 0) continue;
    const Rational t = side[u] / (side[u] - side[w]);
    pts.push_back(p.vertices[u] + t * (p.vertices[w] - p.vertices[u]));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return RatPolytope{p.dim, std::move(pts)};
}

inline RatPolytope section(const RatPolytope& p, const RatVector& beta) {
  if (beta.size() != p.dim) throw Error(ErrorCode::DimensionMismatch, "section normal length");
  if (is_zero(beta)) throw Error(ErrorCode::ZeroNormal, "section by a zero normal");
  return section(p, face_fan(p), beta);
}

/// Maximum of <normal, x> over the facets: the gauge (norm) whose unit ball
/// is the polytope.
inline Rational gauge(const FaceFan& fan, const RatVector& x) {
  Rational best;
  bool first = true;
  for (const auto& f : fan.facets) {
    Rational v = dot(f.normal, x);
    if (first || v > best) best = std::move(v);
    first = false;
  }
  return best;
}

/// True iff each facet cone of q lies in the closed cone over one facet of p.
inline bool cone_refines(const RatPolytope& q, const RatPolytope& p) {
  if (q.dim != p.dim) throw Error(ErrorCode::DimensionMismatch, "cone_refines across dimensions");
  const FaceFan pf = face_fan(p);
  const FaceFan qf = face_fan(q);

  // For each vertex of q, the facets of p whose cone contains it.
  std::vector<boost::dynamic_bitset<>> home(q.vertices.size(),
                                            boost::dynamic_bitset<>(pf.facets.size()));
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    const Rational g = gauge(pf, q.vertices[v]);
    for (std::size_t f = 0; f < pf.facets.size(); ++f)
      if (dot(pf.facets[f].normal, q.vertices[v]) == g) home[v].set(f);
  }
  for (const auto& facet : qf.facets) {
    boost::dynamic_bitset<> common(pf.facets.size());
    common.set();
    for (auto v : facet.vertices) common &= home[v];
    if (common.none()) return false;
  }
  return true;
}

inline RatPolytope scaled(RatPolytope p, const Rational& c) {
  for (auto& v : p.vertices) v = c * std::move(v);
  if (c.sign() < 0) std::sort(p.vertices.begin(), p.vertices.end());
  return p;
}

}  // namespace thurston
