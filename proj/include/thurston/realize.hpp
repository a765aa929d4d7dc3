#pragma once

// Synthesis of a graph manifold whose nonvanishing Thurston norm is a given
// sum of absolute values of linear functionals.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "thurston/error.hpp"
#include "thurston/linalg.hpp"
#include "thurston/manifold.hpp"
#include "thurston/normball.hpp"

namespace thurston {

struct LedgerEntry {
  std::string check;
  bool passed = false;
  std::string detail;
};

struct RealizationResult {
  SimplifiedGraph graph;
  BigInt scale_N;
  std::vector<Rational> chi_targets;       ///< -K_j per vertex
  std::vector<RatVector> rescaled_kernel;  ///< D v_i, one per coordinate of the target
  SumAbsNorm target;                       ///< the input betas with unit weights (zero term appended if added)
  RatMatrix abar;
  BigInt k_multiplier = 1;                 ///< common factor lambda in K_j = lambda (2 g_j + n' + 2)
  std::vector<std::size_t> genera;
  std::vector<LedgerEntry> ledger;

  bool verified() const {
    return !ledger.empty() &&
           std::all_of(ledger.begin(), ledger.end(), [](const LedgerEntry& e) { return e.passed; });
  }
};

namespace detail {

inline std::vector<LedgerEntry> audit_realization(const RealizationResult& r, bool fibered) {
  std::vector<LedgerEntry> ledger;
  auto record = [&](std::string name, bool ok, std::string detail = {}) {
    ledger.push_back({std::move(name), ok, std::move(detail)});
  };

  const auto violations = validate(r.graph);
  std::string vmsg;
  for (const auto& v : violations) vmsg += (vmsg.empty() ? "" : "; ") + v.message;
  record("graph validates", violations.empty(), vmsg);
  if (!violations.empty()) return ledger;

  const std::size_t n = r.graph.vertices.size();
  const std::size_t d = r.target.dim();
  const RatMatrix a = reduced_plumbing_matrix(r.graph);
  record("plumbing matrix equals abar / N", a == Rational(1) / Rational(r.scale_N) * r.abar);

  const auto ker = kernel_basis(a);
  record("kernel spans the rescaled targets",
         ker.size() == d && rank(r.rescaled_kernel, n) == d && same_span(ker, r.rescaled_kernel),
         "kernel dimension " + std::to_string(ker.size()) + ", expected " + std::to_string(d));

  const auto chi = chis(r.graph);
  bool chi_ok = chi.size() == r.chi_targets.size();
  for (std::size_t j = 0; chi_ok && j < n; ++j) chi_ok = chi[j] == r.chi_targets[j];
  record("chi_j = -K_j", chi_ok);

  // No loops are built, so the Euler number of piece j is the diagonal entry.
  bool witness_ok = true;
  for (std::size_t j = 0; j < n; ++j)
    witness_ok = witness_ok && witness_euler(r.graph.vertices[j]) == a(j, j) &&
                 derived_chi(r.graph.vertices[j], r.graph.degree(j)) == r.chi_targets[j];
  record("witness surgeries recompute e_j", witness_ok);

  // In the basis (D v_i) the nonvanishing norm has terms (K_j, beta_j / K_j).
  bool terms_ok = false;
  if (ker.size() == d && same_span(ker, r.rescaled_kernel)) {
    const auto nv = nonvanishing_norm(r.graph, r.rescaled_kernel);
    const auto& f = nv.norm.functionals();
    terms_ok = f.size() == r.target.functionals().size();
    for (std::size_t j = 0; terms_ok && j < f.size(); ++j)
      terms_ok = f[j].weight == -chi[j] && f[j].weight * f[j].beta == r.target.functionals()[j].beta;
  }
  record("nonvanishing norm matches the target term by term", terms_ok);

  // Same statement reached from the canonical kernel basis through the change of basis T
  // with rescaled = canonical * T.
  bool pullback_ok = false;
  if (ker.size() == d && d > 0 && same_span(ker, r.rescaled_kernel)) {
    const RatMatrix c = RatMatrix::from_columns(ker, n);
    RatMatrix t(d, d);
    bool solved = true;
    for (std::size_t i = 0; i < d && solved; ++i) {
      const auto col = solve(c, r.rescaled_kernel[i]);
      solved = col.has_value();
      for (std::size_t k = 0; solved && k < d; ++k) t(k, i) = (*col)[k];
    }
    if (solved) {
      const auto pulled = pullback(nonvanishing_norm(r.graph).norm, t, Rational(1));
      pullback_ok = pulled.folded() == r.target.folded();
    }
  } else if (d == 0) {
    pullback_ok = true;
  }
  record("canonical norm pulled back to the target basis", pullback_ok);

  const bool inv_fibered = invariants(r.graph).fibered;
  record("fibered flag matches", inv_fibered == fibered,
         std::string("invariants report ") + (inv_fibered ? "fibered" : "not fibered"));
  return ledger;
}

}  // namespace detail

/// Realizes sum_j |<beta_j, .>| on Q^d as the nonvanishing Thurston norm of a
/// graph manifold with one Seifert piece per beta (plus a zero-beta piece when
/// a non-fibered manifold is requested and every beta is nonzero).
///
/// Every piece gets the characteristic -K_j with K_j = lambda (2 g_j + n' + 2);
/// the kernel of the plumbing matrix is prescribed as span{D v_i} with
/// D = diag(1/K_j). A common factor lambda leaves that span, and so the matrix,
/// unchanged; it is the least value for which every piece admits a surgery
/// witness of its Euler number (lambda = 1 unless a denominator is large).
inline RealizationResult realize(std::vector<RatVector> betas, std::vector<std::size_t> genera, bool fibered) {
  if (betas.size() != genera.size())
    throw Error(ErrorCode::InvalidArgument, std::to_string(betas.size()) + " betas but " +
                                                std::to_string(genera.size()) + " genera");
  if (betas.empty()) throw Error(ErrorCode::NotANorm, "no functionals given");
  const std::size_t d = betas.front().size();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "functionals live on Q^0");
  for (const auto& b : betas)
    if (b.size() != d) throw Error(ErrorCode::DimensionMismatch, "functionals differ in length");
  if (!is_norm(SumAbsNorm::from_betas(d, betas)))
    throw Error(ErrorCode::NotANorm, "functionals do not span Q^" + std::to_string(d));

  const bool has_zero = std::any_of(betas.begin(), betas.end(), [](const RatVector& b) { return is_zero(b); });
  if (fibered && has_zero)
    throw Error(ErrorCode::InvalidArgument, "a fibered realization needs every functional nonzero");
  if (!fibered && !has_zero) {
    betas.push_back(zero_vector(d));
    genera.push_back(0);
  }

  const std::size_t n = betas.size();
  std::vector<BigInt> k0(n);
  for (std::size_t j = 0; j < n; ++j) k0[j] = BigInt(2 * genera[j] + n + 2);

  // Columns v_i of P (rows are the betas), rescaled by D with lambda = 1.
  auto rescaled_columns = [&](const BigInt& lambda) {
    std::vector<RatVector> cols(d, RatVector(n));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) cols[i][j] = betas[j][i] / Rational(lambda * k0[j]);
    return cols;
  };

  RealizationResult r;
  r.genera = genera;
  r.target = SumAbsNorm::from_betas(d, betas);
  r.abar = prescribed_kernel_matrix(rescaled_columns(1)).abar;

  BigInt big_n = 1;
  for (const auto& x : r.abar.entries())
    if (!x.is_zero()) big_n = lcm(big_n, abs(x).numerator());
  r.scale_N = big_n;
  const RatMatrix a = Rational(1) / Rational(big_n) * r.abar;

  for (std::size_t j = 0; j < n; ++j) r.graph.vertices.push_back({genera[j], a(j, j), {}});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!r.abar(i, j).is_zero()) r.graph.edges.push_back({i, j, big_n / r.abar(i, j).numerator()});

  BigInt lambda = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const auto plan = plan_witness(a(j, j), -Rational(k0[j]), genera[j], r.graph.degree(j));
    if (plan.achievable) continue;
    const Rational shift = -Rational(k0[j]) - plan.nearest_achievable_chi;  // a positive integer
    BigInt need = 1 + (shift.numerator() + k0[j] - 1) / k0[j];
    lambda = std::max(lambda, need);
  }
  r.k_multiplier = lambda;
  r.rescaled_kernel = rescaled_columns(lambda);

  for (std::size_t j = 0; j < n; ++j) {
    const Rational chi = -Rational(lambda * k0[j]);
    r.chi_targets.push_back(chi);
    try {
      r.graph.vertices[j].surgeries = witness_surgeries(a(j, j), chi, genera[j], r.graph.degree(j));
    } catch (const Error& e) {
      throw Error(ErrorCode::WitnessFailure, "vertex " + std::to_string(j) + ": " + e.message());
    }
  }

  r.ledger = detail::audit_realization(r, fibered);
  if (!r.verified()) {
    std::string msg = "realization failed its own checks:";
    for (const auto& e : r.ledger)
      msg += "\n  [" + std::string(e.passed ? "ok" : "FAILED") + "] " + e.check +
             (e.detail.empty() ? "" : " (" + e.detail + ")");
    throw Error(ErrorCode::WitnessFailure, msg);
  }
  return r;
}

/// Unit-weight functionals of a norm after folding the weights in; the input
/// form accepted by realize.
inline std::vector<RatVector> realization_betas(const SumAbsNorm& nrm) { return nrm.folded(); }

}  // namespace thurston
