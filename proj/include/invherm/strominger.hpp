#pragma once

// Flat-bundle Strominger system on a complex Lie group with a left-invariant
// metric: anomaly coupling alpha', balanced condition, the semisimple
// canonical metric and the 3-dimensional case analysis.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "invherm/algebra.hpp"
#include "invherm/connection.hpp"
#include "invherm/forms.hpp"
#include "invherm/search.hpp"

namespace invherm {

enum class Verdict { Unique, Indeterminate, NoSolution };
enum class Sign { Positive, Negative, Zero, NA };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Unique: return "Unique";
    case Verdict::Indeterminate: return "Indeterminate";
    case Verdict::NoSolution: return "NoSolution";
  }
  return "?";
}

inline std::string to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "Positive";
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::NA: return "NA";
  }
  return "?";
}

struct AlphaSolution {
  Verdict verdict = Verdict::NoSolution;
  std::optional<double> alpha_prime;  // best real coupling, when one is defined
  double residual = 0.0;              // |lhs - alpha' shape| / |lhs|
  Sign sign = Sign::NA;
  double lhs_norm = 0.0;
  double shape_norm = 0.0;
};

/// Fits lhs = alpha' * shape by real least squares over the stacked real and
/// imaginary parts of all coefficients. `target` restricts the sign of alpha'.
inline AlphaSolution solve_alpha(const Form& lhs, const Form& shape, double tol = kDefaultTol,
                                 TargetSign target = TargetSign::Any) {
  AlphaSolution s;
  double ll = 0.0, ss = 0.0, ls = 0.0;
  for (const auto& [w, c] : lhs.terms()) ll += c.squaredNorm();
  for (const auto& [w, c] : shape.terms()) {
    ss += c.squaredNorm();
    const Mat l = lhs.coefficient(w);
    ls += (l.array() * c.array().conjugate()).real().sum();
  }
  s.lhs_norm = std::sqrt(ll);
  s.shape_norm = std::sqrt(ss);
  const bool lhs_zero = s.lhs_norm < tol;
  const bool shape_zero = s.shape_norm < tol * std::max(1.0, s.lhs_norm);
  if (lhs_zero && shape_zero) {
    s.verdict = Verdict::Indeterminate;
    s.residual = 0.0;
    return s;
  }
  if (shape_zero || lhs_zero) {
    // no admissible nonzero alpha'
    s.verdict = Verdict::NoSolution;
    s.residual = 1.0;
    return s;
  }
  double alpha = ls / ss;
  if ((target == TargetSign::Positive && alpha <= 0.0) ||
      (target == TargetSign::Negative && alpha >= 0.0))
    alpha = 0.0;
  double rr = 0.0;
  for (const auto& [w, c] : lhs.terms()) rr += (c - alpha * shape.coefficient(w)).squaredNorm();
  for (const auto& [w, c] : shape.terms())
    if (!lhs.terms().contains(w)) rr += (alpha * c).squaredNorm();
  s.residual = std::sqrt(rr) / s.lhs_norm;
  s.alpha_prime = alpha;
  s.sign = alpha > 0.0 ? Sign::Positive : (alpha < 0.0 ? Sign::Negative : Sign::Zero);
  s.verdict = (alpha != 0.0 && s.residual < tol) ? Verdict::Unique : Verdict::NoSolution;
  return s;
}

/// sum_i de^i ^ debar^i
inline Form anomaly_lhs_flat(const FrameDifferential& fd) {
  return de_debar_sum(fd, Mat::Identity(fd.n, fd.n));
}

/// -(t (t-1)^2 / 8) sum_{j,k} de^j ^ debar^k tr(ad_j^T conj(ad_k))
inline Form anomaly_shape_flat(const InvariantFrame& fr, const FrameDifferential& fd, double t) {
  return (-t * (t - 1.0) * (t - 1.0) / 8.0) * de_debar_sum(fd, ad_gram(fr));
}

inline AlphaSolution solve_alpha_flat(const InvariantFrame& fr, const FrameDifferential& fd, double t,
                                      double tol = kDefaultTol, TargetSign target = TargetSign::Any) {
  return solve_alpha(anomaly_lhs_flat(fd), anomaly_shape_flat(fr, fd, t), tol, target);
}

inline AlphaSolution solve_alpha_flat(const InvariantFrame& fr, double t, double tol = kDefaultTol,
                                      TargetSign target = TargetSign::Any) {
  return solve_alpha_flat(fr, frame_differential(fr), t, tol, target);
}

/// Is the frame ad-Gram a positive multiple of the identity?
inline bool ad_gram_is_scalar(const InvariantFrame& fr, double tol = kDefaultTol) {
  const Mat g = ad_gram(fr);
  const double c = g(0, 0).real();
  if (c <= tol) return false;
  return max_abs(g / c - Mat::Identity(fr.dim(), fr.dim())) < tol;
}

/// The metric whose orthonormal frames have tr(ad_i^T conj(ad_j)) = delta_ij.
/// Fixed point of H -> P^{-dagger} G^T P^{-1}, started from the Gram matrix
/// of the ad(e_i) under tr(x y^dagger).
inline HermitianMetric semisimple_canonical_metric(const LieAlgebra& alg, double tol = kDefaultTol) {
  const int n = alg.dim();
  if (numeric_rank(killing_form(alg), tol) < n)
    throw NotSemisimpleError("Killing form is degenerate");
  const auto ad = alg.ad_all();
  Mat h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = hs_inner(ad[j], ad[i]);
  for (int it = 0; it < 500; ++it) {
    const InvariantFrame fr = orthonormalize(alg, {h}, tol);
    const Mat pinv = fr.P.inverse();
    Mat next = pinv.adjoint() * ad_gram(fr).transpose() * pinv;
    next = 0.5 * (next + next.adjoint());
    const double change = max_abs(next - h) / max_abs(h);
    h = std::move(next);
    if (change < 1e-15) break;
  }
  if (!ad_gram_is_scalar(orthonormalize(alg, {h}, tol), tol))
    throw Error("canonical metric iteration did not converge");
  return {h};
}

/// Case (c): with e_1, e_2 an orthonormal basis of [g, g], are ad(e_1) and
/// ad(e_2) orthonormal up to a positive scalar under tr(x y^dagger)?
inline bool case_c_check(const InvariantFrame& fr, double tol = kDefaultTol) {
  if (classify3d(fr.on, tol) != Class3::SolvableC)
    throw ClassificationError("case_c_check needs a SolvableC algebra");
  Eigen::JacobiSVD<Mat> svd(bracket_image(fr.on), Eigen::ComputeFullU);
  const Mat u = svd.matrixU();
  std::vector<Mat> ads;
  for (int a = 0; a < 2; ++a) {
    Mat m = Mat::Zero(3, 3);
    for (int l = 0; l < 3; ++l) m += u(l, a) * fr.ad[l];
    ads.push_back(m);
  }
  Mat gram(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) gram(a, b) = hs_inner(ads[a], ads[b]);
  const double scale = gram(0, 0).real();
  if (scale <= tol) return false;
  return max_abs(gram / scale - Mat::Identity(2, 2)) < tol;
}

/// Expected flat verdict for a unimodular 3-dimensional algebra.
inline std::optional<Verdict> predicted_flat_verdict(Class3 cls, const InvariantFrame& fr, double t,
                                                     double tol = kDefaultTol) {
  const bool degenerate_t = std::abs(t * (t - 1.0) * (t - 1.0)) < tol;
  switch (cls) {
    case Class3::Abelian: return Verdict::Indeterminate;
    case Class3::Heisenberg: return Verdict::NoSolution;
    case Class3::SolvableC:
      return (!degenerate_t && case_c_check(fr, tol)) ? Verdict::Unique : Verdict::NoSolution;
    case Class3::Sl2:
      return (!degenerate_t && ad_gram_is_scalar(fr, tol)) ? Verdict::Unique : Verdict::NoSolution;
    default: return std::nullopt;
  }
}

struct SolveReport {
  std::string kind = "flat";
  std::string classification;
  bool unimodular = false;
  bool balanced = false;
  double balanced_residual = 0.0;
  double t = 0.0;
  Verdict verdict = Verdict::NoSolution;
  AlphaSolution alpha;
  double jacobi_residual = 0.0;
  std::optional<double> hym_residual;
  std::optional<PropositionReport> propositions;
  std::optional<Verdict> predicted;
  bool prediction_consistent = true;
  bool solved = false;
};

inline SolveReport flat_report(const LieAlgebra& alg, const HermitianMetric& metric, double t,
                               double tol = kDefaultTol) {
  SolveReport r;
  r.kind = "flat";
  r.t = t;
  const InvariantFrame fr = orthonormalize(alg, metric, tol);
  const FrameDifferential fd = frame_differential(fr);
  const Class3 cls = classify3d(alg, tol);
  r.classification = to_string(cls);
  r.jacobi_residual = validate(alg, tol).jacobi_residual;
  r.unimodular = is_unimodular(alg, tol);
  r.balanced_residual = balanced_residual(fd);
  r.balanced = r.balanced_residual < tol;
  r.propositions = verify_propositions(fr, fd, tol);
  r.alpha = solve_alpha_flat(fr, fd, t, tol);
  r.verdict = r.alpha.verdict;
  r.predicted = predicted_flat_verdict(cls, fr, t, tol);
  if (r.predicted) {
    r.prediction_consistent = *r.predicted == r.verdict;
    if (r.verdict == Verdict::Unique) {
      const Sign expect = t < 0.0 ? Sign::Positive : Sign::Negative;
      r.prediction_consistent = r.prediction_consistent && r.alpha.sign == expect;
    }
  }
  r.solved = r.balanced && (r.verdict == Verdict::Unique || r.verdict == Verdict::Indeterminate);
  return r;
}

/// Lower-triangular factor with L(0,0) = 1, L(i,i) = exp(theta_i) for i >= 1
/// and complex entries below the diagonal.
inline int cholesky_param_count(int n, bool fix_first) {
  return (fix_first ? n - 1 : n) + n * (n - 1);
}

inline Mat cholesky_from_params(int n, const std::vector<double>& x, bool fix_first) {
  Mat l = Mat::Zero(n, n);
  std::size_t p = 0;
  for (int i = 0; i < n; ++i) {
    if (i == 0 && fix_first)
      l(0, 0) = 1.0;
    else
      l(i, i) = std::exp(x[p++]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j, p += 2) l(i, j) = cplx(x[p], x[p + 1]);
  return l;
}

struct MetricSearchResult {
  HermitianMetric metric;
  double residual = 0.0;
  SearchOutcome outcome;
};

/// Minimizes the relative anomaly residual of solve_alpha_flat over metrics
/// H = L L^dagger (global scale fixed by L(0,0) = 1).
inline MetricSearchResult metric_search(const LieAlgebra& alg, double t, const SearchConfig& cfg,
                                        double tol = kDefaultTol) {
  const int n = alg.dim();
  auto objective = [&](const std::vector<double>& x) {
    const Mat l = cholesky_from_params(n, x, true);
    try {
      const InvariantFrame fr = orthonormalize(alg, {l * l.adjoint()}, tol);
      const AlphaSolution s = solve_alpha_flat(fr, t, tol, cfg.target_sign);
      return s.verdict == Verdict::Indeterminate ? 0.0 : s.residual;
    } catch (const MetricError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const std::vector<double> x0(cholesky_param_count(n, true), 0.0);
  MetricSearchResult res;
  res.outcome = multi_start(objective, x0, cfg);
  const Mat l = cholesky_from_params(n, res.outcome.best.x, true);
  res.metric = {l * l.adjoint()};
  res.residual = res.outcome.best.residual;
  return res;
}

}  // namespace invherm
