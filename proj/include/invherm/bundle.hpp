#pragma once

// Trivial holomorphic bundle X x C^m with the invariant metric twisted by a
// positive Hermitian B: Chern curvature, Hermitian-Yang-Mills residual,
// tr F ^ F and the anomaly equation with both curvature terms.

#include <cmath>
#include <string>
#include <vector>

#include "invherm/algebra.hpp"
#include "invherm/connection.hpp"
#include "invherm/forms.hpp"
#include "invherm/search.hpp"
#include "invherm/strominger.hpp"

namespace invherm {

/// Images rho(e_i) of a basis of the Lie algebra, m x m each.
struct Representation {
  int m = 0;
  std::vector<Mat> rho;
};

inline void check_shape(const Representation& rep, int n) {
  if (static_cast<int>(rep.rho.size()) != n)
    throw InputShapeError("representation needs " + std::to_string(n) + " matrices, got " +
                          std::to_string(rep.rho.size()));
  for (const auto& r : rep.rho)
    if (r.rows() != rep.m || r.cols() != rep.m)
      throw InputShapeError("representation matrices must be m x m");
}

/// max |[rho_i, rho_j] - sum_k c^k_{ij} rho_k|
inline double homomorphism_residual(const LieAlgebra& alg, const Representation& rep) {
  check_shape(rep, alg.dim());
  const int n = alg.dim();
  double w = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat diff = rep.rho[i] * rep.rho[j] - rep.rho[j] * rep.rho[i];
      for (int k = 0; k < n; ++k) diff -= alg.c(k, i, j) * rep.rho[k];
      w = std::max(w, max_abs(diff));
    }
  return w;
}

/// Re-expresses a representation of the original basis on the frame basis
/// f_a = sum_i P(i, a) e_i.
inline Representation representation_in_frame(const Representation& base, const InvariantFrame& fr) {
  check_shape(base, fr.dim());
  Representation out{base.m, {}};
  for (int a = 0; a < fr.dim(); ++a) {
    Mat m = Mat::Zero(base.m, base.m);
    for (int i = 0; i < fr.dim(); ++i) m += fr.P(i, a) * base.rho[i];
    out.rho.push_back(std::move(m));
  }
  return out;
}

inline Representation trivial_representation(int n, int m) {
  return {m, std::vector<Mat>(n, Mat::Zero(m, m))};
}

/// Spin-k/2 weight basis, orthonormal for the SU(2)-invariant product, images
/// of {E, F, H/sqrt2}; re-expressed on the frame. The frame's base algebra
/// must be the catalog sl2.
inline Representation sym_power_rep(const InvariantFrame& fr, int k, double tol = kDefaultTol) {
  if (k < 1) throw ParameterError("sym_power_rep needs k >= 1");
  const LieAlgebra ref = catalog::sl2();
  bool same = fr.base.dim() == 3;
  for (int a = 0; same && a < 3; ++a)
    for (int i = 0; same && i < 3; ++i)
      for (int j = 0; same && j < 3; ++j)
        same = std::abs(fr.base.c(a, i, j) - ref.c(a, i, j)) < tol;
  if (!same) throw ClassificationError("sym_power_rep is defined for the catalog sl2 basis");

  const int m = k + 1;
  const double spin = 0.5 * k;
  Mat jp = Mat::Zero(m, m), jz = Mat::Zero(m, m);
  for (int a = 0; a < m; ++a) {
    const double w = spin - a;
    jz(a, a) = w;
    if (a > 0) jp(a - 1, a) = std::sqrt((spin - w) * (spin + w + 1.0));
  }
  const Representation base{m, {jp, jp.transpose(), kSqrt2 * jz}};
  return representation_in_frame(base, fr);
}

/// B, its principal square root, and e'_i = B^{-1/2} rho_i B^{1/2}.
struct Twist {
  Mat B;
  Mat Bhalf;
  Mat Bhalf_inv;
  Mat Binv;
  std::vector<Mat> eprime;
};

inline Twist make_twist(const Representation& rep, const Mat& b, double tol = kDefaultTol) {
  if (b.rows() != rep.m || b.cols() != rep.m) throw InputShapeError("B must be m x m");
  if (!is_hermitian(b, tol)) throw MetricError("B is not Hermitian");
  const Mat bh = 0.5 * (b + b.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(bh);
  if (es.eigenvalues().minCoeff() <= 0.0) throw MetricError("B is not positive definite");
  Twist tw;
  tw.B = bh;
  tw.Bhalf = hermitian_sqrt(bh, tol);
  tw.Bhalf_inv = tw.Bhalf.inverse();
  tw.Binv = bh.inverse();
  for (const auto& r : rep.rho) tw.eprime.push_back(tw.Bhalf_inv * r * tw.Bhalf);
  return tw;
}

inline Twist make_twist(const Representation& rep) {
  return make_twist(rep, Mat::Identity(rep.m, rep.m));
}

/// Identity-fiber representative of the Chern curvature,
/// F0 = -(1/2) sum_{i,j} e^i ^ ebar^j (x) [B^{-1} rho_i B, rho_j^dagger].
inline Form curvature_F(const InvariantFrame& fr, const Representation& rep, const Twist& tw,
                        double tol = kDefaultTol) {
  const double hres = homomorphism_residual(fr.on, rep);
  if (hres >= tol)
    throw RepresentationError("not a representation of the frame algebra (residual " +
                              std::to_string(hres) + ")");
  const int n = fr.dim();
  Form f(n, rep.m);
  for (int i = 0; i < n; ++i) {
    const Mat twisted = tw.Binv * rep.rho[i] * tw.B;
    for (int j = 0; j < n; ++j) {
      const Mat dag = rep.rho[j].adjoint();
      f.add(holo_bit(i) | antiholo_bit(n, j), -0.5 * (twisted * dag - dag * twisted));
    }
  }
  f.prune();
  return f;
}

/// sum_i [e'_i, e'_i^dagger]
inline Mat hym_residual(const Twist& tw) {
  const int m = static_cast<int>(tw.B.rows());
  Mat s = Mat::Zero(m, m);
  for (const auto& e : tw.eprime) s += e * e.adjoint() - e.adjoint() * e;
  return s;
}

/// Top-degree coefficient of F0 ^ omega^{n-1}.
inline Mat hym_contraction(const Form& f0) {
  const int n = f0.frame_dim();
  const Form top = wedge(f0, wedge_power(omega(n), n - 1));
  return top.coefficient(holo_mask(2 * n));
}

/// sum_{m,n} de^m ^ debar^n tr(e'_m e'_n^dagger)
inline Form tr_F_wedge_F(const FrameDifferential& fd, const Twist& tw) {
  const int n = fd.n;
  Mat g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g(a, b) = hs_inner(tw.eprime[a], tw.eprime[b]);
  return de_debar_sum(fd, g);
}

inline Form tr_F_wedge_F_direct(const Form& f0) { return detail::trace_any(wedge(f0, f0)); }

/// i ddbar omega = (alpha'/4) (tr R^t ^ R^t - tr F ^ F) with the HYM equation.
/// Unique needs both the HYM residual and the anomaly residual below tol.
inline SolveReport solve_full_system(const InvariantFrame& fr, const Representation& rep,
                                     const Twist& tw, double t, double tol = kDefaultTol) {
  check_shape(rep, fr.dim());
  SolveReport r;
  r.kind = "bundle";
  r.t = t;
  const FrameDifferential fd = frame_differential(fr);
  r.classification = to_string(classify3d(fr.base, tol));
  r.jacobi_residual = validate(fr.on, tol).jacobi_residual;
  r.unimodular = is_unimodular(fr.on, tol);
  r.balanced_residual = balanced_residual(fd);
  r.balanced = r.balanced_residual < tol;
  r.propositions = verify_propositions(fr, fd, tol);
  r.hym_residual = hym_residual(tw).norm();

  const Form lhs = ddbar_omega(fd);
  const Form shape = 0.25 * (tr_R_wedge_R_closed(fr, fd, t) - tr_F_wedge_F(fd, tw));
  r.alpha = solve_alpha(lhs, shape, tol);
  const bool hym_ok = *r.hym_residual < tol;
  if (hym_ok && r.alpha.verdict != Verdict::NoSolution)
    r.verdict = r.alpha.verdict;
  else
    r.verdict = Verdict::NoSolution;
  r.solved = r.balanced && r.verdict != Verdict::NoSolution;
  return r;
}

struct TwistSearchResult {
  Mat B;
  double residual = 0.0;  // Frobenius norm of the HYM residual at B
  SearchOutcome outcome;  // objective = squared residual
};

/// Minimizes |sum_i [e'_i, e'_i^dagger]|^2 over B = L L^dagger with det B = 1.
inline TwistSearchResult twist_search(const InvariantFrame& fr, const Representation& rep, double t,
                                      const SearchConfig& cfg, double tol = kDefaultTol) {
  (void)t;  // the HYM equation does not involve the connection parameter
  check_shape(rep, fr.dim());
  const int m = rep.m;
  auto b_of = [m](const std::vector<double>& x) {
    std::vector<double> y = x;
    double mean = 0.0;
    for (int i = 0; i < m; ++i) mean += y[i];
    mean /= m;
    for (int i = 0; i < m; ++i) y[i] -= mean;
    const Mat l = cholesky_from_params(m, y, false);
    return Mat(l * l.adjoint());
  };
  auto objective = [&](const std::vector<double>& x) {
    try {
      return hym_residual(make_twist(rep, b_of(x), tol)).squaredNorm();
    } catch (const MetricError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  TwistSearchResult res;
  res.outcome = multi_start(objective, std::vector<double>(cholesky_param_count(m, false), 0.0), cfg);
  res.B = b_of(res.outcome.best.x);
  res.residual = std::sqrt(res.outcome.best.residual);
  return res;
}

}  // namespace invherm
