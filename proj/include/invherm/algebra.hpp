#pragma once

// Complex Lie algebras given by structure constants, their adjoint data, and
// orthonormal frames for left-invariant Hermitian metrics.

#include <cstddef>
#include <string>
#include <vector>

#include "invherm/core.hpp"

namespace invherm {

/// Structure constants [e_i, e_j] = sum_k c(k, i, j) e_k, zero-based.
/// Only i < j is stored; the i > j half is derived, so antisymmetry holds
/// by construction.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(int n) : n_(n) {
    if (n < 1) throw InputShapeError("Lie algebra dimension must be >= 1");
    upper_.assign(static_cast<std::size_t>(n) * pairs(n), cplx{0.0});
  }

  int dim() const noexcept { return n_; }

  cplx c(int k, int i, int j) const {
    if (i == j) return 0.0;
    return i < j ? upper_[slot(k, i, j)] : -upper_[slot(k, j, i)];
  }

  /// Sets c(k,i,j) (and implicitly c(k,j,i) = -v). Rejects i == j unless v is 0.
  void set(int k, int i, int j, cplx v) {
    check_index(k);
    check_index(i);
    check_index(j);
    if (i == j) {
      if (v != cplx{0.0})
        throw InputShapeError("structure constant c^k_{ii} must vanish");
      return;
    }
    if (i < j)
      upper_[slot(k, i, j)] = v;
    else
      upper_[slot(k, j, i)] = -v;
  }

  /// Matrix of ad(e_i): entry (k, j) is c(k, i, j).
  Mat ad(int i) const {
    Mat m = Mat::Zero(n_, n_);
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < n_; ++j) m(k, j) = c(k, i, j);
    return m;
  }

  std::vector<Mat> ad_all() const {
    std::vector<Mat> out;
    out.reserve(n_);
    for (int i = 0; i < n_; ++i) out.push_back(ad(i));
    return out;
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    Vec out = Vec::Zero(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const cplx w = x(i) * y(j);
        if (w == cplx{0.0}) continue;
        for (int k = 0; k < n_; ++k) out(k) += w * c(k, i, j);
      }
    return out;
  }

  /// Structure constants in the basis f_a = sum_i q(i, a) e_i.
  LieAlgebra rebased(const Mat& q) const {
    if (q.rows() != n_ || q.cols() != n_)
      throw InputShapeError("basis change must be n x n");
    const Mat qinv = q.inverse();
    LieAlgebra out(n_);
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) {
        const Vec br = bracket(q.col(a), q.col(b));
        const Vec coords = qinv * br;
        for (int m = 0; m < n_; ++m) out.set(m, a, b, coords(m));
      }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : upper_) m = std::max(m, std::abs(v));
    return m;
  }

  bool operator==(const LieAlgebra&) const = default;

 private:
  static std::size_t pairs(int n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }

  void check_index(int i) const {
    if (i < 0 || i >= n_) throw InputShapeError("structure constant index out of range");
  }

  // Row-major over (k, pair(i<j)).
  std::size_t slot(int k, int i, int j) const {
    const std::size_t p = static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
    return static_cast<std::size_t>(k) * pairs(n_) + p;
  }

  int n_ = 0;
  std::vector<cplx> upper_;
};

/// A full n^3 tensor as it may arrive from outside, before antisymmetry is known.
struct DenseStructure {
  int n = 0;
  std::vector<cplx> data;  // index (k * n + i) * n + j

  cplx at(int k, int i, int j) const {
    return data[(static_cast<std::size_t>(k) * n + i) * n + j];
  }
};

struct ValidationReport {
  bool antisymmetric = true;
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  bool pass = false;
};

/// max over (j,k,l,r) of |sum_i c^i_{jk} c^r_{il} + c^i_{kl} c^r_{ij} + c^i_{lj} c^r_{ik}|
template <class Constants>
double jacobi_residual(int n, const Constants& c) {
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int r = 0; r < n; ++r) {
          cplx s = 0.0;
          for (int i = 0; i < n; ++i)
            s += c(i, j, k) * c(r, i, l) + c(i, k, l) * c(r, i, j) + c(i, l, j) * c(r, i, k);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

inline ValidationReport validate(const LieAlgebra& alg, double tol = kDefaultTol) {
  ValidationReport rep;
  rep.jacobi_residual =
      jacobi_residual(alg.dim(), [&](int k, int i, int j) { return alg.c(k, i, j); });
  rep.pass = rep.jacobi_residual < tol;
  return rep;
}

inline ValidationReport validate(const DenseStructure& s, double tol = kDefaultTol) {
  if (s.n < 1) throw InputShapeError("dimension must be >= 1");
  if (s.data.size() != static_cast<std::size_t>(s.n) * s.n * s.n)
    throw InputShapeError("structure tensor has " + std::to_string(s.data.size()) +
                          " entries, expected n^3 = " + std::to_string(s.n * s.n * s.n));
  ValidationReport rep;
  for (int k = 0; k < s.n; ++k)
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < s.n; ++j)
        rep.antisymmetry_residual =
            std::max(rep.antisymmetry_residual, std::abs(s.at(k, i, j) + s.at(k, j, i)));
  rep.antisymmetric = rep.antisymmetry_residual < tol;
  rep.jacobi_residual = jacobi_residual(s.n, [&](int k, int i, int j) { return s.at(k, i, j); });
  rep.pass = rep.antisymmetric && rep.jacobi_residual < tol;
  return rep;
}

/// Builds a LieAlgebra from a dense tensor; requires antisymmetry within tol.
inline LieAlgebra from_dense(const DenseStructure& s, double tol = kDefaultTol) {
  const auto rep = validate(s, tol);
  if (!rep.antisymmetric) throw InputShapeError("structure tensor is not antisymmetric in (i,j)");
  LieAlgebra alg(s.n);
  for (int k = 0; k < s.n; ++k)
    for (int i = 0; i < s.n; ++i)
      for (int j = i + 1; j < s.n; ++j) alg.set(k, i, j, s.at(k, i, j));
  return alg;
}

inline bool is_unimodular(const LieAlgebra& alg, double tol = kDefaultTol) {
  for (int j = 0; j < alg.dim(); ++j) {
    cplx tr = 0.0;
    for (int k = 0; k < alg.dim(); ++k) tr += alg.c(k, j, k);
    if (std::abs(tr) >= tol) return false;
  }
  return true;
}

/// kappa(e_i, e_j) = tr(ad e_i . ad e_j)
inline Mat killing_form(const LieAlgebra& alg) {
  const auto ad = alg.ad_all();
  const int n = alg.dim();
  Mat k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = (ad[i] * ad[j]).trace();
  return k;
}

/// Columns are the brackets [e_i, e_j], i < j; its rank is dim [g, g].
inline Mat bracket_image(const LieAlgebra& alg) {
  const int n = alg.dim();
  Mat m = Mat::Zero(n, std::max(1, n * (n - 1) / 2));
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++col)
      for (int k = 0; k < n; ++k) m(k, col) = alg.c(k, i, j);
  return m;
}

inline int derived_dimension(const LieAlgebra& alg, double tol = kDefaultTol) {
  return numeric_rank(bracket_image(alg), tol);
}

/// Gram matrix H(i, j) = <e_i, e_j>, antilinear in the first slot.
struct HermitianMetric {
  Mat H;
};

inline HermitianMetric identity_metric(int n) { return {Mat::Identity(n, n)}; }

inline void check_metric(const HermitianMetric& g, int n, double tol = kDefaultTol) {
  if (g.H.rows() != n || g.H.cols() != n)
    throw InputShapeError("metric must be " + std::to_string(n) + " x " + std::to_string(n));
  if (!is_hermitian(g.H, tol)) throw MetricError("metric is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(g.H);
  if (es.eigenvalues().minCoeff() <= tol) throw MetricError("metric is not positive definite");
}

/// Orthonormal basis f_a = sum_i P(i, a) e_i with P^dagger H P = 1, together
/// with the structure constants and ad matrices in that basis.
struct InvariantFrame {
  LieAlgebra base;
  Mat P;
  LieAlgebra on;
  std::vector<Mat> ad;

  int dim() const noexcept { return on.dim(); }
};

/// Cholesky H = L L^dagger, P = L^{-dagger}. No pivoting.
inline InvariantFrame orthonormalize(const LieAlgebra& alg, const HermitianMetric& metric,
                                     double tol = kDefaultTol) {
  check_metric(metric, alg.dim(), tol);
  const Mat h = 0.5 * (metric.H + metric.H.adjoint());
  Eigen::LLT<Mat> llt(h);
  if (llt.info() != Eigen::Success) throw MetricError("Cholesky factorization failed");
  const Mat l = llt.matrixL();
  const Mat p = l.adjoint().inverse();
  InvariantFrame fr{alg, p, alg.rebased(p), {}};
  fr.ad = fr.on.ad_all();
  return fr;
}

inline InvariantFrame orthonormalize(const LieAlgebra& alg) {
  return orthonormalize(alg, identity_metric(alg.dim()));
}

enum class Class3 { Abelian, Heisenberg, SolvableC, Sl2, NotUnimodular, NotDim3 };

inline std::string to_string(Class3 c) {
  switch (c) {
    case Class3::Abelian: return "Abelian";
    case Class3::Heisenberg: return "Heisenberg";
    case Class3::SolvableC: return "SolvableC";
    case Class3::Sl2: return "Sl2";
    case Class3::NotUnimodular: return "NotUnimodular";
    case Class3::NotDim3: return "NotDim3";
  }
  return "?";
}

/// Isomorphism class of a 3-dimensional unimodular complex Lie algebra,
/// decided from dim [g,g] and the rank of the Killing form.
inline Class3 classify3d(const LieAlgebra& alg, double tol = kDefaultTol) {
  if (alg.dim() != 3) return Class3::NotDim3;
  if (!is_unimodular(alg, tol)) return Class3::NotUnimodular;
  if (numeric_rank(killing_form(alg), tol) == 3) return Class3::Sl2;
  switch (derived_dimension(alg, tol)) {
    case 0: return Class3::Abelian;
    case 1: return Class3::Heisenberg;
    case 2: return Class3::SolvableC;
    default: return Class3::Sl2;  // [g,g] = g forces semisimple
  }
}

namespace catalog {

inline LieAlgebra abelian(int n) { return LieAlgebra(n); }

/// [e2, e3] = e1
inline LieAlgebra heisenberg() {
  LieAlgebra g(3);
  g.set(0, 1, 2, 1.0);
  return g;
}

/// [e1, e3] = alpha e1 + beta e2, [e2, e3] = gamma e1 - alpha e2.
inline LieAlgebra solvable_c(cplx alpha, cplx beta, cplx gamma, double tol = kDefaultTol) {
  if (std::abs(alpha * alpha + beta * gamma) <= tol)
    throw ParameterError("solvable_c requires alpha^2 + beta*gamma != 0");
  LieAlgebra g(3);
  g.set(0, 0, 2, alpha);
  g.set(1, 0, 2, beta);
  g.set(0, 1, 2, gamma);
  g.set(1, 1, 2, -alpha);
  return g;
}

/// {E, F, H / sqrt2}: orthonormal for tr(U V^dagger).
inline std::vector<Mat> sl2_matrix_basis() {
  Mat e = Mat::Zero(2, 2), f = Mat::Zero(2, 2), h = Mat::Zero(2, 2);
  e(0, 1) = 1.0;
  f(1, 0) = 1.0;
  h(0, 0) = 1.0 / kSqrt2;
  h(1, 1) = -1.0 / kSqrt2;
  return {e, f, h};
}

/// Structure constants of a matrix Lie algebra given by a Hilbert-Schmidt
/// orthonormal basis.
inline LieAlgebra from_orthonormal_matrices(const std::vector<Mat>& basis) {
  const int n = static_cast<int>(basis.size());
  LieAlgebra g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Mat br = basis[i] * basis[j] - basis[j] * basis[i];
      for (int k = 0; k < n; ++k) g.set(k, i, j, hs_inner(br, basis[k]));
    }
  return g;
}

inline LieAlgebra sl2() { return from_orthonormal_matrices(sl2_matrix_basis()); }

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const int na = a.dim(), nb = b.dim();
  LieAlgebra g(na + nb);
  for (int k = 0; k < na; ++k)
    for (int i = 0; i < na; ++i)
      for (int j = i + 1; j < na; ++j) g.set(k, i, j, a.c(k, i, j));
  for (int k = 0; k < nb; ++k)
    for (int i = 0; i < nb; ++i)
      for (int j = i + 1; j < nb; ++j) g.set(na + k, na + i, na + j, b.c(k, i, j));
  return g;
}

inline LieAlgebra sl2_sum_sl2() { return direct_sum(sl2(), sl2()); }

/// Non-unimodular control: [e1, e2] = e2.
inline LieAlgebra affine2() {
  LieAlgebra g(2);
  g.set(1, 0, 1, 1.0);
  return g;
}

}  // namespace catalog

}  // namespace invherm
