#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace invherm {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr const char* kVersion = "0.1.0";

/// Default absolute tolerance on residuals.
inline constexpr double kDefaultTol = 1e-9;

/// Coefficients at or below this magnitude are dropped from forms.
inline constexpr double kPruneTol = 1e-12;

inline const double kSqrt2 = std::sqrt(2.0);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputShapeError : Error {
  using Error::Error;
};
struct MetricError : Error {
  using Error::Error;
};
struct ParameterError : Error {
  using Error::Error;
};
struct ClassificationError : Error {
  using Error::Error;
};
struct NotSemisimpleError : Error {
  using Error::Error;
};
struct RepresentationError : Error {
  using Error::Error;
};

inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

/// Numerical rank: singular values above tol * max(1, largest singular value).
inline int numeric_rank(const Mat& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cut = tol * std::max(1.0, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

/// Principal square root of a Hermitian positive matrix. Eigenvalues are
/// clamped from below at `tol`.
inline Mat hermitian_sqrt(const Mat& b, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(b);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(tol).cwiseSqrt();
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() *
         es.eigenvectors().adjoint();
}

/// Hilbert-Schmidt pairing tr(x . y^dagger).
inline cplx hs_inner(const Mat& x, const Mat& y) {
  return (x * y.adjoint()).trace();
}

}  // namespace invherm
