#pragma once

// Seeded generators shared by the unit, property and acceptance tests.

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "invherm/invherm.hpp"

namespace invherm::fixture {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  cplx complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  Mat matrix(int rows, int cols, double r = 1.0) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = complex(r);
    return m;
  }

  /// Well-conditioned invertible change of basis: identity plus a small perturbation.
  Mat invertible(int n, double r = 0.4) {
    for (;;) {
      Mat q = Mat::Identity(n, n) + matrix(n, n, r);
      Eigen::JacobiSVD<Mat> svd(q);
      const auto& s = svd.singularValues();
      if (s(n - 1) > 0.2 && s(0) / s(n - 1) < 8.0) return q;
    }
  }

  Mat unitary(int n) {
    Eigen::HouseholderQR<Mat> qr(matrix(n, n));
    return qr.householderQ();
  }

  /// Positive definite Hermitian, eigenvalues bounded away from 0.
  Mat positive(int n, double spread = 0.5) {
    const Mat a = matrix(n, n, spread);
    return Mat::Identity(n, n) + a * a.adjoint();
  }

  /// Admissible (alpha, beta, gamma): alpha^2 + beta*gamma bounded away from 0.
  LieAlgebra solvable_c() {
    for (;;) {
      const cplx a = complex(), b = complex(), g = complex();
      if (std::abs(a * a + b * g) > 0.1) return catalog::solvable_c(a, b, g);
    }
  }

  /// Scalar form with random coefficients on `count` random words of degree k.
  Form scalar_form(int n, int k, int count = 4) {
    Form f(n);
    for (int c = 0; c < count; ++c) {
      Form w = Form::constant(n, complex());
      for (int d = 0; d < k; ++d) w = wedge(w, Form::generator(n, integer(0, 2 * n - 1), Mat::Identity(1, 1)));
      f += w;
    }
    return f;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

struct NamedAlgebra {
  std::string name;
  LieAlgebra alg;
};

/// Abelian(3), Heisenberg, ten random SolvableC, Sl2, Sl2+Sl2.
inline std::vector<NamedAlgebra> catalog_sweep(std::uint64_t seed = 7) {
  Gen gen(seed);
  std::vector<NamedAlgebra> out{{"abelian3", catalog::abelian(3)}, {"heisenberg", catalog::heisenberg()}};
  for (int i = 0; i < 10; ++i) out.push_back({"solvable_c#" + std::to_string(i), gen.solvable_c()});
  out.push_back({"sl2", catalog::sl2()});
  out.push_back({"sl2+sl2", catalog::sl2_sum_sl2()});
  return out;
}

/// Rewrites a form on the coframe of f_i in terms of the coframe of
/// f'_a = sum_i U(i, a) f_i, using e^i = sum_a U(i, a) e'^a.
inline Form substitute(const Form& f, const Mat& u) {
  const int n = f.frame_dim();
  std::vector<Form> image;
  for (int g = 0; g < 2 * n; ++g) {
    Form one(n);
    const int i = g % n;
    for (int a = 0; a < n; ++a) {
      const cplx c = g < n ? u(i, a) : std::conj(u(i, a));
      one.add(Word{1} << (g < n ? a : n + a), Mat::Constant(1, 1, c));
    }
    one.prune();
    image.push_back(one);
  }
  Form out(n, f.fiber());
  for (const auto& [w, c] : f.terms()) {
    Form piece = Form::constant(n, c);
    for (int g = 0; g < 2 * n; ++g)
      if (w & (Word{1} << g)) piece = wedge(piece, image[g]);
    out += piece;
  }
  out.prune();
  return out;
}

/// max |c^k_ij(a) - c^k_ij(b)|
inline double distance(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double w = 0.0;
  for (int k = 0; k < a.dim(); ++k)
    for (int i = 0; i < a.dim(); ++i)
      for (int j = i + 1; j < a.dim(); ++j) w = std::max(w, std::abs(a.c(k, i, j) - b.c(k, i, j)));
  return w;
}

inline const std::vector<double>& t_sweep() {
  static const std::vector<double> ts{-1.0, -0.5, 0.0, 1.0 / 3.0, 0.5, 1.0, 2.0};
  return ts;
}

}  // namespace invherm::fixture
