#pragma once

// Left-invariant exterior forms on the complexified coframe
// e^1 < ... < e^n < ebar^1 < ... < ebar^n with scalar or matrix coefficients.

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "invherm/algebra.hpp"
#include "invherm/core.hpp"

namespace invherm {

/// Basis word: bit g set means generator g appears. Bits 0..n-1 are e^i,
/// bits n..2n-1 are ebar^i. Words are always read in increasing bit order.
using Word = std::uint64_t;

inline constexpr int kMaxFrameDim = 32;

inline Word holo_bit(int i) { return Word{1} << i; }
inline Word antiholo_bit(int n, int i) { return Word{1} << (n + i); }
inline Word holo_mask(int n) { return n >= 64 ? ~Word{0} : (Word{1} << n) - 1; }
inline int word_degree(Word w) { return std::popcount(w); }
inline int holo_degree(int n, Word w) { return std::popcount(w & holo_mask(n)); }
inline int antiholo_degree(int n, Word w) { return std::popcount(w & ~holo_mask(n)); }

/// Sign of concatenating word a then word b into canonical order; 0 if they
/// share a generator.
inline int merge_sign(Word a, Word b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Word rest = b; rest; rest &= rest - 1) {
    const int y = std::countr_zero(rest);
    swaps += y + 1 >= 64 ? 0 : std::popcount(a >> (y + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

/// Graded form with constant m x m coefficients (m = 1 for scalar forms).
class Form {
 public:
  Form() = default;
  Form(int n, int m = 1) : n_(n), m_(m) {
    if (n < 1 || n > kMaxFrameDim) throw InputShapeError("frame dimension out of range");
    if (m < 1) throw InputShapeError("fiber size must be >= 1");
  }

  /// Degree-0 form with coefficient c.
  static Form constant(int n, const Mat& c) {
    Form f(n, static_cast<int>(c.rows()));
    f.add(0, c);
    f.prune();
    return f;
  }
  static Form constant(int n, cplx c) { return constant(n, Mat::Constant(1, 1, c)); }

  static Form generator(int n, int g, const Mat& c) {
    Form f(n, static_cast<int>(c.rows()));
    f.add(Word{1} << g, c);
    f.prune();
    return f;
  }
  /// e^i (scalar)
  static Form holo(int n, int i) { return generator(n, i, Mat::Identity(1, 1)); }
  /// ebar^i (scalar)
  static Form antiholo(int n, int i) { return generator(n, n + i, Mat::Identity(1, 1)); }

  int frame_dim() const noexcept { return n_; }
  int fiber() const noexcept { return m_; }
  bool empty() const noexcept { return terms_.empty(); }
  const std::map<Word, Mat>& terms() const noexcept { return terms_; }

  Mat coefficient(Word w) const {
    const auto it = terms_.find(w);
    return it == terms_.end() ? Mat::Zero(m_, m_) : it->second;
  }
  /// Scalar coefficient (m must be 1).
  cplx scalar(Word w) const {
    const auto it = terms_.find(w);
    return it == terms_.end() ? cplx{0.0} : it->second(0, 0);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [w, c] : terms_) m = std::max(m, invherm::max_abs(c));
    return m;
  }
  bool is_zero(double tol) const { return max_abs() < tol; }

  /// Words of bidegree (p, q) only.
  Form bidegree(int p, int q) const {
    Form out(n_, m_);
    for (const auto& [w, c] : terms_)
      if (holo_degree(n_, w) == p && antiholo_degree(n_, w) == q) out.terms_.emplace(w, c);
    return out;
  }
  Form homogeneous(int k) const {
    Form out(n_, m_);
    for (const auto& [w, c] : terms_)
      if (word_degree(w) == k) out.terms_.emplace(w, c);
    return out;
  }

  /// Scalar form tensored with a matrix.
  Form tensor(const Mat& m) const {
    if (m_ != 1) throw InputShapeError("tensor() needs a scalar form");
    Form out(n_, static_cast<int>(m.rows()));
    for (const auto& [w, c] : terms_) out.add(w, c(0, 0) * m);
    out.prune();
    return out;
  }

  Form& operator+=(const Form& o) { return axpy(1.0, o); }
  Form& operator-=(const Form& o) { return axpy(-1.0, o); }
  Form& operator*=(cplx s) {
    for (auto& [w, c] : terms_) c *= s;
    prune();
    return *this;
  }

  /// this += s * o
  Form& axpy(cplx s, const Form& o) {
    check_compatible(o);
    for (const auto& [w, c] : o.terms_) add(w, s * c);
    prune();
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(cplx s, Form a) { return a *= s; }
  friend Form operator*(Form a, cplx s) { return a *= s; }

  /// Accumulates without pruning; callers finish with prune().
  void add(Word w, const Mat& c) {
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) it->second += c;
  }
  void prune(double tol = kPruneTol) {
    std::erase_if(terms_, [tol](const auto& kv) { return invherm::max_abs(kv.second) <= tol; });
  }

 private:
  void check_compatible(const Form& o) const {
    if (o.n_ != n_) throw InputShapeError("forms live on different frames");
    if (o.m_ != m_) throw InputShapeError("forms have different fiber sizes");
  }

  int n_ = 1;
  int m_ = 1;
  std::map<Word, Mat> terms_;
};

namespace detail {

inline int product_fiber(const Form& a, const Form& b) {
  if (a.frame_dim() != b.frame_dim()) throw InputShapeError("wedge of forms on different frames");
  const int ma = a.fiber(), mb = b.fiber();
  if (ma != 1 && mb != 1 && ma != mb) throw InputShapeError("wedge of incompatible fiber sizes");
  return std::max(ma, mb);
}

inline Mat coeff_product(const Mat& x, const Mat& y) {
  if (x.rows() == 1 && y.rows() != 1) return x(0, 0) * y;
  if (y.rows() == 1 && x.rows() != 1) return x * y(0, 0);
  return x * y;
}

}  // namespace detail

inline Form wedge(const Form& a, const Form& b) {
  Form out(a.frame_dim(), detail::product_fiber(a, b));
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      const int s = merge_sign(wa, wb);
      if (s == 0) continue;
      out.add(wa | wb, static_cast<double>(s) * detail::coeff_product(ca, cb));
    }
  out.prune();
  return out;
}

inline Form wedge_power(const Form& a, int k) {
  Form out = Form::constant(a.frame_dim(), Mat::Identity(a.fiber(), a.fiber()));
  for (int i = 0; i < k; ++i) out = wedge(out, a);
  return out;
}

/// Swaps e^i <-> ebar^i and conjugates coefficients entrywise.
inline Form conjugate(const Form& a) {
  const int n = a.frame_dim();
  const Word lo = holo_mask(n);
  Form out(n, a.fiber());
  for (const auto& [w, c] : a.terms()) {
    const Word hol = w & lo;
    const Word anti = w >> n;
    const int p = std::popcount(hol), q = std::popcount(anti);
    // ebar^{i1..ip} e^{j1..jq} -> canonical order costs p*q transpositions
    const double s = ((p * q) & 1) ? -1.0 : 1.0;
    out.add(anti | (hol << n), s * c.conjugate());
  }
  out.prune();
  return out;
}

/// Coefficient-wise matrix trace of a matrix-valued form.
inline Form trace_form(const Form& a) {
  if (a.fiber() == 1) throw InputShapeError("trace_form needs a matrix-valued form");
  Form out(a.frame_dim(), 1);
  for (const auto& [w, c] : a.terms()) out.add(w, Mat::Constant(1, 1, c.trace()));
  out.prune();
  return out;
}

/// The structure 2-forms de^i = -(1/sqrt2) sum_{j<k} c^i_{jk} e^j ^ e^k and
/// their conjugates, for a basis that is orthonormal for the metric.
struct FrameDifferential {
  int n = 0;
  std::vector<Form> de;
  std::vector<Form> debar;

  const Form& of_generator(int g) const { return g < n ? de[g] : debar[g - n]; }
};

inline FrameDifferential frame_differential(const LieAlgebra& on) {
  const int n = on.dim();
  FrameDifferential fd{n, {}, {}};
  for (int i = 0; i < n; ++i) {
    Form f(n);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        f.add(holo_bit(j) | holo_bit(k), Mat::Constant(1, 1, -on.c(i, j, k) / kSqrt2));
    f.prune();
    fd.debar.push_back(conjugate(f));
    fd.de.push_back(std::move(f));
  }
  return fd;
}

inline FrameDifferential frame_differential(const InvariantFrame& fr) {
  return frame_differential(fr.on);
}

/// Exterior derivative of an invariant form (coefficients are constants).
inline Form d(const Form& a, const FrameDifferential& fd) {
  if (a.frame_dim() != fd.n) throw InputShapeError("d: form and frame differ in dimension");
  Form out(a.frame_dim(), a.fiber());
  for (const auto& [w, c] : a.terms()) {
    int pos = 0;
    for (Word rest = w; rest; rest &= rest - 1, ++pos) {
      const int g = std::countr_zero(rest);
      const Word before = w & ((Word{1} << g) - 1);
      const Word after = w & ~before & ~(Word{1} << g);
      const double sign_pos = (pos & 1) ? -1.0 : 1.0;
      for (const auto& [dw, dc] : fd.of_generator(g).terms()) {
        const int s1 = merge_sign(before, dw);
        if (s1 == 0) continue;
        const int s2 = merge_sign(before | dw, after);
        if (s2 == 0) continue;
        out.add(before | dw | after, (sign_pos * s1 * s2) * dc(0, 0) * c);
      }
    }
  }
  out.prune();
  return out;
}

/// omega = (i/2) sum_i e^i ^ ebar^i
inline Form omega(int n) {
  Form f(n);
  for (int i = 0; i < n; ++i)
    f.add(holo_bit(i) | antiholo_bit(n, i), Mat::Constant(1, 1, cplx(0.0, 0.5)));
  f.prune();
  return f;
}

/// i ddbar omega = (1/2) sum_i de^i ^ debar^i
inline Form ddbar_omega(const FrameDifferential& fd) {
  Form out(fd.n);
  for (int i = 0; i < fd.n; ++i) out += wedge(fd.de[i], fd.debar[i]);
  return 0.5 * out;
}

/// i ddbar omega computed through d and bidegree projections:
/// dbar omega = (1,2)-part of d omega, then the (2,2)-part of d of that.
inline Form ddbar_omega_via_d(const FrameDifferential& fd) {
  const int n = fd.n;
  const Form dbar_omega = d(omega(n), fd).bidegree(1, 2);
  return cplx(0.0, 1.0) * d(dbar_omega, fd).bidegree(2, 2);
}

inline double balanced_residual(const FrameDifferential& fd) {
  return d(wedge_power(omega(fd.n), fd.n - 1), fd).max_abs();
}

/// d(omega^{n-1}) = 0 ?
inline bool balanced_check(const FrameDifferential& fd, double tol = kDefaultTol) {
  return balanced_residual(fd) < tol;
}

inline bool balanced_check(const InvariantFrame& fr, double tol = kDefaultTol) {
  return balanced_check(frame_differential(fr), tol);
}

}  // namespace invherm
