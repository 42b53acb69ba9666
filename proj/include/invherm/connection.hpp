#pragma once

// The canonical line of Hermitian connections on a complex Lie group in an
// orthonormal left-invariant frame: connection form, curvature, trace
// invariants and the structure-constant identities behind them.

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "invherm/algebra.hpp"
#include "invherm/forms.hpp"

namespace invherm {

namespace connections {
inline constexpr double chern = 1.0;
inline constexpr double bismut = -1.0;
inline constexpr double first_canonical = 0.0;
inline constexpr double conformal = 0.5;
inline constexpr double minimal_torsion = 1.0 / 3.0;
}  // namespace connections

/// "chern", "bismut", "first-canonical", "conformal", "minimal-torsion".
inline std::optional<double> named_connection(std::string_view name) {
  if (name == "chern") return connections::chern;
  if (name == "bismut" || name == "strominger-bismut") return connections::bismut;
  if (name == "first-canonical") return connections::first_canonical;
  if (name == "conformal") return connections::conformal;
  if (name == "minimal-torsion") return connections::minimal_torsion;
  return std::nullopt;
}

struct Connection {
  double t = 1.0;
  Form A;  // matrix-valued 1-form, fiber n
};

/// A^t = (t-1)/(2 sqrt2) sum_i ( e^i (x) ad(e_i)^T - ebar^i (x) conj(ad(e_i)) )
inline Connection connection_form(const InvariantFrame& fr, double t) {
  const int n = fr.dim();
  const double s = (t - 1.0) / (2.0 * kSqrt2);
  Form a(n, n);
  for (int i = 0; i < n; ++i) {
    a.add(holo_bit(i), s * fr.ad[i].transpose());
    a.add(antiholo_bit(n, i), -s * fr.ad[i].conjugate());
  }
  a.prune();
  return {t, std::move(a)};
}

struct Curvature {
  Form A;
  Form dA;
  Form AA;  // A ^ A
  Form R;   // dA + A ^ A
};

inline Curvature curvature(const Connection& conn, const FrameDifferential& fd) {
  Curvature c;
  c.A = conn.A;
  c.dA = d(conn.A, fd);
  c.AA = wedge(conn.A, conn.A);
  c.R = c.dA + c.AA;
  return c;
}

namespace detail {
inline Form trace_any(const Form& f) { return f.fiber() == 1 ? f : trace_form(f); }
}  // namespace detail

/// c1 = (i / 2 pi) tr R
inline Form first_chern(const Curvature& curv) {
  return cplx(0.0, 0.5 / std::numbers::pi) * detail::trace_any(curv.R);
}

/// tr R ^ R together with the pieces of its expansion
/// tr dA^dA + 2 tr A^A^dA + tr A^A^A^A.
struct CurvatureTrace {
  Form total;      // tr R ^ R, computed directly
  Form dA_dA;      // tr dA ^ dA
  Form two_AA_dA;  // 2 tr A ^ A ^ dA
  Form quartic;    // tr A ^ A ^ A ^ A, expected to vanish
  double expansion_residual = 0.0;
};

inline CurvatureTrace tr_R_wedge_R(const Curvature& curv) {
  CurvatureTrace out;
  out.total = detail::trace_any(wedge(curv.R, curv.R));
  out.dA_dA = detail::trace_any(wedge(curv.dA, curv.dA));
  out.two_AA_dA = 2.0 * detail::trace_any(wedge(curv.AA, curv.dA));
  out.quartic = detail::trace_any(wedge(curv.AA, curv.AA));
  out.expansion_residual = (out.total - out.dA_dA - out.two_AA_dA).max_abs();
  return out;
}

/// G(i, j) = tr(ad(e_i)^T conj(ad(e_j))), Hermitian and positive semidefinite.
inline Mat ad_gram(const InvariantFrame& fr) {
  const int n = fr.dim();
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = (fr.ad[i].transpose() * fr.ad[j].conjugate()).trace();
  return g;
}

/// sum_{i,j} w(i, j) de^i ^ debar^j
inline Form de_debar_sum(const FrameDifferential& fd, const Mat& w) {
  Form out(fd.n);
  for (int i = 0; i < fd.n; ++i)
    for (int j = 0; j < fd.n; ++j)
      if (std::abs(w(i, j)) > 0.0) out.axpy(w(i, j), wedge(fd.de[i], fd.debar[j]));
  return out;
}

/// -(t (t-1)^2 / 4) sum_{i,j} de^i ^ debar^j tr(ad(e_i)^T conj(ad(e_j)))
inline Form tr_R_wedge_R_closed(const InvariantFrame& fr, const FrameDifferential& fd, double t) {
  return (-t * (t - 1.0) * (t - 1.0) / 4.0) * de_debar_sum(fd, ad_gram(fr));
}

inline Form tr_R_wedge_R_closed(const InvariantFrame& fr, double t) {
  return tr_R_wedge_R_closed(fr, frame_differential(fr), t);
}

/// F_abcd = sum c^i_{ab} c^j_{cd} c^r_{is} c^s_{jr}, stored densely.
class QuarticTensor {
 public:
  explicit QuarticTensor(const LieAlgebra& alg) : n_(alg.dim()), data_(pow4(n_), 0.0) {
    const int n = n_;
    // K(i, j) = sum_{r,s} c^r_{is} c^s_{jr} = tr(ad e_i ad e_j)
    const Mat k = killing_form(alg);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int dd = 0; dd < n; ++dd) {
            cplx s = 0.0;
            for (int i = 0; i < n; ++i) {
              const cplx ci = alg.c(i, a, b);
              if (ci == cplx{0.0}) continue;
              for (int j = 0; j < n; ++j) s += ci * alg.c(j, c, dd) * k(i, j);
            }
            data_[idx(a, b, c, dd)] = s;
          }
  }

  int dim() const noexcept { return n_; }
  cplx operator()(int a, int b, int c, int d) const { return data_[idx(a, b, c, d)]; }

  /// max |F_abcd + F_bacd|, |F_abcd + F_abdc|, |F_abcd - F_cdab|
  double symmetry_residual() const {
    double w = 0.0;
    for_each([&](int a, int b, int c, int d) {
      const cplx f = (*this)(a, b, c, d);
      w = std::max({w, std::abs(f + (*this)(b, a, c, d)), std::abs(f + (*this)(a, b, d, c)),
                    std::abs(f - (*this)(c, d, a, b))});
    });
    return w;
  }

  /// max |F_abcd + F_acdb + F_adbc|
  double bianchi_residual() const {
    double w = 0.0;
    for_each([&](int a, int b, int c, int d) {
      w = std::max(w, std::abs((*this)(a, b, c, d) + (*this)(a, c, d, b) + (*this)(a, d, b, c)));
    });
    return w;
  }

 private:
  static std::size_t pow4(int n) { return static_cast<std::size_t>(n) * n * n * n; }
  std::size_t idx(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
  }
  template <class F>
  void for_each(F&& f) const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          for (int d = 0; d < n_; ++d) f(a, b, c, d);
  }

  int n_;
  std::vector<cplx> data_;
};

struct PropositionCheck {
  bool pass = false;
  double residual = 0.0;
};

struct PropositionReport {
  std::array<PropositionCheck, 4> props{};
  bool all_pass() const {
    for (const auto& p : props)
      if (!p.pass) return false;
    return true;
  }
};

/// Assembles each identity as a form and measures it:
///  1. sum de^i ^ de^j tr(ad_i^T ad_j^T) = 0
///  2. sum de^i ^ e^j ^ e^k tr(ad_i^T ad([e_k,e_j])^T) = 0
///  3. sum de^i ^ e^j ^ ebar^k tr(ad_i^T [ad_j^T, conj(ad_k)]) = 0
///  4. sum de^i ^ ebar^j ^ ebar^k tr(ad_i^T conj(ad[e_j,e_k]))
///       = -2 sqrt2 sum de^i ^ debar^l tr(ad_i^T conj(ad_l))
inline PropositionReport verify_propositions(const InvariantFrame& fr, const FrameDifferential& fd,
                                             double tol = kDefaultTol) {
  const int n = fr.dim();
  const auto& ad = fr.ad;
  auto ad_of = [&](const Vec& x) {
    Mat m = Mat::Zero(n, n);
    for (int l = 0; l < n; ++l) m += x(l) * ad[l];
    return m;
  };
  auto bracket = [&](int a, int b) {
    Vec v(n);
    for (int l = 0; l < n; ++l) v(l) = fr.on.c(l, a, b);
    return v;
  };

  Form p1(n), p2(n), p3(n), p4l(n), p4r(n);
  for (int i = 0; i < n; ++i) {
    const Mat adiT = ad[i].transpose();
    for (int j = 0; j < n; ++j) {
      p1.axpy((adiT * ad[j].transpose()).trace(), wedge(fd.de[i], fd.de[j]));
      p4r.axpy(-2.0 * kSqrt2 * (adiT * ad[j].conjugate()).trace(), wedge(fd.de[i], fd.debar[j]));
      const Form de_ej = wedge(fd.de[i], Form::holo(n, j));
      for (int k = 0; k < n; ++k) {
        p2.axpy((adiT * ad_of(bracket(k, j)).transpose()).trace(),
                wedge(de_ej, Form::holo(n, k)));
        const Mat comm = ad[j].transpose() * ad[k].conjugate() - ad[k].conjugate() * ad[j].transpose();
        p3.axpy((adiT * comm).trace(), wedge(de_ej, Form::antiholo(n, k)));
        p4l.axpy((adiT * ad_of(bracket(j, k)).conjugate()).trace(),
                 wedge(wedge(fd.de[i], Form::antiholo(n, j)), Form::antiholo(n, k)));
      }
    }
  }
  PropositionReport rep;
  const std::array<double, 4> res{p1.max_abs(), p2.max_abs(), p3.max_abs(), (p4l - p4r).max_abs()};
  for (int k = 0; k < 4; ++k) rep.props[k] = {res[k] < tol, res[k]};
  return rep;
}

inline PropositionReport verify_propositions(const InvariantFrame& fr, double tol = kDefaultTol) {
  return verify_propositions(fr, frame_differential(fr), tol);
}

/// Per-instance reality/bidegree data for tr R and tr R ^ R.
struct RealityReport {
  double trR_imaginary = 0.0;    // |tr R - conj(tr R)|
  double trR_off_type = 0.0;     // non-(1,1) part of tr R
  double trRR_imaginary = 0.0;
  double trRR_off_type = 0.0;    // non-(2,2) part of tr R ^ R
  double R_20 = 0.0;             // size of the (2,0) part of R
  double R_02 = 0.0;
  bool trR_real_11(double tol) const { return trR_imaginary < tol && trR_off_type < tol; }
  bool trRR_real_22(double tol) const { return trRR_imaginary < tol && trRR_off_type < tol; }
};

inline RealityReport reality_report(const Curvature& curv) {
  RealityReport r;
  const Form tr1 = detail::trace_any(curv.R);
  const Form tr2 = detail::trace_any(wedge(curv.R, curv.R));
  r.trR_imaginary = (tr1 - conjugate(tr1)).max_abs();
  r.trR_off_type = (tr1 - tr1.bidegree(1, 1)).max_abs();
  r.trRR_imaginary = (tr2 - conjugate(tr2)).max_abs();
  r.trRR_off_type = (tr2 - tr2.bidegree(2, 2)).max_abs();
  r.R_20 = curv.R.bidegree(2, 0).max_abs();
  r.R_02 = curv.R.bidegree(0, 2).max_abs();
  return r;
}

}  // namespace invherm
