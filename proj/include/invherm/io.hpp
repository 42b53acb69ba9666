#pragma once

// JSON schemas shared by the CLI, golden files and tests. Indices in JSON are
// 1-based; complex numbers are [re, im] pairs (a bare number is also read as
// a real value); matrices are row-major nested arrays of complex numbers.

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "invherm/algebra.hpp"
#include "invherm/bundle.hpp"
#include "invherm/connection.hpp"
#include "invherm/forms.hpp"
#include "invherm/search.hpp"
#include "invherm/strominger.hpp"

namespace invherm::io {

using json = nlohmann::json;

struct ParseError : Error {
  using Error::Error;
};

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or [re, im], got " + j.dump());
}

inline json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw InputShapeError("matrix rows have different lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

/// {"n": n, "c": [[i, j, k, re, im], ...]} with i < j, nonzero entries only.
inline json to_json(const LieAlgebra& alg) {
  json c = json::array();
  const int n = alg.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const cplx v = alg.c(k, i, j);
        if (v != cplx{0.0}) c.push_back(json::array({i + 1, j + 1, k + 1, v.real(), v.imag()}));
      }
  return {{"n", n}, {"c", c}};
}

inline LieAlgebra algebra_from_raw_json(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("algebra needs integer \"n\"");
  const int n = j["n"].get<int>();
  if (n < 1) throw InputShapeError("algebra dimension must be >= 1");
  LieAlgebra alg(n);
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& e : j.value("c", json::array())) {
    if (!e.is_array() || (e.size() != 4 && e.size() != 5))
      throw ParseError("structure constant entries are [i, j, k, re, im]");
    const int i = e[0].get<int>() - 1, jj = e[1].get<int>() - 1, k = e[2].get<int>() - 1;
    if (i < 0 || jj < 0 || k < 0 || i >= n || jj >= n || k >= n)
      throw InputShapeError("structure constant index out of range 1..n");
    if (i == jj) throw InputShapeError("structure constant with i == j");
    const auto key = std::make_tuple(std::min(i, jj), std::max(i, jj), k);
    if (!seen.insert(key).second) throw ParseError("duplicate structure constant entry");
    const cplx v(e[3].get<double>(), e.size() == 5 ? e[4].get<double>() : 0.0);
    alg.set(k, i, jj, v);
  }
  return alg;
}

/// Inline algebra or {"catalog": name, ...}; optional "basis_change": Q.
inline LieAlgebra algebra_from_json(const json& j, double tol = kDefaultTol) {
  LieAlgebra alg;
  if (j.is_string() || j.contains("catalog")) {
    const std::string name = j.is_string() ? j.get<std::string>() : j["catalog"].get<std::string>();
    auto param = [&](const char* key) {
      return j.is_object() && j.contains(key) ? complex_from_json(j[key]) : cplx{0.0};
    };
    if (name == "abelian")
      alg = catalog::abelian(j.is_object() ? j.value("n", 3) : 3);
    else if (name == "heisenberg")
      alg = catalog::heisenberg();
    else if (name == "solvable_c")
      alg = catalog::solvable_c(param("alpha"), param("beta"), param("gamma"), tol);
    else if (name == "sl2")
      alg = catalog::sl2();
    else if (name == "sl2+sl2")
      alg = catalog::sl2_sum_sl2();
    else if (name == "affine2")
      alg = catalog::affine2();
    else
      throw ParseError("unknown catalog algebra \"" + name + "\"");
  } else {
    alg = algebra_from_raw_json(j);
  }
  if (j.is_object() && j.contains("basis_change")) alg = alg.rebased(matrix_from_json(j["basis_change"]));
  return alg;
}

/// {"H": matrix}, "identity" or "canonical".
inline HermitianMetric metric_from_json(const json& j, const LieAlgebra& alg, double tol = kDefaultTol) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "identity"))
    return identity_metric(alg.dim());
  if (j.is_string() && j.get<std::string>() == "canonical") return semisimple_canonical_metric(alg, tol);
  if (j.is_object() && j.contains("H")) return {matrix_from_json(j["H"])};
  throw ParseError("metric must be {\"H\": ...}, \"identity\" or \"canonical\"");
}

/// {"m": m, "rho": [matrix, ...]} on the algebra's own basis,
/// {"sym_power": k} for the catalog sl2, or {"trivial": m}.
inline Representation representation_from_json(const json& j, const InvariantFrame& fr,
                                                double tol = kDefaultTol) {
  if (j.contains("sym_power")) return sym_power_rep(fr, j["sym_power"].get<int>(), tol);
  if (j.contains("trivial")) return trivial_representation(fr.dim(), j["trivial"].get<int>());
  if (!j.contains("m") || !j.contains("rho")) throw ParseError("representation needs \"m\" and \"rho\"");
  Representation base{j["m"].get<int>(), {}};
  for (const auto& r : j["rho"]) base.rho.push_back(matrix_from_json(r));
  return representation_in_frame(base, fr);
}

inline json to_json(const Representation& rep) {
  json rho = json::array();
  for (const auto& r : rep.rho) rho.push_back(to_json(r));
  return {{"m", rep.m}, {"rho", rho}};
}

/// [{"word": [generator indices], "coeff": matrix}, ...] in increasing bitmask
/// order; generators 1..n are e^i and n+1..2n are ebar^i.
inline json to_json(const Form& f) {
  json out = json::array();
  for (const auto& [w, c] : f.terms()) {
    json word = json::array();
    for (int g = 0; g < 2 * f.frame_dim(); ++g)
      if (w & (Word{1} << g)) word.push_back(g + 1);
    out.push_back({{"word", word}, {"coeff", to_json(c)}});
  }
  return out;
}

inline Form form_from_json(const json& j, int n) {
  int m = 0;
  Form f;
  for (const auto& term : j) {
    const Mat c = matrix_from_json(term.at("coeff"));
    if (m == 0) {
      m = static_cast<int>(c.rows());
      f = Form(n, m);
    }
    std::vector<int> gens;
    for (const auto& g : term.at("word")) gens.push_back(g.get<int>() - 1);
    // words may be listed in any order; fold the permutation sign in
    Form piece = Form::constant(n, Mat::Identity(m, m));
    for (int g : gens) {
      if (g < 0 || g >= 2 * n) throw InputShapeError("generator index out of range");
      piece = wedge(piece, Form::generator(n, g, Mat::Identity(1, 1)));
    }
    for (const auto& [pw, pc] : piece.terms()) f.add(pw, pc * c);
  }
  if (m == 0) return Form(n);
  f.prune();
  return f;
}

inline json to_json(const PropositionReport& r) {
  json j;
  for (int k = 0; k < 4; ++k)
    j["prop" + std::to_string(k + 1)] = {{"pass", r.props[k].pass}, {"residual", r.props[k].residual}};
  return j;
}

inline json to_json(const AlphaSolution& a) {
  return {{"verdict", to_string(a.verdict)},
          {"alpha_prime", a.alpha_prime ? json(*a.alpha_prime) : json(nullptr)},
          {"residual", a.residual},
          {"sign", to_string(a.sign)}};
}

inline json to_json(const SolveReport& r) {
  json j;
  j["kind"] = r.kind;
  j["classification"] = r.classification;
  j["unimodular"] = r.unimodular;
  j["balanced"] = r.balanced;
  j["t"] = r.t;
  j["verdict"] = to_string(r.verdict);
  j["alpha_prime"] = r.alpha.alpha_prime ? json(*r.alpha.alpha_prime) : json(nullptr);
  j["anomaly"] = to_json(r.alpha);
  j["residuals"] = {{"anomaly", r.alpha.residual},
                    {"jacobi", r.jacobi_residual},
                    {"balanced", r.balanced_residual}};
  if (r.hym_residual) j["residuals"]["hym"] = *r.hym_residual;
  j["proposition_report"] = r.propositions ? to_json(*r.propositions) : json(nullptr);
  if (r.predicted) {
    j["predicted_verdict"] = to_string(*r.predicted);
    j["prediction_consistent"] = r.prediction_consistent;
  }
  j["solved"] = r.solved;
  return j;
}

inline json trajectory_summary(const std::vector<double>& traj, std::size_t max_samples = 16) {
  json samples = json::array();
  if (!traj.empty()) {
    const std::size_t count = std::min(max_samples, traj.size());
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t idx = count == 1 ? 0 : s * (traj.size() - 1) / (count - 1);
      samples.push_back(traj[idx]);
    }
  }
  return {{"length", traj.size()},
          {"initial", traj.empty() ? json(nullptr) : json(traj.front())},
          {"final", traj.empty() ? json(nullptr) : json(traj.back())},
          {"samples", samples}};
}

inline json to_json(const SearchOutcome& o) {
  return {{"method", o.method},
          {"best_restart", o.best.index},
          {"iterations", o.best.iterations},
          {"evaluations", o.best.evaluations},
          {"restart_residuals", o.restart_residuals},
          {"trajectory", trajectory_summary(o.best.trajectory)}};
}

inline json to_json(const SearchConfig& c) {
  return {{"seed", c.seed},          {"restarts", c.restarts},   {"max_iters", c.max_iters},
          {"initial_step", c.initial_step}, {"min_step", c.min_step}, {"ftol", c.ftol},
          {"start_scale", c.start_scale},   {"target_sign", to_string(c.target_sign)}};
}

inline SearchConfig search_config_from_json(const json& j) {
  SearchConfig c;
  if (j.is_null()) return c;
  c.seed = j.value("seed", c.seed);
  c.restarts = j.value("restarts", c.restarts);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.initial_step = j.value("initial_step", c.initial_step);
  c.min_step = j.value("min_step", c.min_step);
  c.ftol = j.value("ftol", c.ftol);
  c.start_scale = j.value("start_scale", c.start_scale);
  const std::string sign = j.value("target_sign", std::string("any"));
  if (sign == "any")
    c.target_sign = TargetSign::Any;
  else if (sign == "positive")
    c.target_sign = TargetSign::Positive;
  else if (sign == "negative")
    c.target_sign = TargetSign::Negative;
  else
    throw ParseError("target_sign must be any, positive or negative");
  return c;
}

}  // namespace invherm::io
