#pragma once

// invherm command line: one JSON problem file per run, reports on stdout.
// Exit codes: 0 pass/solved, 1 checked and failed, 2 usage or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "invherm/invherm.hpp"

namespace invherm::cli {

using json = nlohmann::json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct Overrides {
  std::string file;
  std::string t;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  bool text = false;
};

/// Number, named connection, or a numeric string.
inline double parse_t(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (auto named = named_connection(s)) return *named;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == s.size() && used > 0) return v;
    throw io::ParseError("unknown connection parameter \"" + s + "\"");
  }
  throw io::ParseError("t must be a number or a connection name");
}

inline const std::vector<double>& default_t_sweep() {
  static const std::vector<double> ts{-1.0, -0.5, 0.0, 1.0 / 3.0, 0.5, 1.0, 2.0};
  return ts;
}

struct Problem {
  json raw;
  std::string command;
  double tol = kDefaultTol;
  LieAlgebra alg;
  HermitianMetric metric;
  std::vector<double> ts;
  SearchConfig search;
};

inline std::string kind_of(const std::string& command) {
  return command.rfind("search", 0) == 0 ? "search" : command;
}

inline Problem load_problem(const std::string& command, const Overrides& ov) {
  std::ifstream in(ov.file);
  if (!in) throw io::ParseError("cannot open problem file \"" + ov.file + "\"");
  Problem p;
  try {
    p.raw = json::parse(in);
  } catch (const json::parse_error& e) {
    throw io::ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!p.raw.is_object()) throw io::ParseError("problem file must hold a JSON object");
  p.command = command;
  const std::string kind = p.raw.value("kind", kind_of(command));
  if (kind != kind_of(command))
    throw io::ParseError("problem kind \"" + kind + "\" does not match command \"" + command + "\"");

  p.tol = ov.tol ? *ov.tol : p.raw.value("tol", kDefaultTol);
  if (!(p.tol > 0.0)) throw io::ParseError("tol must be positive");
  if (!p.raw.contains("algebra")) throw io::ParseError("problem needs an \"algebra\"");
  try {
    p.alg = io::algebra_from_json(p.raw["algebra"], p.tol);
    p.metric = io::metric_from_json(p.raw.value("metric", json()), p.alg, p.tol);
    check_metric(p.metric, p.alg.dim(), p.tol);
    if (!ov.t.empty()) {
      p.ts = {parse_t(json(ov.t))};
    } else if (p.raw.contains("t")) {
      const json& t = p.raw["t"];
      if (t.is_array()) {
        if (command != "verify") throw io::ParseError("only verify accepts a list of t values");
        for (const auto& v : t) p.ts.push_back(parse_t(v));
      } else {
        p.ts = {parse_t(t)};
      }
    } else {
      p.ts = command == "verify" ? default_t_sweep() : std::vector<double>{connections::bismut};
    }
    if (p.ts.empty()) throw io::ParseError("empty t list");
    p.search = io::search_config_from_json(p.raw.value("search", json()));
  } catch (const json::exception& e) {
    throw io::ParseError(std::string("bad problem field: ") + e.what());
  }
  if (ov.seed) p.search.seed = *ov.seed;
  if (ov.restarts) p.search.restarts = *ov.restarts;
  return p;
}

inline json header(const Problem& p) {
  return {{"tool", "invherm"}, {"version", kVersion}, {"command", p.command}, {"tol", p.tol}};
}

inline json check(bool pass, double residual) { return {{"pass", pass}, {"residual", residual}}; }

// -- verify ------------------------------------------------------------------

inline int cmd_verify(const Problem& p, json& report) {
  const double tol = p.tol;
  const InvariantFrame fr = orthonormalize(p.alg, p.metric, tol);
  const FrameDifferential fd = frame_differential(fr);
  bool ok = true;

  json checks;
  const ValidationReport val = validate(p.alg, tol);
  checks["jacobi"] = check(val.jacobi_residual < tol, val.jacobi_residual);
  ok = ok && val.jacobi_residual < tol;

  const bool unimodular = is_unimodular(p.alg, tol);
  const double bres = balanced_residual(fd);
  const bool balanced = bres < tol;
  checks["balanced_iff_unimodular"] = {
      {"pass", balanced == unimodular}, {"unimodular", unimodular}, {"balanced", balanced}, {"residual", bres}};
  ok = ok && balanced == unimodular;

  const PropositionReport props = verify_propositions(fr, fd, tol);
  checks["propositions"] = io::to_json(props);
  ok = ok && props.all_pass();

  const QuarticTensor quartic(fr.on);
  const double sym = quartic.symmetry_residual(), bianchi = quartic.bianchi_residual();
  checks["quartic_tensor"] = {{"pass", sym < tol && bianchi < tol}, {"symmetry_residual", sym},
                              {"bianchi_residual", bianchi}};
  ok = ok && sym < tol && bianchi < tol;

  const double ddbar = (ddbar_omega(fd) - ddbar_omega_via_d(fd)).max_abs();
  checks["ddbar_omega"] = check(ddbar < tol, ddbar);
  ok = ok && ddbar < tol;

  json per_t = json::array();
  for (double t : p.ts) {
    const Curvature curv = curvature(connection_form(fr, t), fd);
    const CurvatureTrace tr = tr_R_wedge_R(curv);
    const double closed = (tr.total - tr_R_wedge_R_closed(fr, fd, t)).max_abs();
    const double quart = tr.quartic.max_abs();
    json entry{{"t", t},
               {"closed_form", check(closed < tol, closed)},
               {"expansion", check(tr.expansion_residual < tol, tr.expansion_residual)},
               {"quartic_trace", check(quart < tol, quart)}};
    bool t_ok = closed < tol && tr.expansion_residual < tol && quart < tol;
    if (unimodular) {
      const double c1 = first_chern(curv).max_abs();
      entry["first_chern"] = check(c1 < tol, c1);
      t_ok = t_ok && c1 < tol;
    } else {
      entry["first_chern"] = nullptr;
    }
    entry["pass"] = t_ok;
    ok = ok && t_ok;
    per_t.push_back(std::move(entry));
  }
  checks["curvature"] = per_t;

  report["algebra"] = {{"n", p.alg.dim()}, {"classification", to_string(classify3d(p.alg, tol))}};
  report["checks"] = checks;
  report["pass"] = ok;
  return ok ? kExitPass : kExitFail;
}

// -- flat-solve ----------------------------------------------------------------

inline bool verdict_passes(Verdict v) { return v == Verdict::Unique || v == Verdict::Indeterminate; }

inline int cmd_flat_solve(const Problem& p, json& report) {
  const SolveReport r = flat_report(p.alg, p.metric, p.ts.front(), p.tol);
  report["report"] = io::to_json(r);
  return verdict_passes(r.verdict) ? kExitPass : kExitFail;
}

// -- bundle-solve ----------------------------------------------------------------

inline Representation load_representation(const Problem& p, const InvariantFrame& fr) {
  if (!p.raw.contains("representation")) throw io::ParseError("problem needs a \"representation\"");
  try {
    return io::representation_from_json(p.raw["representation"], fr, p.tol);
  } catch (const json::exception& e) {
    throw io::ParseError(std::string("bad representation: ") + e.what());
  }
}

inline Mat load_twist(const Problem& p, int m) {
  if (!p.raw.contains("twist")) return Mat::Identity(m, m);
  const json& tw = p.raw["twist"];
  if (!tw.is_object() || !tw.contains("B")) throw io::ParseError("twist must be {\"B\": matrix}");
  return io::matrix_from_json(tw["B"]);
}

inline int cmd_bundle_solve(const Problem& p, json& report) {
  const InvariantFrame fr = orthonormalize(p.alg, p.metric, p.tol);
  const Representation rep = load_representation(p, fr);
  check_shape(rep, fr.dim());
  const Twist tw = make_twist(rep, load_twist(p, rep.m), p.tol);
  const double hom = homomorphism_residual(fr.on, rep);
  report["representation"] = {{"m", rep.m}, {"homomorphism_residual", hom}};
  if (hom >= p.tol) {
    report["report"] = nullptr;
    report["error"] = "not a representation of the algebra";
    return kExitFail;
  }
  const SolveReport r = solve_full_system(fr, rep, tw, p.ts.front(), p.tol);
  report["hym_matrix"] = io::to_json(hym_residual(tw));
  report["report"] = io::to_json(r);
  return verdict_passes(r.verdict) ? kExitPass : kExitFail;
}

// -- searches ----------------------------------------------------------------

inline int cmd_search_metric(const Problem& p, json& report) {
  const double t = p.ts.front();
  const MetricSearchResult res = metric_search(p.alg, t, p.search, p.tol);
  const Mat gram = res.metric.H / res.metric.H.norm();
  json best{{"H", io::to_json(res.metric.H)}, {"normalized_gram", io::to_json(gram)}, {"residual", res.residual}};
  const InvariantFrame fr = orthonormalize(p.alg, res.metric, p.tol);
  best["anomaly"] = io::to_json(solve_alpha_flat(fr, t, p.tol, p.search.target_sign));
  if (numeric_rank(killing_form(p.alg), p.tol) == p.alg.dim()) {
    const Mat canon = semisimple_canonical_metric(p.alg, p.tol).H;
    best["canonical_gram_distance"] = (gram - canon / canon.norm()).norm();
  }
  report["t"] = t;
  report["config"] = io::to_json(p.search);
  report["search"] = io::to_json(res.outcome);
  report["best"] = best;
  report["pass"] = res.residual < p.tol;
  return res.residual < p.tol ? kExitPass : kExitFail;
}

inline int cmd_search_twist(const Problem& p, json& report) {
  const double t = p.ts.front();
  const InvariantFrame fr = orthonormalize(p.alg, p.metric, p.tol);
  const Representation rep = load_representation(p, fr);
  check_shape(rep, fr.dim());
  const TwistSearchResult res = twist_search(fr, rep, t, p.search, p.tol);
  const Twist tw = make_twist(rep, res.B, p.tol);
  report["t"] = t;
  report["config"] = io::to_json(p.search);
  report["search"] = io::to_json(res.outcome);
  report["best"] = {{"B", io::to_json(res.B)}, {"hym_residual", res.residual},
                    {"full_system", io::to_json(solve_full_system(fr, rep, tw, t, p.tol))}};
  report["pass"] = res.residual < p.tol;
  return res.residual < p.tol ? kExitPass : kExitFail;
}

// -- output ------------------------------------------------------------------

inline void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << " = " << j.dump() << "\n";
  }
}

inline void emit(const json& report, bool text, std::ostream& out) {
  if (text)
    flatten(report, "", out);
  else
    out << report.dump(2) << "\n";
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant Hermitian geometry on complex Lie groups", "invherm"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Overrides ov;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"verify", "check Jacobi, balanced/unimodular, Propositions 1-4 and curvature traces"},
      {"flat-solve", "solve the flat anomaly equation for alpha'"},
      {"bundle-solve", "solve HYM and the anomaly equation with a bundle term"},
      {"search-metric", "search metrics for a flat solution"},
      {"search-twist", "search bundle twists B for HYM"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", ov.file, "problem file (JSON)")->required();
    sub->add_option("--t", ov.t, "connection parameter: number or chern|bismut|first-canonical|conformal|minimal-torsion");
    sub->add_option("--tol", ov.tol, "comparison tolerance");
    sub->add_option("--seed", ov.seed, "search seed");
    sub->add_option("--restarts", ov.restarts, "search restarts");
    auto* as_json = sub->add_flag("--json", "JSON report (default)");
    auto* as_text = sub->add_flag("--text", ov.text, "flat key = value report");
    as_json->excludes(as_text);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Problem problem;
  try {
    problem = load_problem(command, ov);
  } catch (const Error& e) {
    err << "invherm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "invherm: bad problem field: " << e.what() << "\n";
    return kExitUsage;
  }

  json report = header(problem);
  int code = kExitFail;
  try {
    if (command == "verify")
      code = cmd_verify(problem, report);
    else if (command == "flat-solve")
      code = cmd_flat_solve(problem, report);
    else if (command == "bundle-solve")
      code = cmd_bundle_solve(problem, report);
    else if (command == "search-metric")
      code = cmd_search_metric(problem, report);
    else
      code = cmd_search_twist(problem, report);
  } catch (const io::ParseError& e) {
    err << "invherm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputShapeError& e) {
    err << "invherm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MetricError& e) {
    err << "invherm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    report["error"] = e.what();
    code = kExitFail;
  }
  report["exit_code"] = code;
  emit(report, ov.text, out);
  return code;
}

}  // namespace invherm::cli
