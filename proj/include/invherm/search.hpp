#pragma once

// Seeded multi-restart compass search. Each restart owns its RNG stream
// (seeded from (seed, restart index)), so results do not depend on how the
// restarts are scheduled.

#include <algorithm>
#include <cstdint>
#include <future>
#include <random>
#include <string>
#include <vector>

namespace invherm {

enum class TargetSign { Any, Positive, Negative };

inline std::string to_string(TargetSign s) {
  switch (s) {
    case TargetSign::Any: return "any";
    case TargetSign::Positive: return "positive";
    case TargetSign::Negative: return "negative";
  }
  return "?";
}

struct SearchConfig {
  std::uint64_t seed = 0;
  int restarts = 8;
  int max_iters = 400;       // polling sweeps per restart
  double initial_step = 0.25;
  double min_step = 1e-10;
  double ftol = 1e-14;       // stop once the objective is this small
  double start_scale = 0.5;  // spread of random starting points (restarts >= 1)
  TargetSign target_sign = TargetSign::Any;
  bool parallel = true;
};

inline constexpr const char* kSearchMethod =
    "compass pattern search (coordinate +/- step, halve on failed sweep)";

class SearchRng {
 public:
  SearchRng(std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    eng_.seed(seq);
  }
  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * ((eng_() >> 11) * 0x1.0p-53) - 1.0; }

 private:
  std::mt19937_64 eng_;
};

struct RestartOutcome {
  int index = 0;
  std::vector<double> x;
  double residual = 0.0;
  int iterations = 0;
  int evaluations = 0;
  std::vector<double> trajectory;  // best objective after each sweep, starting value first
};

struct SearchOutcome {
  RestartOutcome best;
  std::vector<double> restart_residuals;
  std::vector<std::vector<double>> restart_points;  // final x of each restart
  std::string method = kSearchMethod;
};

template <class Objective>
RestartOutcome compass_search(Objective&& f, std::vector<double> x, const SearchConfig& cfg) {
  RestartOutcome out;
  double fx = f(x);
  out.evaluations = 1;
  out.trajectory.push_back(fx);
  double step = cfg.initial_step;
  while (out.iterations < cfg.max_iters && step >= cfg.min_step && fx > cfg.ftol) {
    bool improved = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (const double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[k] += dir * step;
        const double fy = f(y);
        ++out.evaluations;
        if (fy < fx * (1.0 - 1e-12) - 1e-300) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
    ++out.iterations;
    out.trajectory.push_back(fx);
  }
  out.x = std::move(x);
  out.residual = fx;
  return out;
}

/// Restart 0 starts at `x0`; restart r >= 1 at x0 + start_scale * U(-1,1)^dim.
/// Best = smallest residual, ties broken by restart index; residuals at or
/// below ftol count as ties, so a converged restart 0 is preferred.
template <class Objective>
SearchOutcome multi_start(const Objective& f, const std::vector<double>& x0,
                          const SearchConfig& cfg) {
  const int restarts = std::max(1, cfg.restarts);
  auto run = [&](int r) {
    std::vector<double> start = x0;
    if (r > 0) {
      SearchRng rng(cfg.seed, r);
      for (auto& v : start) v += cfg.start_scale * rng.symmetric();
    }
    RestartOutcome o = compass_search(f, std::move(start), cfg);
    o.index = r;
    return o;
  };
  std::vector<RestartOutcome> outcomes(restarts);
  if (cfg.parallel && restarts > 1) {
    std::vector<std::future<RestartOutcome>> jobs;
    for (int r = 0; r < restarts; ++r) jobs.push_back(std::async(std::launch::async, run, r));
    for (int r = 0; r < restarts; ++r) outcomes[r] = jobs[r].get();
  } else {
    for (int r = 0; r < restarts; ++r) outcomes[r] = run(r);
  }
  SearchOutcome res;
  auto key = [&](const RestartOutcome& o) { return o.residual <= cfg.ftol ? 0.0 : o.residual; };
  std::size_t best = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    res.restart_residuals.push_back(outcomes[r].residual);
    res.restart_points.push_back(outcomes[r].x);
    if (key(outcomes[r]) < key(outcomes[best])) best = r;
  }
  res.best = std::move(outcomes[best]);
  return res;
}

}  // namespace invherm
