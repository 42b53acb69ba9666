#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <limits>

#include "support.hpp"

using namespace invherm;

namespace {

double bowl(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (k + 1.0) * (x[k] - 0.25 * k) * (x[k] - 0.25 * k);
  return s;
}

}  // namespace

TEST(Compass, FindsQuadraticMinimum) {
  SearchConfig cfg;
  cfg.max_iters = 2000;
  const RestartOutcome o = compass_search(bowl, {1.0, -1.0, 0.3}, cfg);
  EXPECT_LT(o.residual, 1e-14);
  EXPECT_NEAR(o.x[0], 0.0, 1e-6);
  EXPECT_NEAR(o.x[1], 0.25, 1e-6);
  EXPECT_NEAR(o.x[2], 0.5, 1e-6);
}

TEST(Compass, TrajectoryIsMonotone) {
  SearchConfig cfg;
  cfg.max_iters = 50;
  const RestartOutcome o = compass_search(bowl, {2.0, 2.0}, cfg);
  ASSERT_EQ(o.trajectory.size(), static_cast<std::size_t>(o.iterations) + 1);
  EXPECT_EQ(o.trajectory.front(), bowl({2.0, 2.0}));
  EXPECT_EQ(o.trajectory.back(), o.residual);
  for (std::size_t k = 1; k < o.trajectory.size(); ++k) EXPECT_LE(o.trajectory[k], o.trajectory[k - 1]);
}

TEST(Compass, StopsAtZeroWithoutIterating) {
  const RestartOutcome o = compass_search([](const std::vector<double>&) { return 0.0; }, {0.0}, {});
  EXPECT_EQ(o.iterations, 0);
  EXPECT_EQ(o.evaluations, 1);
}

TEST(Compass, RespectsIterationCap) {
  SearchConfig cfg;
  cfg.max_iters = 3;
  const RestartOutcome o = compass_search(bowl, {5.0, 5.0}, cfg);
  EXPECT_EQ(o.iterations, 3);
}

TEST(Compass, InfiniteValuesAreNeverAccepted) {
  auto f = [](const std::vector<double>& x) {
    return x[0] < 0.0 ? std::numeric_limits<double>::infinity() : (x[0] - 0.1) * (x[0] - 0.1);
  };
  SearchConfig cfg;
  cfg.max_iters = 500;
  const RestartOutcome o = compass_search(f, {1.0}, cfg);
  EXPECT_GE(o.x[0], 0.0);
  EXPECT_NEAR(o.x[0], 0.1, 1e-6);
}

TEST(MultiStart, RestartZeroStartsAtOrigin) {
  SearchConfig cfg;
  cfg.restarts = 3;
  cfg.max_iters = 0;
  const std::vector<double> x0{0.5, -0.5};
  const SearchOutcome o = multi_start(bowl, x0, cfg);
  EXPECT_EQ(o.restart_points[0], x0);
  EXPECT_NE(o.restart_points[1], x0);
  EXPECT_NE(o.restart_points[1], o.restart_points[2]);
  for (const auto& p : o.restart_points)
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_LE(std::abs(p[k] - x0[k]), cfg.start_scale);
}

TEST(MultiStart, SeedsChangeStartsDeterministically) {
  SearchConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 0;
  const std::vector<double> x0(3, 0.0);
  const SearchOutcome a = multi_start(bowl, x0, cfg);
  const SearchOutcome b = multi_start(bowl, x0, cfg);
  cfg.seed = 1;
  const SearchOutcome c = multi_start(bowl, x0, cfg);
  EXPECT_EQ(a.restart_points, b.restart_points);
  EXPECT_NE(a.restart_points[1], c.restart_points[1]);
  cfg.seed = std::uint64_t{1} << 40;
  EXPECT_NE(multi_start(bowl, x0, cfg).restart_points[1], c.restart_points[1]);
}

TEST(MultiStart, ParallelEqualsSerial) {
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.max_iters = 30;
  cfg.seed = 11;
  const std::vector<double> x0{1.0, 1.0, 1.0, 1.0};
  const SearchOutcome a = multi_start(bowl, x0, cfg);
  cfg.parallel = false;
  const SearchOutcome b = multi_start(bowl, x0, cfg);
  EXPECT_EQ(a.restart_residuals, b.restart_residuals);
  EXPECT_EQ(a.restart_points, b.restart_points);
  EXPECT_EQ(a.best.index, b.best.index);
  EXPECT_EQ(a.best.trajectory, b.best.trajectory);
}

TEST(MultiStart, PicksSmallestResidual) {
  SearchConfig cfg;
  cfg.restarts = 6;
  cfg.max_iters = 2;
  const SearchOutcome o = multi_start(bowl, {3.0, 3.0}, cfg);
  for (double r : o.restart_residuals) EXPECT_LE(o.best.residual, r);
  EXPECT_EQ(o.best.residual, o.restart_residuals[o.best.index]);
}

TEST(MultiStart, ConvergedRestartsTieToLowestIndex) {
  // restart 0 sits in a local well of depth 1e-16; starts left of -1 hit 0
  auto f = [](const std::vector<double>& x) { return x[0] < -1.0 ? 0.0 : 1e-16 + x[0] * x[0]; };
  SearchConfig cfg;
  cfg.restarts = 12;
  cfg.start_scale = 4.0;
  const SearchOutcome o = multi_start(f, {0.0}, cfg);
  ASSERT_EQ(*std::min_element(o.restart_residuals.begin(), o.restart_residuals.end()), 0.0);
  EXPECT_EQ(o.restart_residuals[0], 1e-16);
  EXPECT_EQ(o.best.index, 0);
  cfg.ftol = 0.0;
  const SearchOutcome strict = multi_start(f, {0.0}, cfg);
  EXPECT_NE(strict.best.index, 0);
  EXPECT_EQ(strict.best.residual, 0.0);
}

TEST(MultiStart, AtLeastOneRestart) {
  SearchConfig cfg;
  cfg.restarts = 0;
  std::atomic<int> calls{0};
  const SearchOutcome o = multi_start(
      [&](const std::vector<double>& x) {
        ++calls;
        return bowl(x);
      },
      {0.0}, cfg);
  EXPECT_EQ(o.restart_residuals.size(), 1u);
  EXPECT_GT(calls.load(), 0);
}

TEST(CholeskyParams, IdentityAtZero) {
  for (bool fix : {true, false}) {
    const int n = 3;
    const Mat l = cholesky_from_params(n, std::vector<double>(cholesky_param_count(n, fix), 0.0), fix);
    EXPECT_LT(max_abs(l - Mat::Identity(n, n)), 1e-15);
  }
}
