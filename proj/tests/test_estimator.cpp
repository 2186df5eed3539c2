// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <linkpredict/errors.hpp>
#include <linkpredict/estimator.hpp>
#include <linkpredict/linalg.hpp>
#include <linkpredict/rng.hpp>
#include <linkpredict/synth.hpp>
#include <linkpredict/trace.hpp>

using namespace linkpredict;

namespace {

AlignedSeries series_from(const std::vector<double>& r,
                          const std::vector<std::array<double, 3>>& a) {
  AlignedSeries s;
  for (std::size_t k = 0; k < r.size(); ++k)
    s.records.push_back({static_cast<std::int64_t>(k) * 100, r[k], a[k]});
  s.period_ms = 100.0;
  return s;
}

AlignedSeries random_series(std::size_t n, Rng& rng) {
  std::vector<double> r(n);
  std::vector<std::array<double, 3>> a(n);
  for (std::size_t k = 0; k < n; ++k) {
    r[k] = rng.uniform01();
    a[k] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
  }
  return series_from(r, a);
}

// Simpson's rule on a uniform grid with an even panel count.
double simpson(const GaussianDensity& f, double lo, double hi,
               std::size_t panels) {
  const double h = (hi - lo) / static_cast<double>(panels);
  double acc = f(lo) + f(hi);
  for (std::size_t i = 1; i < panels; ++i)
    acc += f(lo + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("build_system: constant series gives uniform 0.25 correlations") {
  const double c = 0.5;
  AlignedSeries s = series_from({c, c, c, c, c},
                                {{c, c, c}, {c, c, c}, {c, c, c}, {c, c, c},
                                 {c, c, c}});
  const CorrelationSystem sys = build_system(s);
  CHECK(sys.count == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(sys.r[i] == doctest::Approx(0.25).epsilon(1e-15));
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(sys.e.at(i, j) == doctest::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("build_system: three-sample series against hand-worked values") {
  // r = {0.2, 0.4, 0.6}; a[1] = (0.1, 0.2, 0.3); a[2] = (0.2, 0.3, 0.4).
  // Two lag-1 pairs; every entry worked out by hand from the sample means.
  AlignedSeries s = series_from(
      {0.2, 0.4, 0.6},
      {{0.9, 0.9, 0.9}, {0.1, 0.2, 0.3}, {0.2, 0.3, 0.4}});
  const CorrelationSystem sys = build_system(s);
  REQUIRE(sys.count == 2);

  CHECK(sys.r[0] == doctest::Approx(0.16).epsilon(1e-15));
  CHECK(sys.r[1] == doctest::Approx(0.08).epsilon(1e-15));
  CHECK(sys.r[2] == doctest::Approx(0.13).epsilon(1e-15));
  CHECK(sys.r[3] == doctest::Approx(0.18).epsilon(1e-15));

  CHECK(sys.e.at(0, 0) == doctest::Approx(0.10).epsilon(1e-15));
  CHECK(sys.e.at(0, 1) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(sys.e.at(0, 2) == doctest::Approx(0.08).epsilon(1e-15));
  CHECK(sys.e.at(0, 3) == doctest::Approx(0.11).epsilon(1e-15));
  CHECK(sys.e.at(1, 1) == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(sys.e.at(1, 2) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(sys.e.at(1, 3) == doctest::Approx(0.055).epsilon(1e-15));
  CHECK(sys.e.at(2, 2) == doctest::Approx(0.065).epsilon(1e-15));
  CHECK(sys.e.at(2, 3) == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(sys.e.at(3, 3) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("build_system: E is bitwise symmetric and positive semi-definite") {
  Rng rng(Rng::derive(17, 0));
  for (int trial = 0; trial < 20; ++trial) {
    const AlignedSeries s = random_series(50, rng);
    const CorrelationSystem sys = build_system(s);

    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(sys.e.at(i, j) == sys.e.at(j, i));

    double trace = 0.0;
    for (std::size_t i = 0; i < 4; ++i) trace += sys.e.at(i, i);
    for (double lambda : jacobi_eigenvalues(sys.e))
      CHECK(lambda >= -1e-10 * trace);
  }
}

TEST_CASE("build_system: too short") {
  AlignedSeries s = series_from({0.4}, {{0.1, 0.2, 0.3}});
  CHECK_THROWS_AS(build_system(s), SeriesTooShort);
}

TEST_CASE("solve_exact: residual orthogonal to every regressor") {
  Rng rng(Rng::derive(17, 1));
  for (int trial = 0; trial < 10; ++trial) {
    const AlignedSeries s = random_series(200, rng);
    const CorrelationSystem sys = build_system(s);
    const Coefficients c = solve_exact(sys);

    // Brute-force sample correlations between the prediction error and each
    // regressor component, straight from the series.
    double corr[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n = s.size();
    for (std::size_t k = 1; k < n; ++k) {
      const auto& rec = s.records[k];
      const double err =
          rec.r - predict(c, s.records[k - 1].r, rec.accel);
      corr[0] += err * s.records[k - 1].r;
      corr[1] += err * rec.accel[0];
      corr[2] += err * rec.accel[1];
      corr[3] += err * rec.accel[2];
    }
    double r_inf = 0.0;
    for (double v : sys.r) r_inf = std::max(r_inf, std::abs(v));
    for (double& v : corr) v /= static_cast<double>(n - 1);
    for (double v : corr) CHECK(std::abs(v) <= 1e-8 * (1.0 + r_inf));
  }
}

TEST_CASE("solve_gd: matches the exact solution on random systems") {
  Rng rng(Rng::derive(17, 2));
  for (int trial = 0; trial < 100; ++trial) {
    CorrelationSystem sys;
    sys.e = random_spd(4, rng, 0.5, 5.0);
    for (auto& v : sys.r) v = rng.uniform01() * 2.0 - 1.0;
    sys.count = 10;

    const Coefficients exact = solve_exact(sys);

    GdConfig cfg;
    cfg.max_iters = 1000;
    cfg.grad_tol = 1e-12;
    cfg.init = (trial % 2 == 0) ? GdInit::Zero : GdInit::RandomUniform01;
    cfg.rng_seed = static_cast<std::uint64_t>(trial);
    const GdReport rep = solve_gd(sys, cfg);

    CHECK(std::abs(rep.coefficients.rho - exact.rho) <= 1e-6);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(rep.coefficients.alpha[i] - exact.alpha[i]) <= 1e-6);

    REQUIRE(rep.objective_trace.size() == rep.iterations + 1);
    REQUIRE(rep.grad_norms.size() == rep.iterations + 1);
    for (std::size_t i = 1; i < rep.objective_trace.size(); ++i)
      CHECK(rep.objective_trace[i] <= rep.objective_trace[i - 1]);
  }
}

TEST_CASE("predict: closed-form cases") {
  Coefficients persistence{1.0, {0.0, 0.0, 0.0}};
  CHECK(predict(persistence, 0.37, {5.0, -2.0, 9.0}) == 0.37);

  Coefficients single{0.0, {0.0, 2.5, 0.0}};
  CHECK(predict(single, 0.9, {1.0, 0.4, 1.0}) == doctest::Approx(1.0));

  Coefficients mixed{0.5, {1.0, 2.0, 3.0}};
  CHECK(predict(mixed, 0.2, {0.1, 0.2, 0.3}) ==
        doctest::Approx(0.1 + 0.1 + 0.4 + 0.9).epsilon(1e-15));

  CHECK(predict(mixed, 0.0, {0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("evaluate: zero coefficients reduce rmse to the RMS of the series") {
  Rng rng(Rng::derive(17, 3));
  const AlignedSeries s = random_series(100, rng);
  const Evaluation ev = evaluate(Coefficients{}, s);

  REQUIRE(ev.predictions.size() == s.size() - 1);
  double acc = 0.0;
  for (std::size_t k = 1; k < s.size(); ++k)
    acc += s.records[k].r * s.records[k].r;
  const double rms = std::sqrt(acc / static_cast<double>(s.size() - 1));
  CHECK(ev.stats.rmse == doctest::Approx(rms).epsilon(1e-12));
  CHECK(ev.stats.accuracy_pct ==
        doctest::Approx(100.0 * (1.0 - ev.stats.rmse)).epsilon(1e-12));
}

TEST_CASE("evaluate: noise-free recursion is reproduced exactly") {
  const Coefficients truth{0.7, {0.12, 0.08, 0.05}};
  Rng rng(Rng::derive(17, 4));

  std::vector<double> r(400);
  std::vector<std::array<double, 3>> a(400);
  r[0] = 0.5;
  a[0] = {0.0, 0.0, 0.0};
  for (std::size_t k = 1; k < r.size(); ++k) {
    a[k] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
    r[k] = predict(truth, r[k - 1], a[k]);
  }
  const AlignedSeries s = series_from(r, a);

  const Evaluation ev = evaluate(truth, s);
  CHECK(ev.stats.rmse <= 1e-12);
  CHECK(ev.stats.accuracy_pct == doctest::Approx(100.0).epsilon(1e-10));
  CHECK(ev.stats.mean_error == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // And fitting the series recovers the generating coefficients.
  const Coefficients fit = solve_exact(build_system(s));
  CHECK(fit.rho == doctest::Approx(truth.rho).epsilon(1e-8));
  for (int i = 0; i < 3; ++i)
    CHECK(fit.alpha[i] == doctest::Approx(truth.alpha[i]).epsilon(1e-8));
}

TEST_CASE("evaluate: the exact solution beats random perturbations") {
  Rng rng(Rng::derive(17, 5));
  const AlignedSeries s = random_series(300, rng);
  const Coefficients best = solve_exact(build_system(s));
  const double best_rmse = evaluate(best, s).stats.rmse;

  for (int trial = 0; trial < 100; ++trial) {
    Coefficients c = best;
    c.rho += (rng.uniform01() - 0.5) * 0.2;
    for (auto& v : c.alpha) v += (rng.uniform01() - 0.5) * 0.2;
    CHECK(evaluate(c, s).stats.rmse >= best_rmse - 1e-12);
  }
}

TEST_CASE("error_stats_theoretical: closed-form special cases") {
  // Constant RSSI, zero acceleration, persistence model: zero mean error.
  const std::size_t n = 20;
  std::vector<double> r(n, 0.4);
  std::vector<std::array<double, 3>> a(n, {0.0, 0.0, 0.0});
  AlignedSeries s = series_from(r, a);
  const CorrelationSystem sys = build_system(s);
  const SeriesMoments m = moments(s);

  const ErrorStats persistence = error_stats_theoretical(
      sys, Coefficients{1.0, {0.0, 0.0, 0.0}}, m);
  CHECK(persistence.mean_error == doctest::Approx(0.0).scale(1.0));

  // Zero coefficients: P collapses to the raw second moment.
  const ErrorStats zero = error_stats_theoretical(sys, Coefficients{}, m);
  CHECK(zero.mse_p == m.r_t_sq);
  CHECK(zero.rmse == doctest::Approx(std::sqrt(m.r_t_sq)).epsilon(1e-15));
}

TEST_CASE("error_stats_theoretical: P equals the empirical MSE at the optimum") {
  SynthConfig cfg;
  cfg.duration_s = 500.0;
  cfg.imu_rate_hz = 10.0;
  cfg.rssi_rate_hz = 10.0;
  cfg.components = {{{0.8, 0.6, 0.5}, 0.3, 0.0}, {{0.3, 0.4, 0.2}, 0.7, 1.3}};
  cfg.accel_noise_sigma = 0.05;
  cfg.rssi_noise_sigma = 0.05;
  cfg.true_coefficients = {0.72, {0.10, 0.07, 0.04}};
  cfg.seed = 99;

  const GroundTruth gt = ground_truth_series(cfg);
  REQUIRE(gt.series.size() >= 4000);

  const CorrelationSystem sys = build_system(gt.series);
  const SeriesMoments m = moments(gt.series);
  const Coefficients c = solve_exact(sys);

  const ErrorStats th = error_stats_theoretical(sys, c, m);
  const Evaluation ev = evaluate(c, gt.series);

  CHECK(th.mse_p ==
        doctest::Approx(ev.stats.rmse * ev.stats.rmse).epsilon(1e-9));
  CHECK(th.rmse == doctest::Approx(ev.stats.rmse).epsilon(1e-9));
  CHECK(th.mse_p > 0.0);
}

TEST_CASE("conditional_density: normalized Gaussian centered on the prediction") {
  const Coefficients c{0.6, {0.1, 0.2, 0.1}};
  const std::array<double, 3> accel{0.5, 0.3, 0.8};
  const double p = 0.004;
  const GaussianDensity g = conditional_density(c, p, 0.45, accel);

  const double mean = predict(c, 0.45, accel);
  CHECK(g.mean == mean);
  CHECK(g.variance == p);

  const double sigma = std::sqrt(p);
  CHECK(simpson(g, mean - 8.0 * sigma, mean + 8.0 * sigma, 2000) ==
        doctest::Approx(1.0).epsilon(1e-3));
  CHECK(simpson(g, mean - 3.0 * sigma, mean + 3.0 * sigma, 2000) >= 0.997);

  CHECK(g(mean) >= g(mean + 0.01));
  CHECK(g(mean) >= g(mean - 0.01));
  CHECK(g(mean + 0.02) == doctest::Approx(g(mean - 0.02)).epsilon(1e-12));

  CHECK_THROWS_AS(conditional_density(c, 0.0, 0.45, accel),
                  NonPositiveVariance);
  CHECK_THROWS_AS(conditional_density(c, -1e-9, 0.45, accel),
                  NonPositiveVariance);
}
