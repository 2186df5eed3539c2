// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <linkpredict/errors.hpp>
#include <linkpredict/estimator.hpp>
#include <linkpredict/kalman.hpp>
#include <linkpredict/rng.hpp>
#include <linkpredict/synth.hpp>
#include <linkpredict/trace.hpp>

using namespace linkpredict;

namespace {

AlignedSeries series_of(const std::vector<double>& r) {
  AlignedSeries s;
  for (std::size_t k = 0; k < r.size(); ++k)
    s.records.push_back(
        {static_cast<std::int64_t>(k) * 100, r[k], {0.0, 0.0, 0.0}});
  s.period_ms = 100.0;
  return s;
}

std::vector<double> white_noise(std::size_t n, double sigma, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal(0.0, sigma);
  return v;
}

}  // namespace

TEST_CASE("calibrate: constant series floors both variances") {
  const KalmanParams p = calibrate(series_of(std::vector<double>(50, 0.3)));
  CHECK(p.q == 1e-8);
  CHECK(p.r_meas == 1e-8);
}

TEST_CASE("calibrate: white noise matches the moving-average decomposition") {
  // Residual variance of x - MA5(x) on iid noise is (16 + 4)/25 sigma^2
  // = 0.8 sigma^2; the MA first difference is (x[k+5] - x[k])/5 with mean
  // square 2 sigma^2 / 25 = 0.08 sigma^2.
  Rng rng(Rng::derive(23, 0));
  const double sigma = 0.1;
  const KalmanParams p =
      calibrate(series_of(white_noise(2000, sigma, rng)), 0.5);

  const double s2 = sigma * sigma;
  CHECK(p.r_meas >= 0.70 * s2);
  CHECK(p.r_meas <= 1.05 * s2);
  CHECK(p.q >= 0.06 * s2);
  CHECK(p.q <= 0.10 * s2);
}

TEST_CASE("calibrate: noiseless ramp registers as pure process noise") {
  const double slope = 0.01;
  std::vector<double> r(100);
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] = slope * static_cast<double>(k);

  const KalmanParams p = calibrate(series_of(r));
  CHECK(p.q == doctest::Approx(slope * slope).epsilon(1e-9));
  CHECK(p.r_meas == 1e-8);
}

TEST_CASE("calibrate: ramp on top of noise adds slope^2 to q") {
  const double slope = 0.05, sigma = 0.05;
  Rng rng_a(Rng::derive(23, 1));
  Rng rng_b(Rng::derive(23, 1));

  const auto noise = white_noise(2000, sigma, rng_a);
  auto ramped = white_noise(2000, sigma, rng_b);
  for (std::size_t k = 0; k < ramped.size(); ++k)
    ramped[k] += slope * static_cast<double>(k);

  const double q_noise = calibrate(series_of(noise), 0.5).q;
  const double q_ramp = calibrate(series_of(ramped), 0.5).q;
  CHECK(q_ramp - q_noise == doctest::Approx(slope * slope).epsilon(0.4));
}

TEST_CASE("calibrate: configuration and length validation") {
  const AlignedSeries s = series_of(std::vector<double>(100, 0.5));
  CHECK_THROWS_AS(calibrate(s, 0.0), InvalidConfig);
  CHECK_THROWS_AS(calibrate(s, -0.1), InvalidConfig);
  CHECK_THROWS_AS(calibrate(s, 0.6), InvalidConfig);

  const AlignedSeries tiny = series_of(std::vector<double>(20, 0.5));
  CHECK_THROWS_AS(calibrate(tiny, 0.3), SeriesTooShort);
}

TEST_CASE("step: prediction is the prior estimate") {
  const KalmanParams p{0.01, 0.1};
  KalmanState state{0.42, 0.05};
  const KalmanStep s = step(state, p, 0.9);
  CHECK(s.prediction == 0.42);
}

TEST_CASE("step: enormous measurement noise freezes the estimate") {
  const KalmanParams p{1e-6, 1e12};
  const KalmanStep s = step(KalmanState{0.5, 0.01}, p, 100.0);
  CHECK(std::abs(s.state.estimate - 0.5) < 1e-9);
}

TEST_CASE("step: zero process noise tracks a constant and shrinks variance") {
  const KalmanParams p{0.0, 0.1};
  KalmanState state{0.3, 0.2};
  for (int i = 0; i < 10; ++i) {
    const KalmanStep s = step(state, p, 0.3);
    CHECK(s.state.estimate == 0.3);
    CHECK(s.state.variance < state.variance);
    CHECK(s.state.variance > 0.0);
    state = s.state;
  }
}

TEST_CASE("step: variance and implied gain stay in their ranges") {
  Rng rng(Rng::derive(23, 2));
  for (int trial = 0; trial < 200; ++trial) {
    const KalmanParams p{rng.uniform01() * 0.1 + 1e-6,
                         rng.uniform01() * 0.5 + 1e-6};
    const KalmanState prior{rng.uniform01(), rng.uniform01() * 0.3 + 1e-9};
    const KalmanStep s = step(prior, p, rng.uniform01());

    const double predicted_var = prior.variance + p.q;
    const double gain = predicted_var / (predicted_var + p.r_meas);
    CHECK(gain > 0.0);
    CHECK(gain < 1.0);
    CHECK(s.state.variance > 0.0);
    CHECK(s.state.variance <= predicted_var);
    CHECK(s.state.variance ==
          doctest::Approx(predicted_var * (1.0 - gain)).epsilon(1e-12));
  }
}

TEST_CASE("step: zero process noise keeps estimates inside the data hull") {
  Rng rng(Rng::derive(23, 3));
  const KalmanParams p{0.0, 0.05};
  const auto meas = white_noise(200, 1.0, rng);
  double lo = meas[0], hi = meas[0];
  KalmanState state{meas[0], p.r_meas};
  for (std::size_t k = 1; k < meas.size(); ++k) {
    lo = std::min(lo, meas[k]);
    hi = std::max(hi, meas[k]);
    state = step(state, p, meas[k]).state;
    CHECK(state.estimate >= lo - 1e-12);
    CHECK(state.estimate <= hi + 1e-12);
  }
}

TEST_CASE("steady_state_variance: fixed point of the variance recursion") {
  Rng rng(Rng::derive(23, 4));
  for (int trial = 0; trial < 50; ++trial) {
    const KalmanParams p{rng.uniform01() * 0.2 + 1e-6,
                         rng.uniform01() * 2.0 + 1e-6};

    double v = p.r_meas;
    for (int i = 0; i < 100000; ++i) {
      const double pred = v + p.q;
      const double next = pred * p.r_meas / (pred + p.r_meas);
      if (std::abs(next - v) < 1e-18) {
        v = next;
        break;
      }
      v = next;
    }
    CHECK(steady_state_variance(p) == doctest::Approx(v).epsilon(1e-9));
  }

  CHECK(steady_state_variance(KalmanParams{0.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(steady_state_variance(KalmanParams{0.1, 0.0}),
                  NonPositiveVariance);
}

TEST_CASE("filter_series: constant series is predicted perfectly") {
  const AlignedSeries s = series_of(std::vector<double>(40, 0.7));
  const Evaluation ev = filter_series(s, KalmanParams{1e-8, 1e-8});
  REQUIRE(ev.predictions.size() == 39);
  for (double pred : ev.predictions) CHECK(pred == 0.7);
  CHECK(ev.stats.rmse == 0.0);
  CHECK(ev.stats.accuracy_pct == 100.0);

  CHECK_THROWS_AS(filter_series(series_of({0.5}), KalmanParams{1e-8, 1e-8}),
                  SeriesTooShort);
}

TEST_CASE("filter_series: history-only baseline loses to the MMSE predictor") {
  SynthConfig cfg;
  cfg.duration_s = 600.0;
  cfg.components = {{{0.8, 0.65, 0.5}, 0.3, 0.0}, {{0.3, 0.4, 0.25}, 0.7, 1.3}};
  cfg.accel_noise_sigma = 0.05;
  cfg.rssi_noise_sigma = 0.05;
  cfg.true_coefficients = {0.72, {0.10, 0.07, 0.04}};
  cfg.seed = 5;

  const GroundTruth gt = ground_truth_series(cfg);
  const Coefficients fit = solve_exact(build_system(gt.series));
  const double mmse_rmse = evaluate(fit, gt.series).stats.rmse;

  const KalmanParams p = calibrate(gt.series);
  const double kalman_rmse = filter_series(gt.series, p).stats.rmse;

  CHECK(kalman_rmse > mmse_rmse);
}
