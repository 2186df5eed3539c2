// SPDX-License-Identifier: Apache-2.0

#include <linkpredict/kalman.hpp>

#include <algorithm>
#include <cmath>

#include <linkpredict/errors.hpp>

namespace linkpredict {

namespace {
constexpr double kNoiseFloor = 1e-8;
constexpr std::size_t kMaWindow = 5;
}  // namespace

KalmanParams calibrate(const AlignedSeries& series, double calib_fraction) {
  if (!(calib_fraction > 0.0 && calib_fraction <= 0.5))
    throw InvalidConfig("calib_fraction must be in (0, 0.5]");
  const auto prefix = static_cast<std::size_t>(
      std::floor(calib_fraction * static_cast<double>(series.size())));
  if (prefix < 10) throw SeriesTooShort("calibration prefix < 10 samples");

  // Centered moving average over full windows only.
  const std::size_t half = kMaWindow / 2;
  std::vector<double> ma;
  ma.reserve(prefix);
  for (std::size_t k = half; k + half < prefix; ++k) {
    double s = 0.0;
    for (std::size_t i = k - half; i <= k + half; ++i)
      s += series.records[i].r;
    ma.push_back(s / static_cast<double>(kMaWindow));
  }

  double resid_sum = 0.0, resid_sq = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const double resid = series.records[i + half].r - ma[i];
    resid_sum += resid;
    resid_sq += resid * resid;
  }
  const auto n = static_cast<double>(ma.size());
  const double resid_mean = resid_sum / n;
  const double r_meas = resid_sq / n - resid_mean * resid_mean;

  double diff_sq = 0.0;
  for (std::size_t i = 1; i < ma.size(); ++i) {
    const double d = ma[i] - ma[i - 1];
    diff_sq += d * d;
  }
  const double q = diff_sq / static_cast<double>(ma.size() - 1);

  return KalmanParams{std::max(q, kNoiseFloor), std::max(r_meas, kNoiseFloor)};
}

KalmanStep step(KalmanState state, const KalmanParams& params,
                double measurement) {
  state.variance += params.q;
  const double prediction = state.estimate;

  const double gain = state.variance / (state.variance + params.r_meas);
  state.estimate += gain * (measurement - state.estimate);
  state.variance *= (1.0 - gain);
  return KalmanStep{state, prediction};
}

Evaluation filter_series(const AlignedSeries& series,
                         const KalmanParams& params) {
  if (series.size() < 2) throw SeriesTooShort("filter_series needs N >= 2");

  KalmanState state{series.records[0].r, params.r_meas};
  Evaluation ev;
  ev.predictions.reserve(series.size() - 1);
  double err_sum = 0.0, sq_sum = 0.0;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const KalmanStep s = step(state, params, series.records[k].r);
    state = s.state;
    ev.predictions.push_back(s.prediction);
    const double err = series.records[k].r - s.prediction;
    err_sum += err;
    sq_sum += err * err;
  }
  const auto n = static_cast<double>(series.size() - 1);
  ev.stats.mean_error = err_sum / n;
  ev.stats.mse_p = sq_sum / n;
  ev.stats.rmse = std::sqrt(ev.stats.mse_p);
  ev.stats.accuracy_pct = 100.0 * (1.0 - ev.stats.rmse);
  return ev;
}

double steady_state_variance(const KalmanParams& params) {
  if (!(params.r_meas > 0.0)) throw NonPositiveVariance(params.r_meas);
  const double q = params.q;
  return 0.5 * (-q + std::sqrt(q * q + 4.0 * q * params.r_meas));
}

}  // namespace linkpredict
