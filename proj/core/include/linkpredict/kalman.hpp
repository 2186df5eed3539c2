// SPDX-License-Identifier: Apache-2.0
// Scalar Kalman-filter baseline on a random-walk state model. The filter
// predicts RSSI from its own history only; it is the comparison point for
// the acceleration-aware MMSE predictor.

#pragma once

#include <linkpredict/estimator.hpp>
#include <linkpredict/trace.hpp>

namespace linkpredict {

struct KalmanParams {
  double q = 0.0;       // process-noise variance
  double r_meas = 0.0;  // measurement-noise variance, > 0
};

struct KalmanState {
  double estimate = 0.0;
  double variance = 0.0;
};

struct KalmanStep {
  KalmanState state;
  double prediction = 0.0;  // prior estimate, before the update
};

// Moving-average decomposition over the calibration prefix: r_meas is the
// variance of (value - centered 5-point moving average); q is the mean
// square of the moving average's first differences, uncentered so that slow
// ramps register as process noise. Both floor at 1e-8.
KalmanParams calibrate(const AlignedSeries& series,
                       double calib_fraction = 0.3);

// Predict (variance += q, prediction = estimate), then update with the
// measurement (gain = v/(v + r_meas)).
KalmanStep step(KalmanState state, const KalmanParams& params,
                double measurement);

// One-step-ahead predictions for k = 1..N-1; initial state is
// (first sample, r_meas).
Evaluation filter_series(const AlignedSeries& series,
                         const KalmanParams& params);

// Positive root of v^2 + q v - q r_meas = 0, the fixed point of the
// post-update variance recursion.
double steady_state_variance(const KalmanParams& params);

}  // namespace linkpredict
