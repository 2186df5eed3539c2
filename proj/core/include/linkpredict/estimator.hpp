// SPDX-License-Identifier: Apache-2.0
// MMSE machinery: lag-1 correlation system, exact and gradient-descent
// solvers, one-step prediction, error statistics, and the conditional
// density of the predicted RSSI.
//
// Model: r(t) = rho * r(t-1) + alpha_x * ax(t) + alpha_y * ay(t)
//             + alpha_z * az(t) + e(t), on normalized series. The optimal
// coefficients A = (rho, alpha) solve the normal equations R = E * A, where
// R and E collect sample cross-correlations over the N-1 lag-1 pairs.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <linkpredict/linalg.hpp>
#include <linkpredict/trace.hpp>

namespace linkpredict {

struct Coefficients {
  double rho = 0.0;
  std::array<double, 3> alpha{};
};

struct CorrelationSystem {
  Matrix e{4};                 // symmetric regressor correlations
  std::array<double, 4> r{};   // (R_r, R_x, R_y, R_z)
  std::size_t count = 0;       // lag-1 pairs used
};

// Sample means over the same lag-1 pairs, for the closed-form error stats.
struct SeriesMoments {
  double r_t = 0.0;             // E[r(t)]
  double r_prev = 0.0;          // E[r(t-1)]
  std::array<double, 3> a{};    // E[a(t)]
  double r_t_sq = 0.0;          // E[r(t)^2]
};

struct ErrorStats {
  double mean_error = 0.0;
  double mse_p = 0.0;  // the optimal mean square error P
  double rmse = 0.0;
  double accuracy_pct = 0.0;  // 100 * (1 - rmse), normalized scale
};

struct Evaluation {
  ErrorStats stats;
  // predictions[k-1] is the one-step-ahead prediction of records[k],
  // k = 1..N-1, always fed the observed (not predicted) r[k-1].
  std::vector<double> predictions;
};

struct GdConfig {
  std::size_t max_iters = 1000;
  double grad_tol = 1e-9;
  GdInit init = GdInit::Zero;
  std::uint64_t rng_seed = 42;
};

struct GdReport {
  Coefficients coefficients;
  std::size_t iterations = 0;
  GdStop stop_reason = GdStop::MaxIters;
  std::vector<double> objective_trace;  // length iterations + 1
  std::vector<double> grad_norms;       // length iterations + 1
};

// Sample-mean correlations over lag-1 pairs. Acceleration axes dropped by
// normalization get a unit diagonal and zero couplings, which pins their
// coefficient to zero without making E singular.
CorrelationSystem build_system(const AlignedSeries& series);
SeriesMoments moments(const AlignedSeries& series);

// A = E^-1 R by pivoted Gaussian elimination. `info`, when given, receives
// the condition estimate and the ill-conditioning flag (> 1e8).
Coefficients solve_exact(const CorrelationSystem& system,
                         SolveInfo* info = nullptr);

GdReport solve_gd(const CorrelationSystem& system, const GdConfig& config);

// Raw model output, not clamped to [0, 1].
double predict(const Coefficients& coeffs, double r_prev,
               const std::array<double, 3>& accel);

Evaluation evaluate(const Coefficients& coeffs, const AlignedSeries& series);

// mean_error = E[r(t)] - rho E[r(t-1)] - alpha . E[a(t)]
// P = E[r(t)^2] - rho R_r - alpha . (R_x, R_y, R_z); tiny negative P from
// rounding is clamped to zero.
ErrorStats error_stats_theoretical(const CorrelationSystem& system,
                                   const Coefficients& coeffs,
                                   const SeriesMoments& means);

struct GaussianDensity {
  double mean = 0.0;
  double variance = 0.0;

  double operator()(double r) const;
};

// Normalized Gaussian over the next RSSI value: mean = predict(...),
// variance = P. Throws NonPositiveVariance when P <= 0.
GaussianDensity conditional_density(const Coefficients& coeffs, double p,
                                    double r_prev,
                                    const std::array<double, 3>& accel);

}  // namespace linkpredict
