// SPDX-License-Identifier: Apache-2.0

#include <linkpredict/estimator.hpp>

#include <cmath>
#include <numbers>

#include <linkpredict/errors.hpp>

namespace linkpredict {

namespace {

std::array<bool, 3> dropped_axes(const AlignedSeries& series) {
  std::array<bool, 3> dropped{};
  if (series.normalization) {
    for (int ax = 0; ax < 3; ++ax)
      dropped[ax] = series.normalization->dropped[ax + 1];
  }
  return dropped;
}

}  // namespace

CorrelationSystem build_system(const AlignedSeries& series) {
  if (series.size() < 2) throw SeriesTooShort("build_system needs N >= 2");

  const std::size_t pairs = series.size() - 1;
  const auto& rec = series.records;

  // Regressor vector u[k] = (r[k-1], ax[k], ay[k], az[k]); target r[k].
  double r_cross[4] = {0, 0, 0, 0};
  double e_sum[4][4] = {};
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double u[4] = {rec[k - 1].r, rec[k].accel[0], rec[k].accel[1],
                         rec[k].accel[2]};
    for (int i = 0; i < 4; ++i) {
      r_cross[i] += rec[k].r * u[i];
      for (int j = i; j < 4; ++j) e_sum[i][j] += u[i] * u[j];
    }
  }

  CorrelationSystem sys;
  sys.count = pairs;
  const auto n = static_cast<double>(pairs);
  for (int i = 0; i < 4; ++i) {
    sys.r[i] = r_cross[i] / n;
    for (int j = i; j < 4; ++j) {
      const double value = e_sum[i][j] / n;
      sys.e.at(i, j) = value;
      sys.e.at(j, i) = value;
    }
  }

  const auto dropped = dropped_axes(series);
  for (int ax = 0; ax < 3; ++ax) {
    if (!dropped[ax]) continue;
    const int d = ax + 1;
    for (int j = 0; j < 4; ++j) {
      sys.e.at(d, j) = 0.0;
      sys.e.at(j, d) = 0.0;
    }
    sys.e.at(d, d) = 1.0;
    sys.r[d] = 0.0;
  }
  return sys;
}

SeriesMoments moments(const AlignedSeries& series) {
  if (series.size() < 2) throw SeriesTooShort("moments needs N >= 2");
  const auto& rec = series.records;
  SeriesMoments m;
  for (std::size_t k = 1; k < series.size(); ++k) {
    m.r_t += rec[k].r;
    m.r_prev += rec[k - 1].r;
    m.r_t_sq += rec[k].r * rec[k].r;
    for (int ax = 0; ax < 3; ++ax) m.a[ax] += rec[k].accel[ax];
  }
  const auto n = static_cast<double>(series.size() - 1);
  m.r_t /= n;
  m.r_prev /= n;
  m.r_t_sq /= n;
  for (int ax = 0; ax < 3; ++ax) m.a[ax] /= n;
  return m;
}

Coefficients solve_exact(const CorrelationSystem& system, SolveInfo* info) {
  const Vector a =
      gauss_solve(system.e, Vector(system.r.begin(), system.r.end()), info);
  Coefficients c;
  c.rho = a[0];
  c.alpha = {a[1], a[2], a[3]};
  return c;
}

GdReport solve_gd(const CorrelationSystem& system, const GdConfig& config) {
  GdOptions opt;
  opt.max_iters = config.max_iters;
  opt.grad_tol = config.grad_tol;
  opt.init = config.init;
  opt.rng_seed = config.rng_seed;
  GdResult res = gd_minimize(
      system.e, Vector(system.r.begin(), system.r.end()), opt);

  GdReport report;
  report.coefficients.rho = res.x[0];
  report.coefficients.alpha = {res.x[1], res.x[2], res.x[3]};
  report.iterations = res.iterations;
  report.stop_reason = res.stop_reason;
  report.objective_trace = std::move(res.objective_trace);
  report.grad_norms = std::move(res.grad_norms);
  return report;
}

double predict(const Coefficients& coeffs, double r_prev,
               const std::array<double, 3>& accel) {
  return coeffs.rho * r_prev + coeffs.alpha[0] * accel[0] +
         coeffs.alpha[1] * accel[1] + coeffs.alpha[2] * accel[2];
}

Evaluation evaluate(const Coefficients& coeffs, const AlignedSeries& series) {
  if (series.size() < 2) throw SeriesTooShort("evaluate needs N >= 2");
  const auto& rec = series.records;

  Evaluation ev;
  ev.predictions.reserve(series.size() - 1);
  double sq_sum = 0.0;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double pred = predict(coeffs, rec[k - 1].r, rec[k].accel);
    ev.predictions.push_back(pred);
    const double err = rec[k].r - pred;
    sq_sum += err * err;
  }
  const auto n = static_cast<double>(series.size() - 1);

  const CorrelationSystem sys = build_system(series);
  const SeriesMoments m = moments(series);
  ev.stats = error_stats_theoretical(sys, coeffs, m);
  ev.stats.rmse = std::sqrt(sq_sum / n);
  ev.stats.accuracy_pct = 100.0 * (1.0 - ev.stats.rmse);
  return ev;
}

ErrorStats error_stats_theoretical(const CorrelationSystem& system,
                                   const Coefficients& coeffs,
                                   const SeriesMoments& means) {
  ErrorStats stats;
  stats.mean_error = means.r_t - coeffs.rho * means.r_prev -
                     coeffs.alpha[0] * means.a[0] -
                     coeffs.alpha[1] * means.a[1] -
                     coeffs.alpha[2] * means.a[2];
  double p = means.r_t_sq - coeffs.rho * system.r[0] -
             coeffs.alpha[0] * system.r[1] - coeffs.alpha[1] * system.r[2] -
             coeffs.alpha[2] * system.r[3];
  if (p < 0.0 && p >= -1e-10 * std::max(1.0, means.r_t_sq)) p = 0.0;
  stats.mse_p = p;
  stats.rmse = p > 0.0 ? std::sqrt(p) : 0.0;
  stats.accuracy_pct = 100.0 * (1.0 - stats.rmse);
  return stats;
}

double GaussianDensity::operator()(double r) const {
  const double d = r - mean;
  return std::exp(-d * d / (2.0 * variance)) /
         std::sqrt(2.0 * std::numbers::pi * variance);
}

GaussianDensity conditional_density(const Coefficients& coeffs, double p,
                                    double r_prev,
                                    const std::array<double, 3>& accel) {
  if (!(p > 0.0)) throw NonPositiveVariance(p);
  return GaussianDensity{predict(coeffs, r_prev, accel), p};
}

}  // namespace linkpredict
