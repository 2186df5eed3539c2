// SPDX-License-Identifier: Apache-2.0
// Empirical distribution analysis: histograms, empirical CDFs, quantile
// mapping between two samples, and an OLS linearity score for the mapped
// quantile pairs.

#pragma once

#include <cstddef>
#include <vector>

namespace linkpredict {

struct Histogram {
  std::vector<double> edges;       // ascending, length bins + 1
  std::vector<std::size_t> counts; // length bins
  std::size_t total = 0;
};

struct Ecdf {
  std::vector<double> sorted;  // ascending sample values

  // F(x) = #(samples <= x) / N.
  double operator()(double x) const;
};

struct QuantileMap {
  std::vector<double> levels;
  std::vector<double> qx;
  std::vector<double> qy;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Equal-width bins spanning [min, max]; half-open [e_k, e_{k+1}) with the
// final bin closed. A constant input spans [min, min + 1] so the bins stay
// well-formed.
Histogram histogram(const std::vector<double>& values, std::size_t bins);

Ecdf ecdf(std::vector<double> values);

// Type-1 (lower) empirical quantile: sorted[clamp(ceil(p*N) - 1, 0, N-1)].
double quantile(const Ecdf& e, double p);

// 99 levels 0.01..0.99 when `levels` is empty at the call site's discretion.
std::vector<double> default_levels();

QuantileMap quantile_map(const Ecdf& x, const Ecdf& y,
                         const std::vector<double>& levels);

// OLS line through (qx, qy); needs >= 3 points.
LineFit linearity_score(const QuantileMap& map);

}  // namespace linkpredict
