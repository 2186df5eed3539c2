// SPDX-License-Identifier: Apache-2.0

#include <linkpredict/distfit.hpp>

#include <algorithm>
#include <cmath>

#include <linkpredict/errors.hpp>

namespace linkpredict {

Histogram histogram(const std::vector<double>& values, std::size_t bins) {
  if (values.empty()) throw EmptyInput("histogram");
  if (bins == 0) throw InvalidConfig("histogram needs bins >= 1");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (lo == hi) hi = lo + 1.0;

  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i)
    h.edges[i] = lo + width * static_cast<double>(i);
  h.edges[bins] = hi;
  h.counts.assign(bins, 0);

  for (double v : values) {
    auto idx = static_cast<std::size_t>((v - lo) / width);
    if (idx >= bins) idx = bins - 1;  // closes the final bin
    // Edge values can land one bin high from fp division; snap to the
    // half-open convention.
    while (idx > 0 && v < h.edges[idx]) --idx;
    if (idx + 1 < bins && v >= h.edges[idx + 1]) ++idx;
    ++h.counts[idx];
  }
  h.total = values.size();
  return h;
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) /
         static_cast<double>(sorted.size());
}

Ecdf ecdf(std::vector<double> values) {
  if (values.empty()) throw EmptyInput("ecdf");
  std::sort(values.begin(), values.end());
  return Ecdf{std::move(values)};
}

double quantile(const Ecdf& e, double p) {
  const auto n = static_cast<double>(e.sorted.size());
  auto idx = static_cast<std::ptrdiff_t>(std::ceil(p * n)) - 1;
  idx = std::clamp<std::ptrdiff_t>(idx, 0,
                                   static_cast<std::ptrdiff_t>(n) - 1);
  return e.sorted[static_cast<std::size_t>(idx)];
}

std::vector<double> default_levels() {
  std::vector<double> levels(99);
  for (int i = 0; i < 99; ++i) levels[i] = (i + 1) / 100.0;
  return levels;
}

QuantileMap quantile_map(const Ecdf& x, const Ecdf& y,
                         const std::vector<double>& levels) {
  if (levels.empty()) throw EmptyLevels();
  QuantileMap map;
  map.levels = levels;
  map.qx.reserve(levels.size());
  map.qy.reserve(levels.size());
  for (double p : levels) {
    if (!(p > 0.0 && p < 1.0))
      throw InvalidConfig("quantile level outside (0, 1)");
    map.qx.push_back(quantile(x, p));
    map.qy.push_back(quantile(y, p));
  }
  return map;
}

LineFit linearity_score(const QuantileMap& map) {
  const std::size_t n = map.qx.size();
  if (n < 3) throw TooFewPoints("linearity_score needs >= 3 map points");

  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += map.qx[i];
    sy += map.qy[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = map.qx[i] - mx;
    const double dy = map.qy[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  LineFit fit;
  if (sxx == 0.0) {
    // Degenerate vertical stack; report a flat line through the mean.
    fit.slope = 0.0;
    fit.intercept = my;
    fit.r_squared = syy == 0.0 ? 1.0 : 0.0;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;  // constant y is fit exactly by the horizontal line
  } else {
    const double ss_res = syy - fit.slope * sxy;
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

}  // namespace linkpredict
