// SPDX-License-Identifier: Apache-2.0

#include <linkpredict/synth.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <linkpredict/errors.hpp>
#include <linkpredict/rng.hpp>

namespace linkpredict {

namespace {

constexpr double kDbmLow = -100.0;
constexpr double kDbmHigh = -30.0;

void validate(const SynthConfig& config) {
  if (!(config.duration_s > 0.0)) throw InvalidConfig("duration must be > 0");
  if (!(config.imu_rate_hz > 0.0)) throw InvalidConfig("imu_rate must be > 0");
  if (!(config.rssi_rate_hz > 0.0))
    throw InvalidConfig("rssi_rate must be > 0");
  if (config.accel_noise_sigma < 0.0 || config.rssi_noise_sigma < 0.0)
    throw InvalidConfig("noise sigmas must be >= 0");
  for (const auto& c : config.components) {
    if (c.frequency_hz < 0.0)
      throw InvalidConfig("wave frequency must be >= 0");
  }
  if (config.mode == SynthMode::PathLoss) {
    if (!config.pathloss) throw InvalidConfig("PathLoss mode needs a scene");
    if (!(config.pathloss->params.exponent > 0.0))
      throw InvalidConfig("path-loss exponent must be > 0");
    if (!(config.pathloss->base_distance_m > 0.0))
      throw InvalidConfig("base distance must be > 0");
  }
}

std::int64_t sample_time_ms(std::size_t k, double rate_hz) {
  return std::llround(1000.0 * static_cast<double>(k) / rate_hz);
}

std::size_t sample_count(double duration_s, double rate_hz) {
  const auto n = std::llround(duration_s * rate_hz);
  if (n < 1) throw InvalidConfig("duration too short for the sample rate");
  return static_cast<std::size_t>(n);
}

std::size_t nearest_index(const std::vector<ImuSample>& motion,
                          std::int64_t t_ms) {
  auto it = std::lower_bound(
      motion.begin(), motion.end(), t_ms,
      [](const ImuSample& s, std::int64_t v) { return s.t_ms < v; });
  if (it == motion.end()) return motion.size() - 1;
  std::size_t idx = static_cast<std::size_t>(it - motion.begin());
  if (it != motion.begin() &&
      t_ms - (it - 1)->t_ms <= it->t_ms - t_ms)
    --idx;
  return idx;
}

struct LinearTrace {
  std::vector<std::int64_t> t_ms;
  std::vector<double> r_norm;
  std::vector<std::array<double, 3>> a_norm;
};

// The shared LinearModel recursion; generate_rssi_linear encodes r_norm to
// dBm and ground_truth_series wraps it as an AlignedSeries.
LinearTrace linear_recursion(const SynthConfig& config,
                             const std::vector<ImuSample>& motion) {
  if (config.mode != SynthMode::LinearModel)
    throw InvalidConfig("generator mode is not LinearModel");
  if (motion.empty()) throw EmptyInput("generate_rssi_linear: motion");

  std::array<double, 3> lo{}, hi{};
  for (int ax = 0; ax < 3; ++ax) {
    lo[ax] = motion[0].accel[ax];
    hi[ax] = motion[0].accel[ax];
  }
  for (const auto& s : motion) {
    for (int ax = 0; ax < 3; ++ax) {
      lo[ax] = std::min(lo[ax], s.accel[ax]);
      hi[ax] = std::max(hi[ax], s.accel[ax]);
    }
  }

  const std::size_t n = sample_count(config.duration_s, config.rssi_rate_hz);
  const Coefficients& c = config.true_coefficients;
  Rng rng(Rng::derive(config.seed, 1));

  LinearTrace trace;
  trace.t_ms.resize(n);
  trace.r_norm.resize(n);
  trace.a_norm.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    trace.t_ms[k] = sample_time_ms(k, config.rssi_rate_hz);
    const auto& accel = motion[nearest_index(motion, trace.t_ms[k])].accel;
    for (int ax = 0; ax < 3; ++ax) {
      const double span = hi[ax] - lo[ax];
      trace.a_norm[k][ax] = span > 0.0 ? (accel[ax] - lo[ax]) / span : 0.0;
    }
    if (k == 0) {
      trace.r_norm[0] = 0.5;
      continue;
    }
    double v = c.rho * trace.r_norm[k - 1] +
               c.alpha[0] * trace.a_norm[k][0] +
               c.alpha[1] * trace.a_norm[k][1] +
               c.alpha[2] * trace.a_norm[k][2];
    if (config.rssi_noise_sigma > 0.0)
      v += rng.normal(0.0, config.rssi_noise_sigma);
    trace.r_norm[k] = std::clamp(v, 0.0, 1.0);
  }
  return trace;
}

}  // namespace

std::vector<ImuSample> generate_motion(const SynthConfig& config) {
  validate(config);
  const std::size_t n = sample_count(config.duration_s, config.imu_rate_hz);
  Rng rng(Rng::derive(config.seed, 0));

  std::vector<ImuSample> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / config.imu_rate_hz;
    ImuSample& s = out[k];
    s.t_ms = sample_time_ms(k, config.imu_rate_hz);
    for (int ax = 0; ax < 3; ++ax) {
      double v = 0.0;
      for (const auto& comp : config.components)
        v += comp.amplitude[ax] *
             std::sin(2.0 * std::numbers::pi * comp.frequency_hz * t +
                      comp.phase);
      if (config.accel_noise_sigma > 0.0)
        v += rng.normal(0.0, config.accel_noise_sigma);
      s.accel[ax] = v;
    }
  }
  return out;
}

std::vector<RssiSample> generate_rssi_linear(
    const SynthConfig& config, const std::vector<ImuSample>& motion) {
  validate(config);
  const LinearTrace trace = linear_recursion(config, motion);
  std::vector<RssiSample> out(trace.r_norm.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].t_ms = trace.t_ms[k];
    out[k].rssi_dbm = kDbmLow + (kDbmHigh - kDbmLow) * trace.r_norm[k];
    out[k].seq = static_cast<std::int64_t>(k) + 1;
  }
  return out;
}

std::vector<RssiSample> generate_rssi_pathloss(
    const SynthConfig& config, const std::vector<ImuSample>& motion) {
  validate(config);
  if (config.mode != SynthMode::PathLoss)
    throw InvalidConfig("generator mode is not PathLoss");
  if (motion.empty()) throw EmptyInput("generate_rssi_pathloss: motion");

  // Double trapezoidal integration of |a| on the IMU grid.
  const std::size_t m = motion.size();
  std::vector<double> disp(m, 0.0);
  {
    std::vector<double> mag(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = motion[i].accel;
      mag[i] = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    }
    double vel = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      const double dt =
          static_cast<double>(motion[i].t_ms - motion[i - 1].t_ms) / 1000.0;
      const double vel_next = vel + 0.5 * (mag[i - 1] + mag[i]) * dt;
      disp[i] = disp[i - 1] + 0.5 * (vel + vel_next) * dt;
      vel = vel_next;
    }
  }

  const PathLossScene& scene = *config.pathloss;
  const std::size_t n = sample_count(config.duration_s, config.rssi_rate_hz);
  const double noise_db = 70.0 * config.rssi_noise_sigma;
  Rng rng(Rng::derive(config.seed, 2));

  std::vector<RssiSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t t_ms = sample_time_ms(k, config.rssi_rate_hz);
    const double t = static_cast<double>(t_ms) / 1000.0;
    const double distance = scene.base_distance_m +
                            scene.drift_velocity_mps * t +
                            disp[nearest_index(motion, t_ms)];
    if (!(distance > 0.0)) break;  // drifted into the transmitter; truncate
    double p_rx = received_power(scene.params, scene.p_tx_dbm, distance);
    if (noise_db > 0.0) p_rx += rng.normal(0.0, noise_db);
    RssiSample s;
    s.t_ms = t_ms;
    s.rssi_dbm = std::clamp(p_rx, -150.0, 30.0);  // receiver clipping
    s.seq = static_cast<std::int64_t>(k) + 1;
    s.tx_dbm = scene.p_tx_dbm;
    out.push_back(s);
  }
  if (out.empty()) throw NonPositiveDistance(scene.base_distance_m);
  return out;
}

GroundTruth ground_truth_series(const SynthConfig& config) {
  validate(config);
  const auto motion = generate_motion(config);
  const LinearTrace trace = linear_recursion(config, motion);

  GroundTruth gt;
  gt.coefficients = config.true_coefficients;
  gt.series.normalized = true;

  NormalizationParams params;
  params.min[0] = kDbmLow;
  params.max[0] = kDbmHigh;
  std::array<double, 3> lo{}, hi{};
  for (int ax = 0; ax < 3; ++ax) {
    lo[ax] = motion[0].accel[ax];
    hi[ax] = motion[0].accel[ax];
  }
  for (const auto& s : motion) {
    for (int ax = 0; ax < 3; ++ax) {
      lo[ax] = std::min(lo[ax], s.accel[ax]);
      hi[ax] = std::max(hi[ax], s.accel[ax]);
    }
  }
  for (int ax = 0; ax < 3; ++ax) {
    params.min[ax + 1] = lo[ax];
    params.max[ax + 1] = hi[ax];
    params.dropped[ax + 1] = !(hi[ax] > lo[ax]);
  }
  gt.series.normalization = params;

  gt.series.records.resize(trace.r_norm.size());
  for (std::size_t k = 0; k < trace.r_norm.size(); ++k) {
    gt.series.records[k] =
        AlignedRecord{trace.t_ms[k], trace.r_norm[k], trace.a_norm[k]};
  }
  if (gt.series.records.size() >= 2) {
    const double span = static_cast<double>(gt.series.records.back().t_ms -
                                            gt.series.records.front().t_ms);
    gt.series.period_ms =
        span / static_cast<double>(gt.series.records.size() - 1);
  }
  return gt;
}

SynthConfig preset(const std::string& name) {
  SynthConfig config;
  config.duration_s = 600.0;
  config.imu_rate_hz = 10.0;
  config.accel_noise_sigma = 0.05;
  config.rssi_noise_sigma = 0.05;
  config.true_coefficients = Coefficients{0.72, {0.10, 0.07, 0.04}};
  config.mode = SynthMode::LinearModel;
  if (name == "southbeach") {
    // Big, slow waves; CC2538-style 10 pkt/s link.
    config.rssi_rate_hz = 10.0;
    config.components = {
        {{0.80, 0.64, 0.48}, 0.2, 0.0},
        {{0.24, 0.32, 0.20}, 0.5, 1.3},
        {{0.10, 0.14, 0.24}, 0.9, 2.1},
    };
  } else if (name == "crandon") {
    // Smaller, faster waves; CC1200-style 2 pkt/s link.
    config.rssi_rate_hz = 2.0;
    config.components = {
        {{0.40, 0.32, 0.24}, 0.6, 0.0},
        {{0.12, 0.16, 0.10}, 1.4, 1.3},
        {{0.05, 0.07, 0.12}, 2.2, 2.1},
    };
  } else {
    throw InvalidConfig("unknown preset '" + name + "'");
  }
  return config;
}

}  // namespace linkpredict
