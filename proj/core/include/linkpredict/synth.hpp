// SPDX-License-Identifier: Apache-2.0
// Deterministic synthetic trace generator: wave-like 3D acceleration plus an
// RSSI series with known ground truth. Two modes: LinearModel runs the
// prediction model forward (exact oracle for the estimator); PathLoss derives
// RSSI from physical displacement (the linear model is only approximate).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <linkpredict/estimator.hpp>
#include <linkpredict/radio.hpp>
#include <linkpredict/trace.hpp>

namespace linkpredict {

struct WaveComponent {
  std::array<double, 3> amplitude{};  // per axis, m/s^2
  double frequency_hz = 0.0;
  double phase = 0.0;
};

struct PathLossScene {
  PathLossParams params;
  double p_tx_dbm = 0.0;
  double base_distance_m = 10.0;
  double drift_velocity_mps = 0.0;
};

enum class SynthMode { LinearModel, PathLoss };

struct SynthConfig {
  double duration_s = 60.0;
  double imu_rate_hz = 10.0;
  double rssi_rate_hz = 10.0;
  std::vector<WaveComponent> components;
  double accel_noise_sigma = 0.0;
  Coefficients true_coefficients{};
  double rssi_noise_sigma = 0.0;  // normalized units
  SynthMode mode = SynthMode::LinearModel;
  std::optional<PathLossScene> pathloss;
  std::uint64_t seed = 42;
};

// accel(t) = sum_i amplitude_i * sin(2 pi f_i t + phase_i) + N(0, sigma_a)
// per axis, sampled at imu_rate.
std::vector<ImuSample> generate_motion(const SynthConfig& config);

// Runs the prediction model forward on max/min-normalized acceleration (the
// same transform the ingest pipeline applies, so fitted and generating
// coefficients share coordinates):
//   r[k] = clamp(rho r[k-1] + alpha . a_norm[k] + N(0, sigma_r), 0, 1),
// r[0] = 0.5, then maps to dBm by the fixed affine range [-100, -30].
std::vector<RssiSample> generate_rssi_linear(
    const SynthConfig& config, const std::vector<ImuSample>& motion);

// Distance = base + drift * t + double trapezoidal integral of |a|; RSSI from
// the path-loss law plus Gaussian noise of 70 * rssi_noise_sigma dB (the
// fixed dBm span of one normalized unit). Generation truncates where drift
// drives the distance to zero or below.
std::vector<RssiSample> generate_rssi_pathloss(
    const SynthConfig& config, const std::vector<ImuSample>& motion);

struct GroundTruth {
  AlignedSeries series;  // normalized, on the generator's own fixed map
  Coefficients coefficients;
};

// The LinearModel recursion's own normalized series, bit-identical to what
// generate_rssi_linear encodes into dBm. Unit-level oracle: fitting this
// series at zero noise recovers the generating coefficients exactly; the
// CSV pipeline re-normalizes by observed extremes and is compared at looser
// tolerances.
GroundTruth ground_truth_series(const SynthConfig& config);

// Named sea states: "southbeach" (big, slow waves; 10 pkt/s radio) and
// "crandon" (small, fast waves; 2 pkt/s radio).
SynthConfig preset(const std::string& name);

}  // namespace linkpredict
