// SPDX-License-Identifier: Apache-2.0
// Ingestion of raw IMU and RSSI streams: CSV parsing, sliding-window
// downsampling, nearest-neighbor time alignment, and max/min normalization
// into the estimator's input form.

#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace linkpredict {

struct ImuSample {
  std::int64_t t_ms = 0;
  std::array<double, 3> accel{};          // m/s^2
  std::optional<std::array<double, 3>> gyro;  // deg/s, parsed but unused
};

struct RssiSample {
  std::int64_t t_ms = 0;
  double rssi_dbm = 0.0;  // within [-150, +30]
  std::int64_t seq = 0;   // non-decreasing, gaps allowed
  std::optional<double> tx_dbm;
};

enum class Channel { Rssi = 0, Ax = 1, Ay = 2, Az = 3 };

Channel channel_from_name(const std::string& name);
const char* channel_name(Channel c);

struct NormalizationParams {
  std::array<double, 4> min{};  // indexed by Channel
  std::array<double, 4> max{};
  // Constant acceleration axes are excluded from the model (their normalized
  // values are forced to 0 and the estimator gives them a zero coefficient).
  std::array<bool, 4> dropped{};
};

struct AlignedRecord {
  std::int64_t t_ms = 0;
  double r = 0.0;
  std::array<double, 3> accel{};
};

struct AlignedSeries {
  std::vector<AlignedRecord> records;
  double period_ms = 0.0;  // mean timestamp gap
  bool normalized = false;
  bool differenced = false;
  std::optional<NormalizationParams> normalization;
  std::size_t dropped_rssi = 0;  // RSSI samples without an IMU partner

  std::size_t size() const { return records.size(); }
};

// CSV headers: `t_ms,ax,ay,az[,gx,gy,gz]` and `t_ms,rssi_dbm,seq[,tx_dbm]`.
// A `t_s` first column holds seconds and is converted to integer milliseconds
// with round-half-even. Lines starting with '#' are skipped. Errors carry
// 1-based physical line numbers.
std::vector<ImuSample> parse_imu_csv(std::istream& source);
std::vector<RssiSample> parse_rssi_csv(std::istream& source);

// Per-axis arithmetic mean over sliding windows; hop = round(window*(1-overlap)),
// floored at 1. Output timestamp = mean of window timestamps. Output length is
// floor((N - window)/hop) + 1 for N >= window, else 0.
std::vector<ImuSample> downsample_imu(const std::vector<ImuSample>& samples,
                                      std::size_t window = 10,
                                      double overlap = 0.5);

// Pairs each RSSI sample with the nearest IMU sample within +/- tolerance.
// Each IMU sample pairs at most once: the nearest RSSI wins, the earlier one
// on ties; losers are dropped and counted. Throws NoOverlap on zero pairs.
AlignedSeries align(const std::vector<RssiSample>& rssi,
                    const std::vector<ImuSample>& imu,
                    std::int64_t tolerance_ms = 60);

struct NormalizeResult {
  AlignedSeries series;
  NormalizationParams params;
};

// (v - min)/(max - min) per channel. A constant RSSI channel is an error; a
// constant acceleration axis is dropped (see NormalizationParams).
NormalizeResult normalize(const AlignedSeries& series);

double denormalize(double value, Channel channel,
                   const NormalizationParams& params);

// First differences of every channel; length N-1, `differenced` flag set.
// Applied before normalization when requested.
AlignedSeries difference(const AlignedSeries& series);

}  // namespace linkpredict
