// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "linkpredict/estimator.hpp"
#include "linkpredict/distfit.hpp"
#include "linkpredict/kalman.hpp"
#include "linkpredict/radio.hpp"
#include "linkpredict/synth.hpp"
#include "linkpredict/trace.hpp"

namespace linkpredict {

// Ingest settings carried alongside a series document so downstream
// commands can report how the series was produced.
struct SeriesMeta {
  std::size_t window = 1;
  double overlap = 0.5;
  std::int64_t tolerance_ms = 60;
};

struct SeriesDoc {
  AlignedSeries series;
  SeriesMeta meta;
};

struct EvalReport {
  ErrorStats mmse;
  std::optional<ErrorStats> kalman;
  std::optional<KalmanParams> kalman_params;
};

// JSON (schema is stable; unknown fields are ignored on read)
std::string coefficients_to_json(const Coefficients& coef);
Coefficients coefficients_from_json(const std::string& text);

std::string gd_report_to_json(const GdReport& report);

std::string error_stats_to_json(const ErrorStats& stats);
std::string eval_report_to_json(const EvalReport& report);

std::string kalman_params_to_json(const KalmanParams& params);
KalmanParams kalman_params_from_json(const std::string& text);

std::string profile_to_json(const RadioProfile& profile);
RadioProfile profile_from_json(const std::string& text);

std::string synth_config_to_json(const SynthConfig& config);
SynthConfig synth_config_from_json(const std::string& text);

std::string series_to_json(const SeriesDoc& doc);
SeriesDoc series_from_json(const std::string& text);

std::string stop_reason_name(GdStop reason);

// CSV. `comment`, when non-empty, is emitted verbatim as a leading
// '#' line so readers skip it.
std::string imu_to_csv(const std::vector<ImuSample>& samples,
                       const std::string& comment = "");
std::string rssi_to_csv(const std::vector<RssiSample>& samples,
                        const std::string& comment = "");
std::string predictions_to_csv(const AlignedSeries& series,
                               const std::vector<double>& predictions,
                               const std::vector<double>* kalman_predictions = nullptr,
                               const std::string& comment = "");
std::string histogram_to_csv(const Histogram& hist,
                             const std::string& comment = "");
std::string quantile_map_to_csv(const QuantileMap& map,
                                const std::string& comment = "");

// Shortest decimal string that round-trips the value.
std::string format_double(double value);

// Writes to a temp file in the target directory, then renames over
// the destination so readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace linkpredict
