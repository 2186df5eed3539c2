// SPDX-License-Identifier: Apache-2.0

#include "linkpredict/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "linkpredict/errors.hpp"

namespace linkpredict {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidConfig(ex.what());
  }
}

Json coefficients_json(const Coefficients& c) {
  Json j;
  j["rho"] = c.rho;
  j["alpha_x"] = c.alpha[0];
  j["alpha_y"] = c.alpha[1];
  j["alpha_z"] = c.alpha[2];
  return j;
}

Coefficients coefficients_from(const Json& j) {
  Coefficients c;
  c.rho = j.at("rho").get<double>();
  c.alpha[0] = j.at("alpha_x").get<double>();
  c.alpha[1] = j.at("alpha_y").get<double>();
  c.alpha[2] = j.at("alpha_z").get<double>();
  return c;
}

Json error_stats_json(const ErrorStats& s) {
  Json j;
  j["mean_error"] = s.mean_error;
  j["mse_P"] = s.mse_p;
  j["rmse"] = s.rmse;
  j["accuracy_pct"] = s.accuracy_pct;
  return j;
}

Json kalman_params_json(const KalmanParams& p) {
  Json j;
  j["q"] = p.q;
  j["r_meas"] = p.r_meas;
  return j;
}

void append_row(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& cell : cells) {
    if (!first) out += ',';
    out += cell;
    first = false;
  }
  out += '\n';
}

std::string csv_header(const std::string& comment) {
  if (comment.empty()) return {};
  return "# " + comment + "\n";
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw NumericError("cannot format double");
  return std::string(buf, ptr);
}

std::string stop_reason_name(GdStop reason) {
  switch (reason) {
    case GdStop::MaxIters: return "max_iters";
    case GdStop::GradTol: return "grad_tol";
    case GdStop::ZeroCurvature: return "zero_curvature";
  }
  throw InvalidConfig("unknown stop reason");
}

std::string coefficients_to_json(const Coefficients& coef) {
  return dump(coefficients_json(coef));
}

Coefficients coefficients_from_json(const std::string& text) {
  try {
    return coefficients_from(parse(text));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidConfig(ex.what());
  }
}

std::string gd_report_to_json(const GdReport& report) {
  Json j;
  j["coefficients"] = coefficients_json(report.coefficients);
  j["iterations"] = report.iterations;
  j["stop_reason"] = stop_reason_name(report.stop_reason);
  j["objective_trace"] = report.objective_trace;
  j["grad_norms"] = report.grad_norms;
  return dump(j);
}

std::string error_stats_to_json(const ErrorStats& stats) {
  return dump(error_stats_json(stats));
}

std::string eval_report_to_json(const EvalReport& report) {
  Json j;
  j["mmse"] = error_stats_json(report.mmse);
  if (report.kalman) j["kalman"] = error_stats_json(*report.kalman);
  if (report.kalman_params)
    j["kalman_params"] = kalman_params_json(*report.kalman_params);
  return dump(j);
}

std::string kalman_params_to_json(const KalmanParams& params) {
  return dump(kalman_params_json(params));
}

KalmanParams kalman_params_from_json(const std::string& text) {
  try {
    Json j = parse(text);
    KalmanParams p;
    p.q = j.at("q").get<double>();
    p.r_meas = j.at("r_meas").get<double>();
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidConfig(ex.what());
  }
}

std::string profile_to_json(const RadioProfile& profile) {
  Json j;
  j["name"] = profile.name;
  j["sensitivity_dbm"] = profile.sensitivity_dbm;
  j["tx_min_dbm"] = profile.tx_min_dbm;
  j["tx_max_dbm"] = profile.tx_max_dbm;
  j["band"] = profile.band;
  j["rate_pps"] = profile.rate_pps;
  return dump(j);
}

RadioProfile profile_from_json(const std::string& text) {
  try {
    Json j = parse(text);
    RadioProfile p;
    p.name = j.at("name").get<std::string>();
    p.sensitivity_dbm = j.at("sensitivity_dbm").get<double>();
    p.tx_min_dbm = j.at("tx_min_dbm").get<double>();
    p.tx_max_dbm = j.at("tx_max_dbm").get<double>();
    p.band = j.value("band", std::string{});
    p.rate_pps = j.value("rate_pps", 0.0);
    if (p.tx_min_dbm > p.tx_max_dbm)
      throw InvalidConfig("tx_min_dbm exceeds tx_max_dbm");
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidConfig(ex.what());
  }
}

std::string synth_config_to_json(const SynthConfig& config) {
  Json j;
  j["duration_s"] = config.duration_s;
  j["imu_rate_hz"] = config.imu_rate_hz;
  j["rssi_rate_hz"] = config.rssi_rate_hz;
  Json comps = Json::array();
  for (const auto& c : config.components) {
    Json jc;
    jc["amplitude"] = c.amplitude;
    jc["frequency_hz"] = c.frequency_hz;
    jc["phase"] = c.phase;
    comps.push_back(jc);
  }
  j["components"] = comps;
  j["accel_noise_sigma"] = config.accel_noise_sigma;
  j["rssi_noise_sigma"] = config.rssi_noise_sigma;
  j["true_coefficients"] = coefficients_json(config.true_coefficients);
  j["mode"] =
      config.mode == SynthMode::LinearModel ? "linear_model" : "path_loss";
  if (config.pathloss) {
    Json jp;
    jp["k_db"] = config.pathloss->params.k_db;
    jp["exponent"] = config.pathloss->params.exponent;
    jp["p_tx_dbm"] = config.pathloss->p_tx_dbm;
    jp["base_distance_m"] = config.pathloss->base_distance_m;
    jp["drift_velocity_mps"] = config.pathloss->drift_velocity_mps;
    j["pathloss"] = jp;
  }
  j["seed"] = config.seed;
  return dump(j);
}

SynthConfig synth_config_from_json(const std::string& text) {
  try {
    Json j = parse(text);
    SynthConfig c;
    c.duration_s = j.value("duration_s", c.duration_s);
    c.imu_rate_hz = j.value("imu_rate_hz", c.imu_rate_hz);
    c.rssi_rate_hz = j.value("rssi_rate_hz", c.rssi_rate_hz);
    if (j.contains("components")) {
      for (const auto& jc : j.at("components")) {
        WaveComponent w;
        w.amplitude = jc.at("amplitude").get<std::array<double, 3>>();
        w.frequency_hz = jc.at("frequency_hz").get<double>();
        w.phase = jc.value("phase", 0.0);
        c.components.push_back(w);
      }
    }
    c.accel_noise_sigma = j.value("accel_noise_sigma", c.accel_noise_sigma);
    c.rssi_noise_sigma = j.value("rssi_noise_sigma", c.rssi_noise_sigma);
    if (j.contains("true_coefficients"))
      c.true_coefficients = coefficients_from(j.at("true_coefficients"));
    std::string mode = j.value("mode", std::string("linear_model"));
    if (mode == "linear_model") {
      c.mode = SynthMode::LinearModel;
    } else if (mode == "path_loss") {
      c.mode = SynthMode::PathLoss;
    } else {
      throw InvalidConfig("unknown mode '" + mode + "'");
    }
    if (j.contains("pathloss")) {
      const Json& jp = j.at("pathloss");
      PathLossScene scene;
      scene.params.k_db = jp.at("k_db").get<double>();
      scene.params.exponent = jp.value("exponent", 2.0);
      scene.p_tx_dbm = jp.at("p_tx_dbm").get<double>();
      scene.base_distance_m = jp.value("base_distance_m", 10.0);
      scene.drift_velocity_mps = jp.value("drift_velocity_mps", 0.0);
      c.pathloss = scene;
    }
    c.seed = j.value("seed", c.seed);
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidConfig(ex.what());
  }
}

std::string series_to_json(const SeriesDoc& doc) {
  const AlignedSeries& s = doc.series;
  Json j;
  j["window"] = doc.meta.window;
  j["overlap"] = doc.meta.overlap;
  j["tolerance_ms"] = doc.meta.tolerance_ms;
  j["period_ms"] = s.period_ms;
  j["normalized"] = s.normalized;
  j["differenced"] = s.differenced;
  j["dropped_rssi"] = s.dropped_rssi;
  if (s.normalization) {
    const NormalizationParams& p = *s.normalization;
    Json jmin, jmax, jdrop;
    const char* names[4] = {"rssi", "ax", "ay", "az"};
    for (int k = 0; k < 4; ++k) {
      jmin[names[k]] = p.min[static_cast<std::size_t>(k)];
      jmax[names[k]] = p.max[static_cast<std::size_t>(k)];
    }
    for (int k = 1; k < 4; ++k)
      jdrop[names[k]] = p.dropped[static_cast<std::size_t>(k)];
    j["channel_min"] = jmin;
    j["channel_max"] = jmax;
    j["dropped"] = jdrop;
  }
  std::vector<std::int64_t> t;
  std::vector<double> r, ax, ay, az;
  t.reserve(s.size());
  for (const auto& rec : s.records) {
    t.push_back(rec.t_ms);
    r.push_back(rec.r);
    ax.push_back(rec.accel[0]);
    ay.push_back(rec.accel[1]);
    az.push_back(rec.accel[2]);
  }
  j["t_ms"] = t;
  j["r"] = r;
  j["ax"] = ax;
  j["ay"] = ay;
  j["az"] = az;
  return dump(j);
}

SeriesDoc series_from_json(const std::string& text) {
  try {
    Json j = parse(text);
    SeriesDoc doc;
    doc.meta.window = j.value("window", doc.meta.window);
    doc.meta.overlap = j.value("overlap", doc.meta.overlap);
    doc.meta.tolerance_ms = j.value("tolerance_ms", doc.meta.tolerance_ms);
    AlignedSeries& s = doc.series;
    s.period_ms = j.value("period_ms", 0.0);
    s.normalized = j.value("normalized", false);
    s.differenced = j.value("differenced", false);
    s.dropped_rssi = j.value("dropped_rssi", std::size_t{0});
    if (j.contains("channel_min")) {
      NormalizationParams p;
      const char* names[4] = {"rssi", "ax", "ay", "az"};
      for (int k = 0; k < 4; ++k) {
        p.min[static_cast<std::size_t>(k)] =
            j.at("channel_min").at(names[k]).get<double>();
        p.max[static_cast<std::size_t>(k)] =
            j.at("channel_max").at(names[k]).get<double>();
      }
      if (j.contains("dropped")) {
        for (int k = 1; k < 4; ++k)
          p.dropped[static_cast<std::size_t>(k)] =
              j.at("dropped").value(names[k], false);
      }
      s.normalization = p;
    }
    auto t = j.at("t_ms").get<std::vector<std::int64_t>>();
    auto r = j.at("r").get<std::vector<double>>();
    auto ax = j.at("ax").get<std::vector<double>>();
    auto ay = j.at("ay").get<std::vector<double>>();
    auto az = j.at("az").get<std::vector<double>>();
    if (r.size() != t.size() || ax.size() != t.size() ||
        ay.size() != t.size() || az.size() != t.size())
      throw InvalidConfig("series column lengths differ");
    s.records.reserve(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
      s.records.push_back({t[k], r[k], {ax[k], ay[k], az[k]}});
    return doc;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidConfig(ex.what());
  }
}

std::string imu_to_csv(const std::vector<ImuSample>& samples,
                       const std::string& comment) {
  std::string out = csv_header(comment);
  const bool gyro = !samples.empty() && samples.front().gyro.has_value();
  out += gyro ? "t_ms,ax,ay,az,gx,gy,gz\n" : "t_ms,ax,ay,az\n";
  for (const auto& s : samples) {
    if (gyro) {
      append_row(out, {std::to_string(s.t_ms), format_double(s.accel[0]),
                       format_double(s.accel[1]), format_double(s.accel[2]),
                       format_double((*s.gyro)[0]), format_double((*s.gyro)[1]),
                       format_double((*s.gyro)[2])});
    } else {
      append_row(out, {std::to_string(s.t_ms), format_double(s.accel[0]),
                       format_double(s.accel[1]), format_double(s.accel[2])});
    }
  }
  return out;
}

std::string rssi_to_csv(const std::vector<RssiSample>& samples,
                        const std::string& comment) {
  std::string out = csv_header(comment);
  const bool tx = !samples.empty() && samples.front().tx_dbm.has_value();
  out += tx ? "t_ms,rssi_dbm,seq,tx_dbm\n" : "t_ms,rssi_dbm,seq\n";
  for (const auto& s : samples) {
    if (tx) {
      append_row(out, {std::to_string(s.t_ms), format_double(s.rssi_dbm),
                       std::to_string(s.seq), format_double(*s.tx_dbm)});
    } else {
      append_row(out, {std::to_string(s.t_ms), format_double(s.rssi_dbm),
                       std::to_string(s.seq)});
    }
  }
  return out;
}

std::string predictions_to_csv(const AlignedSeries& series,
                               const std::vector<double>& predictions,
                               const std::vector<double>* kalman_predictions,
                               const std::string& comment) {
  if (series.size() < 2 || predictions.size() != series.size() - 1)
    throw InvalidConfig("predictions do not match series length");
  if (kalman_predictions && kalman_predictions->size() != predictions.size())
    throw InvalidConfig("kalman predictions do not match series length");
  std::string out = csv_header(comment);
  out += kalman_predictions ? "t_ms,rssi_pred,rssi_actual,rssi_pred_kalman\n"
                            : "t_ms,rssi_pred,rssi_actual\n";
  for (std::size_t k = 1; k < series.size(); ++k) {
    const auto& rec = series.records[k];
    if (kalman_predictions) {
      append_row(out,
                 {std::to_string(rec.t_ms), format_double(predictions[k - 1]),
                  format_double(rec.r),
                  format_double((*kalman_predictions)[k - 1])});
    } else {
      append_row(out,
                 {std::to_string(rec.t_ms), format_double(predictions[k - 1]),
                  format_double(rec.r)});
    }
  }
  return out;
}

std::string histogram_to_csv(const Histogram& hist,
                             const std::string& comment) {
  std::string out = csv_header(comment);
  out += "edge,count\n";
  for (std::size_t k = 0; k < hist.counts.size(); ++k)
    append_row(out,
               {format_double(hist.edges[k]), std::to_string(hist.counts[k])});
  return out;
}

std::string quantile_map_to_csv(const QuantileMap& map,
                                const std::string& comment) {
  std::string out = csv_header(comment);
  out += "level,qx,qy\n";
  for (std::size_t k = 0; k < map.levels.size(); ++k)
    append_row(out, {format_double(map.levels[k]), format_double(map.qx[k]),
                     format_double(map.qy[k])});
  return out;
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() +
                  "': " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on '" + path.string() + "'");
  return buf.str();
}

}  // namespace linkpredict
