// SPDX-License-Identifier: Apache-2.0
// linkpredict command-line tool.
//
// Subcommands: ingest, fit, eval, bench, simulate, power. Every run writes
// its data artifacts plus a manifest_<command>.json recording inputs,
// outputs, seed, an argument hash, and wall-clock timings. Data artifacts
// reference the manifest by name; all writes go through a temp file and an
// atomic rename, and nothing is written until the command has fully
// succeeded, so a failed run leaves no partial outputs.
//
// Exit codes: 0 ok, 2 input error, 3 numerical failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <linkpredict/errors.hpp>
#include <linkpredict/estimator.hpp>
#include <linkpredict/kalman.hpp>
#include <linkpredict/linalg.hpp>
#include <linkpredict/radio.hpp>
#include <linkpredict/rng.hpp>
#include <linkpredict/serialize.hpp>
#include <linkpredict/synth.hpp>
#include <linkpredict/trace.hpp>
#include <linkpredict/version.hpp>

namespace fs = std::filesystem;
namespace lp = linkpredict;
using Clock = std::chrono::steady_clock;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 42;
  bool seed_given = false;
  std::string out_dir = ".";
  std::string format = "json";
};

std::string fnv1a_hex(const std::vector<std::string>& parts) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& p : parts) {
    for (unsigned char c : p) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xffU;  // separator so {"ab","c"} != {"a","bc"}
    h *= 1099511628211ULL;
  }
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

// Collects artifacts in memory and writes them only when the command has
// finished, manifest last.
class Run {
public:
  Run(std::string command, const GlobalOpts& opts, std::string config_hash)
      : command_(std::move(command)),
        out_dir_(opts.out_dir),
        seed_(opts.seed),
        config_hash_(std::move(config_hash)),
        started_(Clock::now()) {}

  std::string manifest_name() const { return "manifest_" + command_ + ".json"; }
  std::string comment() const { return "manifest: " + manifest_name(); }

  void add_input(const std::string& path) { inputs_.push_back(path); }

  void add_json(const std::string& name, const std::string& json_text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(json_text);
    j["manifest"] = manifest_name();
    artifacts_.emplace_back(name, j.dump(2) + "\n");
  }

  void add_csv(const std::string& name, std::string csv_text) {
    artifacts_.emplace_back(name, std::move(csv_text));
  }

  // Atomically writes every artifact, then the manifest.
  void flush() {
    fs::create_directories(out_dir_);
    for (const auto& [name, content] : artifacts_)
      lp::atomic_write_file(out_dir_ / name, content);
    nlohmann::ordered_json m;
    m["command"] = command_;
    m["tool_version"] = lp::kVersion;
    m["seed"] = seed_;
    m["config_hash"] = config_hash_;
    m["inputs"] = inputs_;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto& [name, content] : artifacts_) outs.push_back(name);
    m["outputs"] = outs;
    const double total_s =
        std::chrono::duration<double>(Clock::now() - started_).count();
    m["timings"] = {{"total_s", total_s}};
    lp::atomic_write_file(out_dir_ / manifest_name(), m.dump(2) + "\n");
  }

private:
  std::string command_;
  fs::path out_dir_;
  std::uint64_t seed_;
  std::string config_hash_;
  Clock::time_point started_;
  std::vector<std::string> inputs_;
  std::vector<std::pair<std::string, std::string>> artifacts_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lp::IoError("cannot open '" + path + "'");
  return in;
}

lp::SeriesDoc load_series(const std::string& path) {
  return lp::series_from_json(lp::read_file(path));
}

std::string flat_csv(const std::vector<std::pair<std::string, double>>& rows,
                     const std::string& comment) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "key,value\n";
  for (const auto& [k, v] : rows) out += k + "," + lp::format_double(v) + "\n";
  return out;
}

// -- ingest -------------------------------------------------------------------

struct IngestArgs {
  std::string imu_path;
  std::string rssi_path;
  std::size_t window = 1;
  double overlap = 0.5;
  std::int64_t tolerance_ms = 60;
  bool differenced = false;
};

int cmd_ingest(const GlobalOpts& g, const IngestArgs& a,
               const std::string& hash) {
  Run run("ingest", g, hash);
  run.add_input(a.imu_path);
  run.add_input(a.rssi_path);

  auto imu_in = open_input(a.imu_path);
  auto imu = lp::parse_imu_csv(imu_in);
  auto rssi_in = open_input(a.rssi_path);
  auto rssi = lp::parse_rssi_csv(rssi_in);

  auto downsampled = lp::downsample_imu(imu, a.window, a.overlap);
  lp::AlignedSeries series = lp::align(rssi, downsampled, a.tolerance_ms);
  const std::size_t pairs = series.size();
  const std::size_t dropped = series.dropped_rssi;
  if (a.differenced) series = lp::difference(series);
  lp::NormalizeResult norm = lp::normalize(series);

  lp::SeriesDoc doc;
  doc.series = norm.series;
  doc.meta = {a.window, a.overlap, a.tolerance_ms};
  run.add_json("series.json", lp::series_to_json(doc));
  run.flush();

  std::cout << "pairs: " << pairs << ", dropped rssi: " << dropped << "\n";
  for (int k = 1; k < 4; ++k) {
    auto c = static_cast<lp::Channel>(k);
    if (norm.params.dropped[static_cast<std::size_t>(k)])
      std::cout << "warning: axis " << lp::channel_name(c)
                << " is constant; dropped from the model\n";
  }
  std::cout << "wrote series.json\n";
  return 0;
}

// -- fit ----------------------------------------------------------------------

struct FitArgs {
  std::vector<std::string> series_paths;
  std::string solver = "exact";
  std::size_t iters = 1000;
  double tol = 1e-9;
  std::string init = "zero";
};

lp::CorrelationSystem pool_systems(
    const std::vector<lp::CorrelationSystem>& systems) {
  lp::CorrelationSystem pooled;
  double total = 0.0;
  for (const auto& s : systems) total += static_cast<double>(s.count);
  if (total <= 0.0) throw lp::SeriesTooShort("no lag-1 pairs to pool");
  for (const auto& s : systems) {
    const double w = static_cast<double>(s.count) / total;
    for (std::size_t i = 0; i < 4; ++i) {
      pooled.r[i] += w * s.r[i];
      for (std::size_t j = 0; j < 4; ++j)
        pooled.e.at(i, j) += w * s.e.at(i, j);
    }
    pooled.count += s.count;
  }
  return pooled;
}

int cmd_fit(const GlobalOpts& g, const FitArgs& a, const std::string& hash) {
  Run run("fit", g, hash);
  std::vector<lp::CorrelationSystem> systems;
  for (const auto& path : a.series_paths) {
    run.add_input(path);
    systems.push_back(lp::build_system(load_series(path).series));
  }
  lp::CorrelationSystem system = pool_systems(systems);

  lp::Coefficients coef;
  std::optional<lp::GdReport> report;
  if (a.solver == "exact") {
    lp::SolveInfo info;
    coef = lp::solve_exact(system, &info);
    if (info.ill_conditioned)
      std::cerr << "warning: correlation system is ill-conditioned (cond ~ "
                << info.condition_estimate << ")\n";
  } else {
    lp::GdConfig cfg;
    cfg.max_iters = a.iters;
    cfg.grad_tol = a.tol;
    cfg.init = a.init == "random" ? lp::GdInit::RandomUniform01
                                  : lp::GdInit::Zero;
    cfg.rng_seed = g.seed;
    report = lp::solve_gd(system, cfg);
    coef = report->coefficients;
  }

  if (g.format == "csv") {
    run.add_csv("coefficients.csv",
                flat_csv({{"rho", coef.rho},
                          {"alpha_x", coef.alpha[0]},
                          {"alpha_y", coef.alpha[1]},
                          {"alpha_z", coef.alpha[2]}},
                         run.comment()));
  } else {
    run.add_json("coefficients.json", lp::coefficients_to_json(coef));
  }
  if (report) run.add_json("gd_report.json", lp::gd_report_to_json(*report));
  run.flush();

  std::cout << "pairs pooled: " << system.count << "\n";
  if (report)
    std::cout << "gd stopped after " << report->iterations << " iterations ("
              << lp::stop_reason_name(report->stop_reason) << ")\n";
  std::cout << (g.format == "csv" ? "wrote coefficients.csv\n"
                                  : "wrote coefficients.json\n");
  return 0;
}

// -- eval ---------------------------------------------------------------------

struct EvalArgs {
  std::string series_path;
  std::string coefficients_path;
  std::string baseline = "none";
  double calib_fraction = 0.3;
};

int cmd_eval(const GlobalOpts& g, const EvalArgs& a, const std::string& hash) {
  Run run("eval", g, hash);
  run.add_input(a.series_path);
  run.add_input(a.coefficients_path);
  lp::SeriesDoc doc = load_series(a.series_path);
  lp::Coefficients coef =
      lp::coefficients_from_json(lp::read_file(a.coefficients_path));

  lp::Evaluation ev = lp::evaluate(coef, doc.series);
  lp::EvalReport report;
  report.mmse = ev.stats;

  std::optional<lp::Evaluation> kalman;
  if (a.baseline == "kalman") {
    lp::KalmanParams params = lp::calibrate(doc.series, a.calib_fraction);
    kalman = lp::filter_series(doc.series, params);
    report.kalman = kalman->stats;
    report.kalman_params = params;
  }

  if (g.format == "csv") {
    std::vector<std::pair<std::string, double>> rows = {
        {"mmse.mean_error", report.mmse.mean_error},
        {"mmse.mse_P", report.mmse.mse_p},
        {"mmse.rmse", report.mmse.rmse},
        {"mmse.accuracy_pct", report.mmse.accuracy_pct}};
    if (report.kalman) {
      rows.insert(rows.end(), {{"kalman.mean_error", report.kalman->mean_error},
                               {"kalman.mse_P", report.kalman->mse_p},
                               {"kalman.rmse", report.kalman->rmse},
                               {"kalman.accuracy_pct",
                                report.kalman->accuracy_pct},
                               {"kalman_params.q", report.kalman_params->q},
                               {"kalman_params.r_meas",
                                report.kalman_params->r_meas}});
    }
    run.add_csv("report.csv", flat_csv(rows, run.comment()));
  } else {
    run.add_json("report.json", lp::eval_report_to_json(report));
  }
  run.add_csv("predictions.csv",
              lp::predictions_to_csv(doc.series, ev.predictions,
                                     kalman ? &kalman->predictions : nullptr,
                                     run.comment()));
  run.flush();

  std::cout << "mmse rmse: " << lp::format_double(report.mmse.rmse)
            << ", accuracy: " << lp::format_double(report.mmse.accuracy_pct)
            << "%\n";
  if (report.kalman)
    std::cout << "kalman rmse: " << lp::format_double(report.kalman->rmse)
              << "\n";
  std::cout << (g.format == "csv" ? "wrote report.csv" : "wrote report.json")
            << " and predictions.csv\n";
  return 0;
}

// -- bench --------------------------------------------------------------------

struct BenchArgs {
  std::vector<std::size_t> sizes = {4, 8, 16, 32};
  std::vector<std::size_t> iters = {10, 50, 100, 500, 1000};
  std::size_t reps = 5;
};

volatile double bench_sink = 0.0;

// Median of `reps` measurements; each measurement batches the callable until
// it spans at least ~2 ms so sub-microsecond solves are resolvable. One
// discarded warm-up batch precedes the measurements: the first cell of a
// bench run otherwise pays cold-cache and frequency-ramp costs that skew
// cross-size ratios.
double measure_median(const std::function<void()>& f, std::size_t reps) {
  constexpr double kMinSpan = 2e-3;
  auto span_of = [&](std::size_t batch) {
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < batch; ++i) f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  span_of(1);
  std::size_t batch = 1;
  double probe = span_of(1);
  if (probe < kMinSpan)
    batch = static_cast<std::size_t>(kMinSpan / std::max(probe, 1e-9)) + 1;
  span_of(batch);
  std::vector<double> times(reps);
  for (auto& t : times) t = span_of(batch) / static_cast<double>(batch);
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

int cmd_bench(const GlobalOpts& g, const BenchArgs& a,
              const std::string& hash) {
  Run run("bench", g, hash);
  std::string csv = "# " + run.comment() + "\nm,T,method,median_s\n";
  for (std::size_t m : a.sizes) {
    if (m == 0) throw lp::InvalidConfig("size must be positive");
    lp::Rng rng(lp::Rng::derive(g.seed, 1000 + m));
    const lp::Matrix e = lp::random_spd(m, rng, 0.5, 5.0);
    lp::Vector r(m);
    for (auto& v : r) v = rng.uniform01();

    const double exact_s = measure_median(
        [&] {
          lp::Vector x = lp::gauss_solve(e, r);
          bench_sink = bench_sink + x[0];
        },
        a.reps);
    csv += std::to_string(m) + ",0,exact," + lp::format_double(exact_s) + "\n";

    for (std::size_t t : a.iters) {
      lp::GdOptions opt;
      opt.max_iters = t;
      opt.grad_tol = 0.0;  // run all T iterations
      opt.init = lp::GdInit::Zero;
      const double gd_s = measure_median(
          [&] {
            lp::GdResult res = lp::gd_minimize(e, r, opt);
            bench_sink = bench_sink + res.x[0];
          },
          a.reps);
      csv += std::to_string(m) + "," + std::to_string(t) + ",gd," +
             lp::format_double(gd_s) + "\n";
    }
  }
  run.add_csv("bench.csv", csv);
  run.flush();
  std::cout << "wrote bench.csv\n";
  return 0;
}

// -- simulate -----------------------------------------------------------------

struct SimulateArgs {
  std::string preset_name;
  std::string config_path;
  double duration_s = -1.0;
};

int cmd_simulate(const GlobalOpts& g, const SimulateArgs& a,
                 const std::string& hash) {
  Run run("simulate", g, hash);
  lp::SynthConfig cfg;
  if (!a.config_path.empty()) {
    run.add_input(a.config_path);
    cfg = lp::synth_config_from_json(lp::read_file(a.config_path));
    if (g.seed_given) cfg.seed = g.seed;
  } else {
    cfg = lp::preset(a.preset_name.empty() ? "southbeach" : a.preset_name);
    cfg.seed = g.seed;
  }
  if (a.duration_s > 0.0) cfg.duration_s = a.duration_s;

  auto motion = lp::generate_motion(cfg);
  auto rssi = cfg.mode == lp::SynthMode::LinearModel
                  ? lp::generate_rssi_linear(cfg, motion)
                  : lp::generate_rssi_pathloss(cfg, motion);

  nlohmann::ordered_json truth;
  truth["coefficients"] =
      nlohmann::ordered_json::parse(lp::coefficients_to_json(
          cfg.mode == lp::SynthMode::LinearModel ? cfg.true_coefficients
                                                 : lp::Coefficients{}));
  truth["exact_model"] = cfg.mode == lp::SynthMode::LinearModel;
  truth["config"] =
      nlohmann::ordered_json::parse(lp::synth_config_to_json(cfg));

  run.add_csv("imu.csv", lp::imu_to_csv(motion, run.comment()));
  run.add_csv("rssi.csv", lp::rssi_to_csv(rssi, run.comment()));
  run.add_json("ground_truth.json", truth.dump(2) + "\n");
  run.flush();

  std::cout << "imu samples: " << motion.size()
            << ", rssi samples: " << rssi.size() << "\n";
  std::cout << "wrote imu.csv, rssi.csv, ground_truth.json\n";
  return 0;
}

// -- power --------------------------------------------------------------------

struct PowerArgs {
  std::string series_path;
  std::string coefficients_path;
  std::string profile = "cc1200";
  double threshold_dbm = 0.0;
  double margin_db = 3.0;
  double current_tx_dbm = 0.0;
  double step_dbm = 0.5;
};

lp::RadioProfile load_profile(const std::string& spec, Run& run) {
  if (spec == "cc1200") return lp::cc1200();
  if (spec == "cc2538") return lp::cc2538();
  run.add_input(spec);
  return lp::profile_from_json(lp::read_file(spec));
}

int cmd_power(const GlobalOpts& g, const PowerArgs& a,
              const std::string& hash) {
  Run run("power", g, hash);
  run.add_input(a.series_path);
  run.add_input(a.coefficients_path);
  lp::RadioProfile profile = load_profile(a.profile, run);
  lp::SeriesDoc doc = load_series(a.series_path);
  lp::Coefficients coef =
      lp::coefficients_from_json(lp::read_file(a.coefficients_path));

  if (!doc.series.normalization)
    throw lp::InvalidConfig(
        "series has no normalization map; run ingest first");
  if (doc.series.size() < 2)
    throw lp::SeriesTooShort("need at least 2 records for a schedule");
  const lp::NormalizationParams& params = *doc.series.normalization;

  std::string csv =
      "# " + run.comment() + "\nt_ms,rx_pred_dbm,tx_dbm,feasible\n";
  std::size_t feasible = 0;
  std::size_t met = 0;
  const std::size_t steps = doc.series.size() - 1;
  for (std::size_t k = 1; k < doc.series.size(); ++k) {
    const auto& prev = doc.series.records[k - 1];
    const auto& cur = doc.series.records[k];
    const double pred_norm = lp::predict(coef, prev.r, cur.accel);
    const double rx_pred =
        lp::denormalize(pred_norm, lp::Channel::Rssi, params);
    const lp::TxSelection sel =
        lp::select_tx_power(rx_pred, a.current_tx_dbm, a.threshold_dbm,
                            a.margin_db, profile, a.step_dbm);
    const double actual =
        lp::denormalize(cur.r, lp::Channel::Rssi, params);
    if (sel.feasible) ++feasible;
    if (actual + (sel.tx_dbm - a.current_tx_dbm) >= a.threshold_dbm) ++met;
    csv += std::to_string(cur.t_ms) + "," + lp::format_double(rx_pred) + "," +
           lp::format_double(sel.tx_dbm) + "," + (sel.feasible ? "1" : "0") +
           "\n";
  }

  nlohmann::ordered_json summary;
  summary["profile"] = profile.name;
  summary["threshold_dbm"] = a.threshold_dbm;
  summary["margin_db"] = a.margin_db;
  summary["steps"] = steps;
  summary["feasible_fraction"] =
      static_cast<double>(feasible) / static_cast<double>(steps);
  summary["met_fraction"] =
      static_cast<double>(met) / static_cast<double>(steps);

  run.add_csv("power_schedule.csv", csv);
  run.add_json("power_summary.json", summary.dump(2) + "\n");
  run.flush();

  std::cout << "steps: " << steps << ", feasible: " << feasible
            << ", met threshold: " << met << "\n";
  std::cout << "wrote power_schedule.csv and power_summary.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RSSI prediction from IMU data: ingest, fit, evaluate, "
               "benchmark, simulate, power control"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Seed for all stochastic steps")
      ->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Directory for output artifacts")
      ->capture_default_str();
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand(
      "ingest", "Parse, downsample, align, and normalize IMU + RSSI traces");
  c_ingest->add_option("--imu", ingest.imu_path, "IMU CSV file")->required();
  c_ingest->add_option("--rssi", ingest.rssi_path, "RSSI CSV file")
      ->required();
  c_ingest->add_option("--window", ingest.window, "IMU downsampling window")
      ->capture_default_str();
  c_ingest->add_option("--overlap", ingest.overlap,
                       "Downsampling window overlap in [0,1)")
      ->capture_default_str();
  c_ingest->add_option("--tolerance-ms", ingest.tolerance_ms,
                       "Alignment tolerance in milliseconds")
      ->capture_default_str();
  c_ingest->add_flag("--differenced", ingest.differenced,
                     "Fit on first differences instead of raw values");

  FitArgs fit;
  auto* c_fit = app.add_subcommand(
      "fit", "Fit predictor coefficients from one or more series files");
  c_fit->add_option("series", fit.series_paths, "Aligned series JSON file(s)")
      ->required();
  c_fit->add_option("--solver", fit.solver, "Solver")
      ->check(CLI::IsMember({"exact", "gd"}))
      ->capture_default_str();
  c_fit->add_option("--iters", fit.iters, "Gradient-descent iteration cap")
      ->capture_default_str();
  c_fit->add_option("--tol", fit.tol, "Gradient-norm stopping tolerance")
      ->capture_default_str();
  c_fit->add_option("--init", fit.init, "Gradient-descent initialization")
      ->check(CLI::IsMember({"zero", "random"}))
      ->capture_default_str();

  EvalArgs eval;
  auto* c_eval = app.add_subcommand(
      "eval", "Evaluate coefficients on a series; optional Kalman baseline");
  c_eval->add_option("--series", eval.series_path, "Aligned series JSON")
      ->required();
  c_eval
      ->add_option("--coefficients", eval.coefficients_path,
                   "Coefficients JSON")
      ->required();
  c_eval->add_option("--baseline", eval.baseline, "Baseline predictor")
      ->check(CLI::IsMember({"none", "kalman"}))
      ->capture_default_str();
  c_eval
      ->add_option("--calib-fraction", eval.calib_fraction,
                   "Prefix fraction used to calibrate the baseline")
      ->capture_default_str();

  BenchArgs bench;
  auto* c_bench = app.add_subcommand(
      "bench", "Time the exact and gradient-descent solvers");
  c_bench->add_option("--sizes", bench.sizes, "System sizes m")
      ->delimiter(',')
      ->capture_default_str();
  c_bench->add_option("--iters", bench.iters, "Gradient-descent iteration counts")
      ->delimiter(',')
      ->capture_default_str();
  c_bench->add_option("--reps", bench.reps, "Repetitions per cell")
      ->capture_default_str();

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand(
      "simulate", "Generate a synthetic IMU + RSSI trace with known truth");
  auto* preset_opt =
      c_sim->add_option("--preset", sim.preset_name,
                        "Named scenario: southbeach or crandon");
  auto* config_opt =
      c_sim->add_option("--config", sim.config_path, "Synth config JSON");
  preset_opt->excludes(config_opt);
  c_sim->add_option("--duration", sim.duration_s,
                    "Override trace duration in seconds");

  PowerArgs power;
  auto* c_power = app.add_subcommand(
      "power", "Derive a transmit-power schedule from predictions");
  c_power->add_option("--series", power.series_path, "Aligned series JSON")
      ->required();
  c_power
      ->add_option("--coefficients", power.coefficients_path,
                   "Coefficients JSON")
      ->required();
  c_power
      ->add_option("--profile", power.profile,
                   "cc1200, cc2538, or a profile JSON file")
      ->capture_default_str();
  c_power
      ->add_option("--threshold", power.threshold_dbm,
                   "Reception threshold in dBm")
      ->required();
  c_power->add_option("--margin", power.margin_db, "Headroom margin in dB")
      ->capture_default_str();
  c_power
      ->add_option("--current-tx", power.current_tx_dbm,
                   "Transmit power the series was observed at, dBm")
      ->capture_default_str();
  c_power->add_option("--step", power.step_dbm, "Transmit power grid step, dB")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  g.seed_given = app.count("--seed") > 0;

  std::vector<std::string> argv_parts;
  for (int i = 1; i < argc; ++i) argv_parts.emplace_back(argv[i]);
  const std::string hash = fnv1a_hex(argv_parts);

  try {
    if (c_ingest->parsed()) return cmd_ingest(g, ingest, hash);
    if (c_fit->parsed()) return cmd_fit(g, fit, hash);
    if (c_eval->parsed()) return cmd_eval(g, eval, hash);
    if (c_bench->parsed()) return cmd_bench(g, bench, hash);
    if (c_sim->parsed()) return cmd_simulate(g, sim, hash);
    if (c_power->parsed()) return cmd_power(g, power, hash);
  } catch (const lp::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lp::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
