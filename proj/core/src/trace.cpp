// SPDX-License-Identifier: Apache-2.0

#include <linkpredict/trace.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <linkpredict/errors.hpp>

namespace linkpredict {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& field, std::size_t row,
                    const std::string& what) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw MalformedRow(row, "cannot parse " + what + " from '" + field + "'");
  if (!std::isfinite(value))
    throw MalformedRow(row, what + " is not finite");
  return value;
}

std::int64_t parse_int(const std::string& field, std::size_t row,
                       const std::string& what) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw MalformedRow(row, "cannot parse " + what + " from '" + field + "'");
  return value;
}

// Seconds to integer milliseconds, round half to even.
std::int64_t seconds_to_ms(double t_s, std::size_t row) {
  const double ms = t_s * 1000.0;
  if (!std::isfinite(ms) ||
      std::abs(ms) > 9.2e18)
    throw MalformedRow(row, "timestamp out of range");
  return static_cast<std::int64_t>(std::nearbyint(ms));
}

struct HeaderInfo {
  bool seconds = false;  // first column t_s instead of t_ms
  std::size_t columns = 0;
};

HeaderInfo check_header(const std::string& line, std::size_t row,
                        const std::vector<std::string>& base,
                        const std::vector<std::string>& extra) {
  const auto fields = split_csv(line);
  HeaderInfo info;
  info.columns = fields.size();
  if (fields.size() != base.size() && fields.size() != base.size() + extra.size())
    throw MalformedRow(row, "unexpected header '" + line + "'");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string& want = i < base.size() ? base[i] : extra[i - base.size()];
    if (i == 0) {
      if (fields[0] == "t_ms") {
        info.seconds = false;
      } else if (fields[0] == "t_s") {
        info.seconds = true;
      } else {
        throw MalformedRow(row, "first column must be t_ms or t_s");
      }
      continue;
    }
    if (fields[i] != want)
      throw MalformedRow(row, "expected column '" + want + "', got '" +
                                  fields[i] + "'");
  }
  return info;
}

std::int64_t parse_timestamp(const std::string& field, bool seconds,
                             std::size_t row) {
  if (seconds) return seconds_to_ms(parse_double(field, row, "t_s"), row);
  return parse_int(field, row, "t_ms");
}

}  // namespace

Channel channel_from_name(const std::string& name) {
  if (name == "rssi") return Channel::Rssi;
  if (name == "ax") return Channel::Ax;
  if (name == "ay") return Channel::Ay;
  if (name == "az") return Channel::Az;
  throw UnknownChannel(name);
}

const char* channel_name(Channel c) {
  switch (c) {
    case Channel::Rssi: return "rssi";
    case Channel::Ax: return "ax";
    case Channel::Ay: return "ay";
    case Channel::Az: return "az";
  }
  return "?";
}

std::vector<ImuSample> parse_imu_csv(std::istream& source) {
  std::vector<ImuSample> out;
  std::string line;
  std::size_t row = 0;
  bool have_header = false;
  HeaderInfo header;
  while (std::getline(source, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      header = check_header(line, row, {"t_ms", "ax", "ay", "az"},
                            {"gx", "gy", "gz"});
      have_header = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != header.columns)
      throw MalformedRow(row, "expected " + std::to_string(header.columns) +
                                  " fields, got " +
                                  std::to_string(fields.size()));
    ImuSample s;
    s.t_ms = parse_timestamp(fields[0], header.seconds, row);
    s.accel = {parse_double(fields[1], row, "ax"),
               parse_double(fields[2], row, "ay"),
               parse_double(fields[3], row, "az")};
    if (header.columns == 7) {
      s.gyro = {{parse_double(fields[4], row, "gx"),
                 parse_double(fields[5], row, "gy"),
                 parse_double(fields[6], row, "gz")}};
    }
    if (!out.empty() && s.t_ms <= out.back().t_ms)
      throw NonMonotonicTimestamp(row);
    out.push_back(s);
  }
  if (!have_header && row > 0) throw MalformedRow(1, "missing header");
  return out;
}

std::vector<RssiSample> parse_rssi_csv(std::istream& source) {
  std::vector<RssiSample> out;
  std::string line;
  std::size_t row = 0;
  bool have_header = false;
  HeaderInfo header;
  while (std::getline(source, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      header = check_header(line, row, {"t_ms", "rssi_dbm", "seq"}, {"tx_dbm"});
      have_header = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != header.columns)
      throw MalformedRow(row, "expected " + std::to_string(header.columns) +
                                  " fields, got " +
                                  std::to_string(fields.size()));
    RssiSample s;
    s.t_ms = parse_timestamp(fields[0], header.seconds, row);
    s.rssi_dbm = parse_double(fields[1], row, "rssi_dbm");
    if (s.rssi_dbm < -150.0 || s.rssi_dbm > 30.0)
      throw MalformedRow(row, "rssi_dbm out of [-150, 30]");
    s.seq = parse_int(fields[2], row, "seq");
    if (header.columns == 4) s.tx_dbm = parse_double(fields[3], row, "tx_dbm");
    if (!out.empty()) {
      if (s.t_ms <= out.back().t_ms) throw NonMonotonicTimestamp(row);
      if (s.seq < out.back().seq) throw NonMonotonicSequence(row);
    }
    out.push_back(s);
  }
  if (!have_header && row > 0) throw MalformedRow(1, "missing header");
  return out;
}

std::vector<ImuSample> downsample_imu(const std::vector<ImuSample>& samples,
                                      std::size_t window, double overlap) {
  if (samples.empty()) throw EmptyInput("downsample_imu");
  if (window == 0) throw InvalidWindow("window must be >= 1");
  if (!(overlap >= 0.0 && overlap < 1.0))
    throw InvalidWindow("overlap must be in [0, 1)");
  const auto hop = std::max<std::int64_t>(
      1, std::llround(static_cast<double>(window) * (1.0 - overlap)));
  if (samples.size() < window) return {};
  const std::size_t count = (samples.size() - window) / hop + 1;

  std::vector<ImuSample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t begin = k * hop;
    long double t_sum = 0.0L;
    std::array<double, 3> a_sum{};
    std::array<double, 3> g_sum{};
    bool all_gyro = true;
    for (std::size_t i = begin; i < begin + window; ++i) {
      t_sum += samples[i].t_ms;
      for (int ax = 0; ax < 3; ++ax) a_sum[ax] += samples[i].accel[ax];
      if (samples[i].gyro) {
        for (int ax = 0; ax < 3; ++ax) g_sum[ax] += (*samples[i].gyro)[ax];
      } else {
        all_gyro = false;
      }
    }
    ImuSample s;
    s.t_ms = std::llround(static_cast<double>(t_sum / window));
    for (int ax = 0; ax < 3; ++ax) s.accel[ax] = a_sum[ax] / window;
    if (all_gyro) {
      s.gyro = std::array<double, 3>{};
      for (int ax = 0; ax < 3; ++ax) (*s.gyro)[ax] = g_sum[ax] / window;
    }
    out.push_back(s);
  }
  return out;
}

AlignedSeries align(const std::vector<RssiSample>& rssi,
                    const std::vector<ImuSample>& imu,
                    std::int64_t tolerance_ms) {
  if (rssi.empty()) throw EmptyInput("align: rssi");
  if (imu.empty()) throw EmptyInput("align: imu");

  struct Candidate {
    std::size_t rssi_idx;
    std::size_t imu_idx;
    std::int64_t gap;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(rssi.size());
  std::size_t dropped = 0;

  for (std::size_t i = 0; i < rssi.size(); ++i) {
    const std::int64_t t = rssi[i].t_ms;
    auto it = std::lower_bound(
        imu.begin(), imu.end(), t,
        [](const ImuSample& s, std::int64_t v) { return s.t_ms < v; });
    std::size_t best = imu.size();
    std::int64_t best_gap = std::numeric_limits<std::int64_t>::max();
    if (it != imu.end()) {
      best = static_cast<std::size_t>(it - imu.begin());
      best_gap = std::abs(it->t_ms - t);
    }
    if (it != imu.begin()) {
      const auto prev = it - 1;
      const std::int64_t gap = std::abs(prev->t_ms - t);
      if (gap < best_gap) {
        best = static_cast<std::size_t>(prev - imu.begin());
        best_gap = gap;
      }
    }
    if (best == imu.size() || best_gap > tolerance_ms) {
      ++dropped;
      continue;
    }
    candidates.push_back({i, best, best_gap});
  }

  // One pairing per IMU sample: nearest gap wins, earlier RSSI breaks ties.
  // Candidates arrive in RSSI order, so the first of equal gaps wins.
  std::vector<std::size_t> winner(imu.size(), candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& cand = candidates[c];
    const std::size_t cur = winner[cand.imu_idx];
    if (cur == candidates.size() || cand.gap < candidates[cur].gap)
      winner[cand.imu_idx] = c;
  }

  AlignedSeries series;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& cand = candidates[c];
    if (winner[cand.imu_idx] != c) {
      ++dropped;
      continue;
    }
    AlignedRecord rec;
    rec.t_ms = rssi[cand.rssi_idx].t_ms;
    rec.r = rssi[cand.rssi_idx].rssi_dbm;
    rec.accel = imu[cand.imu_idx].accel;
    series.records.push_back(rec);
  }
  if (series.records.empty()) throw NoOverlap();

  series.dropped_rssi = dropped;
  if (series.records.size() >= 2) {
    const double span = static_cast<double>(series.records.back().t_ms -
                                            series.records.front().t_ms);
    series.period_ms = span / static_cast<double>(series.records.size() - 1);
  }
  return series;
}

NormalizeResult normalize(const AlignedSeries& series) {
  if (series.normalized)
    throw InvalidConfig("series is already normalized");
  if (series.size() < 2) throw SeriesTooShort("normalize needs N >= 2");

  NormalizationParams params;
  for (int ch = 0; ch < 4; ++ch) {
    params.min[ch] = std::numeric_limits<double>::infinity();
    params.max[ch] = -std::numeric_limits<double>::infinity();
  }
  for (const auto& rec : series.records) {
    params.min[0] = std::min(params.min[0], rec.r);
    params.max[0] = std::max(params.max[0], rec.r);
    for (int ax = 0; ax < 3; ++ax) {
      params.min[ax + 1] = std::min(params.min[ax + 1], rec.accel[ax]);
      params.max[ax + 1] = std::max(params.max[ax + 1], rec.accel[ax]);
    }
  }
  if (params.max[0] == params.min[0]) throw DegenerateChannel("rssi");
  for (int ax = 0; ax < 3; ++ax) {
    if (params.max[ax + 1] == params.min[ax + 1]) params.dropped[ax + 1] = true;
  }

  NormalizeResult result;
  result.params = params;
  result.series = series;
  result.series.normalized = true;
  result.series.normalization = params;
  const double r_span = params.max[0] - params.min[0];
  for (auto& rec : result.series.records) {
    rec.r = (rec.r - params.min[0]) / r_span;
    for (int ax = 0; ax < 3; ++ax) {
      if (params.dropped[ax + 1]) {
        rec.accel[ax] = 0.0;
      } else {
        rec.accel[ax] = (rec.accel[ax] - params.min[ax + 1]) /
                        (params.max[ax + 1] - params.min[ax + 1]);
      }
    }
  }
  return result;
}

double denormalize(double value, Channel channel,
                   const NormalizationParams& params) {
  const int ch = static_cast<int>(channel);
  return params.min[ch] + value * (params.max[ch] - params.min[ch]);
}

AlignedSeries difference(const AlignedSeries& series) {
  if (series.size() < 2) throw SeriesTooShort("difference needs N >= 2");
  if (series.differenced)
    throw InvalidConfig("series is already differenced");
  AlignedSeries out;
  out.differenced = true;
  out.normalized = series.normalized;
  out.normalization = series.normalization;
  out.dropped_rssi = series.dropped_rssi;
  out.records.reserve(series.size() - 1);
  for (std::size_t k = 1; k < series.size(); ++k) {
    AlignedRecord rec;
    rec.t_ms = series.records[k].t_ms;
    rec.r = series.records[k].r - series.records[k - 1].r;
    for (int ax = 0; ax < 3; ++ax)
      rec.accel[ax] =
          series.records[k].accel[ax] - series.records[k - 1].accel[ax];
    out.records.push_back(rec);
  }
  if (out.records.size() >= 2) {
    const double span = static_cast<double>(out.records.back().t_ms -
                                            out.records.front().t_ms);
    out.period_ms = span / static_cast<double>(out.records.size() - 1);
  }
  return out;
}

}  // namespace linkpredict
