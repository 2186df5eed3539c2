// SPDX-License-Identifier: Apache-2.0

#include <linkpredict/radio.hpp>

#include <algorithm>
#include <cmath>

#include <linkpredict/errors.hpp>

namespace linkpredict {

PathLossParams calibrate_k(double p_tx_dbm, double distance_m, double p_rx_dbm,
                           double exponent) {
  if (!(distance_m > 0.0)) throw NonPositiveDistance(distance_m);
  if (!(exponent > 0.0))
    throw InvalidConfig("path-loss exponent must be > 0");
  PathLossParams params;
  params.exponent = exponent;
  params.k_db = p_rx_dbm - p_tx_dbm + 10.0 * exponent * std::log10(distance_m);
  return params;
}

double received_power(const PathLossParams& params, double p_tx_dbm,
                      double distance_m) {
  if (!(distance_m > 0.0)) throw NonPositiveDistance(distance_m);
  return params.k_db + p_tx_dbm -
         10.0 * params.exponent * std::log10(distance_m);
}

TxSelection select_tx_power(double predicted_rx_dbm, double current_tx_dbm,
                            double threshold_dbm, double margin_db,
                            const RadioProfile& profile, double step_dbm) {
  if (threshold_dbm < profile.sensitivity_dbm)
    throw ThresholdBelowSensitivity(threshold_dbm, profile.sensitivity_dbm);
  if (!(step_dbm > 0.0)) throw InvalidConfig("tx step must be > 0");

  const double required_gain = (threshold_dbm + margin_db) - predicted_rx_dbm;
  const double raw = current_tx_dbm + required_gain;
  // Round up to the step grid; the epsilon keeps on-grid values in place.
  const double rounded = std::ceil(raw / step_dbm - 1e-9) * step_dbm;

  TxSelection sel;
  sel.feasible = rounded <= profile.tx_max_dbm;
  sel.tx_dbm = std::clamp(rounded, profile.tx_min_dbm, profile.tx_max_dbm);
  return sel;
}

bool packet_received(double p_rx_dbm, const RadioProfile& profile,
                     std::optional<double> soft_threshold) {
  double threshold = profile.sensitivity_dbm;
  if (soft_threshold) threshold = std::max(threshold, *soft_threshold);
  return p_rx_dbm >= threshold;
}

const RadioProfile& cc1200() {
  static const RadioProfile profile{"cc1200", -123.0, -16.0, 16.0,
                                    "868 MHz", 2.0};
  return profile;
}

const RadioProfile& cc2538() {
  static const RadioProfile profile{"cc2538", -97.0, -24.0, 7.0,
                                    "2.4 GHz", 10.0};
  return profile;
}

}  // namespace linkpredict
