// SPDX-License-Identifier: Apache-2.0
// Link-budget arithmetic: log-distance path loss, radio hardware profiles,
// and the threshold-driven transmit-power selector.

#pragma once

#include <optional>
#include <string>

namespace linkpredict {

struct RadioProfile {
  std::string name;
  double sensitivity_dbm = 0.0;
  double tx_min_dbm = 0.0;
  double tx_max_dbm = 0.0;
  std::string band;
  double rate_pps = 0.0;  // sustainable packet rate
};

struct PathLossParams {
  double k_db = 0.0;      // link-budget constant K in dB
  double exponent = 2.0;  // path-loss exponent, > 0
};

// k_db = p_rx_observed - p_tx + 10 * exponent * log10(distance).
PathLossParams calibrate_k(double p_tx_dbm, double distance_m,
                           double p_rx_dbm, double exponent = 2.0);

// p_rx = k_db + p_tx - 10 * exponent * log10(distance).
double received_power(const PathLossParams& params, double p_tx_dbm,
                      double distance_m);

struct TxSelection {
  double tx_dbm = 0.0;
  bool feasible = false;
};

// required gain = (threshold + margin) - predicted_rx; the new power is
// current_tx + gain rounded UP to the step grid, then clamped to
// [tx_min, tx_max]. feasible reports whether the pre-clamp value fit under
// tx_max.
TxSelection select_tx_power(double predicted_rx_dbm, double current_tx_dbm,
                            double threshold_dbm, double margin_db,
                            const RadioProfile& profile,
                            double step_dbm = 0.5);

// true iff p_rx >= max(sensitivity, soft_threshold), boundary inclusive.
bool packet_received(double p_rx_dbm, const RadioProfile& profile,
                     std::optional<double> soft_threshold = {});

const RadioProfile& cc1200();
const RadioProfile& cc2538();

}  // namespace linkpredict
