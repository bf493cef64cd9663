#pragma once

// dB / linear conversion helpers shared by the channel model and solvers.
// All link budgets are kept in linear power ratios internally; dB shows up
// only at the configuration boundary and in reported metrics.

#include <cmath>

namespace d2dshare {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

/// dBm -> watts (0 dBm = 1 mW).
inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

inline double watts_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

}  // namespace d2dshare
