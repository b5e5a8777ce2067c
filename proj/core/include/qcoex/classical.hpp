#pragma once

#include <string>
#include <vector>

#include "qcoex/units.hpp"

namespace qcoex {

/// Measured BER point for a channel configuration. When present, measurement
/// wins over the envelope windows below.
struct BerSample {
  double wavelength_nm = 1550.0;
  double launch_dbm = 0.0;
  double ber = 0.0;
};

enum class FeasibilityReason {
  Ok,
  LaunchBelowWindow,
  LaunchAboveWindow,
  WavelengthOutsideWindow,
  BerAboveLimit,
};

const char* to_string(FeasibilityReason reason);

struct Feasibility {
  bool feasible = false;
  FeasibilityReason reason = FeasibilityReason::Ok;
};

/// Envelope inside which classical transmission is known to run error-free
/// after FEC. The windows are closed intervals. A matching ber_table sample
/// overrides the windows: measured data beats the envelope.
struct ClassicalFeasibility {
  double min_launch_dbm = -10.0;
  double max_launch_dbm = -3.0;
  double min_wavelength_nm = 1530.0;
  double max_wavelength_nm = 1560.0;
  double ber_limit = 3.8e-3;  // pre-FEC hard-decision threshold
  std::vector<BerSample> ber_table;

  void validate() const;
};

Feasibility channel_feasible(const ClassicalFeasibility& envelope, Wavelength wavelength,
                             double launch_dbm);

}
