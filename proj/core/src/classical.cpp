#include "qcoex/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace qcoex {

const char* to_string(FeasibilityReason reason) {
  switch (reason) {
    case FeasibilityReason::Ok:
      return "ok";
    case FeasibilityReason::LaunchBelowWindow:
      return "launch power below validated window";
    case FeasibilityReason::LaunchAboveWindow:
      return "launch power above validated window";
    case FeasibilityReason::WavelengthOutsideWindow:
      return "wavelength outside validated window";
    case FeasibilityReason::BerAboveLimit:
      return "measured BER above FEC limit";
  }
  return "unknown";
}

void ClassicalFeasibility::validate() const {
  if (!(min_launch_dbm <= max_launch_dbm) || !std::isfinite(min_launch_dbm) ||
      !std::isfinite(max_launch_dbm)) {
    throw std::invalid_argument("launch power window is empty or not finite");
  }
  if (!(min_wavelength_nm <= max_wavelength_nm)) {
    throw std::invalid_argument("wavelength window is empty");
  }
  if (!(ber_limit > 0.0 && ber_limit < 1.0)) {
    throw std::invalid_argument("BER limit must be in (0, 1)");
  }
  for (const BerSample& s : ber_table) {
    if (!(s.ber >= 0.0 && s.ber <= 1.0)) {
      throw std::invalid_argument("BER sample outside [0, 1]");
    }
    if (!std::isfinite(s.launch_dbm) || !std::isfinite(s.wavelength_nm)) {
      throw std::invalid_argument("BER sample coordinates must be finite");
    }
  }
}

Feasibility channel_feasible(const ClassicalFeasibility& envelope, Wavelength wavelength,
                             double launch_dbm) {
  envelope.validate();
  if (!std::isfinite(launch_dbm)) {
    throw std::invalid_argument("launch power must be finite dBm");
  }
  for (const BerSample& s : envelope.ber_table) {
    if (std::fabs(s.wavelength_nm - wavelength.nm()) < 1e-9 &&
        std::fabs(s.launch_dbm - launch_dbm) < 1e-9) {
      if (s.ber <= envelope.ber_limit) {
        return {true, FeasibilityReason::Ok};
      }
      return {false, FeasibilityReason::BerAboveLimit};
    }
  }
  if (launch_dbm < envelope.min_launch_dbm) {
    return {false, FeasibilityReason::LaunchBelowWindow};
  }
  if (launch_dbm > envelope.max_launch_dbm) {
    return {false, FeasibilityReason::LaunchAboveWindow};
  }
  if (wavelength.nm() < envelope.min_wavelength_nm ||
      wavelength.nm() > envelope.max_wavelength_nm) {
    return {false, FeasibilityReason::WavelengthOutsideWindow};
  }
  return {true, FeasibilityReason::Ok};
}

}
