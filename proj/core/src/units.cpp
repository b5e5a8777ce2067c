#include "qcoex/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcoex {

CoreId::CoreId(int index) : index_(index) {
  if (index < 0 || index >= kCoreCount) {
    throw std::invalid_argument("core index " + std::to_string(index) +
                                " outside [0, " + std::to_string(kCoreCount - 1) + "]");
  }
}

Wavelength::Wavelength(double nm) : nm_(nm) {
  if (!(nm >= kWavelengthMinNm && nm <= kWavelengthMaxNm)) {
    throw std::invalid_argument("wavelength " + std::to_string(nm) + " nm outside [" +
                                std::to_string(kWavelengthMinNm) + ", " +
                                std::to_string(kWavelengthMaxNm) + "] nm");
  }
}

double dbm_to_watts(double power_dbm) {
  if (!std::isfinite(power_dbm)) {
    throw std::invalid_argument("power in dBm must be finite");
  }
  return 1e-3 * std::pow(10.0, power_dbm / 10.0);
}

double watts_to_dbm(double power_w) {
  if (!(power_w > 0.0) || !std::isfinite(power_w)) {
    throw std::invalid_argument("power must be positive and finite to express in dBm");
  }
  return 10.0 * std::log10(power_w / 1e-3);
}

double photon_flux(double power_w, Wavelength wavelength) {
  if (std::isnan(power_w) || power_w < 0.0) {
    throw std::invalid_argument("optical power must be >= 0 W");
  }
  const double photon_energy_j = kPlanckJs * kSpeedOfLightMs / wavelength.meters();
  return power_w / photon_energy_j;
}

double combine_losses(std::span<const double> losses_db) {
  double total = 0.0;
  for (double loss : losses_db) {
    if (std::isnan(loss)) {
      throw std::invalid_argument("loss contribution is NaN");
    }
    total += loss;
  }
  return total;
}

double combine_losses(std::initializer_list<double> losses_db) {
  return combine_losses(std::span<const double>(losses_db.begin(), losses_db.size()));
}

}
