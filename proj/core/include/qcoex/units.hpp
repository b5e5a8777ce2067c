#pragma once

#include <initializer_list>
#include <span>

namespace qcoex {

inline constexpr double kPlanckJs = 6.62607015e-34;
inline constexpr double kSpeedOfLightMs = 2.99792458e8;

// Validity window of the loss/crosstalk models; everything here lives in the
// C and L bands.
inline constexpr double kWavelengthMinNm = 1500.0;
inline constexpr double kWavelengthMaxNm = 1620.0;

inline constexpr int kCoreCount = 7;

/// Core index in the hexagonal 7-core layout: 0 is the center core,
/// 1..6 the outer ring in circular order.
class CoreId {
 public:
  explicit CoreId(int index);

  int index() const { return index_; }

  friend bool operator==(CoreId a, CoreId b) { return a.index_ == b.index_; }
  friend bool operator!=(CoreId a, CoreId b) { return a.index_ != b.index_; }
  friend bool operator<(CoreId a, CoreId b) { return a.index_ < b.index_; }

 private:
  int index_;
};

/// Wavelength in nm. Construction enforces the model validity window, so a
/// Wavelength value is always usable downstream without re-checking.
class Wavelength {
 public:
  explicit Wavelength(double nm);

  double nm() const { return nm_; }
  double meters() const { return nm_ * 1e-9; }

  friend bool operator==(Wavelength a, Wavelength b) { return a.nm_ == b.nm_; }
  friend bool operator!=(Wavelength a, Wavelength b) { return a.nm_ != b.nm_; }
  friend bool operator<(Wavelength a, Wavelength b) { return a.nm_ < b.nm_; }

 private:
  double nm_;
};

double dbm_to_watts(double power_dbm);

/// Inverse of dbm_to_watts; requires power_w > 0.
double watts_to_dbm(double power_w);

/// Mean photon arrival rate in photons/s for a CW power. power_w >= 0.
double photon_flux(double power_w, Wavelength wavelength);

/// Sums loss contributions in dB. Empty list -> 0 dB. Values may be negative
/// (gain); NaN is rejected.
double combine_losses(std::span<const double> losses_db);
double combine_losses(std::initializer_list<double> losses_db);

}
