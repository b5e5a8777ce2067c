#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcoex/units.hpp"

using namespace qcoex;

TEST_CASE("dbm to watts at reference points") {
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(dbm_to_watts(-30.0) == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(dbm_to_watts(10.0) == doctest::Approx(1e-2).epsilon(1e-12));
  // the worked leakage chain endpoint: -4 dBm through 100.5 dB of loss
  CHECK(dbm_to_watts(-104.5) == doctest::Approx(3.54813389233576e-14).epsilon(1e-12));
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("watts to dbm inverts dbm to watts") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dbm(-120.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double x = dbm(rng);
    CHECK(watts_to_dbm(dbm_to_watts(x)) == doctest::Approx(x).epsilon(1e-12));
  }
  CHECK_THROWS_AS(watts_to_dbm(0.0), std::invalid_argument);
  CHECK_THROWS_AS(watts_to_dbm(-1e-9), std::invalid_argument);
}

TEST_CASE("photon flux from power and wavelength") {
  // 1 mW at 1550 nm: E_photon = hc/lambda = 1.28e-19 J
  CHECK(photon_flux(1e-3, Wavelength(1550.0)) ==
        doctest::Approx(7.8028806796912e15).epsilon(1e-12));
  CHECK(photon_flux(0.0, Wavelength(1550.0)) == 0.0);
  // linear in power
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> watts(1e-15, 1e-3);
  for (int i = 0; i < 100; ++i) {
    const double p = watts(rng);
    CHECK(photon_flux(2.0 * p, Wavelength(1550.0)) ==
          doctest::Approx(2.0 * photon_flux(p, Wavelength(1550.0))).epsilon(1e-15));
  }
  // longer wavelength, lower photon energy, more photons per watt
  CHECK(photon_flux(1e-6, Wavelength(1610.0)) > photon_flux(1e-6, Wavelength(1510.0)));
  CHECK_THROWS_AS(photon_flux(-1e-12, Wavelength(1550.0)), std::invalid_argument);
}

TEST_CASE("combine losses is a plain sum") {
  CHECK(combine_losses({}) == 0.0);
  CHECK(combine_losses({0.5, 45.0, 55.0}) == doctest::Approx(100.5).epsilon(1e-15));
  CHECK(combine_losses({3.0, -1.0}) == doctest::Approx(2.0).epsilon(1e-15));
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> db(-5.0, 60.0);
  std::vector<double> losses(6);
  for (double& l : losses) {
    l = db(rng);
  }
  std::vector<double> reversed(losses.rbegin(), losses.rend());
  CHECK(combine_losses(std::span<const double>(losses)) ==
        doctest::Approx(combine_losses(std::span<const double>(reversed))).epsilon(1e-12));
  CHECK_THROWS_AS(combine_losses({1.0, std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
}

TEST_CASE("wavelength and core validity windows") {
  CHECK_NOTHROW(Wavelength(1500.0));
  CHECK_NOTHROW(Wavelength(1620.0));
  CHECK_THROWS_AS(Wavelength(1499.9), std::invalid_argument);
  CHECK_THROWS_AS(Wavelength(1620.1), std::invalid_argument);
  CHECK_THROWS_AS(Wavelength(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  CHECK_NOTHROW(CoreId(0));
  CHECK_NOTHROW(CoreId(6));
  CHECK_THROWS_AS(CoreId(-1), std::invalid_argument);
  CHECK_THROWS_AS(CoreId(7), std::invalid_argument);
}
