#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qcoex/fiber.hpp"
#include "qcoex/presets.hpp"

using namespace qcoex;

TEST_CASE("hex adjacency") {
  // center touches every ring core
  for (int k = 1; k <= 6; ++k) {
    CHECK(cores_adjacent(CoreId(0), CoreId(k)));
    CHECK(cores_adjacent(CoreId(k), CoreId(0)));
  }
  CHECK(cores_adjacent(CoreId(1), CoreId(2)));
  CHECK(cores_adjacent(CoreId(6), CoreId(1)));  // ring wraps around
  CHECK_FALSE(cores_adjacent(CoreId(1), CoreId(4)));
  CHECK_FALSE(cores_adjacent(CoreId(2), CoreId(5)));
  CHECK_THROWS_AS(cores_adjacent(CoreId(3), CoreId(3)), std::invalid_argument);

  // symmetry and degree: center has 6 neighbours, each ring core 3
  for (int a = 0; a < kCoreCount; ++a) {
    int degree = 0;
    for (int b = 0; b < kCoreCount; ++b) {
      if (a == b) {
        continue;
      }
      const bool ab = cores_adjacent(CoreId(a), CoreId(b));
      CHECK(ab == cores_adjacent(CoreId(b), CoreId(a)));
      degree += ab ? 1 : 0;
    }
    CHECK(degree == (a == 0 ? 6 : 3));
  }
}

TEST_CASE("crosstalk isolation scales linearly with length") {
  const FiberSpec nt = fiber_preset("nt-mcf-2018");
  const FiberSpec ta = fiber_preset("ta-mcf-2018");

  // at the reference length the configured isolation applies exactly
  CHECK(*xt_isolation(nt, CoreId(1), CoreId(0), 2.5) == 45.0);
  CHECK(*xt_isolation(ta, CoreId(1), CoreId(0), 2.5) == 65.0);
  // doubling the length costs 10*log10(2) ~ 3.0103 dB of isolation
  CHECK(*xt_isolation(nt, CoreId(1), CoreId(0), 5.0) ==
        doctest::Approx(41.98970004336019).epsilon(1e-12));
  for (double length : {0.5, 1.0, 2.5, 10.0, 40.0, 100.0}) {
    CHECK(*xt_isolation(nt, CoreId(2), CoreId(0), 2.0 * length) ==
          doctest::Approx(*xt_isolation(nt, CoreId(2), CoreId(0), length) -
                          10.0 * std::log10(2.0))
              .epsilon(1e-12));
    // the trench buys exactly 20 dB at every length
    CHECK(*xt_isolation(ta, CoreId(3), CoreId(0), length) -
              *xt_isolation(nt, CoreId(3), CoreId(0), length) ==
          doctest::Approx(20.0).epsilon(1e-12));
  }
  // shorter than reference means more isolation
  CHECK(*xt_isolation(nt, CoreId(1), CoreId(0), 1.25) > 45.0);

  CHECK_FALSE(xt_isolation(nt, CoreId(1), CoreId(4), 2.5).has_value());
  CHECK_THROWS_AS(xt_isolation(nt, CoreId(1), CoreId(1), 2.5), std::invalid_argument);
  CHECK_THROWS_AS(xt_isolation(nt, CoreId(1), CoreId(0), 0.0), std::invalid_argument);
}

TEST_CASE("single-mode fiber has no crosstalk paths") {
  const FiberSpec smf = fiber_preset("smf-baseline");
  for (int a = 0; a < kCoreCount; ++a) {
    for (int b = 0; b < kCoreCount; ++b) {
      if (a == b) {
        continue;
      }
      CHECK_FALSE(xt_isolation(smf, CoreId(a), CoreId(b), 10.0).has_value());
    }
  }
}

TEST_CASE("isolation matrix override") {
  FiberSpec f = fiber_preset("nt-mcf-2018");
  XtMatrix m{};
  m[0][1] = m[1][0] = 50.0;
  m[2][5] = m[5][2] = 70.0;  // a pair that has no path in the hex model
  f.xt_matrix_db = m;
  CHECK(*xt_isolation(f, CoreId(1), CoreId(0), 2.5) == 50.0);
  CHECK(*xt_isolation(f, CoreId(2), CoreId(5), 5.0) ==
        doctest::Approx(70.0 - 10.0 * std::log10(2.0)).epsilon(1e-12));
  // pairs without a matrix entry have no path, even if hex-adjacent
  CHECK_FALSE(xt_isolation(f, CoreId(2), CoreId(0), 2.5).has_value());

  SUBCASE("asymmetric matrix is rejected") {
    (*f.xt_matrix_db)[0][1] = 51.0;
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  }
  SUBCASE("diagonal entries are rejected") {
    (*f.xt_matrix_db)[3][3] = 40.0;
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  }
  SUBCASE("single-mode fiber cannot carry a matrix") {
    FiberSpec smf = fiber_preset("smf-baseline");
    smf.xt_matrix_db = m;
    CHECK_THROWS_AS(smf.validate(), std::invalid_argument);
  }
}

TEST_CASE("propagation loss") {
  const FiberSpec nt = fiber_preset("nt-mcf-2018");
  CHECK(fiber_loss(nt, 0.0) == 0.0);
  CHECK(fiber_loss(nt, 2.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fiber_loss(nt, 100.0) == doctest::Approx(20.0).epsilon(1e-15));
  CHECK_THROWS_AS(fiber_loss(nt, -1.0), std::invalid_argument);

  FiberSpec bad = nt;
  bad.attenuation_db_per_km = 0.0;
  CHECK_THROWS_AS(fiber_loss(bad, 1.0), std::invalid_argument);
}

TEST_CASE("unknown presets name what exists") {
  CHECK_THROWS_WITH_AS(fiber_preset("nt-mcf-219"),
                       doctest::Contains("nt-mcf-2018"), std::invalid_argument);
  CHECK_THROWS_AS(detector_preset(""), std::invalid_argument);
  CHECK_THROWS_AS(filter_preset("bpf"), std::invalid_argument);
}
