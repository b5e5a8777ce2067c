#include <doctest.h>

#include <cmath>
#include <random>

#include "qcoex/errors.hpp"
#include "qcoex/planner.hpp"
#include "qcoex/presets.hpp"

using namespace qcoex;

namespace {

QkdLinkParams calibrated_qkd() {
  QkdLinkParams p;
  p.mu = 0.25;
  p.misalignment_error = 0.019;
  return p;
}

PlanningProblem base_problem() {
  PlanningProblem p;
  p.fiber = fiber_preset("nt-mcf-2018");
  p.filter = filter_preset("fbg-bpf-2018");
  p.filter.rejection_steps = {{0.0, 0.0}, {2.0, 47.0}, {4.0, 55.0}};
  p.detector = detector_preset("detector-id210");
  p.qkd = calibrated_qkd();
  p.length_km = 2.5;
  p.extra_loss_db = 3.5;
  return p;
}

}

TEST_CASE("noise budget by bisection") {
  const QkdLinkParams qkd = calibrated_qkd();
  const FiberSpec nt = fiber_preset("nt-mcf-2018");
  const DetectorSpec det = detector_preset("detector-id210");
  const double eta = channel_transmittance(nt, 2.5, det, 3.5);
  const double dark = det.dark_count_prob_per_gate;

  SUBCASE("frozen reference budgets") {
    CHECK(noise_budget(qkd, eta, 1e6, 0.0, dark) ==
          doctest::Approx(0.0017036628388287503).epsilon(1e-5));
    CHECK(noise_budget(qkd, eta, 1e6, 1000.0, dark) ==
          doctest::Approx(0.00131187170090992).epsilon(1e-5));
    CHECK(noise_budget(qkd, eta, 1e6, 4400.0, dark) ==
          doctest::Approx(0.00017787827384192496).epsilon(1e-5));
  }

  SUBCASE("budget shrinks as the rate floor rises") {
    const double loose = noise_budget(qkd, eta, 1e6, 0.0, dark);
    const double mid = noise_budget(qkd, eta, 1e6, 1000.0, dark);
    const double tight = noise_budget(qkd, eta, 1e6, 4400.0, dark);
    CHECK(tight < mid);
    CHECK(mid < loose);
    CHECK(tight > dark);
  }

  SUBCASE("budget boundary agrees with a fine grid scan") {
    const double budget = noise_budget(qkd, eta, 1e6, 1000.0, dark);
    // scan one million points over [dark, 2 * budget]: the last sustaining
    // grid point must straddle the bisection result
    const double hi = 2.0 * budget;
    double last_ok = dark;
    const int n = 1000000;
    for (int i = 0; i <= n; ++i) {
      const double y0 = dark + (hi - dark) * i / n;
      if (key_rate(qkd, eta, y0, 1e6).r_per_gate_raw * 1e6 >= 1000.0) {
        last_ok = y0;
      }
    }
    CHECK(std::fabs(last_ok - budget) < (hi - dark) / n + 1e-6 * budget);
  }

  SUBCASE("rate exactly at the dark floor is satisfiable") {
    const double dark_rate = key_rate(qkd, eta, dark, 1e6).r_bps;
    CHECK_NOTHROW(noise_budget(qkd, eta, 1e6, dark_rate, dark));
  }

  SUBCASE("unreachable floor throws") {
    const double dark_rate = key_rate(qkd, eta, dark, 1e6).r_bps;
    CHECK_THROWS_AS(noise_budget(qkd, eta, 1e6, dark_rate * 1.01, dark), NoBudgetError);
  }
}

TEST_CASE("slot ranking") {
  PlanningProblem p = base_problem();

  SUBCASE("near-band slot ranks last despite equal crosstalk") {
    p.candidates = {
        {CoreId(1), Wavelength(1540.0), -4.0},
        {CoreId(1), Wavelength(1552.0), -4.0},  // only 47 dB rejection
        {CoreId(1), Wavelength(1546.0), -4.0},
    };
    const auto ranked = rank_slots(p);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked.back().slot.wavelength.nm() == 1552.0);
    // 8 dB less rejection and a slightly higher photon flux
    CHECK(ranked.back().leak_probability / ranked.front().leak_probability ==
          doctest::Approx(std::pow(10.0, 0.8) * 1552.0 / 1540.0).epsilon(1e-12));
  }

  SUBCASE("ties break on core index then wavelength") {
    p.candidates = {
        {CoreId(5), Wavelength(1540.0), -4.0},
        {CoreId(2), Wavelength(1540.0), -4.0},  // identical leak, lower core
    };
    const auto ranked = rank_slots(p);
    CHECK(ranked[0].leak_probability == ranked[1].leak_probability);
    CHECK(ranked[0].slot.core.index() == 2);
  }

  SUBCASE("non-adjacent quantum core sees zero leak from far ring cores") {
    p.quantum.core = CoreId(1);
    p.quantum.wavelength = Wavelength(1550.0);
    p.candidates = {
        {CoreId(4), Wavelength(1540.0), -4.0},  // opposite side of the ring
        {CoreId(2), Wavelength(1540.0), -4.0},
    };
    const auto ranked = rank_slots(p);
    CHECK(ranked[0].slot.core.index() == 4);
    CHECK(ranked[0].leak_probability == 0.0);
    CHECK(ranked[1].leak_probability > 0.0);
  }

  SUBCASE("candidate on the quantum slot is a configuration error") {
    p.candidates = {{CoreId(0), Wavelength(1550.0), -4.0}};
    CHECK_THROWS_AS(rank_slots(p), std::invalid_argument);
  }
}

TEST_CASE("plan allocation") {
  PlanningProblem p = base_problem();

  SUBCASE("42-slot grid: every side slot fits, in-core slots blow the budget") {
    p.min_key_rate_bps = 1000.0;
    for (int core = 0; core <= 6; ++core) {
      for (double nm : {1530.0, 1534.0, 1538.0, 1542.0, 1546.0, 1554.0}) {
        p.candidates.push_back({CoreId(core), Wavelength(nm), -4.0});
      }
    }
    const PlanResult result = plan_allocation(p);
    CHECK(result.selected.size() == 36);
    CHECK(result.rejected.size() == 6);
    for (const RankedSlot& rs : result.rejected) {
      CHECK(rs.slot.core.index() == 0);
      CHECK(rs.note == "over noise budget");
    }
    CHECK(result.achieved.y0 == doctest::Approx(0.001003682416519327).epsilon(1e-12));
    CHECK(result.achieved.r_bps == doctest::Approx(1834.9479302797333).epsilon(1e-12));
    CHECK(result.achieved.r_bps >= p.min_key_rate_bps);
    CHECK(result.budget_utilization > 0.0);
    CHECK(result.budget_utilization <= 1.0);
  }

  SUBCASE("infeasible classical slots are rejected with the reason") {
    p.min_key_rate_bps = 1000.0;
    p.candidates = {
        {CoreId(1), Wavelength(1540.0), -4.0},
        {CoreId(2), Wavelength(1540.0), -12.0},  // below the launch window
        {CoreId(3), Wavelength(1565.0), -4.0},   // outside the wavelength window
    };
    const PlanResult result = plan_allocation(p);
    CHECK(result.selected.size() == 1);
    REQUIRE(result.rejected.size() == 2);
    CHECK(result.rejected[0].note == "launch power below validated window");
    CHECK(result.rejected[1].note == "wavelength outside validated window");
  }

  SUBCASE("selected set maximizes slot count under the budget") {
    // exhaustive cross-check on a small instance
    p.min_key_rate_bps = 2000.0;
    p.candidates = {
        {CoreId(1), Wavelength(1540.0), -4.0}, {CoreId(2), Wavelength(1540.0), -4.0},
        {CoreId(3), Wavelength(1540.0), -4.0}, {CoreId(1), Wavelength(1552.0), -8.0},
        {CoreId(4), Wavelength(1542.0), -4.0}, {CoreId(5), Wavelength(1546.0), -6.0},
    };
    const PlanResult result = plan_allocation(p);
    const auto ranked = rank_slots(p);
    const double dark = p.detector.dark_count_prob_per_gate;
    size_t best_count = 0;
    for (unsigned mask = 0; mask < (1u << ranked.size()); ++mask) {
      double total = dark;
      size_t count = 0;
      for (size_t i = 0; i < ranked.size(); ++i) {
        if (mask & (1u << i)) {
          total += ranked[i].leak_probability;
          ++count;
        }
      }
      if (total <= result.noise_budget_per_gate) {
        best_count = std::max(best_count, count);
      }
    }
    CHECK(result.selected.size() == best_count);
  }

  SUBCASE("impossible rate floor throws") {
    p.min_key_rate_bps = 1e9;
    p.candidates = {{CoreId(1), Wavelength(1540.0), -4.0}};
    CHECK_THROWS_AS(plan_allocation(p), NoBudgetError);
  }

  SUBCASE("deterministic across calls") {
    p.min_key_rate_bps = 500.0;
    for (int core = 1; core <= 6; ++core) {
      p.candidates.push_back({CoreId(core), Wavelength(1538.0), -4.0});
      p.candidates.push_back({CoreId(core), Wavelength(1554.0), -5.0});
    }
    const PlanResult a = plan_allocation(p);
    const PlanResult b = plan_allocation(p);
    REQUIRE(a.selected.size() == b.selected.size());
    for (size_t i = 0; i < a.selected.size(); ++i) {
      CHECK(a.selected[i].slot.core.index() == b.selected[i].slot.core.index());
      CHECK(a.selected[i].leak_probability == b.selected[i].leak_probability);
    }
    CHECK(a.achieved.r_bps == b.achieved.r_bps);
  }
}
