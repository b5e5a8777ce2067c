#include <doctest.h>

#include <string>

#include "qcoex/errors.hpp"
#include "qcoex/scenario.hpp"

using namespace qcoex;

#ifndef QCOEX_REPO_DIR
#error "QCOEX_REPO_DIR must point at the repository root"
#endif

namespace {

const std::string kRepo = QCOEX_REPO_DIR;

}

TEST_CASE("minimal scenario fills defaults") {
  const Scenario s = parse_scenario(R"({
    "fiber": "nt-mcf-2018",
    "detector": "detector-id210",
    "allocation": {"channels": [{"core": 1, "wavelength_nm": 1540, "launch_dbm": -4}]}
  })");
  CHECK(s.link.qkd.mu == 0.5);
  CHECK(s.link.qkd.fec_inefficiency == 1.22);
  CHECK(s.length_km == 2.5);
  CHECK(s.link.allocation.quantum.core.index() == 0);
  CHECK(s.link.allocation.quantum.wavelength.nm() == 1550.0);
  CHECK(s.feasibility.ber_limit == 3.8e-3);
  CHECK_FALSE(s.plan.has_value());
}

TEST_CASE("parse errors carry the JSON path") {
  CHECK_THROWS_WITH_AS(parse_scenario("{"), doctest::Contains("invalid JSON"), ParseError);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"fibre": "nt-mcf-2018"})"),
                       doctest::Contains("unknown field 'fibre'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"fiber": "nt-mcf-219"})"),
                       doctest::Contains("$.fiber"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_scenario(
          R"({"allocation": {"channels": [{"core": 9, "wavelength_nm": 1540, "launch_dbm": -4}]}})"),
      doctest::Contains("$.allocation.channels[0]"), ParseError);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"length_km": -2})"),
                       doctest::Contains("$.length_km"), ParseError);
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"qkd": {"mu": 0.5, "misalignment_error": 0.7}})"),
      ParseError);
}

TEST_CASE("slot collisions are parse errors") {
  CHECK_THROWS_AS(parse_scenario(R"({
    "allocation": {"channels": [
      {"core": 1, "wavelength_nm": 1540, "launch_dbm": -4},
      {"core": 1, "wavelength_nm": 1540, "launch_dbm": -5}
    ]}
  })"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({
    "allocation": {"channels": [{"core": 0, "wavelength_nm": 1550, "launch_dbm": -4}]}
  })"),
                  ParseError);
}

TEST_CASE("wavelength grid membership is enforced") {
  const char* text = R"({
    "wavelength_grid_nm": [1540, 1550],
    "allocation": {"channels": [{"core": 1, "wavelength_nm": 1542, "launch_dbm": -4}]}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("wavelength_grid_nm"),
                       ParseError);
}

TEST_CASE("resolved scenario round-trips byte for byte") {
  for (const char* name :
       {"/scenarios/sidecores-nt-2p5km.json", "/scenarios/sidecores-nt-calibrated.json",
        "/scenarios/plan-demo.json", "/scenarios/smf-baseline.json",
        "/scenarios/leakage-power-sweep.json"}) {
    const Scenario s = load_scenario(kRepo + name);
    const std::string once = resolved_scenario_json(s);
    const std::string twice = resolved_scenario_json(parse_scenario(once));
    CHECK(once == twice);
  }
}

TEST_CASE("fiber field overrides on top of a preset") {
  const Scenario s = parse_scenario(R"({
    "fiber": {"preset": "nt-mcf-2018", "xt_adjacent_db": 50.0}
  })");
  CHECK(s.link.fiber.xt_adjacent_db == 50.0);
  CHECK(s.link.fiber.attenuation_db_per_km == 0.2);
  CHECK(s.link.fiber.variant == FiberVariant::NonTrench);
}

TEST_CASE("end-to-end keyrate matches the calibrated operating point") {
  const Scenario s = load_scenario(kRepo + "/scenarios/sidecores-nt-calibrated.json");
  const Report rep = run_command(Command::KeyRate, s);
  REQUIRE(rep.rows.size() == 1);
  REQUIRE(rep.columns.size() == 9);
  CHECK(rep.columns[8] == "R_bps");
  CHECK(std::get<double>(rep.rows[0][8]) ==
        doctest::Approx(4399.419080940876).epsilon(1e-12));
}

TEST_CASE("reports are byte-deterministic") {
  const Scenario s = load_scenario(kRepo + "/scenarios/sidecores-nt-2p5km.json");
  const Report a = run_command(Command::Leakage, s);
  const Report b = run_command(Command::Leakage, s);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv().rfind("# qcoex", 0) == 0);
  // dark + six channels + total
  CHECK(a.rows.size() == 8);
}

TEST_CASE("sweep commands demand their axis") {
  const Scenario s = parse_scenario(R"({"fiber": "nt-mcf-2018"})");
  CHECK_THROWS_AS(run_command(Command::SweepDistance, s), ParseError);
  CHECK_THROWS_AS(run_command(Command::SweepWavelength, s), ParseError);
  CHECK_THROWS_AS(run_command(Command::Plan, s), ParseError);
}

TEST_CASE("leakage power sweep emits one row per launch power") {
  const Scenario s = load_scenario(kRepo + "/scenarios/leakage-power-sweep.json");
  const Report rep = run_command(Command::Leakage, s);
  CHECK(rep.columns.front() == "launch_dbm");
  REQUIRE(rep.rows.size() == 8);
  // 1 dB per step: leak rate grows strictly, dark stays fixed
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    CHECK(std::get<double>(rep.rows[i][2]) > std::get<double>(rep.rows[i - 1][2]));
    CHECK(std::get<double>(rep.rows[i][1]) == 13.0);
  }
}

TEST_CASE("plan report summarizes selection") {
  const Scenario s = load_scenario(kRepo + "/scenarios/plan-demo.json");
  const Report rep = run_command(Command::Plan, s);
  CHECK(rep.rows.size() == 42);
  bool found = false;
  for (const auto& [key, value] : rep.summary) {
    if (key == "selected_count") {
      CHECK(std::get<std::int64_t>(value) == 36);
      found = true;
    }
  }
  CHECK(found);
}
