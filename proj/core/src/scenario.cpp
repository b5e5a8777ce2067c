#include "qcoex/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qcoex/errors.hpp"
#include "qcoex/presets.hpp"

namespace qcoex {

namespace {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("scenario: " + path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (std::string_view a : allowed) {
      if (it.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail(path, "unknown field '" + it.key() + "'");
    }
  }
}

const json& require_object(const json& obj, const std::string& path) {
  if (!obj.is_object()) {
    fail(path, "expected an object");
  }
  return obj;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    fail(path, "expected a number");
  }
  return v.get<double>();
}

double number_field(const json& obj, const std::string& path, const char* key,
                    double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  return as_number(obj.at(key), path + "." + key);
}

bool bool_field(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_boolean()) {
    fail(path + "." + key, "expected a boolean");
  }
  return v.get<bool>();
}

int int_field(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) {
    fail(path, std::string("missing field '") + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    fail(path + "." + key, "expected an integer");
  }
  return v.get<int>();
}

CoreId core_field(const json& obj, const std::string& path, const char* key) {
  try {
    return CoreId(int_field(obj, path, key));
  } catch (const std::invalid_argument& e) {
    fail(path + "." + key, e.what());
  }
}

Wavelength wavelength_field(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) {
    fail(path, std::string("missing field '") + key + "'");
  }
  try {
    return Wavelength(as_number(obj.at(key), path + "." + key));
  } catch (const std::invalid_argument& e) {
    fail(path + "." + key, e.what());
  }
}

FiberVariant parse_variant(const std::string& name, const std::string& path) {
  if (name == "non-trench") {
    return FiberVariant::NonTrench;
  }
  if (name == "trench-assisted") {
    return FiberVariant::TrenchAssisted;
  }
  if (name == "single-mode") {
    return FiberVariant::SingleMode;
  }
  fail(path, "unknown fiber variant '" + name +
                 "'; known: non-trench trench-assisted single-mode");
}

const char* variant_name(FiberVariant v) {
  switch (v) {
    case FiberVariant::NonTrench:
      return "non-trench";
    case FiberVariant::TrenchAssisted:
      return "trench-assisted";
    case FiberVariant::SingleMode:
      return "single-mode";
  }
  return "?";
}

FiberSpec parse_fiber(const json& node, const std::string& path) {
  if (node.is_string()) {
    try {
      return fiber_preset(node.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  require_object(node, path);
  check_keys(node, path,
             {"preset", "variant", "attenuation_db_per_km", "dispersion_ps_nm_km",
              "length_km", "xt_adjacent_db", "xt_reference_length_km", "xt_matrix_db"});
  FiberSpec f;
  if (node.contains("preset")) {
    const json& p = node.at("preset");
    if (!p.is_string()) {
      fail(path + ".preset", "expected a string");
    }
    try {
      f = fiber_preset(p.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path + ".preset", e.what());
    }
  }
  if (node.contains("variant")) {
    const json& v = node.at("variant");
    if (!v.is_string()) {
      fail(path + ".variant", "expected a string");
    }
    f.variant = parse_variant(v.get<std::string>(), path + ".variant");
  }
  f.attenuation_db_per_km =
      number_field(node, path, "attenuation_db_per_km", f.attenuation_db_per_km);
  f.dispersion_ps_nm_km = number_field(node, path, "dispersion_ps_nm_km", f.dispersion_ps_nm_km);
  f.length_km = number_field(node, path, "length_km", f.length_km);
  f.xt_adjacent_db = number_field(node, path, "xt_adjacent_db", f.xt_adjacent_db);
  f.xt_reference_length_km =
      number_field(node, path, "xt_reference_length_km", f.xt_reference_length_km);
  if (node.contains("xt_matrix_db")) {
    const json& m = node.at("xt_matrix_db");
    const std::string mpath = path + ".xt_matrix_db";
    if (!m.is_array() || m.size() != kCoreCount) {
      fail(mpath, "expected an array of 7 rows");
    }
    XtMatrix matrix{};
    for (int i = 0; i < kCoreCount; ++i) {
      const json& row = m.at(i);
      const std::string rpath = mpath + "[" + std::to_string(i) + "]";
      if (!row.is_array() || row.size() != kCoreCount) {
        fail(rpath, "expected an array of 7 entries");
      }
      for (int j = 0; j < kCoreCount; ++j) {
        const json& e = row.at(j);
        if (e.is_null()) {
          continue;
        }
        matrix[i][j] = as_number(e, rpath + "[" + std::to_string(j) + "]");
      }
    }
    f.xt_matrix_db = matrix;
  }
  return f;
}

DetectorSpec parse_detector(const json& node, const std::string& path) {
  if (node.is_string()) {
    try {
      return detector_preset(node.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  require_object(node, path);
  check_keys(node, path,
             {"preset", "efficiency", "gate_width_s", "repetition_rate_hz",
              "dark_count_prob_per_gate", "dead_time_s"});
  DetectorSpec d;
  if (node.contains("preset")) {
    const json& p = node.at("preset");
    if (!p.is_string()) {
      fail(path + ".preset", "expected a string");
    }
    try {
      d = detector_preset(p.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path + ".preset", e.what());
    }
  }
  d.efficiency = number_field(node, path, "efficiency", d.efficiency);
  d.gate_width_s = number_field(node, path, "gate_width_s", d.gate_width_s);
  d.repetition_rate_hz = number_field(node, path, "repetition_rate_hz", d.repetition_rate_hz);
  d.dark_count_prob_per_gate =
      number_field(node, path, "dark_count_prob_per_gate", d.dark_count_prob_per_gate);
  d.dead_time_s = number_field(node, path, "dead_time_s", d.dead_time_s);
  return d;
}

FilterSpec parse_filter(const json& node, const std::string& path) {
  if (node.is_string()) {
    try {
      return filter_preset(node.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  require_object(node, path);
  check_keys(node, path, {"preset", "center_nm", "insertion_loss_db", "rejection_steps"});
  FilterSpec f;
  if (node.contains("preset")) {
    const json& p = node.at("preset");
    if (!p.is_string()) {
      fail(path + ".preset", "expected a string");
    }
    try {
      f = filter_preset(p.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path + ".preset", e.what());
    }
  }
  f.center_nm = number_field(node, path, "center_nm", f.center_nm);
  f.insertion_loss_db = number_field(node, path, "insertion_loss_db", f.insertion_loss_db);
  if (node.contains("rejection_steps")) {
    const json& steps = node.at("rejection_steps");
    const std::string spath = path + ".rejection_steps";
    if (!steps.is_array()) {
      fail(spath, "expected an array of [offset_nm, rejection_db] pairs");
    }
    f.rejection_steps.clear();
    for (size_t i = 0; i < steps.size(); ++i) {
      const json& s = steps.at(i);
      const std::string epath = spath + "[" + std::to_string(i) + "]";
      if (!s.is_array() || s.size() != 2) {
        fail(epath, "expected [offset_nm, rejection_db]");
      }
      f.rejection_steps.emplace_back(as_number(s.at(0), epath + "[0]"),
                                     as_number(s.at(1), epath + "[1]"));
    }
  }
  return f;
}

void parse_qkd(const json& node, const std::string& path, LinkModel& link) {
  require_object(node, path);
  check_keys(node, path,
             {"mu", "misalignment_error", "fec_inefficiency", "sift_factor", "optimize_mu",
              "mu_search"});
  link.qkd.mu = number_field(node, path, "mu", link.qkd.mu);
  link.qkd.misalignment_error =
      number_field(node, path, "misalignment_error", link.qkd.misalignment_error);
  link.qkd.fec_inefficiency =
      number_field(node, path, "fec_inefficiency", link.qkd.fec_inefficiency);
  link.qkd.sift_factor = number_field(node, path, "sift_factor", link.qkd.sift_factor);
  link.use_optimal_mu = bool_field(node, path, "optimize_mu", link.use_optimal_mu);
  if (node.contains("mu_search")) {
    const json& range = node.at("mu_search");
    const std::string rpath = path + ".mu_search";
    if (!range.is_array() || range.size() != 2) {
      fail(rpath, "expected [lo, hi]");
    }
    link.mu_search_lo = as_number(range.at(0), rpath + "[0]");
    link.mu_search_hi = as_number(range.at(1), rpath + "[1]");
    if (!(link.mu_search_lo > 0.0 && link.mu_search_hi > link.mu_search_lo)) {
      fail(rpath, "must satisfy 0 < lo < hi");
    }
  }
}

void parse_allocation(const json& node, const std::string& path, ChannelAllocation& alloc) {
  require_object(node, path);
  check_keys(node, path, {"quantum", "channels"});
  if (node.contains("quantum")) {
    const json& q = require_object(node.at("quantum"), path + ".quantum");
    check_keys(q, path + ".quantum", {"core", "wavelength_nm"});
    alloc.quantum.core = core_field(q, path + ".quantum", "core");
    alloc.quantum.wavelength = wavelength_field(q, path + ".quantum", "wavelength_nm");
  }
  if (node.contains("channels")) {
    const json& chs = node.at("channels");
    const std::string cpath = path + ".channels";
    if (!chs.is_array()) {
      fail(cpath, "expected an array");
    }
    alloc.channels.clear();
    for (size_t i = 0; i < chs.size(); ++i) {
      const std::string epath = cpath + "[" + std::to_string(i) + "]";
      const json& c = require_object(chs.at(i), epath);
      check_keys(c, epath, {"core", "wavelength_nm", "launch_dbm"});
      DataChannel ch;
      ch.core = core_field(c, epath, "core");
      ch.wavelength = wavelength_field(c, epath, "wavelength_nm");
      if (!c.contains("launch_dbm")) {
        fail(epath, "missing field 'launch_dbm'");
      }
      ch.launch_dbm = as_number(c.at("launch_dbm"), epath + ".launch_dbm");
      alloc.channels.push_back(ch);
    }
  }
}

void parse_feasibility(const json& node, const std::string& path,
                       ClassicalFeasibility& env) {
  require_object(node, path);
  check_keys(node, path,
             {"min_launch_dbm", "max_launch_dbm", "min_wavelength_nm", "max_wavelength_nm",
              "ber_limit", "ber_table"});
  env.min_launch_dbm = number_field(node, path, "min_launch_dbm", env.min_launch_dbm);
  env.max_launch_dbm = number_field(node, path, "max_launch_dbm", env.max_launch_dbm);
  env.min_wavelength_nm = number_field(node, path, "min_wavelength_nm", env.min_wavelength_nm);
  env.max_wavelength_nm = number_field(node, path, "max_wavelength_nm", env.max_wavelength_nm);
  env.ber_limit = number_field(node, path, "ber_limit", env.ber_limit);
  if (node.contains("ber_table")) {
    const json& table = node.at("ber_table");
    const std::string tpath = path + ".ber_table";
    if (!table.is_array()) {
      fail(tpath, "expected an array");
    }
    env.ber_table.clear();
    for (size_t i = 0; i < table.size(); ++i) {
      const std::string epath = tpath + "[" + std::to_string(i) + "]";
      const json& s = require_object(table.at(i), epath);
      check_keys(s, epath, {"wavelength_nm", "launch_dbm", "ber"});
      BerSample sample;
      sample.wavelength_nm = number_field(s, epath, "wavelength_nm", 0.0);
      sample.launch_dbm = number_field(s, epath, "launch_dbm", 0.0);
      if (!s.contains("ber")) {
        fail(epath, "missing field 'ber'");
      }
      sample.ber = as_number(s.at("ber"), epath + ".ber");
      env.ber_table.push_back(sample);
    }
  }
}

void parse_sweep(const json& node, const std::string& path, SweepSpec& sweep) {
  require_object(node, path);
  check_keys(node, path, {"lengths_km", "wavelengths_nm", "launch_dbm"});
  const auto read_list = [&](const char* key, std::vector<double>& out) {
    if (!node.contains(key)) {
      return;
    }
    const json& arr = node.at(key);
    const std::string apath = path + "." + key;
    if (!arr.is_array() || arr.empty()) {
      fail(apath, "expected a non-empty array of numbers");
    }
    out.clear();
    for (size_t i = 0; i < arr.size(); ++i) {
      out.push_back(as_number(arr.at(i), apath + "[" + std::to_string(i) + "]"));
    }
  };
  read_list("lengths_km", sweep.lengths_km);
  read_list("wavelengths_nm", sweep.wavelengths_nm);
  read_list("launch_dbm", sweep.launch_dbm);
  for (double l : sweep.lengths_km) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      fail(path + ".lengths_km", "lengths must be > 0 km");
    }
  }
  for (double nm : sweep.wavelengths_nm) {
    try {
      Wavelength probe{nm};
    } catch (const std::invalid_argument& e) {
      fail(path + ".wavelengths_nm", e.what());
    }
  }
  for (double p : sweep.launch_dbm) {
    if (!std::isfinite(p)) {
      fail(path + ".launch_dbm", "launch powers must be finite");
    }
  }
}

void parse_plan(const json& node, const std::string& path, PlanSpec& plan) {
  require_object(node, path);
  check_keys(node, path, {"min_key_rate_bps", "candidates"});
  plan.min_key_rate_bps = number_field(node, path, "min_key_rate_bps", 0.0);
  if (!node.contains("candidates")) {
    fail(path, "missing field 'candidates'");
  }
  const json& arr = node.at("candidates");
  const std::string apath = path + ".candidates";
  if (!arr.is_array()) {
    fail(apath, "expected an array");
  }
  for (size_t i = 0; i < arr.size(); ++i) {
    const std::string epath = apath + "[" + std::to_string(i) + "]";
    const json& c = require_object(arr.at(i), epath);
    check_keys(c, epath, {"core", "wavelength_nm", "launch_dbm"});
    CandidateSlot slot;
    slot.core = core_field(c, epath, "core");
    slot.wavelength = wavelength_field(c, epath, "wavelength_nm");
    if (!c.contains("launch_dbm")) {
      fail(epath, "missing field 'launch_dbm'");
    }
    slot.launch_dbm = as_number(c.at("launch_dbm"), epath + ".launch_dbm");
    plan.candidates.push_back(slot);
  }
}

void check_on_grid(const std::vector<double>& grid, Wavelength w, const std::string& path) {
  for (double g : grid) {
    if (std::fabs(g - w.nm()) < 1e-9) {
      return;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "wavelength %g nm is not on wavelength_grid_nm", w.nm());
  fail(path, buf);
}

PlanningProblem problem_from_scenario(const Scenario& s) {
  if (!s.plan) {
    throw ParseError("scenario: plan section is required for the plan command");
  }
  PlanningProblem p;
  p.fiber = s.link.fiber;
  p.filter = s.link.filter;
  p.detector = s.link.detector;
  p.qkd = s.link.qkd;
  p.quantum = s.link.allocation.quantum;
  p.length_km = s.length_km;
  p.extra_loss_db = s.link.extra_loss_db;
  p.extra_path_loss_db = s.link.extra_path_loss_db;
  p.feasibility = s.feasibility;
  p.min_key_rate_bps = s.plan->min_key_rate_bps;
  p.candidates = s.plan->candidates;
  return p;
}

std::vector<Cell> key_rate_row(double length_km, const KeyRateResult& r) {
  return {length_km,  r.eta,       r.y0,          r.gains.q_mu, r.gains.e_mu,
          r.gains.q1, r.gains.e1,  r.r_per_gate,  r.r_bps};
}

const std::vector<std::string> kKeyRateColumns = {
    "length_km", "eta", "Y0", "Q_mu", "E_mu", "Q1", "e1", "R_per_gate", "R_bps"};

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "leakage") {
    return Command::Leakage;
  }
  if (name == "keyrate") {
    return Command::KeyRate;
  }
  if (name == "sweep-distance") {
    return Command::SweepDistance;
  }
  if (name == "sweep-wavelength") {
    return Command::SweepWavelength;
  }
  if (name == "plan") {
    return Command::Plan;
  }
  throw std::invalid_argument(
      "unknown command '" + std::string(name) +
      "'; known: leakage keyrate sweep-distance sweep-wavelength plan");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::Leakage:
      return "leakage";
    case Command::KeyRate:
      return "keyrate";
    case Command::SweepDistance:
      return "sweep-distance";
    case Command::SweepWavelength:
      return "sweep-wavelength";
    case Command::Plan:
      return "plan";
  }
  return "?";
}

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
  }
  require_object(doc, "$");
  check_keys(doc, "$",
             {"description", "fiber", "detector", "filter", "qkd", "allocation", "length_km",
              "extra_loss_db", "extra_path_loss_db", "feasibility", "wavelength_grid_nm",
              "sweep", "plan"});
  Scenario s;
  if (doc.contains("description") && !doc.at("description").is_string()) {
    fail("$.description", "expected a string");
  }
  if (doc.contains("fiber")) {
    s.link.fiber = parse_fiber(doc.at("fiber"), "$.fiber");
  }
  if (doc.contains("detector")) {
    s.link.detector = parse_detector(doc.at("detector"), "$.detector");
  }
  if (doc.contains("filter")) {
    s.link.filter = parse_filter(doc.at("filter"), "$.filter");
  }
  if (doc.contains("qkd")) {
    parse_qkd(doc.at("qkd"), "$.qkd", s.link);
  }
  if (doc.contains("allocation")) {
    parse_allocation(doc.at("allocation"), "$.allocation", s.link.allocation);
  }
  s.length_km = number_field(doc, "$", "length_km", s.length_km);
  if (!(s.length_km > 0.0) || !std::isfinite(s.length_km)) {
    fail("$.length_km", "must be > 0 km");
  }
  s.link.extra_loss_db = number_field(doc, "$", "extra_loss_db", s.link.extra_loss_db);
  s.link.extra_path_loss_db =
      number_field(doc, "$", "extra_path_loss_db", s.link.extra_path_loss_db);
  if (doc.contains("feasibility")) {
    parse_feasibility(doc.at("feasibility"), "$.feasibility", s.feasibility);
  }
  if (doc.contains("wavelength_grid_nm")) {
    const json& grid = doc.at("wavelength_grid_nm");
    if (!grid.is_array() || grid.empty()) {
      fail("$.wavelength_grid_nm", "expected a non-empty array");
    }
    std::vector<double> values;
    for (size_t i = 0; i < grid.size(); ++i) {
      values.push_back(
          as_number(grid.at(i), "$.wavelength_grid_nm[" + std::to_string(i) + "]"));
    }
    s.wavelength_grid_nm = values;
  }
  if (doc.contains("sweep")) {
    parse_sweep(doc.at("sweep"), "$.sweep", s.sweep);
  }
  if (doc.contains("plan")) {
    PlanSpec plan;
    parse_plan(doc.at("plan"), "$.plan", plan);
    s.plan = plan;
  }

  // cross-field validation; configuration errors are parse errors
  try {
    s.link.fiber.validate();
    s.link.filter.validate();
    s.link.detector.validate();
    s.link.qkd.validate();
    s.link.allocation.validate(s.link.fiber);
    s.feasibility.validate();
    if (!(s.link.extra_loss_db >= 0.0) || !std::isfinite(s.link.extra_loss_db)) {
      throw std::invalid_argument("extra_loss_db must be >= 0");
    }
    if (!(s.link.extra_path_loss_db >= 0.0) || !std::isfinite(s.link.extra_path_loss_db)) {
      throw std::invalid_argument("extra_path_loss_db must be >= 0");
    }
    if (s.plan) {
      problem_from_scenario(s).validate();
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (s.wavelength_grid_nm) {
    for (size_t i = 0; i < s.link.allocation.channels.size(); ++i) {
      check_on_grid(*s.wavelength_grid_nm, s.link.allocation.channels[i].wavelength,
                    "$.allocation.channels[" + std::to_string(i) + "]");
    }
    if (s.plan) {
      for (size_t i = 0; i < s.plan->candidates.size(); ++i) {
        check_on_grid(*s.wavelength_grid_nm, s.plan->candidates[i].wavelength,
                      "$.plan.candidates[" + std::to_string(i) + "]");
      }
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::ios_base::failure("cannot open scenario file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw std::ios_base::failure("cannot read scenario file: " + path);
  }
  return parse_scenario(buf.str());
}

std::string resolved_scenario_json(const Scenario& s) {
  ordered doc;
  {
    ordered f;
    f["variant"] = variant_name(s.link.fiber.variant);
    f["attenuation_db_per_km"] = s.link.fiber.attenuation_db_per_km;
    f["dispersion_ps_nm_km"] = s.link.fiber.dispersion_ps_nm_km;
    f["length_km"] = s.link.fiber.length_km;
    f["xt_adjacent_db"] = s.link.fiber.xt_adjacent_db;
    f["xt_reference_length_km"] = s.link.fiber.xt_reference_length_km;
    if (s.link.fiber.xt_matrix_db) {
      ordered rows = ordered::array();
      for (int i = 0; i < kCoreCount; ++i) {
        ordered row = ordered::array();
        for (int j = 0; j < kCoreCount; ++j) {
          const auto& e = (*s.link.fiber.xt_matrix_db)[i][j];
          if (e) {
            row.push_back(*e);
          } else {
            row.push_back(nullptr);
          }
        }
        rows.push_back(row);
      }
      f["xt_matrix_db"] = rows;
    }
    doc["fiber"] = f;
  }
  {
    ordered d;
    d["efficiency"] = s.link.detector.efficiency;
    d["gate_width_s"] = s.link.detector.gate_width_s;
    d["repetition_rate_hz"] = s.link.detector.repetition_rate_hz;
    d["dark_count_prob_per_gate"] = s.link.detector.dark_count_prob_per_gate;
    d["dead_time_s"] = s.link.detector.dead_time_s;
    doc["detector"] = d;
  }
  {
    ordered f;
    f["center_nm"] = s.link.filter.center_nm;
    f["insertion_loss_db"] = s.link.filter.insertion_loss_db;
    ordered steps = ordered::array();
    for (const auto& [offset, db] : s.link.filter.rejection_steps) {
      steps.push_back(ordered::array({offset, db}));
    }
    f["rejection_steps"] = steps;
    doc["filter"] = f;
  }
  {
    ordered q;
    q["mu"] = s.link.qkd.mu;
    q["misalignment_error"] = s.link.qkd.misalignment_error;
    q["fec_inefficiency"] = s.link.qkd.fec_inefficiency;
    q["sift_factor"] = s.link.qkd.sift_factor;
    q["optimize_mu"] = s.link.use_optimal_mu;
    q["mu_search"] = ordered::array({s.link.mu_search_lo, s.link.mu_search_hi});
    doc["qkd"] = q;
  }
  doc["length_km"] = s.length_km;
  doc["extra_loss_db"] = s.link.extra_loss_db;
  doc["extra_path_loss_db"] = s.link.extra_path_loss_db;
  {
    ordered alloc;
    ordered quantum;
    quantum["core"] = s.link.allocation.quantum.core.index();
    quantum["wavelength_nm"] = s.link.allocation.quantum.wavelength.nm();
    alloc["quantum"] = quantum;
    ordered channels = ordered::array();
    for (const DataChannel& ch : s.link.allocation.channels) {
      ordered c;
      c["core"] = ch.core.index();
      c["wavelength_nm"] = ch.wavelength.nm();
      c["launch_dbm"] = ch.launch_dbm;
      channels.push_back(c);
    }
    alloc["channels"] = channels;
    doc["allocation"] = alloc;
  }
  {
    ordered env;
    env["min_launch_dbm"] = s.feasibility.min_launch_dbm;
    env["max_launch_dbm"] = s.feasibility.max_launch_dbm;
    env["min_wavelength_nm"] = s.feasibility.min_wavelength_nm;
    env["max_wavelength_nm"] = s.feasibility.max_wavelength_nm;
    env["ber_limit"] = s.feasibility.ber_limit;
    if (!s.feasibility.ber_table.empty()) {
      ordered table = ordered::array();
      for (const BerSample& sample : s.feasibility.ber_table) {
        ordered e;
        e["wavelength_nm"] = sample.wavelength_nm;
        e["launch_dbm"] = sample.launch_dbm;
        e["ber"] = sample.ber;
        table.push_back(e);
      }
      env["ber_table"] = table;
    }
    doc["feasibility"] = env;
  }
  if (s.wavelength_grid_nm) {
    doc["wavelength_grid_nm"] = *s.wavelength_grid_nm;
  }
  if (!s.sweep.lengths_km.empty() || !s.sweep.wavelengths_nm.empty() ||
      !s.sweep.launch_dbm.empty()) {
    ordered sweep;
    if (!s.sweep.lengths_km.empty()) {
      sweep["lengths_km"] = s.sweep.lengths_km;
    }
    if (!s.sweep.wavelengths_nm.empty()) {
      sweep["wavelengths_nm"] = s.sweep.wavelengths_nm;
    }
    if (!s.sweep.launch_dbm.empty()) {
      sweep["launch_dbm"] = s.sweep.launch_dbm;
    }
    doc["sweep"] = sweep;
  }
  if (s.plan) {
    ordered plan;
    plan["min_key_rate_bps"] = s.plan->min_key_rate_bps;
    ordered candidates = ordered::array();
    for (const CandidateSlot& c : s.plan->candidates) {
      ordered e;
      e["core"] = c.core.index();
      e["wavelength_nm"] = c.wavelength.nm();
      e["launch_dbm"] = c.launch_dbm;
      candidates.push_back(e);
    }
    plan["candidates"] = candidates;
    doc["plan"] = plan;
  }
  return doc.dump();
}

Report run_command(Command command, const Scenario& s) {
  Report rep;
  rep.command = to_string(command);
  rep.scenario_json = resolved_scenario_json(s);

  switch (command) {
    case Command::Leakage: {
      if (!s.sweep.launch_dbm.empty()) {
        rep.columns = {"launch_dbm", "dark_hz", "leak_hz", "total_hz", "total_per_gate"};
        for (double p : s.sweep.launch_dbm) {
          ChannelAllocation alloc = s.link.allocation;
          for (DataChannel& ch : alloc.channels) {
            ch.launch_dbm = p;
          }
          const NoiseBreakdown nb =
              noise_breakdown(s.link.fiber, s.link.filter, s.link.detector, alloc,
                              s.length_km, s.link.extra_path_loss_db);
          rep.rows.push_back({p, nb.dark_rate_hz, nb.total_rate_hz - nb.dark_rate_hz,
                              nb.total_rate_hz, nb.total_probability});
        }
        break;
      }
      rep.columns = {"core", "wavelength_nm", "launch_dbm",
                     "leaked_dbm", "detected_hz", "per_gate_probability"};
      const NoiseBreakdown nb =
          noise_breakdown(s.link.fiber, s.link.filter, s.link.detector, s.link.allocation,
                          s.length_km, s.link.extra_path_loss_db);
      for (const ChannelNoise& cn : nb.channels) {
        Cell leaked = std::monostate{};
        if (cn.leaked_power_w > 0.0) {
          leaked = watts_to_dbm(cn.leaked_power_w);
        }
        rep.rows.push_back({static_cast<std::int64_t>(cn.channel.core.index()),
                            cn.channel.wavelength.nm(), cn.channel.launch_dbm, leaked,
                            cn.detected.rate_hz, cn.detected.per_gate_probability});
      }
      rep.rows.push_back({std::string("dark"), std::monostate{}, std::monostate{},
                          std::monostate{}, nb.dark_rate_hz, nb.dark_probability});
      rep.rows.push_back({std::string("total"), std::monostate{}, std::monostate{},
                          std::monostate{}, nb.total_rate_hz, nb.total_probability});
      break;
    }
    case Command::KeyRate: {
      rep.columns = kKeyRateColumns;
      const KeyRateResult r = evaluate_link(s.link, s.length_km);
      rep.rows.push_back(key_rate_row(s.length_km, r));
      rep.summary.emplace_back("mu", r.mu);
      break;
    }
    case Command::SweepDistance: {
      if (s.sweep.lengths_km.empty()) {
        throw ParseError("scenario: sweep.lengths_km is required for sweep-distance");
      }
      rep.columns = kKeyRateColumns;
      for (const SweepPoint& p : sweep_distance(s.link, s.sweep.lengths_km)) {
        rep.rows.push_back(key_rate_row(p.x, p.result));
      }
      break;
    }
    case Command::SweepWavelength: {
      if (s.sweep.wavelengths_nm.empty()) {
        throw ParseError("scenario: sweep.wavelengths_nm is required for sweep-wavelength");
      }
      rep.columns.clear();
      rep.columns.push_back("wavelength_nm");
      rep.columns.insert(rep.columns.end(), kKeyRateColumns.begin(), kKeyRateColumns.end());
      for (const SweepPoint& p :
           sweep_wavelength(s.link, s.length_km, s.sweep.wavelengths_nm)) {
        std::vector<Cell> row = key_rate_row(s.length_km, p.result);
        row.insert(row.begin(), Cell{p.x});
        rep.rows.push_back(row);
      }
      break;
    }
    case Command::Plan: {
      const PlanningProblem problem = problem_from_scenario(s);
      const PlanResult result = plan_allocation(problem);
      rep.columns = {"status", "core", "wavelength_nm",
                     "launch_dbm", "leak_probability_per_gate", "note"};
      for (const RankedSlot& rs : result.selected) {
        rep.rows.push_back({std::string("selected"),
                            static_cast<std::int64_t>(rs.slot.core.index()),
                            rs.slot.wavelength.nm(), rs.slot.launch_dbm,
                            rs.leak_probability, std::monostate{}});
      }
      for (const RankedSlot& rs : result.rejected) {
        rep.rows.push_back({std::string("rejected"),
                            static_cast<std::int64_t>(rs.slot.core.index()),
                            rs.slot.wavelength.nm(), rs.slot.launch_dbm,
                            rs.leak_probability, rs.note});
      }
      rep.summary.emplace_back("min_key_rate_bps", problem.min_key_rate_bps);
      rep.summary.emplace_back("noise_budget_per_gate", result.noise_budget_per_gate);
      rep.summary.emplace_back("budget_utilization", result.budget_utilization);
      rep.summary.emplace_back("achieved_key_rate_bps", result.achieved.r_bps);
      rep.summary.emplace_back("selected_count",
                               static_cast<std::int64_t>(result.selected.size()));
      rep.summary.emplace_back("rejected_count",
                               static_cast<std::int64_t>(result.rejected.size()));
      break;
    }
  }
  return rep;
}

}
