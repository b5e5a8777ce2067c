#include "qcoex/presets.hpp"

#include <stdexcept>
#include <string>

namespace qcoex {

namespace {

[[noreturn]] void unknown(std::string_view kind, std::string_view name,
                          const std::vector<std::string_view>& known) {
  std::string msg = "unknown ";
  msg += kind;
  msg += " preset '";
  msg += name;
  msg += "'; known:";
  for (std::string_view k : known) {
    msg += ' ';
    msg += k;
  }
  throw std::invalid_argument(msg);
}

}

FiberSpec fiber_preset(std::string_view name) {
  FiberSpec f;
  if (name == "nt-mcf-2018") {
    // 7-core fiber without trenches, 2.5 km spool. Group index 1.4639.
    f.variant = FiberVariant::NonTrench;
    f.xt_adjacent_db = 45.0;
    return f;
  }
  if (name == "ta-mcf-2018") {
    // Trench-assisted 7-core fiber, 2.5 km spool. Group index 1.4591.
    // The trenches buy 20 dB of adjacent-core isolation over the NT fiber.
    f.variant = FiberVariant::TrenchAssisted;
    f.xt_adjacent_db = 65.0;
    return f;
  }
  if (name == "smf-baseline") {
    // Standard single-mode reference span; no crosstalk paths by construction.
    f.variant = FiberVariant::SingleMode;
    f.length_km = 122.0;
    return f;
  }
  unknown("fiber", name, fiber_preset_names());
}

DetectorSpec detector_preset(std::string_view name) {
  if (name == "detector-id210") {
    return DetectorSpec{};  // gated InGaAs SPAD: 10%, 1 ns gate, 1 MHz, 1.3e-5 dark
  }
  unknown("detector", name, detector_preset_names());
}

FilterSpec filter_preset(std::string_view name) {
  if (name == "fbg-bpf-2018") {
    // FBG + band-pass stack centered on the quantum channel: 30 dB within
    // 2 nm of the band edge, 55 dB beyond 4 nm.
    return FilterSpec{};
  }
  unknown("filter", name, filter_preset_names());
}

std::vector<std::string_view> fiber_preset_names() {
  return {"nt-mcf-2018", "ta-mcf-2018", "smf-baseline"};
}

std::vector<std::string_view> detector_preset_names() {
  return {"detector-id210"};
}

std::vector<std::string_view> filter_preset_names() {
  return {"fbg-bpf-2018"};
}

}
