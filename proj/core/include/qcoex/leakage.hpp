#pragma once

#include <utility>
#include <vector>

#include "qcoex/fiber.hpp"
#include "qcoex/units.hpp"

namespace qcoex {

/// Band-pass filter in front of the single-photon detector. Rejection is a
/// piecewise-constant function of |offset from center|: the step whose offset
/// is the largest one <= |offset| applies. The first step is pinned to
/// {0 nm, 0 dB}; insertion loss is carried separately and applies to
/// everything that passes.
struct FilterSpec {
  double center_nm = 1550.0;
  double insertion_loss_db = 0.0;
  // {offset_nm, rejection_db}, strictly increasing offsets, non-decreasing dB.
  std::vector<std::pair<double, double>> rejection_steps = {{0.0, 0.0}, {2.0, 30.0}, {4.0, 55.0}};

  double rejection_db(double offset_nm) const;
  void validate() const;
};

/// Gated single-photon avalanche detector.
struct DetectorSpec {
  double efficiency = 0.1;
  double gate_width_s = 1e-9;
  double repetition_rate_hz = 1e6;
  double dark_count_prob_per_gate = 1.3e-5;
  // Recorded for completeness; the per-gate noise model never reaches count
  // rates where dead time matters, so it enters no formula here.
  double dead_time_s = 1e-5;

  void validate() const;
};

struct QuantumSlot {
  CoreId core{0};
  Wavelength wavelength{1550.0};
};

struct DataChannel {
  CoreId core{0};
  Wavelength wavelength{1550.0};
  double launch_dbm = -4.0;
};

/// The quantum slot plus every classical channel sharing the fiber.
struct ChannelAllocation {
  QuantumSlot quantum;
  std::vector<DataChannel> channels;

  /// Rejects duplicate (core, wavelength) slots, any channel occupying the
  /// quantum slot itself, and (for single-mode fiber) any use of ring cores.
  void validate(const FiberSpec& fiber) const;
};

/// Leaked classical power reaching the quantum receiver, in watts. Returns
/// exactly 0 when no coupling path exists (non-adjacent cores, single-mode
/// fiber). In-core channels skip the crosstalk term entirely: only the filter
/// separates them from the quantum slot.
double leaked_power_w(const FiberSpec& fiber, const FilterSpec& filter,
                      const QuantumSlot& quantum, const DataChannel& channel,
                      double length_km, double extra_path_loss_db = 0.0);

struct DetectedRate {
  double per_gate_probability = 0.0;
  double rate_hz = 0.0;
};

/// Click statistics for a CW background power falling on the gated detector.
DetectedRate detected_rate(double power_w, Wavelength wavelength,
                           const DetectorSpec& detector);

struct ChannelNoise {
  DataChannel channel;
  double leaked_power_w = 0.0;
  DetectedRate detected;
};

struct NoiseBreakdown {
  std::vector<ChannelNoise> channels;
  double dark_probability = 0.0;
  double dark_rate_hz = 0.0;
  double total_probability = 0.0;  // background click probability per gate, Y0
  double total_rate_hz = 0.0;
};

/// Per-channel and total background seen by the quantum detector. Throws
/// SaturationError when the total per-gate probability reaches 1.
NoiseBreakdown noise_breakdown(const FiberSpec& fiber, const FilterSpec& filter,
                               const DetectorSpec& detector,
                               const ChannelAllocation& allocation, double length_km,
                               double extra_path_loss_db = 0.0);

}
