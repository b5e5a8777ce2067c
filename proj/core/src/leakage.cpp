#include "qcoex/leakage.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "qcoex/errors.hpp"

namespace qcoex {

double FilterSpec::rejection_db(double offset_nm) const {
  validate();
  if (std::isnan(offset_nm)) {
    throw std::invalid_argument("filter offset is NaN");
  }
  const double off = std::fabs(offset_nm);
  double rejection = 0.0;
  for (const auto& [step_offset, step_db] : rejection_steps) {
    if (off >= step_offset) {
      rejection = step_db;
    } else {
      break;
    }
  }
  return rejection;
}

void FilterSpec::validate() const {
  if (!(center_nm >= kWavelengthMinNm && center_nm <= kWavelengthMaxNm)) {
    throw std::invalid_argument("filter center outside the supported wavelength window");
  }
  if (!(insertion_loss_db >= 0.0) || !std::isfinite(insertion_loss_db)) {
    throw std::invalid_argument("filter insertion loss must be >= 0 dB");
  }
  if (rejection_steps.empty() || rejection_steps.front().first != 0.0 ||
      rejection_steps.front().second != 0.0) {
    throw std::invalid_argument("filter rejection steps must start at {0 nm, 0 dB}");
  }
  for (size_t i = 0; i < rejection_steps.size(); ++i) {
    const auto& [offset, db] = rejection_steps[i];
    if (!std::isfinite(offset) || !std::isfinite(db) || db < 0.0) {
      throw std::invalid_argument("filter rejection steps must be finite with dB >= 0");
    }
    if (i > 0) {
      if (offset <= rejection_steps[i - 1].first) {
        throw std::invalid_argument("filter rejection offsets must be strictly increasing");
      }
      if (db < rejection_steps[i - 1].second) {
        throw std::invalid_argument("filter rejection must be non-decreasing with offset");
      }
    }
  }
}

void DetectorSpec::validate() const {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("detector efficiency must be in (0, 1]");
  }
  if (!(gate_width_s > 0.0) || !std::isfinite(gate_width_s)) {
    throw std::invalid_argument("detector gate width must be > 0 s");
  }
  if (!(repetition_rate_hz > 0.0) || !std::isfinite(repetition_rate_hz)) {
    throw std::invalid_argument("detector repetition rate must be > 0 Hz");
  }
  if (gate_width_s * repetition_rate_hz > 1.0) {
    throw std::invalid_argument("detector duty cycle gate_width * repetition_rate exceeds 1");
  }
  if (!(dark_count_prob_per_gate >= 0.0 && dark_count_prob_per_gate < 1.0)) {
    throw std::invalid_argument("dark count probability must be in [0, 1)");
  }
  if (!(dead_time_s >= 0.0) || !std::isfinite(dead_time_s)) {
    throw std::invalid_argument("detector dead time must be >= 0 s");
  }
}

void ChannelAllocation::validate(const FiberSpec& fiber) const {
  fiber.validate();
  if (fiber.variant == FiberVariant::SingleMode && quantum.core.index() != 0) {
    throw std::invalid_argument("single-mode fiber carries the quantum slot on core 0 only");
  }
  for (size_t i = 0; i < channels.size(); ++i) {
    const DataChannel& ch = channels[i];
    if (fiber.variant == FiberVariant::SingleMode && ch.core.index() != 0) {
      throw std::invalid_argument("single-mode fiber has no core " +
                                  std::to_string(ch.core.index()));
    }
    if (ch.core == quantum.core && ch.wavelength == quantum.wavelength) {
      throw std::invalid_argument("data channel " + std::to_string(i) +
                                  " occupies the quantum slot");
    }
    for (size_t j = 0; j < i; ++j) {
      if (ch.core == channels[j].core && ch.wavelength == channels[j].wavelength) {
        throw std::invalid_argument("data channels " + std::to_string(j) + " and " +
                                    std::to_string(i) + " occupy the same slot");
      }
    }
  }
}

double leaked_power_w(const FiberSpec& fiber, const FilterSpec& filter,
                      const QuantumSlot& quantum, const DataChannel& channel,
                      double length_km, double extra_path_loss_db) {
  fiber.validate();
  filter.validate();
  if (!(length_km > 0.0) || !std::isfinite(length_km)) {
    throw std::invalid_argument("leakage length must be > 0 km");
  }
  if (!std::isfinite(extra_path_loss_db) || extra_path_loss_db < 0.0) {
    throw std::invalid_argument("extra path loss must be >= 0 dB");
  }
  if (!std::isfinite(channel.launch_dbm)) {
    throw std::invalid_argument("channel launch power must be finite dBm");
  }
  if (channel.core == quantum.core && channel.wavelength == quantum.wavelength) {
    throw std::invalid_argument("channel occupies the quantum slot");
  }

  double isolation_db = 0.0;  // in-core: the filter is the only separation
  if (channel.core != quantum.core) {
    const auto iso = xt_isolation(fiber, channel.core, quantum.core, length_km);
    if (!iso) {
      return 0.0;  // no coupling path at all
    }
    isolation_db = *iso;
  }
  const double offset_nm = channel.wavelength.nm() - quantum.wavelength.nm();
  const double rejection_db = filter.rejection_db(offset_nm) + filter.insertion_loss_db;
  const double total_loss_db = combine_losses(
      {fiber_loss(fiber, length_km), isolation_db, rejection_db, extra_path_loss_db});
  return dbm_to_watts(channel.launch_dbm - total_loss_db);
}

DetectedRate detected_rate(double power_w, Wavelength wavelength,
                           const DetectorSpec& detector) {
  detector.validate();
  if (std::isnan(power_w) || power_w < 0.0) {
    throw std::invalid_argument("detected power must be >= 0 W");
  }
  DetectedRate out;
  out.per_gate_probability =
      photon_flux(power_w, wavelength) * detector.efficiency * detector.gate_width_s;
  out.rate_hz = out.per_gate_probability * detector.repetition_rate_hz;
  return out;
}

NoiseBreakdown noise_breakdown(const FiberSpec& fiber, const FilterSpec& filter,
                               const DetectorSpec& detector,
                               const ChannelAllocation& allocation, double length_km,
                               double extra_path_loss_db) {
  detector.validate();
  allocation.validate(fiber);
  NoiseBreakdown out;
  out.dark_probability = detector.dark_count_prob_per_gate;
  out.dark_rate_hz = detector.dark_count_prob_per_gate * detector.repetition_rate_hz;
  out.total_probability = out.dark_probability;
  out.channels.reserve(allocation.channels.size());
  for (const DataChannel& ch : allocation.channels) {
    ChannelNoise noise;
    noise.channel = ch;
    noise.leaked_power_w = leaked_power_w(fiber, filter, allocation.quantum, ch, length_km,
                                          extra_path_loss_db);
    // the leaked light keeps the channel's wavelength through the filter
    noise.detected = detected_rate(noise.leaked_power_w, ch.wavelength, detector);
    out.total_probability += noise.detected.per_gate_probability;
    out.channels.push_back(noise);
  }
  out.total_rate_hz = out.total_probability * detector.repetition_rate_hz;
  if (out.total_probability >= 1.0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "background click probability %.6g per gate saturates the detector",
                  out.total_probability);
    throw SaturationError(buf);
  }
  return out;
}

}
