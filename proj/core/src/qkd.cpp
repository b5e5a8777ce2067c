#include "qcoex/qkd.hpp"

#include <cmath>
#include <stdexcept>

#include "qcoex/errors.hpp"

namespace qcoex {

void QkdLinkParams::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("mean photon number mu must be > 0");
  }
  if (!(misalignment_error >= 0.0 && misalignment_error < 0.5)) {
    throw std::invalid_argument("misalignment error must be in [0, 0.5)");
  }
  if (!(fec_inefficiency >= 1.0) || !std::isfinite(fec_inefficiency)) {
    throw std::invalid_argument("error-correction inefficiency must be >= 1");
  }
  if (!(sift_factor > 0.0 && sift_factor <= 1.0)) {
    throw std::invalid_argument("sift factor must be in (0, 1]");
  }
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("binary entropy is defined on [0, 1]");
  }
  if (x == 0.0 || x == 1.0) {
    return 0.0;
  }
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double channel_transmittance(const FiberSpec& fiber, double length_km,
                             const DetectorSpec& detector, double extra_loss_db) {
  detector.validate();
  if (!(extra_loss_db >= 0.0) || !std::isfinite(extra_loss_db)) {
    throw std::invalid_argument("extra quantum-path loss must be >= 0 dB");
  }
  const double loss_db = combine_losses({fiber_loss(fiber, length_km), extra_loss_db});
  return detector.efficiency * std::pow(10.0, -loss_db / 10.0);
}

Gains gains_and_qber(double mu, double eta, double y0, double misalignment_error) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("mean photon number mu must be > 0");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("transmittance must be in (0, 1]");
  }
  if (!(y0 >= 0.0 && y0 < 1.0)) {
    throw std::invalid_argument("background click probability must be in [0, 1)");
  }
  if (!(misalignment_error >= 0.0 && misalignment_error < 0.5)) {
    throw std::invalid_argument("misalignment error must be in [0, 0.5)");
  }

  Gains g;
  // Poisson average of Y_n = 1 - (1 - Y0)(1 - eta)^n. This is the exact
  // composition, not the additive Y0 + 1 - exp(-eta mu) approximation; the
  // two differ at order Y0 * eta * mu.
  const double signal = -std::expm1(-eta * mu);  // 1 - exp(-eta mu)
  g.q_mu = 1.0 - (1.0 - y0) * std::exp(-eta * mu);
  if (g.q_mu <= 0.0) {
    throw DegenerateChannelError("overall gain is zero; QBER undefined");
  }
  // Errors: background clicks are random (rate 1/2), signal clicks err at
  // the misalignment floor. The numerator identity
  //   Emu * Qmu = 1/2 Y0 + e_d (1 - exp(-eta mu))
  // holds exactly in this composition.
  g.e_mu = (kBackgroundErrorRate * y0 + misalignment_error * signal) / g.q_mu;
  g.y1 = 1.0 - (1.0 - y0) * (1.0 - eta);
  g.e1 = (kBackgroundErrorRate * y0 + misalignment_error * eta) / g.y1;
  g.q1 = g.y1 * mu * std::exp(-mu);
  return g;
}

KeyRateResult key_rate(const QkdLinkParams& params, double eta, double y0,
                       double repetition_rate_hz) {
  params.validate();
  if (!(repetition_rate_hz > 0.0) || !std::isfinite(repetition_rate_hz)) {
    throw std::invalid_argument("repetition rate must be > 0 Hz");
  }
  KeyRateResult out;
  out.eta = eta;
  out.y0 = y0;
  out.mu = params.mu;
  out.gains = gains_and_qber(params.mu, eta, y0, params.misalignment_error);
  out.r_per_gate_raw =
      params.sift_factor * (out.gains.q1 * (1.0 - binary_entropy(out.gains.e1)) -
                            out.gains.q_mu * params.fec_inefficiency *
                                binary_entropy(out.gains.e_mu));
  out.r_per_gate = out.r_per_gate_raw > 0.0 ? out.r_per_gate_raw : 0.0;
  out.r_bps = out.r_per_gate * repetition_rate_hz;
  return out;
}

std::optional<MuOptimum> optimize_mu(const QkdLinkParams& params, double eta, double y0,
                                     double mu_lo, double mu_hi, double tolerance) {
  params.validate();
  if (!(mu_lo > 0.0 && mu_hi > mu_lo)) {
    throw std::invalid_argument("mu search interval must satisfy 0 < lo < hi");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("mu search tolerance must be > 0");
  }
  const auto raw_rate = [&](double mu) {
    QkdLinkParams p = params;
    p.mu = mu;
    return key_rate(p, eta, y0, 1.0).r_per_gate_raw;
  };
  // Golden-section search; the raw rate is unimodal in mu on (0, hi].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = mu_lo;
  double b = mu_hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = raw_rate(c);
  double fd = raw_rate(d);
  while (b - a > tolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = raw_rate(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = raw_rate(d);
    }
  }
  MuOptimum best;
  best.mu = (a + b) / 2.0;
  best.r_per_gate = raw_rate(best.mu);
  if (!(best.r_per_gate > 0.0)) {
    return std::nullopt;  // past the cutoff: no mu recovers a positive rate
  }
  return best;
}

KeyRateResult evaluate_link(const LinkModel& link, double length_km) {
  const NoiseBreakdown noise = noise_breakdown(link.fiber, link.filter, link.detector,
                                               link.allocation, length_km,
                                               link.extra_path_loss_db);
  const double eta =
      channel_transmittance(link.fiber, length_km, link.detector, link.extra_loss_db);
  QkdLinkParams params = link.qkd;
  if (link.use_optimal_mu) {
    if (const auto best = optimize_mu(params, eta, noise.total_probability,
                                      link.mu_search_lo, link.mu_search_hi)) {
      params.mu = best->mu;
    }
    // no positive rate at any mu: evaluate at the configured mu, clamps to 0
  }
  return key_rate(params, eta, noise.total_probability, link.detector.repetition_rate_hz);
}

std::vector<SweepPoint> sweep_distance(const LinkModel& link,
                                       std::span<const double> lengths_km) {
  std::vector<SweepPoint> out;
  out.reserve(lengths_km.size());
  for (double length : lengths_km) {
    SweepPoint point;
    point.x = length;
    point.result = evaluate_link(link, length);
    out.push_back(point);
  }
  return out;
}

std::vector<SweepPoint> sweep_wavelength(const LinkModel& link, double length_km,
                                         std::span<const double> wavelengths_nm) {
  std::vector<SweepPoint> out;
  out.reserve(wavelengths_nm.size());
  for (double nm : wavelengths_nm) {
    LinkModel probe = link;
    const Wavelength wavelength{nm};
    probe.allocation.channels.clear();
    for (DataChannel ch : link.allocation.channels) {
      ch.wavelength = wavelength;
      if (ch.core == link.allocation.quantum.core &&
          ch.wavelength == link.allocation.quantum.wavelength) {
        continue;  // slot occupied by the quantum channel itself
      }
      probe.allocation.channels.push_back(ch);
    }
    // moving all channels to one wavelength can fold several onto one slot
    auto& chs = probe.allocation.channels;
    for (size_t i = 0; i < chs.size(); ++i) {
      for (size_t j = i + 1; j < chs.size();) {
        if (chs[j].core == chs[i].core && chs[j].wavelength == chs[i].wavelength) {
          chs.erase(chs.begin() + static_cast<long>(j));
        } else {
          ++j;
        }
      }
    }
    SweepPoint point;
    point.x = nm;
    point.result = evaluate_link(probe, length_km);
    out.push_back(point);
  }
  return out;
}

}
