#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qcoex/fiber.hpp"
#include "qcoex/leakage.hpp"

namespace qcoex {

/// Background clicks are uncorrelated with the signal basis, so half of them
/// land in the wrong bucket.
inline constexpr double kBackgroundErrorRate = 0.5;

/// Decoy-state BB84 source and post-processing parameters.
struct QkdLinkParams {
  double mu = 0.5;                  // mean photon number of signal states
  double misalignment_error = 0.01; // optical QBER floor, e_d
  double fec_inefficiency = 1.22;   // f(E): error-correction cost above Shannon
  double sift_factor = 1.0;         // basis-sifting q; 1 under the efficient protocol
  void validate() const;
};

/// Shannon binary entropy; domain [0, 1] with H(0) = H(1) = 0.
double binary_entropy(double x);

/// End-to-end single-photon transmittance of the quantum path:
/// detector efficiency times the dB losses of fiber plus extras.
double channel_transmittance(const FiberSpec& fiber, double length_km,
                             const DetectorSpec& detector, double extra_loss_db = 0.0);

struct Gains {
  double q_mu = 0.0;  // overall gain
  double e_mu = 0.0;  // overall QBER
  double y1 = 0.0;    // single-photon yield
  double e1 = 0.0;    // single-photon error rate
  double q1 = 0.0;    // single-photon gain
};

/// Gains and error rates of a decoy-state source over a channel with
/// transmittance eta and background click probability y0 per gate.
/// Throws DegenerateChannelError when the overall gain vanishes.
Gains gains_and_qber(double mu, double eta, double y0, double misalignment_error);

struct KeyRateResult {
  double eta = 0.0;
  double y0 = 0.0;
  double mu = 0.0;
  Gains gains;
  double r_per_gate_raw = 0.0;  // may be negative; kept for cutoff diagnostics
  double r_per_gate = 0.0;      // clamped at 0
  double r_bps = 0.0;           // clamped rate times repetition rate
};

/// Asymptotic decoy-state BB84 key rate:
///   R = q * (Q1 (1 - H2(e1)) - Qmu f H2(Emu))
KeyRateResult key_rate(const QkdLinkParams& params, double eta, double y0,
                       double repetition_rate_hz);

struct MuOptimum {
  double mu = 0.0;
  double r_per_gate = 0.0;
};

/// Golden-section search for the mu maximizing the raw key rate on
/// [mu_lo, mu_hi]. Returns nullopt when no mu in the interval yields a
/// positive rate (the link is past its cutoff).
std::optional<MuOptimum> optimize_mu(const QkdLinkParams& params, double eta, double y0,
                                     double mu_lo = 0.01, double mu_hi = 2.0,
                                     double tolerance = 1e-4);

/// Everything needed to evaluate one coexistence configuration end to end.
struct LinkModel {
  FiberSpec fiber;
  FilterSpec filter;
  DetectorSpec detector;
  QkdLinkParams qkd;
  ChannelAllocation allocation;
  double extra_loss_db = 0.0;       // quantum signal path (connectors, mux)
  double extra_path_loss_db = 0.0;  // classical leakage path only
  bool use_optimal_mu = false;
  double mu_search_lo = 0.01;
  double mu_search_hi = 2.0;
};

/// Noise breakdown + transmittance + key rate at one length. With
/// use_optimal_mu the source is re-optimized at this length first; if no mu
/// gives a positive rate the configured mu is used and the rate clamps to 0.
KeyRateResult evaluate_link(const LinkModel& link, double length_km);

struct SweepPoint {
  double x = 0.0;  // length_km or wavelength_nm depending on the sweep
  KeyRateResult result;
};

std::vector<SweepPoint> sweep_distance(const LinkModel& link,
                                       std::span<const double> lengths_km);

/// Re-assigns every data channel to each probe wavelength in turn. A probe
/// that would collide with the quantum slot drops the colliding channels for
/// that point (the spectrum slot is simply not usable there).
std::vector<SweepPoint> sweep_wavelength(const LinkModel& link, double length_km,
                                         std::span<const double> wavelengths_nm);

}
