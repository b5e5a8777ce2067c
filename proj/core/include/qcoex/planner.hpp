#pragma once

#include <string>
#include <vector>

#include "qcoex/classical.hpp"
#include "qcoex/qkd.hpp"

namespace qcoex {

struct CandidateSlot {
  CoreId core{0};
  Wavelength wavelength{1550.0};
  double launch_dbm = -4.0;
};

struct PlanningProblem {
  FiberSpec fiber;
  FilterSpec filter;
  DetectorSpec detector;
  QkdLinkParams qkd;
  QuantumSlot quantum;
  double length_km = 2.5;
  double extra_loss_db = 0.0;
  double extra_path_loss_db = 0.0;
  ClassicalFeasibility feasibility;
  double min_key_rate_bps = 0.0;
  std::vector<CandidateSlot> candidates;

  void validate() const;
};

/// Largest background click probability Y0 per gate that still sustains
/// min_key_rate_bps, found by bisection on the raw key rate (relative
/// tolerance 1e-6). dark_probability is the floor that is always present;
/// throws NoBudgetError when even that floor misses the target.
double noise_budget(const QkdLinkParams& params, double eta, double repetition_rate_hz,
                    double min_key_rate_bps, double dark_probability);

struct RankedSlot {
  CandidateSlot slot;
  double leak_probability = 0.0;  // per-gate click probability this slot adds
  std::string note;               // rejection reason; empty while ranked/selected
};

/// Candidates ordered by the per-gate click probability they would add,
/// ascending; ties broken by core index, then wavelength. This is the order
/// the greedy selection consumes.
std::vector<RankedSlot> rank_slots(const PlanningProblem& problem);

struct PlanResult {
  std::vector<RankedSlot> selected;  // in greedy (ascending leak) order
  std::vector<RankedSlot> rejected;  // in ranking order, each with a note
  double noise_budget_per_gate = 0.0;
  double budget_utilization = 0.0;  // (dark + selected leak) / budget
  KeyRateResult achieved;
};

/// Greedy slot selection under the noise budget: classical-infeasible slots
/// are rejected outright, then candidates are admitted in ascending leak
/// order while the running total stays within budget (which maximizes the
/// number of admitted slots). The final set is re-verified with the exact
/// key-rate formula; if bisection tolerance let a marginal slot through, the
/// largest-leak selections are dropped until the target rate holds.
PlanResult plan_allocation(const PlanningProblem& problem);

}
