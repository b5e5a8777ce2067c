#pragma once

#include <array>
#include <optional>

#include "qcoex/units.hpp"

namespace qcoex {

enum class FiberVariant {
  NonTrench,       // 7-core MCF, homogeneous cladding
  TrenchAssisted,  // 7-core MCF with index trenches around each core
  SingleMode,      // plain SMF reference; no crosstalk paths at all
};

/// Optional isolation override for sensitivity studies. Entry [i][j] is the
/// isolation in dB from core i into core j at the reference length; an empty
/// entry means no crosstalk path between that pair. Must be symmetric with an
/// empty diagonal.
using XtMatrix = std::array<std::array<std::optional<double>, kCoreCount>, kCoreCount>;

struct FiberSpec {
  FiberVariant variant = FiberVariant::NonTrench;
  double attenuation_db_per_km = 0.2;
  double dispersion_ps_nm_km = 16.0;
  double length_km = 2.5;  // as-built spool length; evaluation length is passed separately

  // Adjacent-pair isolation at the reference length. Non-adjacent pairs have
  // no direct coupling path in this model.
  double xt_adjacent_db = 45.0;
  double xt_reference_length_km = 2.5;
  std::optional<XtMatrix> xt_matrix_db;

  void validate() const;
};

/// Hexagonal adjacency: the center core touches all six ring cores, ring
/// cores touch their two circular neighbours. a == b is a contract violation,
/// not "adjacent".
bool cores_adjacent(CoreId a, CoreId b);

/// Inter-core isolation in dB at the given length, or nullopt when no
/// crosstalk path exists between the pair. Coupled power accumulates linearly
/// with length, so isolation drops by 10*log10(length/reference).
std::optional<double> xt_isolation(const FiberSpec& fiber, CoreId source, CoreId target,
                                   double length_km);

/// Propagation loss in dB over length_km (0 km is allowed and gives 0 dB).
double fiber_loss(const FiberSpec& fiber, double length_km);

}
