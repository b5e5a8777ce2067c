#include "qcoex/fiber.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcoex {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}

void FiberSpec::validate() const {
  if (!finite_positive(attenuation_db_per_km)) {
    throw std::invalid_argument("fiber attenuation must be > 0 dB/km");
  }
  if (!std::isfinite(dispersion_ps_nm_km)) {
    throw std::invalid_argument("fiber dispersion must be finite");
  }
  if (!finite_positive(length_km)) {
    throw std::invalid_argument("fiber length must be > 0 km");
  }
  if (!finite_positive(xt_adjacent_db)) {
    throw std::invalid_argument("adjacent-core isolation must be > 0 dB");
  }
  if (!finite_positive(xt_reference_length_km)) {
    throw std::invalid_argument("crosstalk reference length must be > 0 km");
  }
  if (xt_matrix_db) {
    if (variant == FiberVariant::SingleMode) {
      throw std::invalid_argument("single-mode fiber cannot carry an isolation matrix");
    }
    const XtMatrix& m = *xt_matrix_db;
    for (int i = 0; i < kCoreCount; ++i) {
      if (m[i][i]) {
        throw std::invalid_argument("isolation matrix diagonal [" + std::to_string(i) +
                                    "] must be empty");
      }
      for (int j = 0; j < kCoreCount; ++j) {
        if (m[i][j].has_value() != m[j][i].has_value() ||
            (m[i][j] && *m[i][j] != *m[j][i])) {
          throw std::invalid_argument("isolation matrix must be symmetric, entry [" +
                                      std::to_string(i) + "][" + std::to_string(j) + "]");
        }
        if (m[i][j] && !finite_positive(*m[i][j])) {
          throw std::invalid_argument("isolation matrix entries must be > 0 dB");
        }
      }
    }
  }
}

bool cores_adjacent(CoreId a, CoreId b) {
  if (a == b) {
    throw std::invalid_argument("core adjacency is undefined for a core with itself");
  }
  if (a.index() == 0 || b.index() == 0) {
    return true;  // center touches the whole ring
  }
  const int diff = ((a.index() - b.index()) % 6 + 6) % 6;
  return diff == 1 || diff == 5;
}

std::optional<double> xt_isolation(const FiberSpec& fiber, CoreId source, CoreId target,
                                   double length_km) {
  fiber.validate();
  if (source == target) {
    throw std::invalid_argument("crosstalk is undefined from a core to itself");
  }
  if (!finite_positive(length_km)) {
    throw std::invalid_argument("crosstalk length must be > 0 km");
  }
  if (fiber.variant == FiberVariant::SingleMode) {
    return std::nullopt;
  }
  std::optional<double> reference_db;
  if (fiber.xt_matrix_db) {
    reference_db = (*fiber.xt_matrix_db)[source.index()][target.index()];
  } else if (cores_adjacent(source, target)) {
    reference_db = fiber.xt_adjacent_db;
  }
  if (!reference_db) {
    return std::nullopt;
  }
  // Coupled power grows linearly with length: doubling the span costs
  // exactly 10*log10(2) of isolation.
  return *reference_db - 10.0 * std::log10(length_km / fiber.xt_reference_length_km);
}

double fiber_loss(const FiberSpec& fiber, double length_km) {
  fiber.validate();
  if (!(length_km >= 0.0) || !std::isfinite(length_km)) {
    throw std::invalid_argument("fiber loss length must be >= 0 km");
  }
  return fiber.attenuation_db_per_km * length_km;
}

}
