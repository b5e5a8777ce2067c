#pragma once

#include <string_view>
#include <vector>

#include "qcoex/fiber.hpp"
#include "qcoex/leakage.hpp"

namespace qcoex {

/// Named hardware presets. Unknown names throw std::invalid_argument listing
/// what exists.
FiberSpec fiber_preset(std::string_view name);
DetectorSpec detector_preset(std::string_view name);
FilterSpec filter_preset(std::string_view name);

std::vector<std::string_view> fiber_preset_names();
std::vector<std::string_view> detector_preset_names();
std::vector<std::string_view> filter_preset_names();

}
