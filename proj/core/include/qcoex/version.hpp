#pragma once

namespace qcoex {

inline constexpr const char* kVersion = "0.1.0";

}
