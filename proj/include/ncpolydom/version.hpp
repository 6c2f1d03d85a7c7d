#pragma once

namespace ncpolydom {
inline constexpr const char* kVersion = "0.1.0";
}
