#pragma once

namespace qramsey {
inline constexpr const char* kVersion = "0.1.0";
}
