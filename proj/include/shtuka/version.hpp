#pragma once

namespace shtuka {
inline constexpr const char* kVersion = "0.1.0";
}
