#pragma once

namespace tunnelsim {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace tunnelsim
