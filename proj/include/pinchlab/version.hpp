#pragma once

namespace pinchlab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace pinchlab
