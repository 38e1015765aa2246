#pragma once

namespace pcube {

inline constexpr const char* kVersion = "0.1.0";

}
