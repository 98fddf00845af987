#pragma once

namespace continuo {

inline constexpr const char* kVersion = "0.1.0";

}
