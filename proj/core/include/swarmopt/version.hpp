#pragma once

namespace swarmopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace swarmopt
