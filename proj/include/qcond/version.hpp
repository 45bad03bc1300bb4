#pragma once

namespace qcond {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qcond
