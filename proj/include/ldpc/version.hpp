#pragma once

namespace ldpc {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ldpc
