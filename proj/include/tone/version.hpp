#pragma once

namespace tone {

inline constexpr const char* version() { return "0.1.0"; }

} // namespace tone
