#pragma once

namespace qedsim {
inline constexpr const char* kVersion = "0.1.0";
}
