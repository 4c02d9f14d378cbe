#pragma once

namespace driftlab {

inline constexpr const char* kDriftlabVersion = "0.1.0";

}  // namespace driftlab
