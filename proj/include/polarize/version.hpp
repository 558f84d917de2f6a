#pragma once

#include <cstddef>

namespace polarize {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kReportSchema = "polarize-report/1";

// Default tolerance used by every equality predicate on the float backend.
inline constexpr double kDefaultEpsilon = 1e-9;

// Dense structure constants are O(dim^3); constructions past this are refused.
inline constexpr std::size_t kDimensionCap = 4096;

// Explicit enumeration cap for diagonal-times-permutation groups.
inline constexpr std::size_t kGroupEnumerationCap = 20000;

}  // namespace polarize
