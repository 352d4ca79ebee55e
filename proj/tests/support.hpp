#pragma once

// Seeded generators shared by the property tests.

#include <cstdint>

#include "polyverse/generate.hpp"

namespace testgen {

using polyverse::Gen;

/// Number of functions X -> Y, saturating.
inline std::uint64_t count_functions(std::uint64_t y, std::uint64_t x) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < x; ++i) r *= y;
  return r;
}

}  // namespace testgen
