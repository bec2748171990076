#pragma once

#include <cstdint>
#include <random>

namespace heatwell {

// Uniform doubles straight from mt19937_64 bits.  The engine is fully
// specified by the standard while the <random> distributions are not, so this
// keeps seeded output byte-identical across standard libraries.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

}  // namespace heatwell
