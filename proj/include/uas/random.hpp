#pragma once

#include <cmath>
#include <random>

namespace uas {

/// Uniform on [0, 1) from the top 53 bits of one draw. Unlike
/// std::uniform_real_distribution the mapping is identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Exponential variate with the given rate, by inverse transform.
inline double exponential(std::mt19937_64& rng, double rate) {
  return -std::log1p(-uniform01(rng)) / rate;
}

}  // namespace uas
