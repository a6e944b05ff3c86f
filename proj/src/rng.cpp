#include "tophom/rng.hpp"

#include <cmath>
#include <limits>

namespace tophom {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Accept draws below the largest multiple of bound.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::uint32_t Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  const double u = uniform();
  double term = std::exp(-mean);
  double cdf = term;
  std::uint32_t k = 0;
  // term underflows to zero long before k wraps for any practical mean
  while (u >= cdf && term > 0.0) {
    ++k;
    term *= mean / k;
    cdf += term;
  }
  return k;
}

}  // namespace tophom
