#include "mdc/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mdc {

std::uint64_t StreamRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("StreamRng::below: bound must be > 0");
  // Rejection on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % bound;
}

double StreamRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace mdc
