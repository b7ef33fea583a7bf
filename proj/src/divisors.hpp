#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "covercert/core.hpp"
#include "covercert/distortion.hpp"
#include "covercert/error.hpp"

namespace covercert::detail {

// Divisors of Q_level in increasing order. Q_level must already be known to
// fit in 64 bits.
inline std::vector<std::uint64_t> divisors_of_partial(const PrimeLadder& ladder, std::size_t level,
                                                      const Limits& limits) {
  std::vector<std::uint64_t> divs{1};
  for (std::size_t i = 1; i <= level; ++i) {
    const std::size_t base = divs.size();
    std::uint64_t pk = 1;
    for (unsigned e = 1; e <= ladder.exponent(i); ++e) {
      pk *= ladder.prime(i);
      for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * pk);
    }
    if (divs.size() > limits.max_divisors)
      throw ResourceLimitError("divisor count of Q_" + std::to_string(level) + " exceeds limit " +
                               std::to_string(limits.max_divisors));
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace covercert::detail
