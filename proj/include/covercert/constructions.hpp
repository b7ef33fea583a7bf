#pragma once

#include <cstdint>

#include "covercert/core.hpp"

namespace covercert {

// Minimal covering system with exactly j classes and moduli
// 2 < 4 < ... < 2^{j-4} < 3*2^{j-5} < 2^{j-3} < 3*2^{j-4} < 3*2^{j-3}:
// the classes 2^{i-1} mod 2^i for 1 <= i <= j-3, plus the three classes
// (k mod 3) & (0 mod 2^{j-5+k}), k = 0, 1, 2. Requires 5 <= j <= 62.
CongruenceSystem construct_minimal_family(unsigned j);

// Sort the source by (modulus, residue) and emit (r_i - h) mod q_i for
// ell <= i <= k and 0 <= h < 2^{ell-1}, in (i, h) order. When the source is
// a minimal covering system the result covers Z with multiplicity 2^{ell-1}
// as a multiset. Throws DomainError for ell outside [1, k], or when Q fits the
// residue-space limit and the source is not a minimal covering system;
// ResourceLimitError when the output would exceed limits.max_residue_space
// classes.
CongruenceSystem shift_expand(const CongruenceSystem& source, unsigned ell,
                              const Limits& limits = {});

}  // namespace covercert
