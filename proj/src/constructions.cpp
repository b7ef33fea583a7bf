#include "covercert/constructions.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "covercert/error.hpp"

namespace covercert {

CongruenceSystem construct_minimal_family(unsigned j) {
  if (j < 5) throw DomainError("construction needs j >= 5, got " + std::to_string(j));
  if (j > 62) throw DomainError("construction moduli overflow 64 bits for j = " + std::to_string(j));
  std::vector<ResidueClass> classes;
  for (unsigned i = 1; i <= j - 3; ++i) {
    const auto pow2 = std::int64_t{1} << i;
    classes.push_back(make_class(pow2 / 2, pow2));
  }
  for (unsigned k = 0; k <= 2; ++k) {
    const auto mod3 = make_class(k, 3);
    const auto pow2 = make_class(0, std::int64_t{1} << (j - 5 + k));
    const auto merged = intersect(mod3, pow2);
    if (!merged) throw InternalError("coprime classes must intersect");
    classes.push_back(*merged);
  }
  return CongruenceSystem(std::move(classes));
}

CongruenceSystem shift_expand(const CongruenceSystem& source, unsigned ell, const Limits& limits) {
  const std::size_t k = source.size();
  if (ell < 1 || ell > k)
    throw DomainError("ell = " + std::to_string(ell) + " outside 1.." + std::to_string(k));

  const auto q = source.lcm_factorization().value_u64();
  if (q && *q <= limits.max_residue_space) {
    const CoverageReport coverage = covers_oracle(source, limits);
    if (!coverage.covers) throw DomainError("shift expansion needs a covering source system");
    if (!is_minimal(source, limits).minimal)
      throw DomainError("shift expansion needs a minimal covering source system");
  }

  if (ell - 1 >= 63) throw ResourceLimitError("2^(ell-1) shifts exceed 64 bits");
  const std::uint64_t shifts = std::uint64_t{1} << (ell - 1);
  const std::uint64_t survivors = k - ell + 1;
  if (shifts > limits.max_residue_space / survivors)
    throw ResourceLimitError("shift expansion would produce " + std::to_string(survivors) + " * 2^" +
                             std::to_string(ell - 1) + " classes, above limit " +
                             std::to_string(limits.max_residue_space));

  const CongruenceSystem sorted = source.sorted();
  std::vector<ResidueClass> out;
  out.reserve(survivors * shifts);
  for (std::size_t i = ell - 1; i < k; ++i) {
    const ResidueClass& c = sorted[i];
    const std::uint64_t d = c.modulus();
    for (std::uint64_t h = 0; h < shifts; ++h) {
      const std::uint64_t r = (c.residue() + d - h % d) % d;
      out.push_back(make_class(static_cast<std::int64_t>(r), static_cast<std::int64_t>(d)));
    }
  }
  return CongruenceSystem(std::move(out));
}

}  // namespace covercert
