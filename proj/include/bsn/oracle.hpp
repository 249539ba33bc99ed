#pragma once

// Brute-force verifiers. Nothing here calls into fixstab: every result is
// obtained by solving the fixed-point equation
//   (alpha - 1) gamma + beta mu(c) = 0
// one candidate at a time, or by plain enumeration.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsn/group.hpp"
#include "bsn/morphisms.hpp"

namespace bsn {

struct ScanBox {
  std::int64_t c_bound = 3;
  std::int64_t exp_bound = 3;
  bool include_sign = true;
};

/// Every fixed element with |c| <= c_bound, sorted by c. Affine maps with
/// alpha == 1 (and the identity) fix infinitely many elements per c and are
/// rejected with kUseKernelDescriptor.
std::vector<BsElem> oracle_fixed_scan(const Morphism& f, const ScanBox& box);

/// Every automorphism [alpha; beta] with alpha = +-prod p_i^{s_i},
/// |s_i| <= exp_bound, that fixes g. Sorted by (sign, s_1, ..., s_r).
std::vector<AffinePair> oracle_stab_scan(const BsElem& g, const ScanBox& box);

/// Exponents x with prod gens_i^{x_i} == target, |x_i| <= bound, searching
/// outward from the origin. Only alpha is compared; for a common stabilized
/// element with c != 0, alpha determines beta.
std::optional<std::vector<std::int64_t>> oracle_lattice_member(
    const AffinePair& target, const std::vector<AffinePair>& gens,
    std::int64_t bound);

struct DifferentialReport {
  std::int64_t checked = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> mismatches;
};

/// Random words evaluated by folding the group law and by multiplying
/// generator matrices.
DifferentialReport oracle_word_differential(std::int64_t count,
                                            std::int64_t max_len,
                                            const BaseRef& base,
                                            std::uint64_t seed);

}  // namespace bsn
