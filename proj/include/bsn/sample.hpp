#pragma once

// Seeded random instances at desk scale, shared by `bsn verify` and the
// acceptance suite. Ranges keep every stabilizer order box enumerable.

#include <cstdint>
#include <random>

#include "bsn/group.hpp"
#include "bsn/morphisms.hpp"

namespace bsn {

class Sampler {
 public:
  Sampler(BaseRef base, std::uint64_t seed) : base_(std::move(base)), rng_(seed) {}

  const BaseRef& base() const noexcept { return base_; }
  std::mt19937_64& rng() noexcept { return rng_; }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// l / n^p with |l| <= 30 and 0 <= p <= 2.
  ZnElem zn();
  ZnElem nonzero_zn();
  /// +-prod p_i^{s_i}, |s_i| <= exp_bound.
  ZnElem unit(std::int64_t exp_bound = 2);

  /// Largest |c| drawn for elements; shrinks as n grows.
  std::int64_t c_bound() const;
  BsElem elem();
  BsElem elem_nonzero_c();
  BsElem nonidentity();

  AffinePair automorphism();
  /// alpha = l / n^p, a non-unit with |l| <= 12 and p <= 1.
  AffinePair type_i();
  TypeII type_ii();

 private:
  BaseRef base_;
  std::mt19937_64 rng_;
};

}  // namespace bsn
