#pragma once

// Shared helpers for the unit tests: exact rational reference values and a
// small seeded generator independent of bsn::Sampler.

#include <cstdint>
#include <random>

#include "bsn/group.hpp"
#include "bsn/morphisms.hpp"
#include "bsn/ring.hpp"

namespace bsn::testing {

inline Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline Rational npow(std::int64_t n, std::int64_t e) {
  Rational r(1);
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r *= n;
  if (e < 0) r = 1 / r;
  r.canonicalize();
  return r;
}

inline ZnElem zq(const Rational& value, const BaseRef& base) {
  return *zn_from_rational(value, base);
}

inline ZnElem zq(long a, long b, const BaseRef& base) { return zq(q(a, b), base); }

inline BsElem el(long a, long b, std::int64_t c, const BaseRef& base) {
  return {zq(a, b, base), c};
}

inline BsElem el(long a, std::int64_t c, const BaseRef& base) { return el(a, 1, c, base); }

inline AffinePair aff(long a, long b, const BaseRef& base) {
  return AffinePair(zq(a, 1, base), zq(b, 1, base));
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  ZnElem zn(const BaseRef& base, std::int64_t mag = 40, std::int64_t max_exp = 3) {
    return zn_normalize(Integer(static_cast<long>(range(-mag, mag))), range(0, max_exp), base);
  }

  ZnElem nonzero(const BaseRef& base) {
    for (;;) {
      ZnElem z = zn(base);
      if (!z.is_zero()) return z;
    }
  }

  ZnElem unit(const BaseRef& base, std::int64_t bound = 3) {
    UnitDecomp u;
    u.sign = range(0, 1) ? 1 : -1;
    for (std::size_t i = 0; i < base->r(); ++i) u.exps.push_back(range(-bound, bound));
    return zn_unit_recompose(u, base);
  }

  BsElem elem(const BaseRef& base, std::int64_t c_bound) {
    return {zn(base), range(-c_bound, c_bound)};
  }

  BsElem elem_nonzero_c(const BaseRef& base, std::int64_t c_bound) {
    for (;;) {
      BsElem g = elem(base, c_bound);
      if (g.c != 0) return g;
    }
  }

  // Small alpha keeps the fixed-point period, and so the scans, short.
  Morphism affine(const BaseRef& base) {
    if (range(0, 1)) return AffinePair(unit(base, 2), zn(base));
    for (;;) {
      const std::int64_t l = range(-12, 12);
      if (l == 0) continue;
      return AffinePair(zn_normalize(Integer(static_cast<long>(l)), range(0, 1), base), zn(base));
    }
  }

  Morphism any_morphism(const BaseRef& base) {
    if (range(0, 2) == 0) return TypeII{{zn(base), range(-3, 3)}};
    return affine(base);
  }

 private:
  std::mt19937_64 rng_;
};

/// |c| range keeping stabilizer order boxes small for the given n.
inline std::int64_t desk_c_bound(std::int64_t n) {
  if (n <= 3) return 10;
  if (n <= 12) return 5;
  return 3;
}

}  // namespace bsn::testing
