#include "bsn/sample.hpp"

namespace bsn {

std::int64_t Sampler::uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

ZnElem Sampler::zn() {
  const std::int64_t l = uniform(-30, 30);
  const std::int64_t p = uniform(0, 2);
  return zn_normalize(Integer(static_cast<long>(l)), p, base_);
}

ZnElem Sampler::nonzero_zn() {
  while (true) {
    ZnElem z = zn();
    if (!z.is_zero()) return z;
  }
}

ZnElem Sampler::unit(std::int64_t exp_bound) {
  UnitDecomp u;
  u.sign = uniform(0, 1) == 0 ? -1 : 1;
  for (std::size_t i = 0; i < base_->r(); ++i) u.exps.push_back(uniform(-exp_bound, exp_bound));
  return zn_unit_recompose(u, base_);
}

std::int64_t Sampler::c_bound() const {
  // mu(c) grows like n^c and the stabilizer box is a product of orders
  // modulo its cofactor; these bounds keep that product small.
  if (base_->n() <= 3) return 12;
  if (base_->n() <= 12) return 6;
  return 3;
}

BsElem Sampler::elem() { return {zn(), uniform(-c_bound(), c_bound())}; }

BsElem Sampler::elem_nonzero_c() {
  while (true) {
    BsElem g = elem();
    if (g.c != 0) return g;
  }
}

BsElem Sampler::nonidentity() {
  while (true) {
    BsElem g = elem();
    if (!g.is_identity()) return g;
  }
}

AffinePair Sampler::automorphism() { return AffinePair(unit(), zn()); }

AffinePair Sampler::type_i() {
  while (true) {
    const std::int64_t l = uniform(-12, 12);
    if (l == 0) continue;
    ZnElem alpha = zn_normalize(Integer(static_cast<long>(l)), uniform(0, 1), base_);
    if (!zn_is_unit(alpha)) return AffinePair(alpha, zn());
  }
}

TypeII Sampler::type_ii() { return TypeII{{zn(), uniform(-3, 3)}}; }

}  // namespace bsn
