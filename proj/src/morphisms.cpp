#include "bsn/morphisms.hpp"

namespace bsn {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_same_base(const BaseRef& a, const BaseRef& b) {
  if (!(*a == *b)) {
    throw Error(ErrorKind::kBaseMismatch, "morphisms over different n");
  }
}

}  // namespace

AffinePair::AffinePair(ZnElem alpha, ZnElem beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.is_zero()) {
    throw Error(ErrorKind::kPrecondition,
                "alpha = 0 is not affine; use the type II morphism <<beta; 1>>");
  }
  if (!(*alpha_.base() == *beta_.base())) {
    throw Error(ErrorKind::kBaseMismatch, "alpha and beta over different n");
  }
  kind_ = zn_is_unit(alpha_) ? AffineKind::kAutomorphism : AffineKind::kTypeI;
}

Morphism identity_morphism(const BaseRef& base) {
  return AffinePair(zn_int(1, base), ZnElem(base));
}

bool is_identity(const Morphism& f) {
  const auto* a = std::get_if<AffinePair>(&f);
  return a != nullptr && a->alpha() == zn_int(1, a->base()) && a->beta().is_zero();
}

const BaseRef& base_of(const Morphism& f) {
  return std::visit(
      Overloaded{[](const AffinePair& a) -> const BaseRef& { return a.base(); },
                 [](const TypeII& t) -> const BaseRef& { return t.target.base(); }},
      f);
}

BsElem apply(const Morphism& f, const BsElem& g) {
  require_same_base(base_of(f), g.base());
  return std::visit(
      Overloaded{[&](const AffinePair& a) {
                   return BsElem{a.alpha() * g.gamma + a.beta() * mu(g.c, g.base()),
                                 g.c};
                 },
                 [&](const TypeII& t) { return bs_pow(t.target, g.c); }},
      f);
}

Morphism compose(const Morphism& f, const Morphism& g) {
  require_same_base(base_of(f), base_of(g));
  if (const auto* gt = std::get_if<TypeII>(&g)) {
    // Both generator images of f o g are determined by f(target).
    return TypeII{apply(f, gt->target)};
  }
  const auto& ga = std::get<AffinePair>(g);
  return std::visit(
      Overloaded{[&](const AffinePair& fa) -> Morphism {
                   return AffinePair(fa.alpha() * ga.alpha(),
                                     fa.alpha() * ga.beta() + fa.beta());
                 },
                 // a -> (alpha, 0) -> identity and t -> (beta, 1) -> target.
                 [&](const TypeII& ft) -> Morphism { return ft; }},
      f);
}

Morphism morph_pow(const Morphism& f, std::int64_t k) {
  const BaseRef& base = base_of(f);
  if (k < 0) {
    if (!is_automorphism(f)) {
      throw Error(ErrorKind::kNotInvertible,
                  "negative power of a non-invertible endomorphism");
    }
    return morph_pow(aut_inverse(f), -k);
  }
  if (k == 0) return identity_morphism(base);
  if (const auto* t = std::get_if<TypeII>(&f)) {
    // The k-fold composite sends t to target^(c^{k-1}), whose gamma-part is
    // (n^{c^k} - 1)/(n^c - 1) gamma.
    std::int64_t exponent = 1;
    for (std::int64_t i = 1; i < k; ++i) {
      if (__builtin_mul_overflow(exponent, t->target.c, &exponent)) {
        throw Error(ErrorKind::kLimitExceeded, "type II power exponent overflow");
      }
    }
    return TypeII{bs_pow(t->target, exponent)};
  }
  const auto& a = std::get<AffinePair>(f);
  const ZnElem one = zn_int(1, base);
  if (a.alpha() == one) {
    return AffinePair(one, zn_int(Integer(static_cast<long>(k)), base) * a.beta());
  }
  // (alpha^k, beta (alpha^k - 1) / (alpha - 1)) with the geometric sum
  // expanded so no division is needed.
  ZnElem power = one;
  ZnElem sum(base);
  for (std::int64_t i = 0; i < k; ++i) {
    sum = sum + power;
    power = power * a.alpha();
  }
  return AffinePair(power, a.beta() * sum);
}

Morphism aut_inverse(const Morphism& f) {
  const auto* a = std::get_if<AffinePair>(&f);
  if (a == nullptr || a->kind() != AffineKind::kAutomorphism) {
    throw Error(ErrorKind::kNotInvertible, to_string(f) + " is not an automorphism");
  }
  const ZnElem inv = zn_unit_recompose(
      [&] {
        UnitDecomp u = zn_unit_decompose(a->alpha());
        for (auto& e : u.exps) e = -e;
        return u;
      }(),
      a->base());
  return AffinePair(inv, -(inv * a->beta()));
}

Morphism inner(const BsElem& g) {
  const BaseRef& base = g.base();
  const ZnElem scale = zn_pow_n(-g.c, base);
  return AffinePair(scale, g.gamma * scale *
                               zn_int(Integer(static_cast<long>(base->n() - 1)), base));
}

bool is_automorphism(const Morphism& f) {
  const auto* a = std::get_if<AffinePair>(&f);
  return a != nullptr && a->kind() == AffineKind::kAutomorphism;
}

std::string to_string(const Morphism& f) {
  return std::visit(
      Overloaded{[](const AffinePair& a) {
                   return "[" + to_string(a.alpha()) + "; " + to_string(a.beta()) + "]";
                 },
                 [](const TypeII& t) {
                   return "<<" + to_string(t.target.gamma) + "; " +
                          std::to_string(t.target.c) + ">>";
                 }},
      f);
}

}  // namespace bsn
