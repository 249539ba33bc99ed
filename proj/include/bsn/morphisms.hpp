#pragma once

// Endomorphisms of BS(1,n). Two disjoint families:
//   affine   [alpha; beta] : (gamma, c) -> (alpha gamma + beta mu(c), c),
//            alpha != 0; an automorphism exactly when alpha is a unit.
//   type II  <<gamma; c>>  : a -> identity, t -> (gamma, c).

#include <cstdint>
#include <string>
#include <variant>

#include "bsn/group.hpp"
#include "bsn/ring.hpp"

namespace bsn {

enum class AffineKind { kAutomorphism, kTypeI };

class AffinePair {
 public:
  /// Throws kPrecondition for alpha == 0; that map is the type II
  /// morphism <<beta; 1>>.
  AffinePair(ZnElem alpha, ZnElem beta);

  const ZnElem& alpha() const noexcept { return alpha_; }
  const ZnElem& beta() const noexcept { return beta_; }
  AffineKind kind() const noexcept { return kind_; }
  const BaseRef& base() const noexcept { return alpha_.base(); }

  friend bool operator==(const AffinePair& a, const AffinePair& b) {
    return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
  }

 private:
  ZnElem alpha_;
  ZnElem beta_;
  AffineKind kind_;
};

struct TypeII {
  BsElem target;

  friend bool operator==(const TypeII&, const TypeII&) = default;
};

using Morphism = std::variant<AffinePair, TypeII>;

Morphism identity_morphism(const BaseRef& base);
bool is_identity(const Morphism& f);
const BaseRef& base_of(const Morphism& f);

BsElem apply(const Morphism& f, const BsElem& g);
/// f o g, i.e. apply g first.
Morphism compose(const Morphism& f, const Morphism& g);
/// k-fold composite; negative k only for automorphisms.
Morphism morph_pow(const Morphism& f, std::int64_t k);
Morphism aut_inverse(const Morphism& f);
/// Conjugation x -> g x g^-1.
Morphism inner(const BsElem& g);
bool is_automorphism(const Morphism& f);

std::string to_string(const Morphism& f);

}  // namespace bsn
