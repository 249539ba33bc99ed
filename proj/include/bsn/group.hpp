#pragma once

// BS(1,n) realized as pairs (gamma, c) in Z[1/n] x| Z with
//   (g1, c1) . (g2, c2) = (g1 n^{c2} + g2, c1 + c2).
//
// Generator convention: a = (1, 0), t = (0, 1). Under this product
// t a t^-1 = (1/n, 0), so the relation read off the pairs is t^-1 a t = a^n.
// The word parser and the matrix oracle both follow this convention.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bsn/ring.hpp"

namespace bsn {

struct BsElem {
  ZnElem gamma;
  std::int64_t c = 0;

  const BaseRef& base() const noexcept { return gamma.base(); }
  bool is_identity() const { return c == 0 && gamma.is_zero(); }

  friend bool operator==(const BsElem&, const BsElem&) = default;
};

BsElem bs_identity(const BaseRef& base);
/// The generators a = (1, 0) and t = (0, 1).
BsElem bs_a(const BaseRef& base);
BsElem bs_t(const BaseRef& base);

BsElem bs_mul(const BsElem& g, const BsElem& h);
BsElem bs_inv(const BsElem& g);
BsElem bs_pow(const BsElem& g, std::int64_t k);

inline BsElem operator*(const BsElem& g, const BsElem& h) { return bs_mul(g, h); }

/// One letter of a word: generator 'a' or 't' raised to `exponent`
/// ('A' and 'T' are parsed as negative exponents).
struct WordLetter {
  char generator = 'a';
  std::int64_t exponent = 1;
};

/// Tokens `a`, `t`, `A`, `T`, each optionally followed by `^` and a signed
/// decimal exponent, separated by whitespace. Throws ParseError.
std::vector<WordLetter> parse_word(std::string_view text);
BsElem bs_from_word(std::string_view text, const BaseRef& base);
BsElem bs_from_letters(const std::vector<WordLetter>& word, const BaseRef& base);

/// 2x2 matrix with exact rational entries, row-major.
struct GL2 {
  Rational a11 = 1, a12 = 0, a21 = 0, a22 = 1;

  friend bool operator==(const GL2&, const GL2&) = default;
};

GL2 operator*(const GL2& x, const GL2& y);

/// (gamma, c) -> [[n^c, 0], [gamma, 1]].
GL2 bs_to_matrix(const BsElem& g);

/// The unique h with h^k = g, if one exists in BS(1,n).
std::optional<BsElem> bs_kth_root(const BsElem& g, std::int64_t k);

/// (h, m) with h^m = g and m maximal. Requires g.c != 0.
std::pair<BsElem, std::int64_t> bs_root_closure(const BsElem& g);

struct CyclicSubgroup {
  BsElem generator;
};

struct FiniteIndexSubgroup {
  BsElem t_part;
  BsElem kernel_gen;
};

using SubgroupClass = std::variant<CyclicSubgroup, FiniteIndexSubgroup>;

/// Classifies <gens> as infinite cyclic (or trivial) or of finite index,
/// emitting witnesses built from the generators.
SubgroupClass classify_subgroup(const std::vector<BsElem>& gens);

/// Positive generator of the additive subgroup of Z[1/n] spanned by `values`
/// (zero if all are zero).
ZnElem additive_gcd(const std::vector<ZnElem>& values, const BaseRef& base);

std::string to_string(const BsElem& g);

}  // namespace bsn
