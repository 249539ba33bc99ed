#pragma once

// Exact arithmetic in the localization Z[1/n] and the number-theoretic
// helpers the group and stabilizer code are built on.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsn/errors.hpp"

namespace bsn {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Modular multiplications Pollard rho may spend per factorization.
inline constexpr std::uint64_t kFactorBudget = std::uint64_t{1} << 22;

/// Complete factorization: trial division, then Pollard rho on the
/// cofactor. `m` must be positive; 1 yields an empty list. Throws
/// kLimitExceeded when the rho budget runs out.
std::vector<PrimePower> factorize(const Integer& m);

/// The modulus n >= 2 together with its prime factorization.
class Base {
 public:
  explicit Base(std::int64_t n);

  std::int64_t n() const noexcept { return n_; }
  const std::vector<PrimePower>& primes() const noexcept { return primes_; }
  /// Number of distinct primes dividing n.
  std::size_t r() const noexcept { return primes_.size(); }

  friend bool operator==(const Base& a, const Base& b) { return a.n_ == b.n_; }

 private:
  std::int64_t n_;
  std::vector<PrimePower> primes_;
};

using BaseRef = std::shared_ptr<const Base>;

BaseRef make_base(std::int64_t n);

/// An element l / n^p of Z[1/n], always stored in canonical form:
/// p == 0 or n does not divide l, and zero is (0, 0).
class ZnElem {
 public:
  explicit ZnElem(BaseRef base) : base_(std::move(base)) {}

  const Integer& num() const noexcept { return num_; }
  std::int64_t exp() const noexcept { return exp_; }
  const BaseRef& base() const noexcept { return base_; }
  std::int64_t n() const noexcept { return base_->n(); }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }
  Rational to_rational() const;

  friend bool operator==(const ZnElem& a, const ZnElem& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_ && *a.base_ == *b.base_;
  }

 private:
  friend ZnElem zn_normalize(Integer l, std::int64_t p, const BaseRef& base);

  Integer num_ = 0;
  std::int64_t exp_ = 0;
  BaseRef base_;
};

/// Sign and per-prime exponents of a unit: sign * prod p_i^{exps_i}.
struct UnitDecomp {
  int sign = 1;
  std::vector<std::int64_t> exps;

  friend bool operator==(const UnitDecomp&, const UnitDecomp&) = default;
};

ZnElem zn_normalize(Integer l, std::int64_t p, const BaseRef& base);
ZnElem zn_int(const Integer& value, const BaseRef& base);
/// n^e for any integer e.
ZnElem zn_pow_n(std::int64_t e, const BaseRef& base);

ZnElem zn_add(const ZnElem& a, const ZnElem& b);
ZnElem zn_neg(const ZnElem& a);
ZnElem zn_sub(const ZnElem& a, const ZnElem& b);
ZnElem zn_mul(const ZnElem& a, const ZnElem& b);

inline ZnElem operator+(const ZnElem& a, const ZnElem& b) { return zn_add(a, b); }
inline ZnElem operator-(const ZnElem& a) { return zn_neg(a); }
inline ZnElem operator-(const ZnElem& a, const ZnElem& b) { return zn_sub(a, b); }
inline ZnElem operator*(const ZnElem& a, const ZnElem& b) { return zn_mul(a, b); }

/// The rational as an element of Z[1/n], or nullopt if its reduced
/// denominator has a prime factor not dividing n.
std::optional<ZnElem> zn_from_rational(const Rational& q, const BaseRef& base);
/// a / b if the quotient lies in Z[1/n]. b must be nonzero.
std::optional<ZnElem> zn_div(const ZnElem& a, const ZnElem& b);

UnitDecomp zn_unit_decompose(const ZnElem& a);
ZnElem zn_unit_recompose(const UnitDecomp& u, const BaseRef& base);
bool zn_is_unit(const ZnElem& a);

/// l with every prime factor of n removed; keeps the sign of l.
Integer zn_coprime_part(const Integer& l, const Base& base);
/// Positive n-coprime representative of gcd(a, b) in Z[1/n].
ZnElem zn_gcd(const ZnElem& a, const ZnElem& b);
/// Whether b / a lies in Z[1/n].
bool zn_divides(const ZnElem& a, const ZnElem& b);

/// (n^c - 1) / (n - 1); zero at c = 0.
ZnElem mu(std::int64_t c, const BaseRef& base);
/// (n^{ck} - 1) / (n^c - 1), with the c = 0 limit defined as k.
ZnElem q_ratio(std::int64_t c, std::int64_t k, const BaseRef& base);

/// Smallest e >= 1 with a^e == 1 (mod m).
Integer mult_order(const Integer& a, const Integer& m);
Integer totient(const Integer& m);

std::string to_string(const ZnElem& a);

}  // namespace bsn
