#include "bsn/ring.hpp"

#include <algorithm>
#include <limits>

namespace bsn {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kPrecondition: return "PreconditionViolation";
    case ErrorKind::kBaseMismatch: return "BaseMismatch";
    case ErrorKind::kNotAUnit: return "NotAUnit";
    case ErrorKind::kNotCoprime: return "NotCoprime";
    case ErrorKind::kNotInvertible: return "NotInvertible";
    case ErrorKind::kNoMaximalRoot: return "NoMaximalRoot";
    case ErrorKind::kIdentityStabilizer: return "IdentityStabilizer";
    case ErrorKind::kUseKernelDescriptor: return "UseKernelDescriptor";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kLimitExceeded: return "LimitExceeded";
    case ErrorKind::kParse: return "ParseError";
  }
  return "Unknown";
}

namespace {

// Exponents of n beyond this are refused; the numbers involved would have
// millions of digits.
constexpr std::int64_t kMaxExponent = std::int64_t{1} << 20;

void check_exponent(std::int64_t e) {
  if (e > kMaxExponent || e < -kMaxExponent) {
    throw Error(ErrorKind::kLimitExceeded,
                "exponent " + std::to_string(e) + " exceeds supported range");
  }
}

Integer pow_int(std::int64_t base, std::int64_t e) {
  check_exponent(e);
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(e));
  return out;
}

void require_same_base(const ZnElem& a, const ZnElem& b) {
  if (!(*a.base() == *b.base())) {
    throw Error(ErrorKind::kBaseMismatch,
                "elements over Z[1/" + std::to_string(a.n()) + "] and Z[1/" +
                    std::to_string(b.n()) + "]");
  }
}

// Multiplicity of prime q in |v|, dividing it out of v.
unsigned strip_prime(Integer& v, const Integer& q) {
  unsigned count = 0;
  while (v != 0 && mpz_divisible_p(v.get_mpz_t(), q.get_mpz_t())) {
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
    ++count;
  }
  return count;
}

// Pollard-Brent on f(x) = x^2 + c. Returns a nontrivial factor of the
// composite m, or nullopt once `budget` multiplications are spent.
std::optional<Integer> rho_factor(const Integer& m, unsigned long c, std::uint64_t& budget) {
  constexpr std::uint64_t kBatch = 128;
  Integer x, y = 2, ys, q = 1, g = 1, diff;
  auto step = [&](Integer& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  };
  for (std::uint64_t r = 1; g == 1; r *= 2) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const std::uint64_t count = std::min(kBatch, r - k);
      if (budget < count) return std::nullopt;
      budget -= count;
      for (std::uint64_t i = 0; i < count; ++i) {
        step(y);
        diff = abs(x - y);
        q = q * diff % m;
      }
      g = gcd(q, m);
    }
  }
  if (g == m) {
    do {
      step(ys);
      g = gcd(abs(x - ys), m);
    } while (g == 1);
  }
  if (g == m) return std::nullopt;
  return g;
}

void split_into(const Integer& m, std::vector<Integer>& primes, std::uint64_t& budget) {
  if (m == 1) return;
  if (mpz_probab_prime_p(m.get_mpz_t(), 30) > 0) {
    primes.push_back(m);
    return;
  }
  for (unsigned long c = 1; c < 64; ++c) {
    if (auto f = rho_factor(m, c, budget)) {
      split_into(*f, primes, budget);
      split_into(m / *f, primes, budget);
      return;
    }
    if (budget == 0) break;
  }
  throw Error(ErrorKind::kLimitExceeded, "could not factor " + m.get_str());
}

}  // namespace

std::vector<PrimePower> factorize(const Integer& m) {
  if (m <= 0) {
    throw Error(ErrorKind::kPrecondition, "factorize requires m >= 1");
  }
  std::vector<PrimePower> out;
  Integer rest = m;
  constexpr unsigned long kTrialLimit = 1u << 14;
  for (unsigned long d = 2; d < kTrialLimit && Integer(d) * d <= rest; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
      ++e;
    }
    if (e > 0) out.push_back({Integer(d), e});
  }
  std::vector<Integer> large;
  std::uint64_t budget = kFactorBudget;
  split_into(rest, large, budget);
  std::sort(large.begin(), large.end());
  for (const Integer& p : large) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

Base::Base(std::int64_t n) : n_(n) {
  if (n < 2) {
    throw Error(ErrorKind::kPrecondition, "n must be at least 2");
  }
  primes_ = factorize(Integer(static_cast<long>(n)));
}

BaseRef make_base(std::int64_t n) { return std::make_shared<const Base>(n); }

Rational ZnElem::to_rational() const {
  Rational q(num_, pow_int(n(), exp_));
  q.canonicalize();
  return q;
}

ZnElem zn_normalize(Integer l, std::int64_t p, const BaseRef& base) {
  if (p < 0) {
    throw Error(ErrorKind::kPrecondition, "negative n-exponent in normalize");
  }
  ZnElem out(base);
  if (l == 0) return out;
  const unsigned long n = static_cast<unsigned long>(base->n());
  while (p > 0 && mpz_divisible_ui_p(l.get_mpz_t(), n)) {
    mpz_divexact_ui(l.get_mpz_t(), l.get_mpz_t(), n);
    --p;
  }
  out.num_ = std::move(l);
  out.exp_ = p;
  return out;
}

ZnElem zn_int(const Integer& value, const BaseRef& base) {
  return zn_normalize(value, 0, base);
}

ZnElem zn_pow_n(std::int64_t e, const BaseRef& base) {
  if (e >= 0) return zn_normalize(pow_int(base->n(), e), 0, base);
  check_exponent(e);
  return zn_normalize(1, -e, base);
}

ZnElem zn_add(const ZnElem& a, const ZnElem& b) {
  require_same_base(a, b);
  const std::int64_t p = std::max(a.exp(), b.exp());
  Integer l = a.num() * pow_int(a.n(), p - a.exp()) +
              b.num() * pow_int(a.n(), p - b.exp());
  return zn_normalize(std::move(l), p, a.base());
}

ZnElem zn_neg(const ZnElem& a) {
  return zn_normalize(-a.num(), a.exp(), a.base());
}

ZnElem zn_sub(const ZnElem& a, const ZnElem& b) { return zn_add(a, zn_neg(b)); }

ZnElem zn_mul(const ZnElem& a, const ZnElem& b) {
  require_same_base(a, b);
  return zn_normalize(a.num() * b.num(), a.exp() + b.exp(), a.base());
}

std::optional<ZnElem> zn_from_rational(const Rational& q, const BaseRef& base) {
  Integer den = q.get_den();
  std::int64_t p = 0;
  for (const PrimePower& pp : base->primes()) {
    const unsigned e = strip_prime(den, pp.prime);
    p = std::max<std::int64_t>(p, (e + pp.exponent - 1) / pp.exponent);
  }
  if (den != 1) return std::nullopt;
  // n^p / den is an integer because den | n^p.
  Integer scale = pow_int(base->n(), p) / Integer(q.get_den());
  return zn_normalize(Integer(q.get_num()) * scale, p, base);
}

std::optional<ZnElem> zn_div(const ZnElem& a, const ZnElem& b) {
  require_same_base(a, b);
  if (b.is_zero()) {
    throw Error(ErrorKind::kPrecondition, "division by zero in Z[1/n]");
  }
  return zn_from_rational(a.to_rational() / b.to_rational(), a.base());
}

Integer zn_coprime_part(const Integer& l, const Base& base) {
  if (l == 0) {
    throw Error(ErrorKind::kPrecondition, "coprime part of zero");
  }
  Integer out = l;
  for (const PrimePower& pp : base.primes()) strip_prime(out, pp.prime);
  return out;
}

UnitDecomp zn_unit_decompose(const ZnElem& a) {
  if (a.is_zero()) throw Error(ErrorKind::kNotAUnit, "zero is not a unit");
  const Base& base = *a.base();
  Integer rest = a.num();
  UnitDecomp out;
  out.sign = a.sign();
  out.exps.reserve(base.r());
  for (const PrimePower& pp : base.primes()) {
    const std::int64_t v = strip_prime(rest, pp.prime);
    out.exps.push_back(v - a.exp() * static_cast<std::int64_t>(pp.exponent));
  }
  if (abs(rest) != 1) {
    throw Error(ErrorKind::kNotAUnit, to_string(a) + " is not a unit of Z[1/" +
                                          std::to_string(a.n()) + "]");
  }
  return out;
}

ZnElem zn_unit_recompose(const UnitDecomp& u, const BaseRef& base) {
  if (u.exps.size() != base->r()) {
    throw Error(ErrorKind::kPrecondition, "unit exponent vector has wrong length");
  }
  Rational q(u.sign);
  for (std::size_t i = 0; i < u.exps.size(); ++i) {
    const std::int64_t e = u.exps[i];
    check_exponent(e);
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), base->primes()[i].prime.get_mpz_t(),
               static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) {
      q *= pe;
    } else {
      q /= pe;
    }
  }
  return *zn_from_rational(q, base);
}

bool zn_is_unit(const ZnElem& a) {
  return !a.is_zero() && abs(zn_coprime_part(a.num(), *a.base())) == 1;
}

ZnElem zn_gcd(const ZnElem& a, const ZnElem& b) {
  require_same_base(a, b);
  if (a.is_zero() && b.is_zero()) {
    throw Error(ErrorKind::kPrecondition, "gcd of two zeros");
  }
  const Base& base = *a.base();
  Integer g = 0;
  if (!a.is_zero()) g = abs(zn_coprime_part(a.num(), base));
  if (!b.is_zero()) g = gcd(g, zn_coprime_part(b.num(), base));
  return zn_int(g, a.base());
}

bool zn_divides(const ZnElem& a, const ZnElem& b) {
  require_same_base(a, b);
  if (a.is_zero()) throw Error(ErrorKind::kPrecondition, "divisibility by zero");
  if (b.is_zero()) return true;
  const Integer da = abs(zn_coprime_part(a.num(), *a.base()));
  return mpz_divisible_p(b.num().get_mpz_t(), da.get_mpz_t()) != 0;
}

ZnElem mu(std::int64_t c, const BaseRef& base) {
  const std::int64_t m = c < 0 ? -c : c;
  Integer sum = (pow_int(base->n(), m) - 1) / (base->n() - 1);
  if (c >= 0) return zn_normalize(std::move(sum), 0, base);
  return zn_normalize(-sum, m, base);
}

ZnElem q_ratio(std::int64_t c, std::int64_t k, const BaseRef& base) {
  if (c == 0) return zn_int(Integer(static_cast<long>(k)), base);
  if (k != 0 && (c > kMaxExponent || c < -kMaxExponent ||
                 k > kMaxExponent / (c < 0 ? -c : c) ||
                 k < -kMaxExponent / (c < 0 ? -c : c))) {
    throw Error(ErrorKind::kLimitExceeded, "power exponent too large");
  }
  const ZnElem num = zn_sub(zn_pow_n(c * k, base), zn_int(1, base));
  const ZnElem den = zn_sub(zn_pow_n(c, base), zn_int(1, base));
  return *zn_div(num, den);
}

Integer totient(const Integer& m) {
  Integer out = 1;
  for (const PrimePower& pp : factorize(m)) {
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent - 1);
    out *= pk * (pp.prime - 1);
  }
  return out;
}

Integer mult_order(const Integer& a, const Integer& m) {
  if (m < 1) throw Error(ErrorKind::kPrecondition, "modulus must be positive");
  if (gcd(a, m) != 1) {
    throw Error(ErrorKind::kNotCoprime,
                a.get_str() + " is not coprime to " + m.get_str());
  }
  if (m == 1) return 1;
  Integer order = totient(m);
  Integer residue = a % m;
  if (residue < 0) residue += m;
  for (const PrimePower& pp : factorize(order)) {
    for (unsigned i = 0; i < pp.exponent; ++i) {
      const Integer candidate = order / pp.prime;
      Integer r;
      mpz_powm(r.get_mpz_t(), residue.get_mpz_t(), candidate.get_mpz_t(),
               m.get_mpz_t());
      if (r != 1) break;
      order = candidate;
    }
  }
  return order;
}

std::string to_string(const ZnElem& a) {
  if (a.exp() == 0) return a.num().get_str();
  return a.num().get_str() + "/" + pow_int(a.n(), a.exp()).get_str();
}

}  // namespace bsn
