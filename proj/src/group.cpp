#include "bsn/group.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>

namespace bsn {

namespace {

void require_same_base(const BsElem& g, const BsElem& h) {
  if (!(*g.base() == *h.base())) {
    throw Error(ErrorKind::kBaseMismatch, "elements of BS(1," +
                                              std::to_string(g.base()->n()) +
                                              ") and BS(1," +
                                              std::to_string(h.base()->n()) + ")");
  }
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::kLimitExceeded, "exponent overflow");
  }
  return out;
}

Rational n_power(std::int64_t n, std::int64_t e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n),
                static_cast<unsigned long>(e < 0 ? -e : e));
  Rational q = e < 0 ? Rational(Integer(1), p) : Rational(p);
  q.canonicalize();
  return q;
}

}  // namespace

BsElem bs_identity(const BaseRef& base) { return {ZnElem(base), 0}; }
BsElem bs_a(const BaseRef& base) { return {zn_int(1, base), 0}; }
BsElem bs_t(const BaseRef& base) { return {ZnElem(base), 1}; }

BsElem bs_mul(const BsElem& g, const BsElem& h) {
  require_same_base(g, h);
  return {g.gamma * zn_pow_n(h.c, g.base()) + h.gamma, g.c + h.c};
}

BsElem bs_inv(const BsElem& g) {
  return {-(g.gamma * zn_pow_n(-g.c, g.base())), -g.c};
}

BsElem bs_pow(const BsElem& g, std::int64_t k) {
  return {q_ratio(g.c, k, g.base()) * g.gamma, checked_mul(g.c, k)};
}

std::vector<WordLetter> parse_word(std::string_view text) {
  std::vector<WordLetter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    WordLetter letter;
    switch (ch) {
      case 'a': letter = {'a', 1}; break;
      case 'A': letter = {'a', -1}; break;
      case 't': letter = {'t', 1}; break;
      case 'T': letter = {'t', -1}; break;
      default:
        throw ParseError(i, std::string(1, ch),
                         "unexpected token '" + std::string(1, ch) +
                             "' at position " + std::to_string(i) +
                             " (expected a, t, A or T)");
    }
    ++i;
    if (i < text.size() && text[i] == '^') {
      const std::size_t start = ++i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      const std::size_t digits = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == digits) {
        throw ParseError(start, std::string(text.substr(start, 1)),
                         "missing exponent after '^' at position " +
                             std::to_string(start));
      }
      std::int64_t e = 0;
      const char* first = text.data() + digits;
      const auto [ptr, ec] = std::from_chars(first, text.data() + i, e);
      if (ec != std::errc() || ptr != text.data() + i) {
        throw ParseError(start, std::string(text.substr(start, i - start)),
                         "exponent out of range at position " +
                             std::to_string(start));
      }
      if (text[start] == '-') e = -e;
      letter.exponent *= e;
    }
    out.push_back(letter);
  }
  return out;
}

BsElem bs_from_letters(const std::vector<WordLetter>& word, const BaseRef& base) {
  BsElem acc = bs_identity(base);
  for (const WordLetter& letter : word) {
    if (letter.exponent == 0) continue;
    const BsElem gen = letter.generator == 't' ? bs_t(base) : bs_a(base);
    acc = bs_mul(acc, bs_pow(gen, letter.exponent));
  }
  return acc;
}

BsElem bs_from_word(std::string_view text, const BaseRef& base) {
  return bs_from_letters(parse_word(text), base);
}

GL2 operator*(const GL2& x, const GL2& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

GL2 bs_to_matrix(const BsElem& g) {
  return {n_power(g.base()->n(), g.c), 0, g.gamma.to_rational(), 1};
}

std::optional<BsElem> bs_kth_root(const BsElem& g, std::int64_t k) {
  if (k < 1) throw Error(ErrorKind::kPrecondition, "root order must be >= 1");
  const BaseRef& base = g.base();
  if (g.c == 0) {
    auto gamma = zn_div(g.gamma, zn_int(Integer(static_cast<long>(k)), base));
    if (!gamma) return std::nullopt;
    return BsElem{*gamma, 0};
  }
  if (g.c % k != 0) return std::nullopt;
  const std::int64_t c = g.c / k;
  auto gamma = zn_div(g.gamma, q_ratio(c, k, base));
  if (!gamma) return std::nullopt;
  return BsElem{*gamma, c};
}

std::pair<BsElem, std::int64_t> bs_root_closure(const BsElem& g) {
  if (g.c == 0) {
    throw Error(ErrorKind::kNoMaximalRoot,
                "kernel elements have roots of every order; no maximal root");
  }
  const BaseRef& base = g.base();
  const std::int64_t abs_c = g.c < 0 ? -g.c : g.c;
  const std::int64_t sign = g.c < 0 ? -1 : 1;
  const ZnElem mu_c = mu(g.c, base);
  for (std::int64_t e = 1; e <= abs_c; ++e) {
    if (abs_c % e != 0) continue;
    auto gamma = zn_div(g.gamma * mu(sign * e, base), mu_c);
    if (gamma) return {BsElem{*gamma, sign * e}, abs_c / e};
  }
  // e = |c| always succeeds, so this is unreachable.
  return {g, 1};
}

ZnElem additive_gcd(const std::vector<ZnElem>& values, const BaseRef& base) {
  std::int64_t p = 0;
  for (const ZnElem& v : values) p = std::max(p, v.exp());
  Integer g = 0;
  const ZnElem scale = zn_pow_n(p, base);
  for (const ZnElem& v : values) {
    // v * n^p is an integer since v.exp() <= p.
    g = gcd(g, (v * scale).num());
  }
  return zn_normalize(g, p, base);
}

SubgroupClass classify_subgroup(const std::vector<BsElem>& gens) {
  if (gens.empty()) {
    throw Error(ErrorKind::kEmptyInput, "subgroup needs at least one generator");
  }
  const BaseRef& base = gens.front().base();
  for (const BsElem& g : gens) require_same_base(gens.front(), g);

  bool all_kernel = true;
  for (const BsElem& g : gens) all_kernel = all_kernel && g.c == 0;
  if (all_kernel) {
    std::vector<ZnElem> gammas;
    for (const BsElem& g : gens) gammas.push_back(g.gamma);
    return CyclicSubgroup{{additive_gcd(gammas, base), 0}};
  }

  // Extended gcd over the c-components, in caller order.
  std::vector<Integer> coef(gens.size(), 0);
  Integer k = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Integer ci = static_cast<long>(gens[i].c);
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), k.get_mpz_t(),
               ci.get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) coef[j] *= s;
    coef[i] = t;
    k = g;
  }
  BsElem h = bs_identity(base);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (coef[i] != 0) {
      if (!coef[i].fits_slong_p()) {
        throw Error(ErrorKind::kLimitExceeded, "Bezout coefficient too large");
      }
      h = bs_mul(h, bs_pow(gens[i], coef[i].get_si()));
    }
  }
  const std::int64_t step = k.get_si();

  std::vector<ZnElem> residues;
  bool all_trivial = true;
  for (const BsElem& g : gens) {
    const BsElem u = bs_mul(g, bs_pow(h, -(g.c / step)));
    all_trivial = all_trivial && u.is_identity();
    residues.push_back(u.gamma);
  }
  if (all_trivial) return CyclicSubgroup{h};
  return FiniteIndexSubgroup{h, {additive_gcd(residues, base), 0}};
}

std::string to_string(const BsElem& g) {
  return "(" + to_string(g.gamma) + "; " + std::to_string(g.c) + ")";
}

}  // namespace bsn
