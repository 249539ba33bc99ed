#include "bsn/oracle.hpp"

#include <algorithm>
#include <random>

namespace bsn {

namespace {

Rational rational_n_power(std::int64_t n, std::int64_t e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n),
                static_cast<unsigned long>(e < 0 ? -e : e));
  Rational q = e < 0 ? Rational(Integer(1), p) : Rational(p);
  q.canonicalize();
  return q;
}

// (n^c - 1) / (n - 1) over Q.
Rational rational_geometric(std::int64_t n, std::int64_t c) {
  Rational q = (rational_n_power(n, c) - 1) / Rational(n - 1);
  q.canonicalize();
  return q;
}

// Odometer over [-bound, bound]^dims; calls visit(vec) for each point.
template <class Visit>
void for_each_in_box(std::size_t dims, std::int64_t bound, Visit&& visit) {
  std::vector<std::int64_t> x(dims, -bound);
  while (true) {
    visit(x);
    std::size_t i = dims;
    while (i > 0) {
      --i;
      if (x[i] < bound) {
        ++x[i];
        break;
      }
      x[i] = -bound;
      if (i == 0) return;
    }
    if (dims == 0) return;
  }
}

std::vector<std::int64_t> unit_vector(const AffinePair& a) {
  if (a.kind() != AffineKind::kAutomorphism) {
    throw Error(ErrorKind::kPrecondition,
                to_string(Morphism(a)) + " is not an automorphism");
  }
  const UnitDecomp u = zn_unit_decompose(a.alpha());
  std::vector<std::int64_t> v;
  v.reserve(u.exps.size() + 1);
  v.push_back(u.sign < 0 ? 1 : 0);
  v.insert(v.end(), u.exps.begin(), u.exps.end());
  return v;
}

}  // namespace

std::vector<BsElem> oracle_fixed_scan(const Morphism& f, const ScanBox& box) {
  if (box.c_bound < 1) throw Error(ErrorKind::kPrecondition, "c_bound must be >= 1");
  const BaseRef& base = base_of(f);
  std::vector<BsElem> out;
  if (const auto* t = std::get_if<TypeII>(&f)) {
    for (std::int64_t c = -box.c_bound; c <= box.c_bound; ++c) {
      // The image of any (gamma, c) is target^c, so that is the only
      // candidate with this c.
      const BsElem candidate = bs_pow(t->target, c);
      if (candidate.c == c && apply(f, candidate) == candidate) {
        out.push_back(candidate);
      }
    }
    return out;
  }
  const auto& a = std::get<AffinePair>(f);
  const Rational alpha = a.alpha().to_rational();
  if (alpha == 1) {
    throw Error(ErrorKind::kUseKernelDescriptor,
                "alpha = 1 fixes a whole coset family per c; use the kernel descriptor");
  }
  const Rational beta = a.beta().to_rational();
  for (std::int64_t c = -box.c_bound; c <= box.c_bound; ++c) {
    Rational gamma = -beta * rational_geometric(base->n(), c) / (alpha - 1);
    gamma.canonicalize();
    if (auto z = zn_from_rational(gamma, base)) out.push_back({*z, c});
  }
  return out;
}

std::vector<AffinePair> oracle_stab_scan(const BsElem& g, const ScanBox& box) {
  if (box.exp_bound < 1) throw Error(ErrorKind::kPrecondition, "exp_bound must be >= 1");
  if (g.c == 0) {
    throw Error(ErrorKind::kUseKernelDescriptor,
                "stabilizer of a kernel element is {[1; beta]}; use the kernel descriptor");
  }
  const BaseRef& base = g.base();
  const Rational gamma = g.gamma.to_rational();
  const Rational mu_c = rational_geometric(base->n(), g.c);
  std::vector<AffinePair> out;
  std::vector<int> signs = box.include_sign ? std::vector<int>{-1, 1} : std::vector<int>{1};
  for (int sign : signs) {
    for_each_in_box(base->r(), box.exp_bound, [&](const std::vector<std::int64_t>& s) {
      const ZnElem alpha = zn_unit_recompose({sign, s}, base);
      Rational beta = -gamma * (alpha.to_rational() - 1) / mu_c;
      beta.canonicalize();
      if (auto z = zn_from_rational(beta, base)) out.emplace_back(alpha, *z);
    });
  }
  return out;
}

std::optional<std::vector<std::int64_t>> oracle_lattice_member(
    const AffinePair& target, const std::vector<AffinePair>& gens,
    std::int64_t bound) {
  if (bound < 1) throw Error(ErrorKind::kPrecondition, "bound must be >= 1");
  const std::vector<std::int64_t> want = unit_vector(target);
  std::vector<std::vector<std::int64_t>> vecs;
  for (const AffinePair& g : gens) vecs.push_back(unit_vector(g));
  const std::size_t width = want.size();

  auto matches = [&](const std::vector<std::int64_t>& x) {
    for (std::size_t col = 0; col < width; ++col) {
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * vecs[i][col];
      // Column 0 is the sign bit and only matters mod 2.
      const bool ok = col == 0 ? ((sum - want[0]) % 2 == 0) : sum == want[col];
      if (!ok) return false;
    }
    return true;
  };

  for (std::int64_t radius = 0; radius <= bound; ++radius) {
    std::optional<std::vector<std::int64_t>> found;
    for_each_in_box(vecs.size(), radius, [&](const std::vector<std::int64_t>& x) {
      if (found) return;
      std::int64_t norm = 0;
      for (std::int64_t v : x) norm = std::max(norm, v < 0 ? -v : v);
      if (norm == radius && matches(x)) found = x;
    });
    if (found) return found;
  }
  return std::nullopt;
}

DifferentialReport oracle_word_differential(std::int64_t count,
                                            std::int64_t max_len,
                                            const BaseRef& base,
                                            std::uint64_t seed) {
  DifferentialReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> length_dist(0, std::max<std::int64_t>(max_len, 0));
  std::uniform_int_distribution<int> letter_dist(0, 3);
  std::uniform_int_distribution<int> exp_dist(-3, 3);
  std::bernoulli_distribution plain(0.5);
  constexpr char kLetters[] = {'a', 't', 'A', 'T'};

  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t len = length_dist(rng);
    std::string word;
    GL2 product;
    for (std::int64_t j = 0; j < len; ++j) {
      const char letter = kLetters[letter_dist(rng)];
      std::int64_t e = (letter == 'A' || letter == 'T') ? -1 : 1;
      if (!word.empty()) word += ' ';
      word += letter;
      if (!plain(rng)) {
        const int k = exp_dist(rng);
        word += '^' + std::to_string(k);
        e *= k;
      }
      GL2 image;
      if (letter == 'a' || letter == 'A') {
        image = {1, 0, Rational(e), 1};
      } else {
        image = {rational_n_power(base->n(), e), 0, 0, 1};
      }
      product = product * image;
    }
    const BsElem folded = bs_from_word(word, base);
    ++report.checked;
    if (!(bs_to_matrix(folded) == product)) report.mismatches.push_back(word);
  }
  return report;
}

}  // namespace bsn
