#include "bsn/fixstab.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

#include "bsn/oracle.hpp"

namespace bsn {

namespace {

// Largest order box enumerated when building the stabilizer generating set.
constexpr std::int64_t kMaxOrderBox = 16'000'000;

Integer n_integer(const Base& base) { return Integer(static_cast<long>(base.n())); }

std::int64_t to_int64(const Integer& v, const char* what) {
  if (!v.fits_slong_p()) {
    throw Error(ErrorKind::kLimitExceeded, std::string(what) + " does not fit in 64 bits");
  }
  return v.get_si();
}

Integer coprime_denominator(const Rational& q, const Base& base) {
  return abs(zn_coprime_part(Integer(q.get_den()), base));
}

// Row-style Hermite normal form: upper triangular, positive pivots, entries
// above each pivot reduced into [0, pivot). Zero rows are dropped.
std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> rows,
                                               std::size_t cols) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
    bool has_pivot = false;
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = pivot_row; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
      }
      if (best == rows.size()) break;
      has_pivot = true;
      std::swap(rows[pivot_row], rows[best]);
      bool cleared = true;
      for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                   rows[pivot_row][col].get_mpz_t());
        for (std::size_t j = col; j < cols; ++j) rows[i][j] -= q * rows[pivot_row][j];
        cleared = cleared && rows[i][col] == 0;
      }
      if (cleared) break;
    }
    if (!has_pivot) continue;
    if (rows[pivot_row][col] < 0) {
      for (auto& v : rows[pivot_row]) v = -v;
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                 rows[pivot_row][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= q * rows[pivot_row][j];
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

struct WordModulus {
  using Value = unsigned long;
  unsigned long m;
  Value reduce(const Integer& v) const { return Integer(v % m).get_ui(); }
  Value one() const { return 1 % m; }
  Value mul(Value a, Value b) const {
    return static_cast<Value>(static_cast<unsigned __int128>(a) * b % m);
  }
  Value neg(Value a) const { return a == 0 ? 0 : m - a; }
};

struct BigModulus {
  using Value = Integer;
  Integer m;
  Value reduce(const Integer& v) const { return v % m; }
  Value one() const { return Integer(1) % m; }
  Value mul(const Value& a, const Value& b) const { return a * b % m; }
  Value neg(const Value& a) const { return (m - a) % m; }
};

// L^j and its sign variant: tuples 0 <= s_i < o(p_i) with
// +-prod p_i^{s_i} == n^j (mod mu'), for 0 <= j < o(n).
template <class Modulus>
void fill_lsets(const Modulus& mod, const Base& base, const std::vector<std::int64_t>& orders,
                std::int64_t n_order, std::int64_t box, StabDerivation& der) {
  using Value = typename Modulus::Value;
  const std::size_t r = base.r();
  std::map<Value, std::int64_t> power_index;
  {
    Value acc = mod.one();
    const Value nm = mod.reduce(n_integer(base));
    for (std::int64_t j = 0; j < n_order; ++j) {
      power_index.emplace(acc, j);
      acc = mod.mul(acc, nm);
    }
  }
  der.lsets.assign(n_order, {});
  der.sign_lsets.assign(n_order, {});

  std::vector<std::vector<Value>> prime_powers(r);
  for (std::size_t i = 0; i < r; ++i) {
    Value acc = mod.one();
    const Value p = mod.reduce(base.primes()[i].prime);
    for (std::int64_t e = 0; e < orders[i]; ++e) {
      prime_powers[i].push_back(acc);
      acc = mod.mul(acc, p);
    }
  }
  std::vector<std::int64_t> s(r, 0);
  for (std::int64_t step = 0; step < box; ++step) {
    Value residue = mod.one();
    for (std::size_t i = 0; i < r; ++i) residue = mod.mul(residue, prime_powers[i][s[i]]);
    if (auto it = power_index.find(residue); it != power_index.end()) {
      der.lsets[it->second].push_back(s);
    }
    if (auto it = power_index.find(mod.neg(residue)); it != power_index.end()) {
      der.sign_lsets[it->second].push_back(s);
    }
    for (std::size_t i = r; i-- > 0;) {
      if (++s[i] < orders[i]) break;
      s[i] = 0;
    }
  }
}

// beta = -(gamma / mu(c)) (alpha - 1), the unique partner of alpha in
// Stab(gamma, c) for c != 0.
ZnElem stabilizing_beta(const BsElem& g, const ZnElem& alpha) {
  const ZnElem one = zn_int(1, g.base());
  auto beta = zn_div((alpha - one) * g.gamma, mu(g.c, g.base()));
  if (!beta) {
    throw std::logic_error("stabilizer generator " + to_string(alpha) +
                           " has no partner in Z[1/n]");
  }
  return -*beta;
}

// Canonical basis of the exponent lattice. Coordinates are (s_1..s_r, e0)
// for alpha = (-1)^{e0} prod p_i^{s_i}; rows must already include 2 e0.
StabLattice lattice_from_rows(const BsElem& g,
                              std::vector<std::vector<Integer>> rows) {
  const BaseRef& base = g.base();
  const std::size_t r = base->r();
  rows = hermite_rows(std::move(rows), r + 1);
  if (rows.size() != r + 1) {
    throw std::logic_error("stabilizer exponent lattice is not of full rank");
  }
  StabLattice out;
  out.rank = static_cast<std::int64_t>(r);
  out.has_torsion = rows[r][r] == 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == r && !out.has_torsion) break;
    UnitDecomp u;
    u.sign = rows[i][r] % 2 == 0 ? 1 : -1;
    for (std::size_t j = 0; j < r; ++j) u.exps.push_back(to_int64(rows[i][j], "exponent"));
    const ZnElem alpha = zn_unit_recompose(u, base);
    out.generators.emplace_back(alpha, stabilizing_beta(g, alpha));
  }
  return out;
}

StabLattice stab_lattice(const BsElem& g) {
  const BaseRef& base = g.base();
  const std::size_t r = base->r();
  const auto& primes = base->primes();

  if (g.gamma.is_zero()) {
    // Every [alpha; 0] fixes (0, c).
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i <= r; ++i) {
      std::vector<Integer> row(r + 1, 0);
      row[i] = 1;
      rows.push_back(row);
    }
    return lattice_from_rows(g, rows);
  }

  StabDerivation der{mu(g.c, base), 0, ZnElem(base), 0, {}, 0, {}, {}};
  der.d = zn_gcd(g.gamma, der.mu).num();
  der.gamma_prime = *zn_div(g.gamma, zn_int(der.d, base));
  der.mu_prime = der.mu.num() / der.d;
  const Integer& m = der.mu_prime;

  std::int64_t box = 1;
  std::vector<std::int64_t> orders;
  for (const PrimePower& pp : primes) {
    der.prime_orders.push_back(mult_order(pp.prime, m));
    orders.push_back(to_int64(der.prime_orders.back(), "order"));
    if (__builtin_mul_overflow(box, orders.back(), &box) || box > kMaxOrderBox) {
      throw Error(ErrorKind::kLimitExceeded,
                  "order box for modulus " + m.get_str() + " is too large to enumerate");
    }
  }
  der.n_order = mult_order(n_integer(*base), m);
  const std::int64_t n_order = to_int64(der.n_order, "order");
  if (n_order > kMaxOrderBox) {
    throw Error(ErrorKind::kLimitExceeded, "order of n is too large to enumerate");
  }

  if (m.fits_ulong_p()) {
    fill_lsets(WordModulus{m.get_ui()}, *base, orders, n_order, box, der);
  } else {
    fill_lsets(BigModulus{m}, *base, orders, n_order, box, der);
  }

  // Exponent vectors of the generating set: p_i^{o(p_i)}, n^{o(n)},
  // prod p_i^{s_i} / n^j and -prod p_i^{s_i} / n^j, plus (-1)^2 = 1.
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Integer> row(r + 1, 0);
    row[i] = der.prime_orders[i];
    rows.push_back(row);
  }
  {
    std::vector<Integer> row(r + 1, 0);
    for (std::size_t i = 0; i < r; ++i) row[i] = der.n_order * primes[i].exponent;
    rows.push_back(row);
  }
  auto push_tuple = [&](const std::vector<std::int64_t>& tuple, std::int64_t j, int sign_bit) {
    std::vector<Integer> row(r + 1, 0);
    for (std::size_t i = 0; i < r; ++i) {
      row[i] = Integer(static_cast<long>(tuple[i])) -
               Integer(static_cast<long>(j)) * primes[i].exponent;
    }
    row[r] = sign_bit;
    rows.push_back(row);
  };
  for (std::int64_t j = 0; j < n_order; ++j) {
    for (const auto& tuple : der.lsets[j]) push_tuple(tuple, j, 0);
    for (const auto& tuple : der.sign_lsets[j]) push_tuple(tuple, j, 1);
  }
  {
    std::vector<Integer> row(r + 1, 0);
    row[r] = 2;
    rows.push_back(row);
  }

  StabLattice out = lattice_from_rows(g, std::move(rows));
  out.derivation = std::move(der);
  return out;
}

}  // namespace

namespace {

FixOutcome fix_affine(const AffinePair& a, bool audit) {
  const BaseRef& base = a.base();
  const Rational alpha = a.alpha().to_rational();
  if (alpha == 1) {
    if (a.beta().is_zero()) return {FixWhole{}, std::nullopt};
    return {FixKernel{}, std::nullopt};
  }
  const std::int64_t n = base->n();
  FixDerivation der;
  der.kappa = -a.beta().to_rational() / ((alpha - 1) * Rational(n - 1));
  der.kappa.canonicalize();
  der.modulus = coprime_denominator(der.kappa, *base);
  der.c_tilde = to_int64(mult_order(n_integer(*base), der.modulus), "fixed-point period");
  der.q_core = abs(zn_coprime_part(Integer(alpha.get_num()) - Integer(alpha.get_den()), *base));
  if (audit) {
    try {
      der.c0 = totient(Integer(static_cast<long>(n - 1)) * der.q_core);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kLimitExceeded) throw;
    }
  }
  Rational gamma = der.kappa * (zn_pow_n(der.c_tilde, base).to_rational() - 1);
  gamma.canonicalize();
  auto generator = zn_from_rational(gamma, base);
  if (!generator) throw std::logic_error("fixed-point generator outside Z[1/n]");
  return {FixCyclic{{*generator, der.c_tilde}}, std::move(der)};
}

}  // namespace

FixOutcome fix(const Morphism& f) {
  if (const auto* t = std::get_if<TypeII>(&f)) {
    if (t->target.c == 1) return {FixCyclic{t->target}, std::nullopt};
    return {FixTrivial{}, std::nullopt};
  }
  return fix_affine(std::get<AffinePair>(f), true);
}

FixResult per(const Morphism& f) {
  // Fix(f) is contained in every Fix(f^k). The only maps with a strictly
  // larger Fix(f^k) are the twists that square to something fixing more:
  // [-1; beta] (its square is the identity) and <<gamma; -1>> (its square
  // sends t to an element with c = 1).
  if (const auto* a = std::get_if<AffinePair>(&f)) {
    if (a->alpha() == zn_int(-1, a->base())) return fix(morph_pow(f, 2)).result;
  } else if (std::get<TypeII>(f).target.c == -1) {
    return fix(morph_pow(f, 2)).result;
  }
  return fix(f).result;
}

StabResult stab_aut(const BsElem& g) {
  if (g.is_identity()) {
    throw Error(ErrorKind::kIdentityStabilizer,
                "the identity is fixed by every automorphism");
  }
  if (g.c == 0) return StabKernelTranslations{};
  return stab_lattice(g.c < 0 ? bs_inv(g) : g);
}

StabResult stab_subgroup(const std::vector<BsElem>& gens) {
  const SubgroupClass cls = classify_subgroup(gens);
  if (std::holds_alternative<FiniteIndexSubgroup>(cls)) return StabTrivial{};
  return stab_aut(std::get<CyclicSubgroup>(cls).generator);
}

EStabResult estab(const BsElem& g) {
  if (g.is_identity()) {
    throw Error(ErrorKind::kIdentityStabilizer,
                "the identity is fixed by every endomorphism");
  }
  const BaseRef& base = g.base();
  if (g.c == 0) return {EStabAllTranslations{}, std::nullopt};
  const BsElem h = g.c < 0 ? bs_inv(g) : g;
  if (h.gamma.is_zero()) {
    return {EStabDiagonal{}, TypeII{bs_t(base)}};
  }
  const ZnElem mu_c = mu(h.c, base);
  EStabParametric family;
  family.coeff = mu_c.to_rational() / h.gamma.to_rational();
  family.coeff.canonicalize();
  const Integer coprime = abs(zn_coprime_part(h.gamma.num(), *base));
  family.tau = coprime / gcd(mu_c.num(), coprime);

  EStabResult out{family, std::nullopt};
  if (zn_divides(mu_c, h.gamma)) {
    const ZnElem root = *zn_div(h.gamma, mu_c);
    std::get<EStabParametric>(out.type_i).excluded_beta = root;
    out.type_ii = TypeII{{root, 1}};
  }
  return out;
}

AffinePair estab_member(const EStabParametric& family, const ZnElem& beta) {
  const BaseRef& base = beta.base();
  if (!zn_div(beta, zn_int(family.tau, base))) {
    throw Error(ErrorKind::kPrecondition,
                to_string(beta) + " is not in " + family.tau.get_str() + " Z[1/n]");
  }
  if (family.excluded_beta && *family.excluded_beta == beta) {
    throw Error(ErrorKind::kPrecondition, "beta gives alpha = 0 (the type II member)");
  }
  Rational alpha = 1 - family.coeff * beta.to_rational();
  alpha.canonicalize();
  auto z = zn_from_rational(alpha, base);
  if (!z) throw std::logic_error("e-Stab member alpha outside Z[1/n]");
  return AffinePair(*z, beta);
}

namespace {

bool all_identity(const std::vector<BsElem>& gens) {
  if (gens.empty()) {
    throw Error(ErrorKind::kEmptyInput, "subgroup needs at least one generator");
  }
  for (const BsElem& g : gens) {
    if (!g.is_identity()) return false;
  }
  return true;
}

}  // namespace

ClosureResult closure(const std::vector<BsElem>& gens) {
  if (all_identity(gens)) return FixTrivial{};
  const StabResult stab = stab_subgroup(gens);
  if (std::holds_alternative<StabTrivial>(stab)) return FixWhole{};
  if (std::holds_alternative<StabKernelTranslations>(stab)) return FixKernel{};
  const auto& lattice = std::get<StabLattice>(stab);

  const BaseRef& base = gens.front().base();
  const ZnElem one = zn_int(1, base);
  std::int64_t c_lcm = 1;
  const AffinePair* reference = nullptr;
  for (const AffinePair& gen : lattice.generators) {
    if (gen.alpha() == one) continue;
    const auto outcome = fix_affine(gen, false);
    const auto& cyc = std::get<FixCyclic>(outcome.result);
    c_lcm = std::lcm(c_lcm, cyc.generator.c);
    if (reference == nullptr) reference = &gen;
  }
  if (reference == nullptr) throw std::logic_error("stabilizer lattice has no alpha != 1");
  // All fixed sets lie on the same curve (alpha - 1) gamma + beta mu(c) = 0.
  auto gamma = zn_div(-(reference->beta() * mu(c_lcm, base)), reference->alpha() - one);
  if (!gamma) throw std::logic_error("closure generator outside Z[1/n]");
  return FixCyclic{{*gamma, c_lcm}};
}

ClosureResult eclosure(const std::vector<BsElem>& gens) {
  if (all_identity(gens)) return FixTrivial{};
  const SubgroupClass cls = classify_subgroup(gens);
  if (std::holds_alternative<FiniteIndexSubgroup>(cls)) return FixWhole{};
  BsElem g = std::get<CyclicSubgroup>(cls).generator;
  if (g.c == 0) return FixKernel{};
  if (g.c < 0) g = bs_inv(g);
  const BaseRef& base = g.base();
  // Every type I member and the type II member (if any) fix exactly the
  // points (ratio mu(e), e) that lie in BS(1,n).
  Rational ratio = g.gamma.to_rational() / mu(g.c, base).to_rational();
  ratio.canonicalize();
  // ratio mu(e) = ratio / (n - 1) (n^e - 1).
  const Integer modulus =
      coprime_denominator(ratio / Rational(base->n() - 1), *base);
  const std::int64_t period = to_int64(mult_order(n_integer(*base), modulus), "period");
  Rational gamma = ratio * mu(period, base).to_rational();
  gamma.canonicalize();
  auto generator = zn_from_rational(gamma, base);
  if (!generator) throw std::logic_error("e-closure generator outside Z[1/n]");
  return FixCyclic{{*generator, period}};
}

bool stab_power_check(const BsElem& g, std::int64_t kmax) {
  if (g.is_identity()) {
    throw Error(ErrorKind::kIdentityStabilizer, "power check on the identity");
  }
  if (kmax < 1) throw Error(ErrorKind::kPrecondition, "kmax must be >= 1");
  const ScanBox box{1, 3, true};
  const StabResult base_stab = stab_aut(g);
  const EStabResult base_estab = estab(g);
  std::vector<AffinePair> base_scan;
  if (g.c != 0) base_scan = oracle_stab_scan(g, box);
  for (std::int64_t k = 1; k <= kmax; ++k) {
    const BsElem power = bs_pow(g, k);
    if (!(stab_aut(power) == base_stab)) return false;
    if (!(estab(power) == base_estab)) return false;
    if (g.c != 0 && !(oracle_stab_scan(power, box) == base_scan)) return false;
  }
  return true;
}

}  // namespace bsn
