#include <gtest/gtest.h>

#include "bsn/fixstab.hpp"
#include "bsn/io.hpp"
#include "bsn/oracle.hpp"
#include "support.hpp"

using namespace bsn;
using namespace bsn::testing;

namespace {

BsElem cyclic_gen(const FixResult& r) { return std::get<FixCyclic>(r).generator; }

bool in_result(const FixResult& r, const BsElem& x) {
  if (std::holds_alternative<FixWhole>(r)) return true;
  if (std::holds_alternative<FixKernel>(r)) return x.c == 0;
  if (std::holds_alternative<FixTrivial>(r)) return x.is_identity();
  const BsElem g = cyclic_gen(r);
  if (x.c % g.c != 0) return false;
  return bs_pow(g, x.c / g.c) == x;
}

const StabLattice& lattice(const StabResult& r) { return std::get<StabLattice>(r); }

}  // namespace

TEST(Fix, WorkedValues) {
  auto b2 = make_base(2), b6 = make_base(6);
  EXPECT_EQ(fix(aff(2, 1, b2)).result, FixResult(FixCyclic{el(-1, 1, b2)}));
  EXPECT_EQ(fix(AffinePair(zq(2, 3, b6), zq(1, 1, b6))).result,
            FixResult(FixCyclic{el(3, 1, b6)}));
  EXPECT_EQ(fix(aff(3, 1, b2)).result, FixResult(FixCyclic{el(-1, 2, 1, b2)}));
  EXPECT_EQ(fix(TypeII{el(5, 1, b2)}).result, FixResult(FixCyclic{el(5, 1, b2)}));
  EXPECT_EQ(fix(TypeII{el(1, 2, b2)}).result, FixResult(FixTrivial{}));
  EXPECT_EQ(fix(aff(1, 5, b2)).result, FixResult(FixKernel{}));
  EXPECT_EQ(fix(identity_morphism(b2)).result, FixResult(FixWhole{}));

  const FixOutcome o = fix(AffinePair(zq(2, 3, b6), zq(1, 1, b6)));
  ASSERT_TRUE(o.derivation);
  EXPECT_EQ(o.derivation->kappa, q(3, 5));
  EXPECT_EQ(o.derivation->modulus, 5);
  EXPECT_EQ(o.derivation->c_tilde, 1);
  EXPECT_EQ(o.derivation->q_core, 1);
  EXPECT_EQ(o.derivation->c0, Integer(4));
}

TEST(Fix, AgreesWithScan) {
  Gen gen(9);
  for (std::int64_t n : {2, 3, 6, 10, 30}) {
    auto base = make_base(n);
    for (int i = 0; i < 60; ++i) {
      const Morphism f = gen.affine(base);
      const auto& a = std::get<AffinePair>(f);
      if (a.alpha() == zn_int(1, base)) continue;
      const FixOutcome o = fix(f);
      const BsElem g = cyclic_gen(o.result);
      EXPECT_GT(g.c, 0);
      EXPECT_EQ(bsn::apply(f, g), g);
      ASSERT_TRUE(o.derivation->c0) << to_string(f);
      EXPECT_EQ(*o.derivation->c0 % o.derivation->c_tilde, 0) << to_string(f);
      std::vector<BsElem> powers;
      for (std::int64_t m = -3; m <= 3; ++m) powers.push_back(bs_pow(g, m));
      EXPECT_EQ(oracle_fixed_scan(f, {3 * g.c, 1, false}), powers) << to_string(f);
    }
  }
}

TEST(Per, MatchesFixOutsideTwists) {
  auto b2 = make_base(2);
  EXPECT_EQ(per(aff(2, 1, b2)), FixResult(FixCyclic{el(-1, 1, b2)}));
  // [-1; beta] squares to the identity.
  EXPECT_EQ(per(aff(-1, 1, b2)), FixResult(FixWhole{}));
  EXPECT_EQ(fix(aff(-1, 1, b2)).result, FixResult(FixCyclic{el(1, 2, 1, b2)}));
  // <<1; -1>> squares to <<-2; 1>>.
  EXPECT_EQ(fix(TypeII{el(1, -1, b2)}).result, FixResult(FixTrivial{}));
  EXPECT_EQ(per(TypeII{el(1, -1, b2)}), FixResult(FixCyclic{el(-2, 1, b2)}));
}

TEST(Per, IsTheUnionOfPowerFixedSets) {
  Gen gen(10);
  for (std::int64_t n : {2, 6}) {
    auto base = make_base(n);
    for (int i = 0; i < 80; ++i) {
      const Morphism f = gen.any_morphism(base);
      const FixResult p = per(f);
      bool reached = false;
      for (std::int64_t k = 1; k <= 6; ++k) {
        const FixResult fk = fix(morph_pow(f, k)).result;
        reached = reached || fk == p;
        if (const auto* c = std::get_if<FixCyclic>(&fk)) {
          EXPECT_TRUE(in_result(p, c->generator)) << to_string(f) << " k=" << k;
        } else if (std::holds_alternative<FixKernel>(fk)) {
          EXPECT_TRUE(in_result(p, el(1, 4, 0, base))) << to_string(f);
        } else if (std::holds_alternative<FixWhole>(fk)) {
          EXPECT_EQ(p, FixResult(FixWhole{})) << to_string(f);
        }
      }
      EXPECT_TRUE(reached) << to_string(f);
    }
  }
}

TEST(Stab, WorkedValues) {
  auto b2 = make_base(2), b6 = make_base(6);
  const auto s11 = lattice(stab_aut(el(1, 1, b2)));
  EXPECT_EQ(s11.generators, (std::vector<AffinePair>{aff(2, -1, b2), aff(-1, 2, b2)}));
  EXPECT_EQ(s11.rank, 1);
  EXPECT_TRUE(s11.has_torsion);

  const auto s12 = lattice(stab_aut(el(1, 2, b2)));
  EXPECT_EQ(s12.generators, (std::vector<AffinePair>{aff(-2, 1, b2)}));
  EXPECT_FALSE(s12.has_torsion);
  EXPECT_EQ(lattice(stab_aut(el(-1, 4, -2, b2))), s12);

  const auto s6 = lattice(stab_aut(el(1, 1, b6)));
  EXPECT_EQ(s6.generators,
            (std::vector<AffinePair>{aff(2, -1, b6), aff(3, -2, b6), aff(-1, 2, b6)}));
  EXPECT_EQ(s6.rank, 2);

  const auto diag = lattice(stab_aut(el(0, 3, b6)));
  EXPECT_EQ(diag.generators,
            (std::vector<AffinePair>{aff(2, 0, b6), aff(3, 0, b6), aff(-1, 0, b6)}));

  EXPECT_EQ(stab_aut(el(5, 0, b2)), StabResult(StabKernelTranslations{}));
  EXPECT_THROW(stab_aut(bs_identity(b2)), Error);
  EXPECT_EQ(stab_subgroup({el(0, 1, b2), el(1, 0, b2)}), StabResult(StabTrivial{}));
  EXPECT_EQ(stab_subgroup({el(3, 2, b2), el(1, 1, b2)}), stab_aut(el(1, 1, b2)));
}

TEST(Stab, DerivationForThreeTwo) {
  auto b2 = make_base(2);
  const auto s = lattice(stab_aut(el(3, 2, b2)));
  ASSERT_TRUE(s.derivation);
  EXPECT_EQ(s.derivation->mu, zq(3, 1, b2));
  EXPECT_EQ(s.derivation->d, 3);
  EXPECT_EQ(s.derivation->mu_prime, 1);
}

TEST(Stab, SoundAndCompleteAgainstScan) {
  Gen gen(11);
  for (std::int64_t n : {2, 3, 6, 10}) {
    auto base = make_base(n);
    for (int i = 0; i < 25; ++i) {
      const BsElem g = gen.elem_nonzero_c(base, desk_c_bound(n));
      const auto s = lattice(stab_aut(g));
      EXPECT_EQ(s.rank, static_cast<std::int64_t>(base->r()));
      for (const AffinePair& a : s.generators) EXPECT_EQ(bsn::apply(a, g), g);
      for (const AffinePair& a : oracle_stab_scan(g, {1, 3, true})) {
        EXPECT_TRUE(oracle_lattice_member(a, s.generators, 8).has_value())
            << to_string(Morphism(a)) << " stabilizes " << to_string(g);
      }
    }
  }
}

TEST(Stab, PowerInvariance) {
  Gen gen(12);
  for (std::int64_t n : {2, 6, 30}) {
    auto base = make_base(n);
    for (int i = 0; i < 20; ++i) {
      BsElem g = gen.elem(base, desk_c_bound(n) / 2);
      if (g.is_identity()) continue;
      EXPECT_TRUE(stab_power_check(g, 3)) << to_string(g);
    }
  }
}

TEST(EStab, WorkedValues) {
  auto b2 = make_base(2);
  const EStabResult r32 = estab(el(3, 2, b2));
  ASSERT_TRUE(r32.type_ii);
  EXPECT_EQ(*r32.type_ii, TypeII{el(1, 1, b2)});
  const auto& p32 = std::get<EStabParametric>(r32.type_i);
  EXPECT_EQ(p32.coeff, 1);
  EXPECT_EQ(p32.tau, 1);
  EXPECT_EQ(p32.excluded_beta, zq(1, 1, b2));

  const EStabResult r12 = estab(el(1, 2, b2));
  EXPECT_FALSE(r12.type_ii);
  EXPECT_EQ(std::get<EStabParametric>(r12.type_i).coeff, 3);

  EXPECT_EQ(estab(el(7, 0, b2)).type_i, EStabTypeI(EStabAllTranslations{}));
  const EStabResult diag = estab(el(0, -2, b2));
  EXPECT_EQ(diag.type_i, EStabTypeI(EStabDiagonal{}));
  EXPECT_EQ(diag.type_ii, TypeII{bs_t(b2)});
  // mu / gamma is not always in Z[1/n].
  EXPECT_EQ(std::get<EStabParametric>(estab(el(3, 1, b2)).type_i).coeff, q(1, 3));
  EXPECT_EQ(std::get<EStabParametric>(estab(el(3, 1, b2)).type_i).tau, 3);
}

TEST(EStab, MembersFixAndFamilyIsComplete) {
  Gen gen(13);
  for (std::int64_t n : {2, 3, 6}) {
    auto base = make_base(n);
    for (int i = 0; i < 40; ++i) {
      const BsElem g = gen.elem_nonzero_c(base, 4);
      if (g.gamma.is_zero()) continue;
      const EStabResult r = estab(g);
      const auto& family = std::get<EStabParametric>(r.type_i);
      const BsElem h = g.c < 0 ? bs_inv(g) : g;
      EXPECT_EQ(r.type_ii.has_value(), zn_divides(mu(h.c, base), h.gamma));
      if (r.type_ii) EXPECT_EQ(bsn::apply(*r.type_ii, g), g);
      for (int j = 0; j < 10; ++j) {
        const ZnElem beta = zn_int(family.tau, base) * gen.zn(base, 10, 2);
        if (family.excluded_beta && beta == *family.excluded_beta) continue;
        EXPECT_EQ(bsn::apply(estab_member(family, beta), g), g);
      }
      // Completeness on a grid: any [alpha; beta] fixing g has beta in tau Z[1/n].
      for (std::int64_t b = -12; b <= 12; ++b) {
        const ZnElem beta = zq(b, n, base);
        Rational alpha = 1 - family.coeff * beta.to_rational();
        alpha.canonicalize();
        auto z = zn_from_rational(alpha, base);
        const bool in_family = zn_div(beta, zn_int(family.tau, base)).has_value();
        if (!z || z->is_zero()) continue;
        EXPECT_EQ(in_family, true) << to_string(beta) << " for " << to_string(g);
      }
    }
  }
}

TEST(Closure, WorkedValues) {
  auto b2 = make_base(2);
  EXPECT_EQ(closure({el(0, 1, b2), el(1, 0, b2)}), ClosureResult(FixWhole{}));
  EXPECT_EQ(closure({el(5, 0, b2)}), ClosureResult(FixKernel{}));
  EXPECT_EQ(closure({el(3, 2, b2)}), ClosureResult(FixCyclic{el(1, 1, b2)}));
  EXPECT_EQ(closure({el(1, 2, b2)}), ClosureResult(FixCyclic{el(1, 2, b2)}));
  EXPECT_EQ(eclosure({el(3, 2, b2)}), ClosureResult(FixCyclic{el(1, 1, b2)}));
  EXPECT_EQ(eclosure({el(1, 2, b2)}), ClosureResult(FixCyclic{el(1, 2, b2)}));
  EXPECT_EQ(eclosure({el(0, 1, b2), el(1, 0, b2)}), ClosureResult(FixWhole{}));
  EXPECT_EQ(closure({bs_identity(b2)}), ClosureResult(FixTrivial{}));
  // Idempotent on the worked values.
  EXPECT_EQ(closure({el(1, 1, b2)}), ClosureResult(FixCyclic{el(1, 1, b2)}));
  EXPECT_EQ(eclosure({el(1, 1, b2)}), ClosureResult(FixCyclic{el(1, 1, b2)}));
}

TEST(Closure, ChainAndRootClosure) {
  Gen gen(14);
  for (std::int64_t n : {2, 3, 6}) {
    auto base = make_base(n);
    for (int i = 0; i < 30; ++i) {
      BsElem g = gen.elem_nonzero_c(base, desk_c_bound(n));
      const BsElem cl = cyclic_gen(closure({g}));
      const BsElem ecl = cyclic_gen(eclosure({g}));
      if (g.c < 0) g = bs_inv(g);
      EXPECT_TRUE(in_result(FixCyclic{ecl}, g));
      EXPECT_TRUE(in_result(FixCyclic{cl}, ecl));
      EXPECT_EQ(cl, bs_root_closure(g).first);
      // Every sampled stabilizer fixes the closure generator.
      const StabResult stab = stab_aut(g);
      for (const AffinePair& a : lattice(stab).generators) {
        EXPECT_EQ(bsn::apply(a, cl), cl);
      }
    }
  }
}
