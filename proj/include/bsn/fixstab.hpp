#pragma once

// Fixed subgroups, periodic subgroups, stabilizers in Aut and End, and the
// auto-/endo-fixed closures of finitely generated subgroups of BS(1,n).

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "bsn/group.hpp"
#include "bsn/morphisms.hpp"
#include "bsn/ring.hpp"

namespace bsn {

struct FixWhole {
  friend bool operator==(const FixWhole&, const FixWhole&) = default;
};
/// {(gamma, 0) : gamma in Z[1/n]}.
struct FixKernel {
  friend bool operator==(const FixKernel&, const FixKernel&) = default;
};
/// <generator>, with generator.c > 0.
struct FixCyclic {
  BsElem generator;
  friend bool operator==(const FixCyclic&, const FixCyclic&) = default;
};
struct FixTrivial {
  friend bool operator==(const FixTrivial&, const FixTrivial&) = default;
};

using FixResult = std::variant<FixWhole, FixKernel, FixCyclic, FixTrivial>;
using ClosureResult = FixResult;

/// Intermediate values of the fixed-subgroup computation for an affine map
/// with alpha != 1. Fixed points are (kappa (n^c - 1), c) for the c that
/// make this lie in Z[1/n].
struct FixDerivation {
  Rational kappa;
  /// n-coprime part of kappa's denominator; valid c are the multiples of
  /// the order of n modulo this.
  Integer modulus;
  std::int64_t c_tilde = 1;
  /// n-coprime part of num(alpha) - den(alpha).
  Integer q_core;
  /// totient((n - 1) |q_core|); n^c0 == 1 mod (n - 1) q_core. Absent when
  /// that number could not be factored within budget.
  std::optional<Integer> c0;
};

struct FixOutcome {
  FixResult result;
  std::optional<FixDerivation> derivation;
};

FixOutcome fix(const Morphism& f);

/// Union of Fix(f^k) over k >= 1.
FixResult per(const Morphism& f);

struct StabDerivation {
  ZnElem mu;
  Integer d;
  ZnElem gamma_prime;
  Integer mu_prime;
  std::vector<Integer> prime_orders;
  Integer n_order;
  /// lsets[j]: exponent tuples s with prod p_i^{s_i} == n^j (mod mu_prime),
  /// 0 <= s_i < prime_orders[i].
  std::vector<std::vector<std::vector<std::int64_t>>> lsets;
  /// Same with -prod p_i^{s_i} == n^j.
  std::vector<std::vector<std::vector<std::int64_t>>> sign_lsets;
};

struct StabTrivial {
  friend bool operator==(const StabTrivial&, const StabTrivial&) = default;
};
/// {[1; beta] : beta in Z[1/n]}.
struct StabKernelTranslations {
  friend bool operator==(const StabKernelTranslations&,
                         const StabKernelTranslations&) = default;
};
/// Finitely generated abelian stabilizer: free generators first, then the
/// torsion generator [-1; beta] when present.
struct StabLattice {
  std::vector<AffinePair> generators;
  std::int64_t rank = 0;
  bool has_torsion = false;
  std::optional<StabDerivation> derivation;

  friend bool operator==(const StabLattice& a, const StabLattice& b) {
    return a.generators == b.generators && a.rank == b.rank &&
           a.has_torsion == b.has_torsion;
  }
};

using StabResult = std::variant<StabTrivial, StabKernelTranslations, StabLattice>;

/// Stabilizer of a nonidentity element in Aut(BS(1,n)).
StabResult stab_aut(const BsElem& g);
/// Pointwise stabilizer of <gens> in Aut(BS(1,n)).
StabResult stab_subgroup(const std::vector<BsElem>& gens);

/// {[1; beta] : beta in Z[1/n]}: the type I part of e-Stab(gamma, 0).
struct EStabAllTranslations {
  friend bool operator==(const EStabAllTranslations&,
                         const EStabAllTranslations&) = default;
};
/// {[1 - coeff beta; beta] : beta in tau Z[1/n], beta != excluded_beta}.
struct EStabParametric {
  Rational coeff;
  Integer tau;
  std::optional<ZnElem> excluded_beta;

  friend bool operator==(const EStabParametric&, const EStabParametric&) = default;
};
/// {[alpha; 0] : alpha != 0}: the type I part of e-Stab(0, c), c != 0.
struct EStabDiagonal {
  friend bool operator==(const EStabDiagonal&, const EStabDiagonal&) = default;
};

using EStabTypeI = std::variant<EStabAllTranslations, EStabParametric, EStabDiagonal>;

struct EStabResult {
  EStabTypeI type_i;
  std::optional<TypeII> type_ii;

  friend bool operator==(const EStabResult&, const EStabResult&) = default;
};

EStabResult estab(const BsElem& g);

/// The member [1 - coeff beta; beta] of a parametric family. Throws
/// kPrecondition if beta is outside tau Z[1/n] or is the excluded value.
AffinePair estab_member(const EStabParametric& family, const ZnElem& beta);

ClosureResult closure(const std::vector<BsElem>& gens);
ClosureResult eclosure(const std::vector<BsElem>& gens);

/// Checks Stab(g) == Stab(g^k) and e-Stab(g) == e-Stab(g^k) for k in
/// [1, kmax], comparing oracle scans, canonical lattice bases and e-Stab
/// descriptors.
bool stab_power_check(const BsElem& g, std::int64_t kmax);

}  // namespace bsn
