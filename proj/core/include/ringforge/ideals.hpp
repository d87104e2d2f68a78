#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringforge/rings.hpp"

namespace ringforge {

/// Finitely generated ideal of a finite ring. The expansion (full sorted
/// element set) is computed eagerly at construction and is the working form
/// for all decision procedures.
struct Ideal {
  RingPtr ring;
  std::vector<elem> gens;
  std::vector<elem> expansion;  // sorted, closed under + and ring multiples

  bool contains(elem x) const;
  bool is_proper() const { return expansion.size() < ring->size(); }
  std::string str() const;
};

/// Smallest ideal containing the generators, by closure iteration.
Ideal ideal_expand(const RingPtr& ring, std::vector<elem> gens,
                   const Budgets& budgets = {});

/// Rebuild an Ideal directly from a full element set (must be an ideal;
/// checked). Generators are chosen greedily from the set.
Ideal ideal_from_elements(const RingPtr& ring, std::vector<elem> elems,
                          const Budgets& budgets = {});

enum class IdealCombine { Sum, Product, Intersection };
Ideal ideal_combine(const Ideal& a, const Ideal& b, IdealCombine mode,
                    const Budgets& budgets = {});

/// {x : x^k in I for some k <= |R|}.
Ideal ideal_radical(const Ideal& i, const Budgets& budgets = {});

struct IdealFlags {
  bool proper = false;
  bool prime = false;
  bool primary = false;
  bool radical = false;
};
/// Definitional checks by exhaustion over the expansion.
IdealFlags classify_ideal(const Ideal& i);

enum class PrimeCertification { FiniteDefinitionCheck, LocalFactorMaximal, UserAsserted };

struct PrimeIdeal {
  Ideal ideal;
  PrimeCertification certification = PrimeCertification::FiniteDefinitionCheck;
};

/// Certify an ideal prime by the definitional check; throws if not prime.
PrimeIdeal certify_prime(Ideal i);

/// Spectrum of a finite ring as a poset. For finite rings this is an
/// antichain: every prime is maximal.
struct FiniteSpectrum {
  RingPtr ring;
  std::vector<PrimeIdeal> primes;                 // canonical order
  std::vector<std::vector<bool>> leq;             // leq[i][j] : primes[i] subset primes[j]
};

/// All primes via idempotent decomposition into local factors.
FiniteSpectrum enumerate_spectrum(const RingPtr& ring, const Budgets& budgets = {});

/// The full ideal lattice: closure of cyclic ideals under pairwise sums.
std::vector<Ideal> ideal_lattice(const RingPtr& ring, const Budgets& budgets = {});

/// Quotient construction on an Ideal, with the natural projection.
struct QuotientConstruction {
  RingPtr ring;
  RingHom projection;
  bool zero_ring = false;
};
QuotientConstruction quotient_ring(const RingPtr& base, const Ideal& i,
                                   const Budgets& budgets = {});

/// Localization request: by generated multiplicative set, or at finitely many
/// incomparable primes (the semi-local ring).
struct LocalizationSpec {
  enum class Mode { ByMultSet, SemiLocalAt };
  Mode mode = Mode::ByMultSet;
  std::vector<elem> mult_set_gens;   // ByMultSet
  std::vector<PrimeIdeal> at_primes; // SemiLocalAt
};

struct LocalizationResult {
  RingPtr ring;
  RingHom projection;           // base -> localized (quotient by the kernel)
  std::vector<elem> mult_set;   // the computed S, sorted
  Ideal kernel;                 // {r : s*r = 0 for some s in S}
  bool zero_ring = false;       // 0 in S
  // primes of the base disjoint from S, as indices into `spectrum`, plus
  // which of them are maximal among the survivors
  FiniteSpectrum base_spectrum;
  std::vector<std::size_t> surviving;
  std::vector<std::size_t> maximal_survivors;
};

LocalizationResult localize_finite(const RingPtr& base, const LocalizationSpec& spec,
                                   const Budgets& budgets = {});

/// Fiber of a ring map over a prime of the source: S^{-1}(B/pB) with S the
/// image of A/p - {0}.
struct FiberResult {
  RingPtr ring;
  bool zero_ring = false;
};
FiberResult compute_fiber(const RingHom& hom, const PrimeIdeal& p,
                          const Budgets& budgets = {});

}  // namespace ringforge
