#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringforge/mpoly.hpp"
#include "ringforge/rings.hpp"

namespace ringforge {

/// Result of multivariate division: input = sum cofactor_i * divisor_i + remainder.
struct DivisionTranscript {
  MPoly input;
  std::vector<MPoly> divisors;
  std::vector<MPoly> cofactors;
  MPoly remainder;
  MonomialOrder order = MonomialOrder::Grevlex;

  bool recheck() const;
};

DivisionTranscript divide(const MPoly& f, const std::vector<MPoly>& divisors,
                          MonomialOrder order);

/// Reduced Groebner basis, with each basis element carried as an explicit
/// combination of the input generators (reps[i][j] multiplies input[j]).
struct GBasis {
  std::vector<MPoly> basis;
  std::vector<std::vector<MPoly>> reps;
  std::vector<MPoly> input;
  MonomialOrder order = MonomialOrder::Grevlex;
  bool reduced = true;

  bool recheck_reps() const;
};

/// Buchberger with normal pair selection (minimal lcm under the order, ties by
/// index); deterministic for a fixed input sequence.
GBasis gb_compute(const std::vector<MPoly>& gens, MonomialOrder order,
                  const Budgets& budgets = {});

/// Normal form against a (Groebner) basis.
DivisionTranscript nf(const MPoly& f, const GBasis& g);

/// Exact cofactors of f over the original generators of g; empty when f is
/// not in the ideal.
std::optional<std::vector<MPoly>> express(const MPoly& f, const GBasis& g);

struct MembershipResult {
  bool member = false;
  std::vector<MPoly> cofactors;  // over the original generators when member
  MPoly normal_form;
};
MembershipResult ideal_membership(const MPoly& f, const std::vector<MPoly>& gens,
                                  MonomialOrder order = MonomialOrder::Grevlex,
                                  const Budgets& budgets = {});

enum class PolyCombine { Sum, Intersection };
std::vector<MPoly> poly_ideal_combine(const std::vector<MPoly>& i,
                                      const std::vector<MPoly>& j, PolyCombine mode,
                                      const Budgets& budgets = {});

/// Rabinowitsch: f in rad(gens) iff 1 in (gens, 1 - z f).
bool radical_membership(const MPoly& f, const std::vector<MPoly>& gens,
                        const Budgets& budgets = {});

struct ComaximalityCertificate {
  MPoly u, v;                      // u in I, v in J, u + v = 1
  std::vector<MPoly> u_cofactors;  // over I's generators
  std::vector<MPoly> v_cofactors;  // over J's generators
  bool recheck(const std::vector<MPoly>& i_gens, const std::vector<MPoly>& j_gens) const;
};
std::optional<ComaximalityCertificate> comaximality_certificate(
    const std::vector<MPoly>& i, const std::vector<MPoly>& j,
    const Budgets& budgets = {});

struct TripleComaximalityCertificate {
  MPoly u, v, w;  // u + v + w = 1 with memberships in the three ideals
  std::vector<MPoly> u_cofactors, v_cofactors, w_cofactors;
  bool recheck(const std::vector<MPoly>& i, const std::vector<MPoly>& j,
               const std::vector<MPoly>& k) const;
};
std::optional<TripleComaximalityCertificate> triple_comaximality_certificate(
    const std::vector<MPoly>& i, const std::vector<MPoly>& j,
    const std::vector<MPoly>& k, const Budgets& budgets = {});

/// Ideal containment J subset I, decided by reducing J's generators mod GB(I).
bool poly_ideal_contains(const std::vector<MPoly>& i, const std::vector<MPoly>& j,
                         MonomialOrder order = MonomialOrder::Grevlex,
                         const Budgets& budgets = {});

struct ZeroDimResult {
  bool zero_dimensional = false;
  std::vector<Exps> staircase;  // monomial basis of the quotient when true
  GBasis gb;
};
ZeroDimResult zero_dim_check(const std::vector<MPoly>& gens,
                             const Budgets& budgets = {});

/// Finite quotient F_p[x...]/(gens) as a core ring, with lift/project between
/// ring elements and polynomials.
struct QuotientBridge {
  RingPtr ring;
  GBasis gb;
  std::vector<Exps> staircase;
  PolyRingPtr poly_ring;

  MPoly lift(elem a) const;          // staircase representative
  elem project(const MPoly& f) const;  // nf then staircase coordinates
};
QuotientBridge finite_quotient_bridge(const std::vector<MPoly>& gens,
                                      const Budgets& budgets = {});

/// Ideal of a polynomial ring with a cached basis, the polynomial-side
/// counterpart of Ideal.
struct PolyIdeal {
  PolyRingPtr ring;
  std::vector<MPoly> gens;

  const GBasis& gb(const Budgets& budgets = {}) const;
  bool member(const MPoly& f, const Budgets& budgets = {}) const;
  bool is_proper(const Budgets& budgets = {}) const;
  std::string str() const;

 private:
  mutable std::optional<GBasis> gb_;
};

bool poly_ideal_equal(const PolyIdeal& a, const PolyIdeal& b, const Budgets& budgets = {});
bool poly_ideal_subset(const PolyIdeal& a, const PolyIdeal& b, const Budgets& budgets = {});
PolyIdeal poly_ideal_sum(const PolyIdeal& a, const PolyIdeal& b);

}  // namespace ringforge
