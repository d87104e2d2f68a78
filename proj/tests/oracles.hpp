#pragma once

// Independent brute-force oracles used to freeze expected values in the test
// suites. These deliberately avoid the implementation paths they check.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "ringforge/groebner.hpp"
#include "ringforge/ideals.hpp"
#include "ringforge/mpoly.hpp"
#include "ringforge/rings.hpp"

namespace oracles {

using namespace ringforge;

/// All ideals of a finite ring as sorted element sets: closure of cyclic
/// ideals under pairwise sums, computed with set arithmetic only.
std::set<std::vector<elem>> brute_ideal_lattice(const RingPtr& r);

/// Primes by the definitional test (proper, xy in I => x or y in I) over the
/// brute lattice. Returns sorted expansions.
std::set<std::vector<elem>> brute_spectrum(const RingPtr& r);

/// Map-based polynomial product, term by term.
MPoly naive_mul(const MPoly& a, const MPoly& b);

/// Membership of f in (gens) decided by solving for cofactors of total degree
/// <= degree_bound with dense linear algebra over F_p.
bool linalg_membership(const MPoly& f, const std::vector<MPoly>& gens,
                       std::uint32_t degree_bound);

/// Exhaustive search for an element matching residues modulo each ideal.
std::optional<elem> exhaustive_crt(const RingPtr& r, const std::vector<Ideal>& ideals,
                                   const std::vector<elem>& residues);

/// Rational points of V(gens) over a finite ring whose characteristic is the
/// coefficient prime (coefficients are mapped through from_int).
std::set<std::vector<elem>> points_over(const std::vector<MPoly>& gens,
                                        const RingPtr& field);

/// Evaluate a polynomial at a point with coordinates in an arbitrary ring of
/// the same characteristic.
elem eval_in_ring(const MPoly& f, const RingPtr& r, const std::vector<elem>& point);

}  // namespace oracles
