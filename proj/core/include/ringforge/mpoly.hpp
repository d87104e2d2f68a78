#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ringforge/config.hpp"

namespace ringforge {

/// Multivariate polynomial ring F_p[vars...] with p prime (p <= 97).
struct PolyRing {
  std::uint32_t p = 2;
  std::vector<std::string> vars;

  PolyRing(std::uint32_t p_, std::vector<std::string> vars_);

  std::size_t nvars() const { return vars.size(); }
  std::uint32_t inv(std::uint32_t c) const;  // multiplicative inverse mod p
  std::string name() const;

 private:
  std::vector<std::uint32_t> inv_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

PolyRingPtr make_poly_ring(std::uint32_t p, std::vector<std::string> vars);

/// Exponent vector, one entry per ring variable.
using Exps = std::vector<std::uint16_t>;

enum class MonomialOrder { Grevlex, Lex };

/// Three-way comparison of monomials under an order: <0, 0, >0 as a vs b.
int cmp_monomial(const Exps& a, const Exps& b, MonomialOrder o);
bool monomial_divides(const Exps& a, const Exps& b);  // a | b
Exps monomial_lcm(const Exps& a, const Exps& b);
std::uint32_t total_degree(const Exps& e);

struct Term {
  Exps e;
  std::uint32_t c;  // in [1, p)
};

/// Sparse polynomial. Terms are kept sorted descending under grevlex as a
/// canonical storage form; leading terms under other orders are found by scan.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(PolyRingPtr ring) : ring_(std::move(ring)) {}
  MPoly(PolyRingPtr ring, std::vector<Term> terms);

  static MPoly zero(PolyRingPtr ring) { return MPoly(std::move(ring)); }
  static MPoly constant(PolyRingPtr ring, std::int64_t c);
  static MPoly variable(PolyRingPtr ring, std::size_t var, std::uint32_t exp = 1);
  static MPoly monomial(PolyRingPtr ring, Exps e, std::int64_t c);

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  std::uint32_t degree() const;  // total degree; 0 for the zero polynomial

  const Term& leading_term(MonomialOrder o) const;

  MPoly operator+(const MPoly& rhs) const;
  MPoly operator-(const MPoly& rhs) const;
  MPoly operator*(const MPoly& rhs) const;
  MPoly operator-() const;
  bool operator==(const MPoly& rhs) const;
  bool operator!=(const MPoly& rhs) const { return !(*this == rhs); }

  MPoly scaled(std::uint32_t c) const;
  MPoly times_monomial(const Exps& e, std::uint32_t c) const;
  MPoly pow(std::uint64_t k) const;
  MPoly monic(MonomialOrder o) const;

  /// Evaluate at a point with coordinates in F_p.
  std::uint32_t eval(const std::vector<std::uint32_t>& point) const;

  /// Coefficient of an exact monomial (0 if absent).
  std::uint32_t coeff(const Exps& e) const;

  std::string str() const;

 private:
  PolyRingPtr ring_;
  std::vector<Term> terms_;
  void normalize();
};

/// Parse "2*x^2*y + x + 1" against the ring's variable set.
MPoly parse_poly(const PolyRingPtr& ring, const std::string& text);

/// Ring with extra fresh variables inserted at the front (heaviest in Lex),
/// plus lifting/projection between the two.
struct RingExtension {
  PolyRingPtr extended;
  std::size_t added;  // number of fresh vars, at positions [0, added)
};
RingExtension extend_ring_front(const PolyRingPtr& ring,
                                const std::vector<std::string>& fresh);
MPoly lift_to(const RingExtension& ext, const MPoly& f);
/// Drop the fresh leading variables; requires their exponents to be zero.
MPoly project_from(const RingExtension& ext, const PolyRingPtr& base, const MPoly& f);

}  // namespace ringforge
