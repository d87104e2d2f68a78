#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ringforge/config.hpp"

namespace ringforge {

/// Element of a finite ring, addressed by its canonical index in [0, size).
/// The index is the normal form: equality of elements is equality of indices.
using elem = std::uint64_t;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Finite commutative ring with unit. Elements are dense indices 0..size()-1;
/// 0 is always the zero element. Instances are immutable and freely shared.
class Ring {
 public:
  virtual ~Ring() = default;

  virtual std::uint64_t size() const = 0;
  elem zero() const { return 0; }
  virtual elem one() const = 0;
  virtual elem add(elem a, elem b) const = 0;
  virtual elem neg(elem a) const = 0;
  virtual elem mul(elem a, elem b) const = 0;
  elem sub(elem a, elem b) const { return add(a, neg(b)); }
  elem pow(elem a, std::uint64_t k) const;

  /// Image of an integer under the unique map Z -> R.
  virtual elem from_int(std::int64_t v) const;

  virtual std::string format(elem a) const = 0;
  virtual std::string name() const = 0;

  bool is_zero_ring() const { return size() == 1; }
  /// Least k >= 1 with k*a = 0.
  std::uint64_t additive_order(elem a) const;
  std::uint64_t characteristic() const { return additive_order(one()); }
};

// --- descriptors -----------------------------------------------------------

struct RingDescriptor;
using RingDescriptorPtr = std::shared_ptr<const RingDescriptor>;

/// Constructor tree for a concrete ring. Quotient/localization generators are
/// element indices of the base ring.
struct RingDescriptor {
  struct ZMod { std::uint64_t m; };
  struct GaloisField {
    std::uint32_t p;
    std::uint32_t k;
    std::vector<std::uint32_t> modulus;  // coeffs low-first, degree k, monic
  };
  struct Quotient { RingDescriptorPtr base; std::vector<elem> ideal_gens; };
  struct Product { std::vector<RingDescriptorPtr> factors; };
  struct LocalizedFinite { RingDescriptorPtr base; std::vector<elem> mult_set_gens; };

  std::variant<ZMod, GaloisField, Quotient, Product, LocalizedFinite> node;
};

RingDescriptorPtr desc_zmod(std::uint64_t m);
RingDescriptorPtr desc_gf(std::uint32_t p, std::uint32_t k,
                          std::vector<std::uint32_t> modulus);
RingDescriptorPtr desc_quotient(RingDescriptorPtr base, std::vector<elem> gens);
RingDescriptorPtr desc_product(std::vector<RingDescriptorPtr> factors);
RingDescriptorPtr desc_localized(RingDescriptorPtr base, std::vector<elem> gens);

/// Validate the descriptor and build the ring. Localizations that collapse to
/// the zero ring are reported through ring_error unless allow_zero_ring.
RingPtr make_ring(const RingDescriptorPtr& d, const Budgets& budgets = {},
                  bool allow_zero_ring = false);

// --- direct constructors ---------------------------------------------------

RingPtr make_zmod(std::uint64_t m);

/// F_{p^k}; the modulus must be monic irreducible of degree k (checked by
/// exhaustive factor search). Without an explicit modulus the
/// lexicographically least irreducible under the coefficient code is used.
RingPtr make_gf(std::uint32_t p, std::uint32_t k,
                std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                std::string var = "w");

RingPtr make_product(std::vector<RingPtr> factors);

/// Quotient by an ideal given as its full (sorted) element set.
RingPtr make_quotient_ring(const RingPtr& base, const std::vector<elem>& ideal_elems,
                           const Budgets& budgets = {});

/// Finite quotient of a polynomial ring presented by a monomial basis of size
/// `basis` with structure constants table[i*basis+j] = coeff vector of m_i*m_j.
RingPtr make_staircase_ring(std::uint32_t p, std::size_t basis,
                            std::vector<std::vector<std::uint32_t>> table,
                            std::vector<std::string> basis_names,
                            std::string name);

// --- accessors for specific backends ---------------------------------------

/// GF introspection (throws for non-GF rings).
struct GfInfo {
  std::uint32_t p;
  std::uint32_t k;
  std::vector<std::uint32_t> modulus;
  elem generator;  // the class of x
};
GfInfo gf_info(const Ring& r);
bool is_gf(const Ring& r);

/// Product introspection.
const std::vector<RingPtr>* product_factors(const Ring& r);
elem product_pack(const Ring& r, const std::vector<elem>& coords);
std::vector<elem> product_unpack(const Ring& r, elem a);

/// Quotient introspection: base ring and the kernel element set.
struct QuotientInfo {
  RingPtr base;
  std::vector<elem> ideal;  // sorted element set of the kernel
};
std::optional<QuotientInfo> quotient_info(const Ring& r);
elem quotient_project(const Ring& r, elem base_elem);
elem quotient_rep(const Ring& r, elem q_elem);

/// Staircase introspection: coefficient vector of an element.
std::vector<std::uint32_t> staircase_coords(const Ring& r, elem a);
elem staircase_pack(const Ring& r, const std::vector<std::uint32_t>& coords);

// --- element-level operations ----------------------------------------------

struct RElem {
  RingPtr ring;
  elem code = 0;
};

/// Expression tree over ring elements with +, -, *, integer constants.
struct ElemExpr {
  enum class Kind { Const, Leaf, Add, Sub, Mul, Neg };
  Kind kind = Kind::Const;
  std::int64_t k = 0;
  std::optional<RElem> leaf;
  std::vector<ElemExpr> kids;

  static ElemExpr constant(std::int64_t v);
  static ElemExpr element(RElem e);
  static ElemExpr add(ElemExpr a, ElemExpr b);
  static ElemExpr sub(ElemExpr a, ElemExpr b);
  static ElemExpr mul(ElemExpr a, ElemExpr b);
  static ElemExpr neg(ElemExpr a);
};

/// Evaluate in the given ring; element leaves must belong to it.
RElem eval_expr(const RingPtr& ring, const ElemExpr& e);

/// True iff some y has x*y = 1 (exhaustive); also returns the inverse.
bool is_unit(const Ring& r, elem x);
std::optional<elem> try_inverse(const Ring& r, elem x);

/// Smallest subring of `ambient` containing both subrings: the additive
/// closure of pairwise products. Inputs are checked to be subrings with 1.
std::vector<elem> join_subrings(const RingPtr& ambient, std::vector<elem> a,
                                std::vector<elem> b);

bool is_subring(const Ring& r, const std::vector<elem>& elems);

// --- homomorphisms ----------------------------------------------------------

/// Ring map between finite rings. Either a dense image table or a structural
/// Galois-field embedding (generator image, applied by Horner evaluation).
class RingHom {
 public:
  RingHom() = default;  // empty; assign before use
  static RingHom identity(RingPtr r);
  static RingHom table(RingPtr src, RingPtr dst, std::vector<elem> images);
  static RingHom gf_embedding(RingPtr src, RingPtr dst, elem gen_image);
  static RingHom compose(RingHom first, RingHom then);  // x -> then(first(x))

  const RingPtr& src() const { return src_; }
  const RingPtr& dst() const { return dst_; }
  elem apply(elem x) const;

 private:
  RingPtr src_, dst_;
  struct Tbl { std::vector<elem> images; };
  struct Gf { elem gen_image; };
  struct Comp { std::shared_ptr<RingHom> first, then; };
  struct Id {};
  std::variant<Id, Tbl, Gf, Comp> impl_;
};

struct HomCheckResult {
  bool ok = false;
  std::string witness;  // failing law when !ok
};

/// Verify additivity, multiplicativity and 1 -> 1, exhaustively over the
/// source (or over generator triples when the source exceeds the cap).
HomCheckResult check_ring_hom(const RingHom& h, const Budgets& budgets = {});

/// Extend generator images to a full map by closing under + and *.
/// Fails with a witness expression when the images are inconsistent, or when
/// the generators do not generate the source.
struct HomFromGensResult {
  std::optional<RingHom> hom;
  std::string witness;
};
HomFromGensResult hom_from_generators(const RingPtr& src, const RingPtr& dst,
                                      const std::vector<std::pair<elem, elem>>& gens,
                                      const Budgets& budgets = {});

/// Exhaustive ring-isomorphism search by backtracking over generator images.
std::optional<RingHom> find_ring_isomorphism(const RingPtr& a, const RingPtr& b,
                                             const Budgets& budgets = {});

}  // namespace ringforge
