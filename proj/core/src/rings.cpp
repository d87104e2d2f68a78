#include "ringforge/rings.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace ringforge {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t checked_pow(std::uint64_t b, std::uint32_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (r > cap / b) throw budget_error("ring size exceeds cap");
    r *= b;
  }
  return r;
}

}  // namespace

elem Ring::pow(elem a, std::uint64_t k) const {
  elem acc = one(), base = a;
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

elem Ring::from_int(std::int64_t v) const {
  const std::uint64_t n = characteristic();
  std::int64_t m = v % static_cast<std::int64_t>(n);
  if (m < 0) m += static_cast<std::int64_t>(n);
  elem acc = zero();
  elem base = one();
  std::uint64_t k = static_cast<std::uint64_t>(m);
  while (k) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

std::uint64_t Ring::additive_order(elem a) const {
  std::uint64_t k = 1;
  elem x = a;
  while (x != zero()) {
    x = add(x, a);
    ++k;
    if (k > size() + 1) throw ring_error("additive order runaway");
  }
  return k;
}

// --- Z/m ---------------------------------------------------------------------

namespace {

class ZModRing final : public Ring {
 public:
  explicit ZModRing(std::uint64_t m) : m_(m) {
    if (m < 1) throw ring_error("zmod modulus must be >= 1");
  }
  std::uint64_t size() const override { return m_; }
  elem one() const override { return m_ == 1 ? 0 : 1; }
  elem add(elem a, elem b) const override { return (a + b) % m_; }
  elem neg(elem a) const override { return a == 0 ? 0 : m_ - a; }
  elem mul(elem a, elem b) const override {
    return static_cast<elem>((static_cast<unsigned __int128>(a) * b) % m_);
  }
  elem from_int(std::int64_t v) const override {
    std::int64_t r = v % static_cast<std::int64_t>(m_);
    if (r < 0) r += static_cast<std::int64_t>(m_);
    return static_cast<elem>(r);
  }
  std::string format(elem a) const override { return std::to_string(a); }
  std::string name() const override { return "Z/" + std::to_string(m_); }

 private:
  std::uint64_t m_;
};

// --- F_{p^k} ------------------------------------------------------------------

class GFRing final : public Ring {
 public:
  GFRing(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus,
         std::string var)
      : p_(p), k_(k), mod_(std::move(modulus)), var_(std::move(var)) {
    size_ = 1;
    for (std::uint32_t i = 0; i < k_; ++i) size_ *= p_;
    if (p_ == 2) {
      modmask_ = 0;
      for (std::uint32_t i = 0; i <= k_; ++i)
        if (mod_[i]) modmask_ |= 1ull << i;
    }
  }

  std::uint64_t size() const override { return size_; }
  elem one() const override { return 1; }

  elem add(elem a, elem b) const override {
    if (p_ == 2) return a ^ b;
    elem r = 0, mul = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint64_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      r += ((da + db) % p_) * mul;
      mul *= p_;
    }
    return r;
  }

  elem neg(elem a) const override {
    if (p_ == 2) return a;
    elem r = 0, mul = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint64_t d = a % p_;
      a /= p_;
      r += (d == 0 ? 0 : p_ - d) * mul;
      mul *= p_;
    }
    return r;
  }

  elem mul(elem a, elem b) const override {
    if (p_ == 2) {
      std::uint64_t prod = 0;
      std::uint64_t x = a;
      for (std::uint32_t i = 0; i < k_ && x; ++i, x >>= 1)
        if (x & 1) prod ^= b << i;
      for (std::uint32_t bit = 2 * k_ - 2 + 1; bit-- > k_;)
        if (prod >> bit & 1) prod ^= modmask_ << (bit - k_);
      return prod;
    }
    std::array<std::uint32_t, 64> pa{}, pb{}, pr{};
    decode(a, pa);
    decode(b, pb);
    for (std::uint32_t i = 0; i < k_; ++i) {
      if (!pa[i]) continue;
      for (std::uint32_t j = 0; j < k_; ++j)
        pr[i + j] = (pr[i + j] + pa[i] * pb[j]) % p_;
    }
    for (std::uint32_t d = 2 * k_ - 1; d-- > k_;) {
      std::uint32_t c = pr[d];
      if (!c) continue;
      pr[d] = 0;
      for (std::uint32_t j = 0; j < k_; ++j)
        pr[d - k_ + j] = (pr[d - k_ + j] + c * (p_ - mod_[j])) % p_;
    }
    elem r = 0, mulv = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += pr[i] * mulv;
      mulv *= p_;
    }
    return r;
  }

  elem from_int(std::int64_t v) const override {
    std::int64_t r = v % p_;
    if (r < 0) r += p_;
    return static_cast<elem>(r);
  }

  std::string format(elem a) const override {
    if (a == 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint64_t d = a % p_;
      a /= p_;
      if (!d) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0) { os << d; continue; }
      if (d != 1) os << d << "*";
      os << var_;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

  std::string name() const override { return "F_" + std::to_string(size_); }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

 private:
  void decode(elem a, std::array<std::uint32_t, 64>& out) const {
    for (std::uint32_t i = 0; i < k_; ++i) {
      out[i] = static_cast<std::uint32_t>(a % p_);
      a /= p_;
    }
  }

  std::uint32_t p_, k_;
  std::vector<std::uint32_t> mod_;
  std::string var_;
  std::uint64_t size_;
  std::uint64_t modmask_ = 0;
};

// --- products ------------------------------------------------------------------

class ProductRing final : public Ring {
 public:
  explicit ProductRing(std::vector<RingPtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ring_error("product needs at least one factor");
    size_ = 1;
    strides_.resize(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      strides_[i] = size_;
      std::uint64_t f = factors_[i]->size();
      if (size_ > (1ull << 62) / f) throw budget_error("product ring too large");
      size_ *= f;
    }
  }

  std::uint64_t size() const override { return size_; }

  elem one() const override {
    elem r = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r += factors_[i]->one() * strides_[i];
    return r;
  }

  elem add(elem a, elem b) const override { return zip(a, b, 0); }
  elem mul(elem a, elem b) const override { return zip(a, b, 1); }

  elem neg(elem a) const override {
    elem r = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r += factors_[i]->neg(coord(a, i)) * strides_[i];
    return r;
  }

  std::string format(elem a) const override {
    std::string s = "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += ", ";
      s += factors_[i]->format(coord(a, i));
    }
    return s + ")";
  }

  std::string name() const override {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " x ";
      s += factors_[i]->name();
    }
    return s;
  }

  const std::vector<RingPtr>& factors() const { return factors_; }

  elem coord(elem a, std::size_t i) const {
    return a / strides_[i] % factors_[i]->size();
  }
  elem pack(const std::vector<elem>& coords) const {
    elem r = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) r += coords[i] * strides_[i];
    return r;
  }

 private:
  elem zip(elem a, elem b, int op) const {
    elem r = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      elem x = coord(a, i), y = coord(b, i);
      r += (op == 0 ? factors_[i]->add(x, y) : factors_[i]->mul(x, y)) * strides_[i];
    }
    return r;
  }

  std::vector<RingPtr> factors_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_;
};

// --- quotients -------------------------------------------------------------------

class QuotientRing final : public Ring {
 public:
  QuotientRing(RingPtr base, std::vector<elem> ideal, const Budgets& budgets)
      : base_(std::move(base)), ideal_(std::move(ideal)) {
    const std::uint64_t n = base_->size();
    if (n > budgets.enumeration_cap)
      throw budget_error("quotient base exceeds enumeration cap");
    to_rep_.assign(n, UINT64_MAX);
    for (elem x = 0; x < n; ++x) {
      if (to_rep_[x] != UINT64_MAX) continue;
      const elem rep_index = reps_.size();
      reps_.push_back(x);
      for (elem i : ideal_) to_rep_[base_->add(x, i)] = rep_index;
    }
  }

  std::uint64_t size() const override { return reps_.size(); }
  elem one() const override { return to_rep_[base_->one()]; }
  elem add(elem a, elem b) const override {
    return to_rep_[base_->add(reps_[a], reps_[b])];
  }
  elem neg(elem a) const override { return to_rep_[base_->neg(reps_[a])]; }
  elem mul(elem a, elem b) const override {
    return to_rep_[base_->mul(reps_[a], reps_[b])];
  }
  std::string format(elem a) const override { return base_->format(reps_[a]); }
  std::string name() const override {
    std::string s = base_->name() + "/(";
    // display up to three ideal elements for context
    std::size_t shown = 0;
    for (elem i : ideal_) {
      if (i == 0 && ideal_.size() > 1) continue;
      if (shown) s += ",";
      if (shown == 3) { s += "..."; break; }
      s += base_->format(i);
      ++shown;
    }
    return s + ")";
  }

  const RingPtr& base() const { return base_; }
  const std::vector<elem>& ideal() const { return ideal_; }
  elem project(elem base_elem) const { return to_rep_[base_elem]; }
  elem rep(elem q) const { return reps_[q]; }

 private:
  RingPtr base_;
  std::vector<elem> ideal_;
  std::vector<elem> reps_;
  std::vector<elem> to_rep_;
};

// --- staircase algebras ------------------------------------------------------------

class StaircaseRing final : public Ring {
 public:
  StaircaseRing(std::uint32_t p, std::size_t s,
                std::vector<std::vector<std::uint32_t>> table,
                std::vector<std::string> names, std::string nm)
      : p_(p), s_(s), table_(std::move(table)), names_(std::move(names)),
        name_(std::move(nm)) {
    size_ = 1;
    for (std::size_t i = 0; i < s_; ++i) size_ *= p_;
    // locate the basis monomial "1"
    one_ = 0;
    for (std::size_t i = 0; i < s_; ++i)
      if (names_[i] == "1") { one_ = static_cast<elem>(1) * unit_code(i); break; }
  }

  std::uint64_t size() const override { return size_; }
  elem one() const override { return s_ == 0 ? 0 : one_; }

  elem add(elem a, elem b) const override {
    elem r = 0, mul = 1;
    for (std::size_t i = 0; i < s_; ++i) {
      std::uint64_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      r += ((da + db) % p_) * mul;
      mul *= p_;
    }
    return r;
  }

  elem neg(elem a) const override {
    elem r = 0, mul = 1;
    for (std::size_t i = 0; i < s_; ++i) {
      std::uint64_t d = a % p_;
      a /= p_;
      r += (d == 0 ? 0 : p_ - d) * mul;
      mul *= p_;
    }
    return r;
  }

  elem mul(elem a, elem b) const override {
    std::vector<std::uint32_t> ca = coords(a), cb = coords(b), cr(s_, 0);
    for (std::size_t i = 0; i < s_; ++i) {
      if (!ca[i]) continue;
      for (std::size_t j = 0; j < s_; ++j) {
        if (!cb[j]) continue;
        const std::uint32_t c = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(ca[i]) * cb[j] % p_);
        const auto& prod = table_[i * s_ + j];
        for (std::size_t t = 0; t < s_; ++t)
          cr[t] = (cr[t] + c * prod[t]) % p_;
      }
    }
    return pack(cr);
  }

  elem from_int(std::int64_t v) const override {
    std::int64_t r = v % p_;
    if (r < 0) r += p_;
    elem acc = 0;
    for (std::int64_t i = 0; i < r; ++i) acc = add(acc, one());
    return acc;
  }

  std::string format(elem a) const override {
    if (s_ == 0) return "0";
    auto cs = coords(a);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < s_; ++i) {
      if (!cs[i]) continue;
      if (!first) os << " + ";
      first = false;
      if (cs[i] != 1 || names_[i] == "1") {
        os << cs[i];
        if (names_[i] != "1") os << "*";
      }
      if (names_[i] != "1") os << names_[i];
    }
    if (first) return "0";
    return os.str();
  }

  std::string name() const override { return name_; }

  std::vector<std::uint32_t> coords(elem a) const {
    std::vector<std::uint32_t> cs(s_);
    for (std::size_t i = 0; i < s_; ++i) {
      cs[i] = static_cast<std::uint32_t>(a % p_);
      a /= p_;
    }
    return cs;
  }
  elem pack(const std::vector<std::uint32_t>& cs) const {
    elem r = 0, mul = 1;
    for (std::size_t i = 0; i < s_; ++i) {
      r += (cs[i] % p_) * mul;
      mul *= p_;
    }
    return r;
  }

 private:
  std::uint64_t unit_code(std::size_t i) const {
    std::uint64_t m = 1;
    for (std::size_t j = 0; j < i; ++j) m *= p_;
    return m;
  }

  std::uint32_t p_;
  std::size_t s_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::string> names_;
  std::string name_;
  std::uint64_t size_;
  elem one_;
};

// --- GF modulus validation -----------------------------------------------------

using Poly = std::vector<std::uint32_t>;  // coeffs low-first over F_p

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  // m monic
  while (a.size() >= m.size()) {
    std::uint32_t c = a.back();
    if (c) {
      std::size_t off = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i)
        a[off + i] = (a[off + i] + c * (p - m[i] % p)) % p;
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool poly_divides(const Poly& d, Poly a, std::uint32_t p) {
  // d monic
  return poly_mod(std::move(a), d, p).empty();
}

bool modulus_irreducible(const Poly& m, std::uint32_t p) {
  const std::uint32_t k = static_cast<std::uint32_t>(m.size()) - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  // exhaustive trial division by all monic polynomials of degree <= k/2
  for (std::uint32_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly div(d + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      div[d] = 1;
      if (poly_divides(div, m, p)) return false;
    }
  }
  return true;
}

Poly least_irreducible(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly m(k + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < k; ++i) {
      m[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    m[k] = 1;
    if (modulus_irreducible(m, p)) return m;
  }
  throw ring_error("no irreducible modulus found (unreachable for prime p)");
}

}  // namespace

// --- factories ------------------------------------------------------------------

RingPtr make_zmod(std::uint64_t m) { return std::make_shared<ZModRing>(m); }

RingPtr make_gf(std::uint32_t p, std::uint32_t k,
                std::optional<std::vector<std::uint32_t>> modulus, std::string var) {
  if (!is_prime_u64(p)) throw ring_error("GF characteristic must be prime");
  if (k < 1) throw ring_error("GF degree must be >= 1");
  checked_pow(p, k, 1ull << 62);
  Poly m;
  if (modulus) {
    m = *modulus;
    for (auto& c : m) c %= p;
    while (!m.empty() && m.back() == 0) m.pop_back();
    if (m.size() != k + 1 || m.back() != 1)
      throw ring_error("GF modulus must be monic of degree k");
    if (!modulus_irreducible(m, p)) {
      // exhibit a factor for the error message
      std::string msg = "GF modulus is reducible over F_" + std::to_string(p);
      throw ring_error(msg);
    }
  } else {
    m = least_irreducible(p, k);
  }
  return std::make_shared<GFRing>(p, k, std::move(m), std::move(var));
}

RingPtr make_product(std::vector<RingPtr> factors) {
  return std::make_shared<ProductRing>(std::move(factors));
}

RingPtr make_quotient_ring(const RingPtr& base, const std::vector<elem>& ideal_elems,
                           const Budgets& budgets) {
  return std::make_shared<QuotientRing>(base, ideal_elems, budgets);
}

RingPtr make_staircase_ring(std::uint32_t p, std::size_t basis,
                            std::vector<std::vector<std::uint32_t>> table,
                            std::vector<std::string> basis_names, std::string name) {
  return std::make_shared<StaircaseRing>(p, basis, std::move(table),
                                         std::move(basis_names), std::move(name));
}

// --- descriptors ------------------------------------------------------------------

RingDescriptorPtr desc_zmod(std::uint64_t m) {
  return std::make_shared<RingDescriptor>(RingDescriptor{RingDescriptor::ZMod{m}});
}
RingDescriptorPtr desc_gf(std::uint32_t p, std::uint32_t k,
                          std::vector<std::uint32_t> modulus) {
  return std::make_shared<RingDescriptor>(
      RingDescriptor{RingDescriptor::GaloisField{p, k, std::move(modulus)}});
}
RingDescriptorPtr desc_quotient(RingDescriptorPtr base, std::vector<elem> gens) {
  return std::make_shared<RingDescriptor>(
      RingDescriptor{RingDescriptor::Quotient{std::move(base), std::move(gens)}});
}
RingDescriptorPtr desc_product(std::vector<RingDescriptorPtr> factors) {
  return std::make_shared<RingDescriptor>(
      RingDescriptor{RingDescriptor::Product{std::move(factors)}});
}
RingDescriptorPtr desc_localized(RingDescriptorPtr base, std::vector<elem> gens) {
  return std::make_shared<RingDescriptor>(
      RingDescriptor{RingDescriptor::LocalizedFinite{std::move(base), std::move(gens)}});
}

// make_ring needs the ideal/localization machinery; the dispatch lives in
// ideals.cpp where expansions are available. Declared there:
RingPtr make_ring_dispatch(const RingDescriptorPtr& d, const Budgets& budgets,
                           bool allow_zero_ring);

RingPtr make_ring(const RingDescriptorPtr& d, const Budgets& budgets,
                  bool allow_zero_ring) {
  return make_ring_dispatch(d, budgets, allow_zero_ring);
}

// --- introspection ------------------------------------------------------------------

bool is_gf(const Ring& r) { return dynamic_cast<const GFRing*>(&r) != nullptr; }

GfInfo gf_info(const Ring& r) {
  const auto* gf = dynamic_cast<const GFRing*>(&r);
  if (!gf) throw ring_error("not a Galois field backend: " + r.name());
  // class of x: the digit-1 code for k >= 2, the residue -mod[0] for k == 1
  elem gen = gf->k() >= 2 ? gf->p() : (gf->p() - gf->modulus()[0] % gf->p()) % gf->p();
  return GfInfo{gf->p(), gf->k(), gf->modulus(), gen};
}

const std::vector<RingPtr>* product_factors(const Ring& r) {
  const auto* pr = dynamic_cast<const ProductRing*>(&r);
  return pr ? &pr->factors() : nullptr;
}

elem product_pack(const Ring& r, const std::vector<elem>& coords) {
  const auto* pr = dynamic_cast<const ProductRing*>(&r);
  if (!pr) throw ring_error("not a product ring");
  return pr->pack(coords);
}

std::vector<elem> product_unpack(const Ring& r, elem a) {
  const auto* pr = dynamic_cast<const ProductRing*>(&r);
  if (!pr) throw ring_error("not a product ring");
  std::vector<elem> out(pr->factors().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pr->coord(a, i);
  return out;
}

std::optional<QuotientInfo> quotient_info(const Ring& r) {
  const auto* q = dynamic_cast<const QuotientRing*>(&r);
  if (!q) return std::nullopt;
  return QuotientInfo{q->base(), q->ideal()};
}

elem quotient_project(const Ring& r, elem base_elem) {
  const auto* q = dynamic_cast<const QuotientRing*>(&r);
  if (!q) throw ring_error("not a quotient ring");
  return q->project(base_elem);
}

elem quotient_rep(const Ring& r, elem q_elem) {
  const auto* q = dynamic_cast<const QuotientRing*>(&r);
  if (!q) throw ring_error("not a quotient ring");
  return q->rep(q_elem);
}

std::vector<std::uint32_t> staircase_coords(const Ring& r, elem a) {
  const auto* s = dynamic_cast<const StaircaseRing*>(&r);
  if (!s) throw ring_error("not a staircase ring");
  return s->coords(a);
}

elem staircase_pack(const Ring& r, const std::vector<std::uint32_t>& coords) {
  const auto* s = dynamic_cast<const StaircaseRing*>(&r);
  if (!s) throw ring_error("not a staircase ring");
  return s->pack(coords);
}

// --- expressions ------------------------------------------------------------------

ElemExpr ElemExpr::constant(std::int64_t v) {
  ElemExpr e;
  e.kind = Kind::Const;
  e.k = v;
  return e;
}
ElemExpr ElemExpr::element(RElem el) {
  ElemExpr e;
  e.kind = Kind::Leaf;
  e.leaf = std::move(el);
  return e;
}
ElemExpr ElemExpr::add(ElemExpr a, ElemExpr b) {
  ElemExpr e;
  e.kind = Kind::Add;
  e.kids = {std::move(a), std::move(b)};
  return e;
}
ElemExpr ElemExpr::sub(ElemExpr a, ElemExpr b) {
  ElemExpr e;
  e.kind = Kind::Sub;
  e.kids = {std::move(a), std::move(b)};
  return e;
}
ElemExpr ElemExpr::mul(ElemExpr a, ElemExpr b) {
  ElemExpr e;
  e.kind = Kind::Mul;
  e.kids = {std::move(a), std::move(b)};
  return e;
}
ElemExpr ElemExpr::neg(ElemExpr a) {
  ElemExpr e;
  e.kind = Kind::Neg;
  e.kids = {std::move(a)};
  return e;
}

RElem eval_expr(const RingPtr& ring, const ElemExpr& e) {
  switch (e.kind) {
    case ElemExpr::Kind::Const:
      return {ring, ring->from_int(e.k)};
    case ElemExpr::Kind::Leaf:
      if (e.leaf->ring.get() != ring.get())
        throw ring_error("mixed-ring operands: element of " + e.leaf->ring->name() +
                         " used in " + ring->name());
      return *e.leaf;
    case ElemExpr::Kind::Add:
      return {ring, ring->add(eval_expr(ring, e.kids[0]).code,
                              eval_expr(ring, e.kids[1]).code)};
    case ElemExpr::Kind::Sub:
      return {ring, ring->sub(eval_expr(ring, e.kids[0]).code,
                              eval_expr(ring, e.kids[1]).code)};
    case ElemExpr::Kind::Mul:
      return {ring, ring->mul(eval_expr(ring, e.kids[0]).code,
                              eval_expr(ring, e.kids[1]).code)};
    case ElemExpr::Kind::Neg:
      return {ring, ring->neg(eval_expr(ring, e.kids[0]).code)};
  }
  throw ring_error("bad expression node");
}

std::optional<elem> try_inverse(const Ring& r, elem x) {
  for (elem y = 0; y < r.size(); ++y)
    if (r.mul(x, y) == r.one()) return y;
  return std::nullopt;
}

bool is_unit(const Ring& r, elem x) { return try_inverse(r, x).has_value(); }

bool is_subring(const Ring& r, const std::vector<elem>& elems) {
  std::vector<bool> in(r.size(), false);
  for (elem x : elems) in[x] = true;
  if (!in[r.zero()] || !in[r.one()]) return false;
  for (elem a : elems) {
    if (!in[r.neg(a)]) return false;
    for (elem b : elems)
      if (!in[r.add(a, b)] || !in[r.mul(a, b)]) return false;
  }
  return true;
}

std::vector<elem> join_subrings(const RingPtr& ambient, std::vector<elem> a,
                                std::vector<elem> b) {
  if (!is_subring(*ambient, a)) throw ring_error("first operand is not a subring");
  if (!is_subring(*ambient, b)) throw ring_error("second operand is not a subring");
  std::vector<bool> in(ambient->size(), false);
  std::vector<elem> out;
  auto insert = [&](elem x) {
    if (!in[x]) { in[x] = true; out.push_back(x); }
  };
  for (elem x : a)
    for (elem y : b) insert(ambient->mul(x, y));
  // close under addition (products are already closed under multiplication)
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<elem> snapshot = out;
    for (elem x : snapshot)
      for (elem y : snapshot) {
        elem s = ambient->add(x, y);
        if (!in[s]) { insert(s); changed = true; }
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- homomorphisms ------------------------------------------------------------------

RingHom RingHom::identity(RingPtr r) {
  RingHom h;
  h.src_ = r;
  h.dst_ = std::move(r);
  h.impl_ = Id{};
  return h;
}

RingHom RingHom::table(RingPtr src, RingPtr dst, std::vector<elem> images) {
  if (images.size() != src->size()) throw ring_error("hom table size mismatch");
  RingHom h;
  h.src_ = std::move(src);
  h.dst_ = std::move(dst);
  h.impl_ = Tbl{std::move(images)};
  return h;
}

RingHom RingHom::gf_embedding(RingPtr src, RingPtr dst, elem gen_image) {
  if (!is_gf(*src) || !is_gf(*dst)) throw ring_error("gf_embedding needs GF rings");
  RingHom h;
  h.src_ = std::move(src);
  h.dst_ = std::move(dst);
  h.impl_ = Gf{gen_image};
  return h;
}

RingHom RingHom::compose(RingHom first, RingHom then) {
  if (first.dst_.get() != then.src_.get())
    throw ring_error("hom composition domain mismatch");
  RingHom h;
  h.src_ = first.src_;
  h.dst_ = then.dst_;
  h.impl_ = Comp{std::make_shared<RingHom>(std::move(first)),
                 std::make_shared<RingHom>(std::move(then))};
  return h;
}

elem RingHom::apply(elem x) const {
  if (std::holds_alternative<Id>(impl_)) return x;
  if (const auto* t = std::get_if<Tbl>(&impl_)) return t->images[x];
  if (const auto* g = std::get_if<Gf>(&impl_)) {
    const GfInfo src = ringforge::gf_info(*src_);
    // Horner over the base-p digits of x at the generator image
    elem acc = dst_->zero();
    for (std::uint32_t i = src.k; i-- > 0;) {
      std::uint64_t pw = 1;
      for (std::uint32_t j = 0; j < i; ++j) pw *= src.p;
      std::uint32_t digit = static_cast<std::uint32_t>(x / pw % src.p);
      acc = dst_->add(dst_->mul(acc, g->gen_image), dst_->from_int(digit));
    }
    return acc;
  }
  const auto& c = std::get<Comp>(impl_);
  return c.then->apply(c.first->apply(x));
}

HomCheckResult check_ring_hom(const RingHom& h, const Budgets& budgets) {
  const Ring& A = *h.src();
  const Ring& B = *h.dst();
  if (h.apply(A.one()) != B.one())
    return {false, "1 -> " + B.format(h.apply(A.one())) + " != 1"};
  if (h.apply(A.zero()) != B.zero()) return {false, "0 does not map to 0"};
  const std::uint64_t n = A.size();
  if (n * n <= budgets.exhaustive_cap) {
    for (elem a = 0; a < n; ++a)
      for (elem b = 0; b < n; ++b) {
        if (h.apply(A.add(a, b)) != B.add(h.apply(a), h.apply(b)))
          return {false, "additivity fails at (" + A.format(a) + ", " + A.format(b) + ")"};
        if (h.apply(A.mul(a, b)) != B.mul(h.apply(a), h.apply(b)))
          return {false, "multiplicativity fails at (" + A.format(a) + ", " +
                         A.format(b) + ")"};
      }
    return {true, ""};
  }
  // large source: spot-check laws on a deterministic sample grid
  const std::uint64_t step = n / 257 + 1;
  for (elem a = 0; a < n; a += step)
    for (elem b = 0; b < n; b += step) {
      if (h.apply(A.add(a, b)) != B.add(h.apply(a), h.apply(b)))
        return {false, "additivity fails (sampled)"};
      if (h.apply(A.mul(a, b)) != B.mul(h.apply(a), h.apply(b)))
        return {false, "multiplicativity fails (sampled)"};
    }
  return {true, ""};
}

HomFromGensResult hom_from_generators(const RingPtr& src, const RingPtr& dst,
                                      const std::vector<std::pair<elem, elem>>& gens,
                                      const Budgets& budgets) {
  const Ring& A = *src;
  const Ring& B = *dst;
  if (A.size() > budgets.enumeration_cap)
    throw budget_error("hom_from_generators source exceeds cap");
  constexpr elem UNSET = UINT64_MAX;
  std::vector<elem> im(A.size(), UNSET);
  im[A.zero()] = B.zero();
  im[A.one()] = B.one();
  for (auto [g, h] : gens) {
    if (im[g] != UNSET && im[g] != h)
      return {std::nullopt, "conflicting image for " + A.format(g)};
    im[g] = h;
  }
  std::vector<elem> known;
  for (elem x = 0; x < A.size(); ++x)
    if (im[x] != UNSET) known.push_back(x);
  for (std::size_t i = 0; i < known.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (int op = 0; op < 2; ++op) {
        elem x = known[i], y = known[j];
        elem s = op == 0 ? A.add(x, y) : A.mul(x, y);
        elem t = op == 0 ? B.add(im[x], im[y]) : B.mul(im[x], im[y]);
        if (im[s] == UNSET) {
          im[s] = t;
          known.push_back(s);
        } else if (im[s] != t) {
          std::string law = op == 0 ? " + " : " * ";
          return {std::nullopt, A.format(x) + law + A.format(y) + " maps to " +
                                B.format(t) + " but " + A.format(s) + " maps to " +
                                B.format(im[s])};
        }
      }
    }
  }
  for (elem x = 0; x < A.size(); ++x)
    if (im[x] == UNSET)
      return {std::nullopt, "generators do not generate: " + A.format(x) +
                            " unreachable"};
  return {RingHom::table(src, dst, std::move(im)), ""};
}

namespace {

bool iso_backtrack(const RingPtr& a, const RingPtr& b, std::vector<elem>& im,
                   std::vector<bool>& used,
                   const std::vector<std::uint64_t>& orda,
                   const std::vector<std::uint64_t>& ordb) {
  constexpr elem UNSET = UINT64_MAX;
  const Ring& A = *a;
  const Ring& B = *b;
  // close the current partial assignment under + and * with conflict detection
  std::vector<elem> known;
  for (elem x = 0; x < A.size(); ++x)
    if (im[x] != UNSET) known.push_back(x);
  for (std::size_t i = 0; i < known.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (int op = 0; op < 2; ++op) {
        elem x = known[i], y = known[j];
        elem s = op == 0 ? A.add(x, y) : A.mul(x, y);
        elem t = op == 0 ? B.add(im[x], im[y]) : B.mul(im[x], im[y]);
        if (im[s] == UNSET) {
          if (used[t]) return false;  // not injective
          im[s] = t;
          used[t] = true;
          known.push_back(s);
        } else if (im[s] != t) {
          return false;
        }
      }
  elem next = UNSET;
  for (elem x = 0; x < A.size(); ++x)
    if (im[x] == UNSET) { next = x; break; }
  if (next == UNSET) return true;  // total, injective, law-closed => isomorphism
  for (elem y = 0; y < B.size(); ++y) {
    if (used[y] || orda[next] != ordb[y]) continue;
    std::vector<elem> im2 = im;
    std::vector<bool> used2 = used;
    im2[next] = y;
    used2[y] = true;
    if (iso_backtrack(a, b, im2, used2, orda, ordb)) {
      im = std::move(im2);
      used = std::move(used2);
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<RingHom> find_ring_isomorphism(const RingPtr& a, const RingPtr& b,
                                             const Budgets& budgets) {
  if (a->size() != b->size()) return std::nullopt;
  if (a->size() > budgets.enumeration_cap)
    throw budget_error("isomorphism search exceeds cap");
  std::vector<std::uint64_t> orda(a->size()), ordb(b->size());
  for (elem x = 0; x < a->size(); ++x) orda[x] = a->additive_order(x);
  for (elem y = 0; y < b->size(); ++y) ordb[y] = b->additive_order(y);
  constexpr elem UNSET = UINT64_MAX;
  std::vector<elem> im(a->size(), UNSET);
  std::vector<bool> used(b->size(), false);
  im[a->zero()] = b->zero();
  used[b->zero()] = true;
  if (a->one() != a->zero()) {
    if (used[b->one()] && b->one() != b->zero()) return std::nullopt;
    im[a->one()] = b->one();
    used[b->one()] = true;
  }
  if (!iso_backtrack(a, b, im, used, orda, ordb)) return std::nullopt;
  return RingHom::table(a, b, std::move(im));
}

}  // namespace ringforge
