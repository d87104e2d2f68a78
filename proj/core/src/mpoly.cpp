#include "ringforge/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ringforge {

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

PolyRing::PolyRing(std::uint32_t p_, std::vector<std::string> vars_)
    : p(p_), vars(std::move(vars_)) {
  if (!is_prime_u32(p) || p > 97)
    throw ring_error("polynomial coefficient field needs a prime p <= 97, got " +
                     std::to_string(p));
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw ring_error("duplicate variable " + vars[i]);
  inv_.assign(p, 0);
  for (std::uint32_t a = 1; a < p; ++a)
    for (std::uint32_t b = 1; b < p; ++b)
      if (a * b % p == 1) { inv_[a] = b; break; }
}

std::uint32_t PolyRing::inv(std::uint32_t c) const {
  c %= p;
  if (c == 0) throw ring_error("inverse of 0 in F_" + std::to_string(p));
  return inv_[c];
}

std::string PolyRing::name() const {
  std::string s = "F_" + std::to_string(p) + "[";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ",";
    s += vars[i];
  }
  return s + "]";
}

PolyRingPtr make_poly_ring(std::uint32_t p, std::vector<std::string> vars) {
  return std::make_shared<const PolyRing>(p, std::move(vars));
}

std::uint32_t total_degree(const Exps& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

int cmp_monomial(const Exps& a, const Exps& b, MonomialOrder o) {
  if (o == MonomialOrder::Lex) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }
  // grevlex: compare total degree, then the last nonzero entry of a-b decides
  // (negative entry means a is larger).
  std::uint32_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

bool monomial_divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps monomial_lcm(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

MPoly::MPoly(PolyRingPtr ring, std::vector<Term> terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
  normalize();
}

void MPoly::normalize() {
  const std::uint32_t p = ring_->p;
  for (auto& t : terms_) {
    t.c %= p;
    if (t.e.size() != ring_->nvars())
      throw ring_error("exponent vector arity mismatch");
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) {
    return cmp_monomial(x.e, y.e, MonomialOrder::Grevlex) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().e == t.e)
      out.back().c = (out.back().c + t.c) % p;
    else
      out.push_back(t);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return t.c == 0; }),
            out.end());
  terms_ = std::move(out);
}

MPoly MPoly::constant(PolyRingPtr ring, std::int64_t c) {
  const std::int64_t p = ring->p;
  std::uint32_t cc = static_cast<std::uint32_t>(((c % p) + p) % p);
  MPoly r(ring);
  if (cc != 0) r.terms_.push_back({Exps(ring->nvars(), 0), cc});
  return r;
}

MPoly MPoly::variable(PolyRingPtr ring, std::size_t var, std::uint32_t exp) {
  if (var >= ring->nvars()) throw ring_error("variable index out of range");
  Exps e(ring->nvars(), 0);
  e[var] = static_cast<std::uint16_t>(exp);
  MPoly r(ring);
  if (exp == 0) return constant(ring, 1);
  r.terms_.push_back({std::move(e), 1});
  return r;
}

MPoly MPoly::monomial(PolyRingPtr ring, Exps e, std::int64_t c) {
  const std::int64_t p = ring->p;
  std::uint32_t cc = static_cast<std::uint32_t>(((c % p) + p) % p);
  MPoly r(ring);
  if (cc != 0) r.terms_.push_back({std::move(e), cc});
  return r;
}

bool MPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].c == 1 &&
         total_degree(terms_[0].e) == 0;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].e) == 0);
}

std::uint32_t MPoly::degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, total_degree(t.e));
  return d;
}

const Term& MPoly::leading_term(MonomialOrder o) const {
  if (terms_.empty()) throw ring_error("leading term of zero polynomial");
  if (o == MonomialOrder::Grevlex) return terms_.front();
  std::size_t best = 0;
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (cmp_monomial(terms_[i].e, terms_[best].e, o) > 0) best = i;
  return terms_[best];
}

MPoly MPoly::operator+(const MPoly& rhs) const {
  if (ring_.get() != rhs.ring_.get()) throw ring_error("mixed polynomial rings");
  std::vector<Term> ts = terms_;
  ts.insert(ts.end(), rhs.terms_.begin(), rhs.terms_.end());
  return MPoly(ring_, std::move(ts));
}

MPoly MPoly::operator-() const {
  std::vector<Term> ts = terms_;
  for (auto& t : ts) t.c = ring_->p - t.c;
  MPoly r(ring_);
  r.terms_ = std::move(ts);
  return r;
}

MPoly MPoly::operator-(const MPoly& rhs) const { return *this + (-rhs); }

MPoly MPoly::operator*(const MPoly& rhs) const {
  if (ring_.get() != rhs.ring_.get()) throw ring_error("mixed polynomial rings");
  std::vector<Term> ts;
  ts.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : rhs.terms_) {
      Exps e(a.e.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
      ts.push_back({std::move(e), a.c * b.c % ring_->p});
    }
  return MPoly(ring_, std::move(ts));
}

bool MPoly::operator==(const MPoly& rhs) const {
  if (ring_.get() != rhs.ring_.get()) return false;
  if (terms_.size() != rhs.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].c != rhs.terms_[i].c || terms_[i].e != rhs.terms_[i].e)
      return false;
  return true;
}

MPoly MPoly::scaled(std::uint32_t c) const {
  c %= ring_->p;
  MPoly r(ring_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.c = t.c * c % ring_->p;
  return r;
}

MPoly MPoly::times_monomial(const Exps& e, std::uint32_t c) const {
  c %= ring_->p;
  MPoly r(ring_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) {
    t.c = t.c * c % ring_->p;
    for (std::size_t i = 0; i < e.size(); ++i)
      t.e[i] = static_cast<std::uint16_t>(t.e[i] + e[i]);
  }
  // monomial multiples preserve the grevlex sort, no renormalize needed
  return r;
}

MPoly MPoly::pow(std::uint64_t k) const {
  MPoly acc = constant(ring_, 1);
  MPoly base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

MPoly MPoly::monic(MonomialOrder o) const {
  if (is_zero()) return *this;
  return scaled(ring_->inv(leading_term(o).c));
}

std::uint32_t MPoly::eval(const std::vector<std::uint32_t>& point) const {
  if (point.size() != ring_->nvars()) throw ring_error("evaluation arity mismatch");
  const std::uint32_t p = ring_->p;
  std::uint64_t acc = 0;
  for (const auto& t : terms_) {
    std::uint64_t v = t.c;
    for (std::size_t i = 0; i < point.size(); ++i) {
      std::uint64_t b = point[i] % p, e = t.e[i], pw = 1;
      while (e) {
        if (e & 1) pw = pw * b % p;
        b = b * b % p;
        e >>= 1;
      }
      v = v * pw % p;
    }
    acc = (acc + v) % p;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t MPoly::coeff(const Exps& e) const {
  for (const auto& t : terms_)
    if (t.e == e) return t.c;
  return 0;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool printed = false;
    if (t.c != 1 || total_degree(t.e) == 0) {
      os << t.c;
      printed = true;
    }
    for (std::size_t i = 0; i < t.e.size(); ++i) {
      if (t.e[i] == 0) continue;
      if (printed) os << "*";
      os << ring_->vars[i];
      if (t.e[i] > 1) os << "^" << t.e[i];
      printed = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// parsing: ints, identifiers, + - * ^ ( )

namespace {

struct PolyParser {
  const PolyRingPtr& ring;
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ring_error("polynomial parse error at position " + std::to_string(pos) +
                     ": " + what + " in \"" + s + "\"");
  }

  MPoly expr() {
    bool neg = false;
    for (;;) {
      if (eat('+')) continue;
      if (eat('-')) { neg = !neg; continue; }
      break;
    }
    MPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = factor();
    for (;;) {
      skip();
      if (eat('*')) { acc = acc * factor(); continue; }
      // implicit product: identifier or '(' directly following
      if (pos < s.size() &&
          (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '(')) {
        acc = acc * factor();
        continue;
      }
      break;
    }
    return acc;
  }

  MPoly factor() {
    MPoly base = atom();
    skip();
    if (eat('^')) {
      skip();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("exponent expected");
      base = base.pow(std::stoull(s.substr(start, pos - start)));
    }
    return base;
  }

  MPoly atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    if (eat('(')) {
      MPoly inner = expr();
      if (!eat(')')) fail("')' expected");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return MPoly::constant(ring, std::stoll(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string id = s.substr(start, pos - start);
      for (std::size_t i = 0; i < ring->nvars(); ++i)
        if (ring->vars[i] == id) return MPoly::variable(ring, i);
      fail("unknown variable '" + id + "'");
    }
    fail("unexpected character");
  }
};

}  // namespace

MPoly parse_poly(const PolyRingPtr& ring, const std::string& text) {
  PolyParser p{ring, text};
  MPoly r = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

RingExtension extend_ring_front(const PolyRingPtr& ring,
                                const std::vector<std::string>& fresh) {
  std::vector<std::string> vars = fresh;
  vars.insert(vars.end(), ring->vars.begin(), ring->vars.end());
  return RingExtension{make_poly_ring(ring->p, std::move(vars)), fresh.size()};
}

MPoly lift_to(const RingExtension& ext, const MPoly& f) {
  std::vector<Term> ts;
  ts.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    Exps e(ext.added, 0);
    e.insert(e.end(), t.e.begin(), t.e.end());
    ts.push_back({std::move(e), t.c});
  }
  return MPoly(ext.extended, std::move(ts));
}

MPoly project_from(const RingExtension& ext, const PolyRingPtr& base, const MPoly& f) {
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < ext.added; ++i)
      if (t.e[i] != 0) throw ring_error("projection of term with fresh variable");
    Exps e(t.e.begin() + static_cast<std::ptrdiff_t>(ext.added), t.e.end());
    ts.push_back({std::move(e), t.c});
  }
  return MPoly(base, std::move(ts));
}

}  // namespace ringforge
