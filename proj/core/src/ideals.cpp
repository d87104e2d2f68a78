#include "ringforge/ideals.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ringforge {

namespace {

std::vector<elem> additive_closure(const Ring& r, const std::vector<elem>& seed) {
  std::vector<bool> in(r.size(), false);
  std::vector<elem> members;
  auto insert = [&](elem x) {
    if (!in[x]) { in[x] = true; members.push_back(x); }
  };
  insert(r.zero());
  for (elem s : seed) insert(s);
  // members form a generating set; close under addition by BFS
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) insert(r.add(members[i], members[j]));
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

bool Ideal::contains(elem x) const {
  return std::binary_search(expansion.begin(), expansion.end(), x);
}

std::string Ideal::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ",";
    s += ring->format(gens[i]);
  }
  return s + ")";
}

Ideal ideal_expand(const RingPtr& ring, std::vector<elem> gens, const Budgets& budgets) {
  if (ring->size() > budgets.enumeration_cap)
    throw budget_error("ideal expansion: ring exceeds enumeration cap (" +
                       std::to_string(ring->size()) + ")");
  // all ring multiples of the generators, then the additive closure
  std::vector<elem> multiples;
  multiples.reserve(gens.size() * ring->size());
  for (elem g : gens)
    for (elem r = 0; r < ring->size(); ++r) multiples.push_back(ring->mul(r, g));
  Ideal i;
  i.ring = ring;
  i.gens = std::move(gens);
  i.expansion = additive_closure(*ring, multiples);
  return i;
}

Ideal ideal_from_elements(const RingPtr& ring, std::vector<elem> elems,
                          const Budgets& budgets) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Ideal check = ideal_expand(ring, elems, budgets);
  if (check.expansion != elems)
    throw ring_error("element set is not an ideal of " + ring->name());
  // greedy generator selection
  std::vector<elem> gens;
  Ideal cur = ideal_expand(ring, {}, budgets);
  for (elem x : elems) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = ideal_expand(ring, gens, budgets);
    if (cur.expansion == elems) break;
  }
  cur.gens = gens;
  return cur;
}

Ideal ideal_combine(const Ideal& a, const Ideal& b, IdealCombine mode,
                    const Budgets& budgets) {
  if (a.ring.get() != b.ring.get()) throw ring_error("ideal_combine: mixed rings");
  const RingPtr& R = a.ring;
  switch (mode) {
    case IdealCombine::Sum: {
      std::vector<elem> gens = a.gens;
      gens.insert(gens.end(), b.gens.begin(), b.gens.end());
      Ideal s;
      s.ring = R;
      s.gens = std::move(gens);
      // {x + y} over the expansions is already the sum ideal
      std::vector<bool> in(R->size(), false);
      std::vector<elem> members;
      for (elem x : a.expansion)
        for (elem y : b.expansion) {
          elem t = R->add(x, y);
          if (!in[t]) { in[t] = true; members.push_back(t); }
        }
      std::sort(members.begin(), members.end());
      s.expansion = std::move(members);
      return s;
    }
    case IdealCombine::Product: {
      std::vector<elem> gens;
      for (elem x : a.gens)
        for (elem y : b.gens) gens.push_back(R->mul(x, y));
      // generated by pairwise products of the expansions to stay generator-free
      std::vector<elem> seed;
      for (elem x : a.expansion)
        for (elem y : b.expansion) seed.push_back(R->mul(x, y));
      Ideal p;
      p.ring = R;
      p.gens = std::move(gens);
      p.expansion = additive_closure(*R, seed);
      return p;
    }
    case IdealCombine::Intersection: {
      std::vector<elem> members;
      std::set_intersection(a.expansion.begin(), a.expansion.end(),
                            b.expansion.begin(), b.expansion.end(),
                            std::back_inserter(members));
      return ideal_from_elements(R, members, budgets);
    }
  }
  throw ring_error("bad combine mode");
}

Ideal ideal_radical(const Ideal& i, const Budgets& budgets) {
  const Ring& R = *i.ring;
  std::vector<elem> members;
  for (elem x = 0; x < R.size(); ++x) {
    elem pw = x;
    bool in = false;
    // powers of x cycle within |R| steps
    for (std::uint64_t k = 1; k <= R.size(); ++k) {
      if (i.contains(pw)) { in = true; break; }
      pw = R.mul(pw, x);
    }
    if (in) members.push_back(x);
  }
  return ideal_from_elements(i.ring, members, budgets);
}

IdealFlags classify_ideal(const Ideal& i) {
  const Ring& R = *i.ring;
  IdealFlags f;
  f.proper = i.is_proper();
  auto power_lands_in = [&](elem y) {
    elem pw = y;
    for (std::uint64_t k = 1; k <= R.size(); ++k) {
      if (i.contains(pw)) return true;
      pw = R.mul(pw, y);
    }
    return false;
  };
  bool prime = f.proper, primary = f.proper;
  for (elem x = 0; x < R.size() && (prime || primary); ++x) {
    if (i.contains(x)) continue;
    for (elem y = 0; y < R.size() && (prime || primary); ++y) {
      if (!i.contains(R.mul(x, y))) continue;
      if (!i.contains(y)) prime = false;
      if (primary && !power_lands_in(y)) primary = false;
    }
  }
  f.prime = prime;
  f.primary = primary;
  // radical: I equals its own radical
  f.radical = true;
  for (elem x = 0; x < R.size(); ++x) {
    if (i.contains(x)) continue;
    if (power_lands_in(x)) { f.radical = false; break; }
  }
  return f;
}

PrimeIdeal certify_prime(Ideal i) {
  IdealFlags f = classify_ideal(i);
  if (!f.prime)
    throw ring_error("ideal " + i.str() + " of " + i.ring->name() + " is not prime");
  return PrimeIdeal{std::move(i), PrimeCertification::FiniteDefinitionCheck};
}

// --- spectrum ----------------------------------------------------------------

FiniteSpectrum enumerate_spectrum(const RingPtr& ring, const Budgets& budgets) {
  const Ring& R = *ring;
  if (R.size() > budgets.enumeration_cap)
    throw budget_error("spectrum enumeration exceeds cap");
  FiniteSpectrum spec;
  spec.ring = ring;
  if (R.is_zero_ring()) return spec;  // empty spectrum, flagged by the caller

  // all idempotents
  std::vector<elem> idem;
  for (elem e = 0; e < R.size(); ++e)
    if (R.mul(e, e) == e && e != R.zero()) idem.push_back(e);
  // primitive = minimal nonzero under e <= f iff ef = e
  std::vector<elem> primitive;
  for (elem e : idem) {
    bool minimal = true;
    for (elem f : idem) {
      if (f == e) continue;
      if (R.mul(e, f) == f) { minimal = false; break; }  // f < e strictly
    }
    if (minimal) primitive.push_back(e);
  }
  // unit bitmap, one pass over all products
  std::vector<bool> unit(R.size(), false);
  for (elem x = 0; x < R.size(); ++x)
    for (elem y = x; y < R.size(); ++y)
      if (R.mul(x, y) == R.one()) { unit[x] = true; unit[y] = true; }
  // pullback of the maximal ideal of each local factor eR:
  // x is in the prime iff x*e + (1 - e) is not a unit of R
  for (elem e : primitive) {
    std::vector<elem> members;
    const elem one_minus_e = R.sub(R.one(), e);
    for (elem x = 0; x < R.size(); ++x) {
      elem probe = R.add(R.mul(x, e), one_minus_e);
      if (!unit[probe]) members.push_back(x);
    }
    Ideal id = ideal_from_elements(ring, members, budgets);
    spec.primes.push_back(PrimeIdeal{std::move(id), PrimeCertification::LocalFactorMaximal});
  }
  // canonical order: by expansion (size, then lexicographic)
  std::sort(spec.primes.begin(), spec.primes.end(),
            [](const PrimeIdeal& a, const PrimeIdeal& b) {
              return a.ideal.expansion < b.ideal.expansion;
            });
  const std::size_t n = spec.primes.size();
  spec.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      spec.leq[i][j] = std::includes(spec.primes[j].ideal.expansion.begin(),
                                     spec.primes[j].ideal.expansion.end(),
                                     spec.primes[i].ideal.expansion.begin(),
                                     spec.primes[i].ideal.expansion.end());
  return spec;
}

std::vector<Ideal> ideal_lattice(const RingPtr& ring, const Budgets& budgets) {
  const Ring& R = *ring;
  std::set<std::vector<elem>> seen;
  std::vector<Ideal> out;
  auto push = [&](Ideal i) {
    if (seen.insert(i.expansion).second) {
      out.push_back(std::move(i));
      if (out.size() > budgets.ideal_lattice_cap)
        throw budget_error("ideal lattice cap exceeded");
    }
  };
  for (elem x = 0; x < R.size(); ++x) push(ideal_expand(ring, {x}, budgets));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      push(ideal_combine(out[i], out[j], IdealCombine::Sum, budgets));
  std::sort(out.begin(), out.end(),
            [](const Ideal& a, const Ideal& b) { return a.expansion < b.expansion; });
  return out;
}

// --- quotient / localization / fiber -------------------------------------------

QuotientConstruction quotient_ring(const RingPtr& base, const Ideal& i,
                                   const Budgets& budgets) {
  RingPtr q = make_quotient_ring(base, i.expansion, budgets);
  std::vector<elem> images(base->size());
  for (elem x = 0; x < base->size(); ++x) images[x] = quotient_project(*q, x);
  QuotientConstruction qc;
  qc.ring = q;
  qc.projection = RingHom::table(base, q, std::move(images));
  qc.zero_ring = q->is_zero_ring();
  return qc;
}

LocalizationResult localize_finite(const RingPtr& base, const LocalizationSpec& spec,
                                   const Budgets& budgets) {
  const Ring& R = *base;
  if (R.size() > budgets.enumeration_cap)
    throw budget_error("localization exceeds enumeration cap");
  LocalizationResult res;
  res.base_spectrum = enumerate_spectrum(base, budgets);

  // compute the multiplicative set S
  std::vector<bool> inS(R.size(), false);
  if (spec.mode == LocalizationSpec::Mode::ByMultSet) {
    std::vector<elem> frontier{R.one()};
    inS[R.one()] = true;
    for (elem g : spec.mult_set_gens)
      if (!inS[g]) { inS[g] = true; frontier.push_back(g); }
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        elem t = R.mul(frontier[i], frontier[j]);
        if (!inS[t]) { inS[t] = true; frontier.push_back(t); }
      }
  } else {
    // S = intersection of the complements of the chosen primes
    for (std::size_t a = 0; a < spec.at_primes.size(); ++a) {
      for (std::size_t b = 0; b < spec.at_primes.size(); ++b) {
        if (a == b) continue;
        const auto& A = spec.at_primes[a].ideal.expansion;
        const auto& B = spec.at_primes[b].ideal.expansion;
        if (std::includes(B.begin(), B.end(), A.begin(), A.end()))
          throw ring_error("semi-localization requires pairwise incomparable primes");
      }
    }
    for (elem x = 0; x < R.size(); ++x) {
      bool avoid_all = true;
      for (const auto& p : spec.at_primes)
        if (p.ideal.contains(x)) { avoid_all = false; break; }
      inS[x] = avoid_all;
    }
  }
  for (elem x = 0; x < R.size(); ++x)
    if (inS[x]) res.mult_set.push_back(x);

  // kernel K = {r : s*r = 0 for some s in S}
  std::vector<elem> kernel_members;
  for (elem r = 0; r < R.size(); ++r)
    for (elem s : res.mult_set)
      if (R.mul(s, r) == R.zero()) { kernel_members.push_back(r); break; }
  res.kernel = ideal_from_elements(base, kernel_members, budgets);
  res.zero_ring = inS[R.zero()];

  QuotientConstruction qc = quotient_ring(base, res.kernel, budgets);
  res.ring = qc.ring;
  res.projection = qc.projection;

  // every image of S must be a unit in the quotient (always true here; checked)
  for (elem s : res.mult_set)
    if (!is_unit(*res.ring, res.projection.apply(s)))
      throw ring_error("localization invariant failed: image of " + R.format(s) +
                       " is not a unit");

  // surviving primes: disjoint from S; maximal among survivors by containment
  for (std::size_t i = 0; i < res.base_spectrum.primes.size(); ++i) {
    const auto& p = res.base_spectrum.primes[i];
    bool disjoint = true;
    for (elem s : res.mult_set)
      if (p.ideal.contains(s)) { disjoint = false; break; }
    if (disjoint) res.surviving.push_back(i);
  }
  for (std::size_t i : res.surviving) {
    bool maximal = true;
    for (std::size_t j : res.surviving)
      if (j != i && res.base_spectrum.leq[i][j]) { maximal = false; break; }
    if (maximal) res.maximal_survivors.push_back(i);
  }
  return res;
}

FiberResult compute_fiber(const RingHom& hom, const PrimeIdeal& p,
                          const Budgets& budgets) {
  const RingPtr& A = hom.src();
  const RingPtr& B = hom.dst();
  HomCheckResult ok = check_ring_hom(hom, budgets);
  if (!ok.ok) throw ring_error("compute_fiber: not a ring map: " + ok.witness);
  if (p.ideal.ring.get() != A.get()) throw ring_error("compute_fiber: prime not in source");

  // pB
  std::vector<elem> gens;
  for (elem g : p.ideal.expansion) gens.push_back(hom.apply(g));
  Ideal pB = ideal_expand(B, gens, budgets);
  QuotientConstruction q = quotient_ring(B, pB, budgets);

  // S = image of A/p - {0} inside B/pB
  std::vector<elem> sgens;
  for (elem a = 0; a < A->size(); ++a)
    if (!p.ideal.contains(a)) sgens.push_back(q.projection.apply(hom.apply(a)));
  std::sort(sgens.begin(), sgens.end());
  sgens.erase(std::unique(sgens.begin(), sgens.end()), sgens.end());

  LocalizationSpec spec;
  spec.mode = LocalizationSpec::Mode::ByMultSet;
  spec.mult_set_gens = std::move(sgens);
  LocalizationResult loc = localize_finite(q.ring, spec, budgets);
  return FiberResult{loc.ring, loc.ring->is_zero_ring()};
}

// --- descriptor dispatch ---------------------------------------------------------

RingPtr make_ring_dispatch(const RingDescriptorPtr& d, const Budgets& budgets,
                           bool allow_zero_ring) {
  const auto& node = d->node;
  if (const auto* z = std::get_if<RingDescriptor::ZMod>(&node)) {
    if (z->m < 2 && !allow_zero_ring) throw ring_error("zmod modulus must be >= 2");
    return make_zmod(z->m);
  }
  if (const auto* g = std::get_if<RingDescriptor::GaloisField>(&node)) {
    return make_gf(g->p, g->k, g->modulus);
  }
  if (const auto* q = std::get_if<RingDescriptor::Quotient>(&node)) {
    RingPtr base = make_ring_dispatch(q->base, budgets, allow_zero_ring);
    Ideal i = ideal_expand(base, q->ideal_gens, budgets);
    QuotientConstruction qc = quotient_ring(base, i, budgets);
    if (qc.zero_ring && !allow_zero_ring)
      throw ring_error("quotient collapses to the zero ring (ideal contains 1)");
    return qc.ring;
  }
  if (const auto* pr = std::get_if<RingDescriptor::Product>(&node)) {
    std::vector<RingPtr> fs;
    for (const auto& f : pr->factors)
      fs.push_back(make_ring_dispatch(f, budgets, allow_zero_ring));
    return make_product(std::move(fs));
  }
  const auto& loc = std::get<RingDescriptor::LocalizedFinite>(node);
  RingPtr base = make_ring_dispatch(loc.base, budgets, allow_zero_ring);
  LocalizationSpec spec;
  spec.mode = LocalizationSpec::Mode::ByMultSet;
  spec.mult_set_gens = loc.mult_set_gens;
  LocalizationResult res = localize_finite(base, spec, budgets);
  if (res.zero_ring && !allow_zero_ring)
    throw ring_error("localization at a set containing 0 yields the zero ring");
  return res.ring;
}

}  // namespace ringforge
