#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace oracles {

namespace {

// set-arithmetic ideal helpers, independent of ringforge::ideal_expand
std::vector<elem> cyclic_ideal(const Ring& r, elem g) {
  std::set<elem> s;
  for (elem x = 0; x < r.size(); ++x) s.insert(r.mul(x, g));
  // additive closure
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<elem> snap(s.begin(), s.end());
    for (elem a : snap)
      for (elem b : snap)
        if (s.insert(r.add(a, b)).second) changed = true;
  }
  return {s.begin(), s.end()};
}

std::vector<elem> set_sum(const Ring& r, const std::vector<elem>& a,
                          const std::vector<elem>& b) {
  std::set<elem> s;
  for (elem x : a)
    for (elem y : b) s.insert(r.add(x, y));
  return {s.begin(), s.end()};
}

}  // namespace

std::set<std::vector<elem>> brute_ideal_lattice(const RingPtr& r) {
  std::set<std::vector<elem>> lattice;
  std::vector<std::vector<elem>> work;
  for (elem g = 0; g < r->size(); ++g) {
    auto i = cyclic_ideal(*r, g);
    if (lattice.insert(i).second) work.push_back(i);
  }
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto s = set_sum(*r, work[i], work[j]);
      if (lattice.insert(s).second) work.push_back(s);
    }
  return lattice;
}

std::set<std::vector<elem>> brute_spectrum(const RingPtr& r) {
  std::set<std::vector<elem>> primes;
  for (const auto& i : brute_ideal_lattice(r)) {
    if (i.size() == r->size()) continue;  // not proper
    auto contains = [&](elem x) {
      return std::binary_search(i.begin(), i.end(), x);
    };
    bool prime = true;
    for (elem x = 0; x < r->size() && prime; ++x) {
      if (contains(x)) continue;
      for (elem y = 0; y < r->size(); ++y) {
        if (contains(y)) continue;
        if (contains(r->mul(x, y))) { prime = false; break; }
      }
    }
    if (prime) primes.insert(i);
  }
  return primes;
}

MPoly naive_mul(const MPoly& a, const MPoly& b) {
  const auto& ring = a.ring();
  std::map<Exps, std::uint64_t> acc;
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      Exps e(ta.e.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = static_cast<std::uint16_t>(ta.e[i] + tb.e[i]);
      acc[e] += static_cast<std::uint64_t>(ta.c) * tb.c;
    }
  std::vector<Term> ts;
  for (auto& [e, c] : acc) {
    auto cc = static_cast<std::uint32_t>(c % ring->p);
    if (cc) ts.push_back({e, cc});
  }
  return MPoly(ring, std::move(ts));
}

namespace {

std::vector<Exps> monomials_up_to(std::size_t nvars, std::uint32_t bound) {
  std::vector<Exps> out;
  Exps cur(nvars, 0);
  for (;;) {
    if (total_degree(cur) <= bound) out.push_back(cur);
    // odometer over [0, bound]^nvars
    std::size_t i = 0;
    while (i < nvars) {
      if (cur[i] < bound) { ++cur[i]; break; }
      cur[i] = 0;
      ++i;
    }
    if (i == nvars) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool linalg_membership(const MPoly& f, const std::vector<MPoly>& gens,
                       std::uint32_t degree_bound) {
  const auto& ring = f.ring();
  const std::uint32_t p = ring->p;
  const auto cof_monos = monomials_up_to(ring->nvars(), degree_bound);

  // column space: one unknown per (generator, cofactor monomial)
  struct Col { std::size_t gen; Exps mono; };
  std::vector<Col> cols;
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (const auto& m : cof_monos) cols.push_back({g, m});

  // row space: every monomial that can appear
  std::map<Exps, std::size_t> row_of;
  auto row_index = [&](const Exps& e) {
    auto it = row_of.find(e);
    if (it != row_of.end()) return it->second;
    std::size_t idx = row_of.size();
    row_of.emplace(e, idx);
    return idx;
  };
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> colvals;
  for (const auto& c : cols) {
    MPoly prod = gens[c.gen].times_monomial(c.mono, 1);
    std::vector<std::pair<std::size_t, std::uint32_t>> vals;
    for (const auto& t : prod.terms()) vals.emplace_back(row_index(t.e), t.c);
    colvals.push_back(std::move(vals));
  }
  for (const auto& t : f.terms()) row_index(t.e);

  const std::size_t rows = row_of.size(), ncols = cols.size();
  std::vector<std::vector<std::uint32_t>> M(rows, std::vector<std::uint32_t>(ncols + 1, 0));
  for (std::size_t c = 0; c < ncols; ++c)
    for (auto [r, v] : colvals[c]) M[r][c] = v;
  for (const auto& t : f.terms()) M[row_of[t.e]][ncols] = t.c;

  // Gaussian elimination mod p
  std::size_t rank_row = 0;
  for (std::size_t c = 0; c < ncols && rank_row < rows; ++c) {
    std::size_t piv = rank_row;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[rank_row]);
    std::uint32_t inv = 1;
    for (std::uint32_t x = 1; x < p; ++x)
      if (M[rank_row][c] * x % p == 1) { inv = x; break; }
    for (auto& v : M[rank_row]) v = v * inv % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank_row || M[r][c] == 0) continue;
      std::uint32_t factor = M[r][c];
      for (std::size_t k = 0; k <= ncols; ++k)
        M[r][k] = (M[r][k] + (p - factor) * M[rank_row][k]) % p;
    }
    ++rank_row;
  }
  // consistent iff no row reads 0 = nonzero
  for (const auto& row : M) {
    bool all_zero = true;
    for (std::size_t c = 0; c < ncols; ++c)
      if (row[c]) { all_zero = false; break; }
    if (all_zero && row[ncols]) return false;
  }
  return true;
}

std::optional<elem> exhaustive_crt(const RingPtr& r, const std::vector<Ideal>& ideals,
                                   const std::vector<elem>& residues) {
  for (elem a = 0; a < r->size(); ++a) {
    bool ok = true;
    for (std::size_t i = 0; i < ideals.size(); ++i)
      if (!ideals[i].contains(r->sub(a, residues[i]))) { ok = false; break; }
    if (ok) return a;
  }
  return std::nullopt;
}

elem eval_in_ring(const MPoly& f, const RingPtr& r, const std::vector<elem>& point) {
  elem acc = r->zero();
  for (const auto& t : f.terms()) {
    elem v = r->from_int(t.c);
    for (std::size_t i = 0; i < point.size(); ++i)
      v = r->mul(v, r->pow(point[i], t.e[i]));
    acc = r->add(acc, v);
  }
  return acc;
}

std::set<std::vector<elem>> points_over(const std::vector<MPoly>& gens,
                                        const RingPtr& field) {
  std::set<std::vector<elem>> pts;
  if (gens.empty()) return pts;
  const std::size_t n = gens[0].ring()->nvars();
  std::vector<elem> point(n, 0);
  for (;;) {
    bool vanishes = true;
    for (const auto& g : gens)
      if (eval_in_ring(g, field, point) != field->zero()) { vanishes = false; break; }
    if (vanishes) pts.insert(point);
    std::size_t i = 0;
    while (i < n) {
      if (point[i] + 1 < field->size()) { ++point[i]; break; }
      point[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return pts;
}

}  // namespace oracles
