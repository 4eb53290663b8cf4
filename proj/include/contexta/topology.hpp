#pragma once

// Low-degree topology of the classifying space attached to a cover.
//
// Cells in degree k are k-tuples of nonzero support elements that lie in a
// common context; the boundary is the alternating bar-style sum with
// merged-to-zero entries dropped:
//   d(v,w)   = (w) - (v+w) + (v)
//   d(u,v,w) = (v,w) - (u+v,w) + (u,v+w) - (u,v).
// The restricted cocycle beta is a 2-cochain on this complex; its cochain
// differential vanishes on every 3-cell (checked at build time), and it is
// a coboundary exactly when the cover admits a global section.
//
// Coset posets: for a family of subgroups (the cover's abelian subspaces,
// or their standard lifts in the extension group), the poset of all cosets
// ordered by inclusion.  The Euler characteristic comes from the recursive
// h(x) = 1 - sum_{y < x} h(y), and the wedge size of a poset that is
// homotopy equivalent to a wedge of fiber_dim-spheres is
// (-1)^{fiber_dim} (chi - 1).

#include <array>
#include <set>

#include "contexta/exact.hpp"
#include "contexta/presheaf.hpp"

namespace contexta {

struct ChainComplex {
  PrimeConfig cfg;
  std::vector<Vec> c1;
  std::vector<std::array<Vec, 2>> c2;
  std::vector<std::array<Vec, 3>> c3;
  std::map<Vec, int> index1;
  std::map<std::array<Vec, 2>, int> index2;
};

namespace detail {

// Incremental F_p rank: rows are reduced against stored pivots and kept
// only when independent, so memory stays O(rank * ncols).
class StreamingRank {
 public:
  StreamingRank(int p, int ncols) : p_(p), ncols_(ncols) {}

  void add_row(Vec row) {
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const int c = pivot_cols_[k];
      const int f = row[std::size_t(c)];
      if (f != 0)
        for (int j = c; j < ncols_; ++j)
          row[std::size_t(j)] = mod_p(row[std::size_t(j)] - f * pivots_[k][std::size_t(j)], p_);
    }
    int lead = -1;
    for (int j = 0; j < ncols_; ++j)
      if (row[std::size_t(j)] != 0) { lead = j; break; }
    if (lead < 0) return;
    const int inv = inv_mod(row[std::size_t(lead)], p_);
    for (int j = lead; j < ncols_; ++j)
      row[std::size_t(j)] = mod_p(row[std::size_t(j)] * inv, p_);
    // keep pivot lists ordered by pivot column
    std::size_t pos = 0;
    while (pos < pivot_cols_.size() && pivot_cols_[pos] < lead) ++pos;
    pivot_cols_.insert(pivot_cols_.begin() + long(pos), lead);
    pivots_.insert(pivots_.begin() + long(pos), std::move(row));
  }

  int rank() const { return int(pivots_.size()); }

 private:
  int p_, ncols_;
  std::vector<Vec> pivots_;
  std::vector<int> pivot_cols_;
};

}  // namespace detail

inline ChainComplex build_chain_complex(const ContextCover& cover) {
  const PrimeConfig& cfg = cover.cfg;
  ChainComplex cx;
  cx.cfg = cfg;
  for (const Vec& v : cover.support())
    if (!is_zero(v)) cx.c1.push_back(v);
  if (cx.c1.size() > 512)
    throw capacity_error("chain complex limited to 512 support elements");

  std::set<std::array<Vec, 2>> pairs;
  std::set<std::array<Vec, 3>> triples;
  for (const Subspace& M : cover.maximal()) {
    std::vector<Vec> nz;
    for (const Vec& v : elements(cfg, M))
      if (!is_zero(v)) nz.push_back(v);
    for (const Vec& v : nz)
      for (const Vec& w : nz) pairs.insert({v, w});
    for (const Vec& u : nz)
      for (const Vec& v : nz)
        for (const Vec& w : nz) triples.insert({u, v, w});
  }
  cx.c2.assign(pairs.begin(), pairs.end());
  cx.c3.assign(triples.begin(), triples.end());
  if (cx.c2.size() > 2000)
    throw capacity_error("second boundary matrix too large (" +
                         std::to_string(cx.c2.size()) + " 2-cells)");
  for (std::size_t i = 0; i < cx.c1.size(); ++i) cx.index1[cx.c1[i]] = int(i);
  for (std::size_t i = 0; i < cx.c2.size(); ++i) cx.index2[cx.c2[i]] = int(i);

  // the restricted cocycle must be closed on every 3-cell
  for (const auto& [u, v, w] : cx.c3) {
    const int d = mod_p(beta_restricted_pair(cfg, v, w) -
                            beta_restricted_pair(cfg, vec_add(cfg.p, u, v), w) +
                            beta_restricted_pair(cfg, u, vec_add(cfg.p, v, w)) -
                            beta_restricted_pair(cfg, u, v),
                        cfg.p);
    if (d != 0) throw std::logic_error("restricted cocycle is not closed on a 3-cell");
  }
  return cx;
}

namespace detail {

inline Vec boundary2_row(const ChainComplex& cx, const std::array<Vec, 2>& cell) {
  const PrimeConfig& cfg = cx.cfg;
  Vec row(cx.c1.size(), 0);
  auto bump = [&](const Vec& v, int sign) {
    if (is_zero(v)) return;
    const int j = cx.index1.at(v);
    row[std::size_t(j)] = mod_p(row[std::size_t(j)] + sign, cfg.p);
  };
  bump(cell[1], 1);
  bump(vec_add(cfg.p, cell[0], cell[1]), -1);
  bump(cell[0], 1);
  return row;
}

inline Vec boundary3_row(const ChainComplex& cx, const std::array<Vec, 3>& cell) {
  const PrimeConfig& cfg = cx.cfg;
  const auto& [u, v, w] = cell;
  Vec row(cx.c2.size(), 0);
  auto bump = [&](const Vec& a, const Vec& b, int sign) {
    if (is_zero(a) || is_zero(b)) return;
    const int j = cx.index2.at({a, b});
    row[std::size_t(j)] = mod_p(row[std::size_t(j)] + sign, cfg.p);
  };
  bump(v, w, 1);
  bump(vec_add(cfg.p, u, v), w, -1);
  bump(u, vec_add(cfg.p, v, w), 1);
  bump(u, v, -1);
  return row;
}

}  // namespace detail

struct HomologyDims {
  int h1 = 0;        // dim H_1 with F_p coefficients (first boundary is zero)
  int h2_cochain = 0;  // dim H^2 = dim C2 - rank d2 - rank d3
};

inline HomologyDims homology_dims(const ChainComplex& cx) {
  const int p = cx.cfg.p;
  detail::StreamingRank r2(p, int(cx.c1.size()));
  for (const auto& cell : cx.c2) r2.add_row(detail::boundary2_row(cx, cell));
  detail::StreamingRank r3(p, int(cx.c2.size()));
  for (const auto& cell : cx.c3) r3.add_row(detail::boundary3_row(cx, cell));
  HomologyDims h;
  h.h1 = int(cx.c1.size()) - r2.rank();
  h.h2_cochain = int(cx.c2.size()) - r2.rank() - r3.rank();
  return h;
}

// Solvability of d(g) = beta over the 1-cochains: the coboundary system has
// one equation per 2-cell.  Equivalent to the existence of a global section.
inline bool beta_is_coboundary(const ChainComplex& cx) {
  const PrimeConfig& cfg = cx.cfg;
  std::vector<Vec> rows;
  Vec rhs;
  for (const auto& cell : cx.c2) {
    rows.push_back(detail::boundary2_row(cx, cell));  // transpose of d on cochains
    rhs.push_back(beta_restricted_pair(cfg, cell[0], cell[1]));
  }
  return solve_affine(cfg.p, rows, rhs, int(cx.c1.size())).consistent;
}

// --- Coset posets -----------------------------------------------------------

struct CosetPoset {
  long long group_order = 0;
  std::vector<std::vector<int>> cosets;  // sorted element ids, ordered by size
  std::vector<int> subgroup;             // family index of each coset
  std::vector<long long> family_order;   // size of each family subgroup
  int max_chain = 0;                     // longest strict inclusion chain (edges)
};

namespace detail {

inline CosetPoset assemble_poset(long long group_order,
                                 const std::vector<std::vector<std::vector<int>>>& by_family) {
  CosetPoset poset;
  poset.group_order = group_order;
  std::set<std::vector<int>> seen;
  for (std::size_t f = 0; f < by_family.size(); ++f)
    for (const auto& coset : by_family[f]) {
      if (!seen.insert(coset).second) continue;
      poset.cosets.push_back(coset);
      poset.subgroup.push_back(int(f));
    }
  for (const auto& fam : by_family)
    poset.family_order.push_back(fam.empty() ? 0 : (long long)fam.front().size());
  // sort by size so strict inclusion only looks backwards
  std::vector<std::size_t> order(poset.cosets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (poset.cosets[a].size() != poset.cosets[b].size())
      return poset.cosets[a].size() < poset.cosets[b].size();
    return poset.cosets[a] < poset.cosets[b];
  });
  std::vector<std::vector<int>> cs;
  std::vector<int> sg;
  for (std::size_t i : order) {
    cs.push_back(std::move(poset.cosets[i]));
    sg.push_back(poset.subgroup[i]);
  }
  poset.cosets = std::move(cs);
  poset.subgroup = std::move(sg);

  std::vector<int> chain(poset.cosets.size(), 0);
  for (std::size_t i = 0; i < poset.cosets.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (poset.cosets[j].size() >= poset.cosets[i].size()) continue;
      if (std::includes(poset.cosets[i].begin(), poset.cosets[i].end(),
                        poset.cosets[j].begin(), poset.cosets[j].end()))
        chain[i] = std::max(chain[i], chain[j] + 1);
    }
  for (int c : chain) poset.max_chain = std::max(poset.max_chain, c);
  return poset;
}

}  // namespace detail

// Cosets v + I in the translation group F_p^{2n}, over every cover context.
inline CosetPoset coset_poset_abelian(const ContextCover& cover) {
  const PrimeConfig& cfg = cover.cfg;
  const long long gsize = cfg.vspace_size();
  if (gsize * (long long)cover.contexts.size() > 100000)
    throw capacity_error("coset poset would exceed the enumeration budget");
  std::vector<std::vector<std::vector<int>>> by_family;
  for (const Subspace& I : cover.contexts) {
    std::vector<std::vector<int>> cosets;
    const std::vector<Vec> el = elements(cfg, I);
    std::set<std::vector<int>> seen;
    for (const Vec& g : all_vectors(cfg)) {
      std::vector<int> ids;
      for (const Vec& v : el) ids.push_back(int(vec_index(cfg, vec_add(cfg.p, g, v))));
      std::sort(ids.begin(), ids.end());
      if (seen.insert(ids).second) cosets.push_back(std::move(ids));
    }
    by_family.push_back(std::move(cosets));
  }
  return detail::assemble_poset(gsize, by_family);
}

// Cosets g E_I of the standard lifts inside the extension group.
inline CosetPoset coset_poset_extension(const ContextCover& cover) {
  const PrimeConfig& cfg = cover.cfg;
  PiGroup pi = build_pi(cfg);
  if (pi.order * (long long)cover.contexts.size() > 100000)
    throw capacity_error("coset poset would exceed the enumeration budget");
  std::vector<std::vector<std::vector<int>>> by_family;
  for (const Subspace& I : cover.contexts) {
    const std::vector<std::int64_t> lift = pi.standard_lift(I);
    std::vector<std::vector<int>> cosets;
    std::set<std::vector<int>> seen;
    for (std::int64_t g = 0; g < pi.order; ++g) {
      std::vector<int> ids;
      for (std::int64_t h : lift) ids.push_back(int(pi.mul(g, h)));
      std::sort(ids.begin(), ids.end());
      if (seen.insert(ids).second) cosets.push_back(std::move(ids));
    }
    by_family.push_back(std::move(cosets));
  }
  return detail::assemble_poset(pi.order, by_family);
}

inline long long euler_characteristic(const CosetPoset& poset) {
  // h(x) = 1 - sum over strictly smaller cosets; chi = sum of h
  std::vector<long long> h(poset.cosets.size(), 0);
  long long chi = 0;
  for (std::size_t i = 0; i < poset.cosets.size(); ++i) {
    long long acc = 1;
    for (std::size_t j = 0; j < i; ++j) {
      if (poset.cosets[j].size() >= poset.cosets[i].size()) continue;
      if (std::includes(poset.cosets[i].begin(), poset.cosets[i].end(),
                        poset.cosets[j].begin(), poset.cosets[j].end()))
        acc -= h[j];
    }
    h[i] = acc;
    chi += acc;
  }
  return chi;
}

// Wedge size when the poset realizes a wedge of fiber_dim-spheres.  The
// requested dimension is validated against the poset's longest chain.
inline long long sphere_count(const CosetPoset& poset, int fiber_dim) {
  if (fiber_dim != poset.max_chain)
    throw input_error("chain-length mismatch: fiber dimension " +
                      std::to_string(fiber_dim) + " vs longest chain " +
                      std::to_string(poset.max_chain));
  const long long chi = euler_characteristic(poset);
  return fiber_dim % 2 == 0 ? chi - 1 : 1 - chi;
}

// Exact wedge-size formula for the full cover on n systems (r = n):
//   (-1)^{r+1} + p^{2r+1+r^2}
//     + sum_{j=1}^r (-1)^j p^{2r+1-j+(r-j)^2}
//         prod_{t=0}^{j-1} (p^{2r-t} - p^t) / (p^j - p^t).
// Every quotient divides exactly; a remainder is a hard error.
inline BigInt d_formula(int p, int r) {
  make_config(p, 1);  // validates the prime
  if (r < 1) throw input_error("the formula needs r >= 1");
  auto pw = [&](long long e) {
    BigInt b = 1;
    for (long long i = 0; i < e; ++i) b *= p;
    return b;
  };
  BigInt acc = (r % 2 == 0 ? BigInt(-1) : BigInt(1));  // (-1)^{r+1}
  acc += pw(2 * r + 1 + (long long)r * r);
  for (int j = 1; j <= r; ++j) {
    BigInt num = 1, den = 1;
    for (int t = 0; t < j; ++t) {
      num *= pw(2 * r - t) - pw(t);
      den *= pw(j) - pw(t);
    }
    if (num % den != 0)
      throw numeric_error("wedge-size formula produced a non-integer term");
    BigInt term = pw(2 * r + 1 - j + (long long)(r - j) * (r - j)) * (num / den);
    acc += (j % 2 == 0 ? term : -term);
  }
  return acc;
}

}  // namespace contexta
