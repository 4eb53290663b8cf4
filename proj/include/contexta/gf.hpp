#pragma once

// Linear algebra over the prime fields F_p, p in {2,3,5,7}.
//
// Vectors live in F_p^{2n} and are stored in (z|x) coordinate order: the
// first n entries are the z-part, the last n the x-part.  Tensor factor 1
// is the leftmost slot, so the flat index of a vector is the big-endian
// base-p expansion  idx = sum_k c[k] * p^{2n-1-k}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "contexta/common.hpp"

namespace contexta {

struct PrimeConfig {
  int p = 2;
  int n = 1;

  int dim() const { return 2 * n; }
  std::int64_t d() const {
    std::int64_t r = 1;
    for (int i = 0; i < n; ++i) r *= p;
    return r;
  }
  std::int64_t vspace_size() const { return d() * d(); }
};

inline PrimeConfig make_config(int p, int n) {
  if (p != 2 && p != 3 && p != 5 && p != 7)
    throw input_error("p must be one of 2, 3, 5, 7 (got " + std::to_string(p) + ")");
  if (n < 1) throw input_error("n must be >= 1 (got " + std::to_string(n) + ")");
  if (2 * n * std::log2(double(p)) > 40.0)
    throw capacity_error("phase space F_" + std::to_string(p) + "^" +
                         std::to_string(2 * n) + " exceeds the supported size");
  return PrimeConfig{p, n};
}

// A vector over F_p, entries in [0, p).  Length is 2n in phase-space use,
// but the linear-algebra routines below accept any length.
using Vec = std::vector<int>;

inline int mod_p(std::int64_t a, int p) {
  int r = int(a % p);
  return r < 0 ? r + p : r;
}

// Multiplicative inverse in F_p, p prime, a != 0.
inline int inv_mod(int a, int p) {
  a = mod_p(a, p);
  int r = 1;
  for (int e = p - 2; e > 0; e >>= 1) {
    // invariant: result * a^e stays fixed
    if (e & 1) r = (r * a) % p;
    a = (a * a) % p;
  }
  return r;
}

inline Vec vec_zero(int len) { return Vec(len, 0); }

inline Vec vec_add(int p, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(a[i] + b[i], p);
  return r;
}

inline Vec vec_sub(int p, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(a[i] - b[i], p);
  return r;
}

inline Vec vec_neg(int p, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(-a[i], p);
  return r;
}

inline Vec vec_smul(int p, int k, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(std::int64_t(k) * a[i], p);
  return r;
}

inline int vec_dot(int p, const Vec& a, const Vec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::int64_t(a[i]) * b[i];
  return mod_p(s, p);
}

inline bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

inline std::int64_t vec_index(const PrimeConfig& cfg, const Vec& v) {
  std::int64_t idx = 0;
  for (int c : v) idx = idx * cfg.p + c;
  return idx;
}

inline Vec vec_from_index(const PrimeConfig& cfg, std::int64_t idx) {
  Vec v(cfg.dim());
  for (int k = cfg.dim() - 1; k >= 0; --k) {
    v[k] = int(idx % cfg.p);
    idx /= cfg.p;
  }
  return v;
}

// All of F_p^{2n} in index order (index 0 is the zero vector).
inline std::vector<Vec> all_vectors(const PrimeConfig& cfg) {
  std::vector<Vec> out;
  out.reserve(std::size_t(cfg.vspace_size()));
  for (std::int64_t i = 0; i < cfg.vspace_size(); ++i)
    out.push_back(vec_from_index(cfg, i));
  return out;
}

// "(z1 z2 | x1 x2)" rendering, used in error messages and reports.
inline std::string vec_str(const PrimeConfig& cfg, const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < cfg.n; ++i) {
    if (i) s += ' ';
    s += std::to_string(v[std::size_t(i)]);
  }
  s += " | ";
  for (int i = 0; i < cfg.n; ++i) {
    if (i) s += ' ';
    s += std::to_string(v[std::size_t(cfg.n + i)]);
  }
  s += ')';
  return s;
}

// Standard symplectic form on F_p^{2n} in (z|x) coordinates:
//   form(v, w) = v_x . w_z - w_x . v_z   (mod p).
inline int symplectic_form(const PrimeConfig& cfg, const Vec& v, const Vec& w) {
  std::int64_t s = 0;
  for (int i = 0; i < cfg.n; ++i) {
    s += std::int64_t(v[std::size_t(cfg.n + i)]) * w[std::size_t(i)];
    s -= std::int64_t(w[std::size_t(cfg.n + i)]) * v[std::size_t(i)];
  }
  return mod_p(s, cfg.p);
}

// --- Gaussian elimination -------------------------------------------------

struct RrefResult {
  std::vector<Vec> rows;       // nonzero rows in reduced row echelon form
  std::vector<int> pivot_cols; // one per row, strictly increasing
  int rank = 0;
};

inline RrefResult rref(int p, std::vector<Vec> rows) {
  RrefResult res;
  if (rows.empty()) return res;
  const std::size_t ncols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const int inv = inv_mod(rows[r][c], p);
    rows[r] = vec_smul(p, inv, rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][c] != 0)
        rows[i] = vec_sub(p, rows[i], vec_smul(p, rows[i][c], rows[r]));
    }
    res.pivot_cols.push_back(int(c));
    ++r;
  }
  rows.resize(r);
  res.rows = std::move(rows);
  res.rank = int(r);
  return res;
}

// Basis of { x : A x = 0 } where the rows of A have ncols entries.
inline std::vector<Vec> nullspace(int p, const std::vector<Vec>& a, int ncols) {
  RrefResult rr = rref(p, a);
  std::vector<bool> is_pivot(std::size_t(ncols), false);
  for (int c : rr.pivot_cols) is_pivot[std::size_t(c)] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[std::size_t(f)]) continue;
    Vec x(std::size_t(ncols), 0);
    x[std::size_t(f)] = 1;
    for (std::size_t r = 0; r < rr.rows.size(); ++r)
      x[std::size_t(rr.pivot_cols[r])] = mod_p(-rr.rows[r][std::size_t(f)], p);
    basis.push_back(std::move(x));
  }
  return basis;
}

// --- Affine systems -------------------------------------------------------

// Solution set of A x = b over F_p: empty, or particular + kernel basis.
struct AffineSolutionSet {
  bool consistent = false;
  Vec particular;            // one solution (all zeros if unconstrained)
  std::vector<Vec> kernel;   // basis of the homogeneous solutions

  int free_dim() const { return int(kernel.size()); }

  // Number of solutions, saturating at 2^63-1 when p^free_dim overflows.
  std::uint64_t count(int p) const {
    if (!consistent) return 0;
    std::uint64_t c = 1;
    for (int i = 0; i < free_dim(); ++i) {
      if (c > (std::uint64_t(1) << 62) / std::uint64_t(p))
        return std::uint64_t(1) << 63;
      c *= std::uint64_t(p);
    }
    return c;
  }
};

inline AffineSolutionSet solve_affine(int p, const std::vector<Vec>& a,
                                      const Vec& b, int nunknowns) {
  AffineSolutionSet sol;
  // Eliminate on the augmented matrix [A | b].
  std::vector<Vec> aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Vec row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  RrefResult rr = rref(p, std::move(aug));
  for (std::size_t r = 0; r < rr.rows.size(); ++r) {
    if (rr.pivot_cols[r] == nunknowns) return sol;  // 0 = nonzero: inconsistent
  }
  sol.consistent = true;
  sol.particular = Vec(std::size_t(nunknowns), 0);
  for (std::size_t r = 0; r < rr.rows.size(); ++r)
    sol.particular[std::size_t(rr.pivot_cols[r])] = rr.rows[r][std::size_t(nunknowns)];
  std::vector<Vec> astripped;
  astripped.reserve(rr.rows.size());
  for (const Vec& row : rr.rows)
    astripped.emplace_back(row.begin(), row.end() - 1);
  sol.kernel = nullspace(p, astripped, nunknowns);
  return sol;
}

// Materialize every solution.  Guarded: throws capacity_error past `limit`.
inline std::vector<Vec> affine_elements(int p, const AffineSolutionSet& sol,
                                        std::uint64_t limit = 1000000) {
  if (!sol.consistent) return {};
  if (sol.count(p) > limit)
    throw capacity_error("affine solution set has " + std::to_string(sol.free_dim()) +
                         " free dimensions; enumeration exceeds limit");
  std::vector<Vec> out{sol.particular};
  for (const Vec& k : sol.kernel) {
    std::vector<Vec> next;
    next.reserve(out.size() * std::size_t(p));
    for (const Vec& x : out)
      for (int c = 0; c < p; ++c) next.push_back(vec_add(p, x, vec_smul(p, c, k)));
    out = std::move(next);
  }
  return out;
}

// --- Subspaces ------------------------------------------------------------

// Subspace of F_p^{2n}, held in canonical form: RREF basis rows.  Two
// subspaces are equal iff their basis fields are equal.
struct Subspace {
  std::vector<Vec> basis;

  int dim() const { return int(basis.size()); }
  bool operator==(const Subspace& o) const { return basis == o.basis; }
  bool operator<(const Subspace& o) const { return basis < o.basis; }
};

inline Subspace span(const PrimeConfig& cfg, const std::vector<Vec>& gens) {
  for (const Vec& g : gens)
    if (int(g.size()) != cfg.dim())
      throw input_error("generator has length " + std::to_string(g.size()) +
                        ", expected " + std::to_string(cfg.dim()));
  return Subspace{rref(cfg.p, gens).rows};
}

inline bool contains(const PrimeConfig& cfg, const Subspace& s, const Vec& v) {
  Vec r = v;
  for (const Vec& b : s.basis) {
    std::size_t c = 0;
    while (b[c] == 0) ++c;  // pivot of an RREF row
    if (r[c] != 0) r = vec_sub(cfg.p, r, vec_smul(cfg.p, r[c], b));
  }
  return is_zero(r);
}

// All p^dim elements, zero first, in deterministic basis-coefficient order.
inline std::vector<Vec> elements(const PrimeConfig& cfg, const Subspace& s) {
  std::vector<Vec> out{vec_zero(cfg.dim())};
  for (const Vec& b : s.basis) {
    std::vector<Vec> next;
    next.reserve(out.size() * std::size_t(cfg.p));
    for (int c = 0; c < cfg.p; ++c)
      for (const Vec& x : out) next.push_back(vec_add(cfg.p, x, vec_smul(cfg.p, c, b)));
    out = std::move(next);
  }
  std::sort(out.begin() + 1, out.end(),
            [&](const Vec& a, const Vec& b2) {
              return vec_index(cfg, a) < vec_index(cfg, b2);
            });
  return out;
}

inline Subspace sum(const PrimeConfig& cfg, const Subspace& a, const Subspace& b) {
  std::vector<Vec> gens = a.basis;
  gens.insert(gens.end(), b.basis.begin(), b.basis.end());
  return span(cfg, gens);
}

// Intersection via kernels: x = sum l_i a_i lies in B iff reducing x against
// B's RREF basis leaves zero; that residue is linear in l.
inline Subspace intersect(const PrimeConfig& cfg, const Subspace& a, const Subspace& b) {
  if (a.basis.empty() || b.basis.empty()) return Subspace{};
  const int k = a.dim();
  std::vector<Vec> residue_rows(std::size_t(cfg.dim()), Vec(std::size_t(k), 0));
  for (int i = 0; i < k; ++i) {
    Vec r = a.basis[std::size_t(i)];
    for (const Vec& bb : b.basis) {
      std::size_t c = 0;
      while (bb[c] == 0) ++c;
      if (r[c] != 0) r = vec_sub(cfg.p, r, vec_smul(cfg.p, r[c], bb));
    }
    for (int row = 0; row < cfg.dim(); ++row)
      residue_rows[std::size_t(row)][std::size_t(i)] = r[std::size_t(row)];
  }
  std::vector<Vec> gens;
  for (const Vec& l : nullspace(cfg.p, residue_rows, k)) {
    Vec x = vec_zero(cfg.dim());
    for (int i = 0; i < k; ++i)
      x = vec_add(cfg.p, x, vec_smul(cfg.p, l[std::size_t(i)], a.basis[std::size_t(i)]));
    gens.push_back(std::move(x));
  }
  return span(cfg, gens);
}

inline bool is_isotropic(const PrimeConfig& cfg, const Subspace& s) {
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    for (std::size_t j = i + 1; j < s.basis.size(); ++j)
      if (symplectic_form(cfg, s.basis[i], s.basis[j]) != 0) return false;
  return true;
}

// Every isotropic subspace of (F_p^{2n}, symplectic form), zero included,
// sorted canonically.  BFS by one-vector extensions; dedup on the canonical
// basis.  Guard: p^{2n} <= 4096.
inline std::vector<Subspace> enumerate_isotropic(const PrimeConfig& cfg) {
  if (cfg.vspace_size() > 4096)
    throw capacity_error("isotropic enumeration needs p^(2n) <= 4096, got " +
                         std::to_string(cfg.vspace_size()));
  const std::vector<Vec> vall = all_vectors(cfg);
  std::vector<Subspace> all{Subspace{}};
  std::vector<Subspace> frontier = all;
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const Subspace& s : frontier) {
      for (const Vec& v : vall) {
        if (is_zero(v) || contains(cfg, s, v)) continue;
        bool ok = true;
        for (const Vec& b : s.basis)
          if (symplectic_form(cfg, v, b) != 0) { ok = false; break; }
        if (!ok) continue;
        std::vector<Vec> gens = s.basis;
        gens.push_back(v);
        Subspace ext = span(cfg, gens);
        if (std::find(next.begin(), next.end(), ext) == next.end())
          next.push_back(std::move(ext));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace contexta
