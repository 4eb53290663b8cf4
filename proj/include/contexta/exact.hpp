#pragma once

// Exact rational linear algebra and LP feasibility.  Everything here is
// exact: the simplex runs on cpp_rational with Bland's rule (guaranteed
// termination), and every verdict ships with a witness or a Farkas
// certificate that is re-verified before being returned.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "contexta/common.hpp"

namespace contexta {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Exact value of a double (doubles are dyadic rationals).
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw numeric_error("non-finite value cannot be rationalized");
  int exp = 0;
  const double frac = std::frexp(x, &exp);
  const auto mant = std::int64_t(std::ldexp(frac, 53));  // exact: |frac|*2^53 < 2^53
  exp -= 53;
  Rat r(mant);
  if (exp >= 0)
    r *= Rat(BigInt(1) << exp);
  else
    r /= Rat(BigInt(1) << -exp);
  return r;
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// Nearest fraction k/denom; fails when the snap moves x by more than tol.
inline bool snap_to_grid(double x, const BigInt& denom, double tol, Rat& out) {
  const double scaled = x * denom.convert_to<double>();
  if (std::abs(scaled) > 9e15) return false;
  const auto k = std::int64_t(std::llround(scaled));
  out = Rat(BigInt(k), denom);
  return std::abs(x - rat_to_double(out)) <= tol;
}

// --- Gaussian elimination over the rationals ------------------------------

struct RatRref {
  RatMat rows;
  std::vector<int> pivot_cols;
  int rank = 0;
};

inline RatRref rat_rref(RatMat rows) {
  RatRref res;
  if (rows.empty()) return res;
  const std::size_t ncols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Rat inv = rows[r][c];
    for (Rat& e : rows[r]) e /= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    res.pivot_cols.push_back(int(c));
    ++r;
  }
  rows.resize(r);
  res.rows = std::move(rows);
  res.rank = int(r);
  return res;
}

inline int rat_rank(const RatMat& a) { return rat_rref(a).rank; }

inline std::vector<RatVec> rat_nullspace(const RatMat& a, int ncols) {
  RatRref rr = rat_rref(a);
  std::vector<bool> is_pivot(std::size_t(ncols), false);
  for (int c : rr.pivot_cols) is_pivot[std::size_t(c)] = true;
  std::vector<RatVec> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[std::size_t(f)]) continue;
    RatVec x(std::size_t(ncols), Rat(0));
    x[std::size_t(f)] = 1;
    for (std::size_t r = 0; r < rr.rows.size(); ++r)
      x[std::size_t(rr.pivot_cols[r])] = -rr.rows[r][std::size_t(f)];
    basis.push_back(std::move(x));
  }
  return basis;
}

struct RatAffine {
  bool consistent = false;
  RatVec particular;
  std::vector<RatVec> kernel;
};

// Solution set of A x = b over the rationals.
inline RatAffine rat_solve(const RatMat& a, const RatVec& b) {
  RatAffine sol;
  const int nunknowns = a.empty() ? 0 : int(a[0].size());
  RatMat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  RatRref rr = rat_rref(std::move(aug));
  for (std::size_t r = 0; r < rr.rows.size(); ++r)
    if (rr.pivot_cols[r] == nunknowns) return sol;
  sol.consistent = true;
  sol.particular = RatVec(std::size_t(nunknowns), Rat(0));
  for (std::size_t r = 0; r < rr.rows.size(); ++r)
    sol.particular[std::size_t(rr.pivot_cols[r])] = rr.rows[r][std::size_t(nunknowns)];
  RatMat astripped;
  for (const RatVec& row : rr.rows)
    astripped.emplace_back(row.begin(), row.end() - 1);
  sol.kernel = rat_nullspace(astripped, nunknowns);
  return sol;
}

// --- Exact LP feasibility -------------------------------------------------

// Feasibility problem A x = b, x >= 0, all entries rational.
struct RationalLP {
  RatMat a;
  RatVec b;
};

struct LPResult {
  bool feasible = false;
  RatVec witness;      // x >= 0 with A x = b, when feasible
  RatVec certificate;  // y with y^T A >= 0 and y^T b < 0, when infeasible
};

// Phase-1 simplex with Bland's rule.  The tableau carries the original
// columns plus one artificial per row; the objective is the sum of
// artificials.  Exact arithmetic everywhere, so cycling is excluded by
// Bland and termination is guaranteed.
inline LPResult lp_feasible(const RationalLP& lp) {
  const int m = int(lp.a.size());
  const int n = m == 0 ? 0 : int(lp.a[0].size());
  LPResult res;
  if (m == 0) {
    res.feasible = true;
    res.witness = RatVec(std::size_t(n), Rat(0));
    return res;
  }

  // Sign-normalize so the artificial start is feasible: flip rows with b < 0.
  std::vector<int> sign(std::size_t(m), 1);
  RatMat a = lp.a;
  RatVec b = lp.b;
  for (int i = 0; i < m; ++i) {
    if (b[std::size_t(i)] < 0) {
      sign[std::size_t(i)] = -1;
      b[std::size_t(i)] = -b[std::size_t(i)];
      for (Rat& e : a[std::size_t(i)]) e = -e;
    }
  }

  // tableau[i] = row of n structural + m artificial columns + rhs
  RatMat t(std::size_t(m), RatVec(std::size_t(n + m + 1), Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[std::size_t(i)][std::size_t(j)] = a[std::size_t(i)][std::size_t(j)];
    t[std::size_t(i)][std::size_t(n + i)] = 1;
    t[std::size_t(i)][std::size_t(n + m)] = b[std::size_t(i)];
  }
  std::vector<int> basis(std::size_t(m), 0);
  for (int i = 0; i < m; ++i) basis[std::size_t(i)] = n + i;

  // objective row: minimize sum of artificials; reduced costs z_j = c_j - sum over basis
  RatVec z(std::size_t(n + m + 1), Rat(0));
  auto rebuild_objective = [&]() {
    for (int j = 0; j <= n + m; ++j) {
      Rat v = j < n + m && j >= n ? Rat(1) : Rat(0);
      for (int i = 0; i < m; ++i)
        if (basis[std::size_t(i)] >= n) v -= t[std::size_t(i)][std::size_t(j)];
      z[std::size_t(j)] = v;
    }
  };
  rebuild_objective();

  while (true) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (z[std::size_t(j)] < 0) { enter = j; break; }  // Bland: first improving column
    }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      const Rat& aij = t[std::size_t(i)][std::size_t(enter)];
      if (aij <= 0) continue;
      const Rat ratio = t[std::size_t(i)][std::size_t(n + m)] / aij;
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[std::size_t(i)] < basis[std::size_t(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0)
      throw std::logic_error("phase-1 objective unbounded");  // cannot happen: objective >= 0
    // pivot on (leave, enter)
    const Rat piv = t[std::size_t(leave)][std::size_t(enter)];
    for (Rat& e : t[std::size_t(leave)]) e /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const Rat f = t[std::size_t(i)][std::size_t(enter)];
      if (f == 0) continue;
      for (int j = 0; j <= n + m; ++j)
        t[std::size_t(i)][std::size_t(j)] -= f * t[std::size_t(leave)][std::size_t(j)];
    }
    const Rat fz = z[std::size_t(enter)];
    if (fz != 0)
      for (int j = 0; j <= n + m; ++j)
        z[std::size_t(j)] -= fz * t[std::size_t(leave)][std::size_t(j)];
    basis[std::size_t(leave)] = enter;
  }

  Rat value = -z[std::size_t(n + m)];  // objective = sum of artificials >= 0
  if (value == 0) {
    res.feasible = true;
    res.witness = RatVec(std::size_t(n), Rat(0));
    for (int i = 0; i < m; ++i)
      if (basis[std::size_t(i)] < n)
        res.witness[std::size_t(basis[std::size_t(i)])] = t[std::size_t(i)][std::size_t(n + m)];
    // verify A x = b and x >= 0 exactly
    for (const Rat& x : res.witness)
      if (x < 0) throw std::logic_error("simplex witness has a negative entry");
    for (int i = 0; i < m; ++i) {
      Rat s = 0;
      for (int j = 0; j < n; ++j) s += lp.a[std::size_t(i)][std::size_t(j)] * res.witness[std::size_t(j)];
      if (s != lp.b[std::size_t(i)]) throw std::logic_error("simplex witness violates a constraint");
    }
  } else {
    // dual prices pi_i = c_B B^{-1} read off the artificial columns:
    // z_{n+i} = 1 - pi_i, so pi_i = 1 - z_{n+i}.  With the sign flips undone,
    // y = -S pi satisfies y^T A >= 0, y^T b < 0 for the original data.
    res.feasible = false;
    res.certificate = RatVec(std::size_t(m), Rat(0));
    for (int i = 0; i < m; ++i)
      res.certificate[std::size_t(i)] = -Rat(sign[std::size_t(i)]) * (Rat(1) - z[std::size_t(n + i)]);
    RatVec ya(std::size_t(n), Rat(0));
    Rat yb = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) ya[std::size_t(j)] += res.certificate[std::size_t(i)] * lp.a[std::size_t(i)][std::size_t(j)];
      yb += res.certificate[std::size_t(i)] * lp.b[std::size_t(i)];
    }
    for (const Rat& e : ya)
      if (e < 0) throw std::logic_error("Farkas certificate fails y^T A >= 0");
    if (yb >= 0) throw std::logic_error("Farkas certificate fails y^T b < 0");
  }
  return res;
}

}  // namespace contexta
