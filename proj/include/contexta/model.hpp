#pragma once

// Empirical models over a context cover: per-context outcome tables, the
// no-signaling consistency check, the dimension of the no-signaling
// polytope's affine hull, and the exact marginal law tying models to
// Wigner functions:
//
//   e_I(s) = sum_t coeff(I, s, t) W(t),
//   coeff(I, s, t) = (1/|I|) sum_{u in I} w^{form(u,t) - s(u)}  (always rational).
//
// For p > 2 the coefficient is a 0/1 membership indicator; for p = 2 it is
// a signed average of +-1 and can be negative on contexts with nonzero
// restricted cocycle.

#include <Eigen/QR>

#include "contexta/exact.hpp"
#include "contexta/quantum.hpp"

namespace contexta {

struct EmpiricalModel {
  ContextCover cover;
  // tables[i][j] = probability of events(cfg, cover.contexts[i])[j]
  std::vector<std::vector<double>> tables;
};

inline EmpiricalModel empirical_model(const DensityMatrix& rho, const ContextCover& cover) {
  if (rho.cfg.p != cover.cfg.p || rho.cfg.n != cover.cfg.n)
    throw input_error("state and cover have different (p, n)");
  EmpiricalModel m;
  m.cover = cover;
  for (const Subspace& I : cover.contexts) {
    std::vector<double> row;
    for (const OutcomeFunction& s : events(cover.cfg, I)) row.push_back(born(rho, s));
    m.tables.push_back(std::move(row));
  }
  return m;
}

// Exact marginal coefficient.  p = 2: a sum of signs over I divided by |I|;
// p > 2: 1 iff u -> form(u,t) - s(u) vanishes on I (linear, so checked on a
// basis), else 0.
inline Rat marginal_coeff(const PrimeConfig& cfg, const OutcomeFunction& s, const Vec& t) {
  if (cfg.p == 2) {
    long long acc = 0;
    const std::vector<Vec> el = elements(cfg, s.context);
    for (const Vec& u : el) {
      const int e = mod_p(symplectic_form(cfg, u, t) - s.values.at(u), 2);
      acc += e == 0 ? 1 : -1;
    }
    return Rat(acc, (long long)el.size());
  }
  for (const Vec& b : s.context.basis)
    if (mod_p(symplectic_form(cfg, b, t) - s.values.at(b), cfg.p) != 0) return Rat(0);
  return Rat(1);
}

struct CompatibilityReport {
  bool pass = true;
  double max_deviation = 0.0;
  std::vector<std::string> violations;
};

// Marginal agreement over every proper inclusion K < I in the cover, plus
// per-context normalization and nonnegativity.
inline CompatibilityReport compatibility_check(const EmpiricalModel& m,
                                               double tol = kProbTol) {
  const PrimeConfig& cfg = m.cover.cfg;
  CompatibilityReport rep;
  auto flag = [&](double dev, const std::string& msg) {
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev > tol) { rep.pass = false; rep.violations.push_back(msg); }
  };
  if (m.tables.size() != m.cover.contexts.size())
    throw input_error("model has " + std::to_string(m.tables.size()) +
                      " tables for " + std::to_string(m.cover.contexts.size()) +
                      " contexts");
  std::vector<std::vector<OutcomeFunction>> ev;
  for (std::size_t i = 0; i < m.cover.contexts.size(); ++i) {
    ev.push_back(events(cfg, m.cover.contexts[i]));
    if (ev.back().size() != m.tables[i].size())
      throw input_error("table size mismatch on a context");
    double sum = 0.0;
    for (double x : m.tables[i]) {
      if (x < -tol)
        flag(-x, "negative probability " + std::to_string(x));
      sum += x;
    }
    flag(std::abs(sum - 1.0), "context table sums to " + std::to_string(sum));
  }
  for (std::size_t ik = 0; ik < m.cover.contexts.size(); ++ik)
    for (std::size_t ii = 0; ii < m.cover.contexts.size(); ++ii) {
      const Subspace& K = m.cover.contexts[ik];
      const Subspace& I = m.cover.contexts[ii];
      if (K.dim() >= I.dim() || !(intersect(cfg, K, I) == K)) continue;
      for (std::size_t jr = 0; jr < ev[ik].size(); ++jr) {
        double sum = 0.0;
        for (std::size_t js = 0; js < ev[ii].size(); ++js) {
          bool restricts = true;
          for (const auto& [v, val] : ev[ik][jr].values)
            if (ev[ii][js].values.at(v) != val) { restricts = false; break; }
          if (restricts) sum += m.tables[ii][js];
        }
        flag(std::abs(sum - m.tables[ik][jr]),
             "marginal mismatch between nested contexts: " +
                 std::to_string(sum) + " vs " + std::to_string(m.tables[ik][jr]));
      }
    }
  return rep;
}

// Dimension of the solution space of the no-signaling constraints over Q:
// one variable per (context, event), marginal-agreement equations for every
// proper inclusion pair.  (Normalization is carried by the zero context's
// single variable, so this is the affine-hull dimension + 1 minus the fixed
// normalization; concretely: nullity of the homogeneous system.)
inline int nosignaling_dimension(const ContextCover& cover) {
  const PrimeConfig& cfg = cover.cfg;
  std::vector<std::vector<OutcomeFunction>> ev;
  std::vector<int> offset;
  int nvars = 0;
  for (const Subspace& I : cover.contexts) {
    offset.push_back(nvars);
    ev.push_back(events(cfg, I));
    nvars += int(ev.back().size());
  }
  RatMat rows;
  for (std::size_t ik = 0; ik < cover.contexts.size(); ++ik)
    for (std::size_t ii = 0; ii < cover.contexts.size(); ++ii) {
      const Subspace& K = cover.contexts[ik];
      const Subspace& I = cover.contexts[ii];
      if (K.dim() >= I.dim() || !(intersect(cfg, K, I) == K)) continue;
      for (std::size_t jr = 0; jr < ev[ik].size(); ++jr) {
        RatVec row(std::size_t(nvars), Rat(0));
        row[std::size_t(offset[ik]) + jr] = Rat(-1);
        for (std::size_t js = 0; js < ev[ii].size(); ++js) {
          bool restricts = true;
          for (const auto& [v, val] : ev[ik][jr].values)
            if (ev[ii][js].values.at(v) != val) { restricts = false; break; }
          if (restricts) row[std::size_t(offset[ii]) + js] = Rat(1);
        }
        rows.push_back(std::move(row));
      }
    }
  return nvars - rat_rank(rows);
}

// Exact model representation used by the decision layer.
struct RatModel {
  ContextCover cover;
  std::vector<RatVec> tables;  // aligned with events() like EmpiricalModel
};

// Model induced by an exact Wigner vector through the marginal law.
inline RatModel model_of_wigner(const ContextCover& cover, const RatVec& w) {
  const PrimeConfig& cfg = cover.cfg;
  if ((long long)w.size() != cfg.vspace_size())
    throw input_error("Wigner vector has wrong length");
  RatModel m;
  m.cover = cover;
  const std::vector<Vec> vs = all_vectors(cfg);
  for (const Subspace& I : cover.contexts) {
    RatVec row;
    for (const OutcomeFunction& s : events(cfg, I)) {
      Rat acc(0);
      for (std::size_t j = 0; j < vs.size(); ++j) {
        const Rat c = marginal_coeff(cfg, s, vs[j]);
        if (c != 0) acc += c * w[j];
      }
      row.push_back(acc);
    }
    m.tables.push_back(std::move(row));
  }
  return m;
}

// Exact no-signaling check: normalization per context and marginal equality
// over every proper inclusion, in rational arithmetic.
inline bool rat_no_signaling(const RatModel& m, std::string* why = nullptr) {
  const PrimeConfig& cfg = m.cover.cfg;
  std::vector<std::vector<OutcomeFunction>> ev;
  for (std::size_t i = 0; i < m.cover.contexts.size(); ++i) {
    ev.push_back(events(cfg, m.cover.contexts[i]));
    Rat sum(0);
    for (const Rat& x : m.tables[i]) {
      if (x < 0) { if (why) *why = "negative entry " + rat_str(x); return false; }
      sum += x;
    }
    if (sum != 1) { if (why) *why = "context sums to " + rat_str(sum); return false; }
  }
  for (std::size_t ik = 0; ik < m.cover.contexts.size(); ++ik)
    for (std::size_t ii = 0; ii < m.cover.contexts.size(); ++ii) {
      const Subspace& K = m.cover.contexts[ik];
      const Subspace& I = m.cover.contexts[ii];
      if (K.dim() >= I.dim() || !(intersect(cfg, K, I) == K)) continue;
      for (std::size_t jr = 0; jr < ev[ik].size(); ++jr) {
        Rat sum(0);
        for (std::size_t js = 0; js < ev[ii].size(); ++js) {
          bool restricts = true;
          for (const auto& [v, val] : ev[ik][jr].values)
            if (ev[ii][js].values.at(v) != val) { restricts = false; break; }
          if (restricts) sum += m.tables[ii][js];
        }
        if (sum != m.tables[ik][jr]) {
          if (why) *why = "marginal " + rat_str(sum) + " != " + rat_str(m.tables[ik][jr]);
          return false;
        }
      }
    }
  return true;
}

// Recover W from a model on the full cover by least squares over the exact
// marginal-law matrix; residual beyond tol is a numeric error.  The matrix
// has full column rank, so on consistent data this inverts the marginal law.
inline std::vector<double> wigner_of_model(const EmpiricalModel& m, double tol = 1e-8) {
  const PrimeConfig& cfg = m.cover.cfg;
  if (!is_full_cover(m.cover))
    throw input_error("Wigner recovery needs the full cover of all isotropic subspaces");
  const std::vector<Vec> vs = all_vectors(cfg);
  int nrows = 0;
  for (const auto& t : m.tables) nrows += int(t.size());
  Eigen::MatrixXd a(nrows, int(vs.size()));
  Eigen::VectorXd b(nrows);
  int r = 0;
  for (std::size_t i = 0; i < m.cover.contexts.size(); ++i) {
    std::size_t j = 0;
    for (const OutcomeFunction& s : events(cfg, m.cover.contexts[i])) {
      for (std::size_t k = 0; k < vs.size(); ++k)
        a(r, int(k)) = rat_to_double(marginal_coeff(cfg, s, vs[k]));
      b(r) = m.tables[i][j];
      ++r; ++j;
    }
  }
  Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  const double resid = (a * x - b).norm();
  if (resid > tol)
    throw numeric_error("marginal law residual " + std::to_string(resid) +
                        " exceeds tolerance; model is not no-signaling enough");
  std::vector<double> w(vs.size());
  for (std::size_t k = 0; k < vs.size(); ++k) w[k] = x(int(k));
  return w;
}

}  // namespace contexta
