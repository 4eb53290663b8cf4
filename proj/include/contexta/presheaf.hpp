#pragma once

// Context covers and the event presheaf.  A context is an isotropic
// subspace I; its events are the outcome functions s: I -> Z/p with
// ds = beta|_I (the restricted cocycle).  A cover is a set of contexts
// closed under pairwise intersection and always containing the zero
// subspace; global sections are functions on the support that restrict to
// an event on every context.

#include <map>
#include <optional>
#include <vector>

#include "contexta/pauli.hpp"

namespace contexta {

struct ContextCover {
  PrimeConfig cfg;
  std::vector<Subspace> contexts;  // sorted canonically; closed; zero included

  bool operator==(const ContextCover& o) const {
    return cfg.p == o.cfg.p && cfg.n == o.cfg.n && contexts == o.contexts;
  }

  // Contexts not strictly contained in another context.
  std::vector<Subspace> maximal() const {
    std::vector<Subspace> out;
    for (const Subspace& s : contexts) {
      bool covered = false;
      for (const Subspace& t : contexts)
        if (s.dim() < t.dim() && intersect(cfg, s, t) == s) { covered = true; break; }
      if (!covered) out.push_back(s);
    }
    return out;
  }

  // Sigma = union of all contexts, zero first, then by vector index.
  std::vector<Vec> support() const {
    std::vector<Vec> out;
    for (const Subspace& s : contexts)
      for (const Vec& v : elements(cfg, s)) out.push_back(v);
    std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
      return vec_index(cfg, a) < vec_index(cfg, b);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

inline ContextCover make_cover(const PrimeConfig& cfg,
                               const std::vector<std::vector<Vec>>& generator_lists) {
  std::vector<Subspace> ctxs{Subspace{}};  // the zero subspace is always present
  for (const auto& gens : generator_lists) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        const int f = symplectic_form(cfg, gens[i], gens[j]);
        if (f != 0)
          throw input_error("context generators must commute: form(" +
                            vec_str(cfg, gens[i]) + ", " + vec_str(cfg, gens[j]) +
                            ") = " + std::to_string(f));
      }
    Subspace s = span(cfg, gens);
    if (!is_isotropic(cfg, s))
      throw input_error("generated subspace is not isotropic");
    ctxs.push_back(std::move(s));
  }
  std::sort(ctxs.begin(), ctxs.end());
  ctxs.erase(std::unique(ctxs.begin(), ctxs.end()), ctxs.end());
  // pairwise-intersection closure to a fixpoint
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subspace> add;
    for (std::size_t i = 0; i < ctxs.size(); ++i)
      for (std::size_t j = i + 1; j < ctxs.size(); ++j) {
        Subspace cap = intersect(cfg, ctxs[i], ctxs[j]);
        if (std::find(ctxs.begin(), ctxs.end(), cap) == ctxs.end() &&
            std::find(add.begin(), add.end(), cap) == add.end())
          add.push_back(std::move(cap));
      }
    if (!add.empty()) {
      grew = true;
      ctxs.insert(ctxs.end(), add.begin(), add.end());
      std::sort(ctxs.begin(), ctxs.end());
      ctxs.erase(std::unique(ctxs.begin(), ctxs.end()), ctxs.end());
    }
  }
  return ContextCover{cfg, std::move(ctxs)};
}

// The cover of every isotropic subspace.
inline ContextCover full_cover(const PrimeConfig& cfg) {
  std::vector<Subspace> iso = enumerate_isotropic(cfg);
  return ContextCover{cfg, std::move(iso)};  // already closed and sorted
}

inline bool is_full_cover(const ContextCover& cover) {
  if (cover.cfg.vspace_size() > 4096) return false;
  return cover.contexts == enumerate_isotropic(cover.cfg);
}

// An admissible joint-outcome function of one context.
struct OutcomeFunction {
  Subspace context;
  std::map<Vec, int> values;  // defined on every element; values(0) = 0

  int operator()(const Vec& v) const { return values.at(v); }
  bool operator==(const OutcomeFunction& o) const {
    return context == o.context && values == o.values;
  }
  bool operator<(const OutcomeFunction& o) const {
    return values < o.values;
  }
};

// ds = beta|_I on every pair, s(0) = 0.
inline bool outcome_valid(const PrimeConfig& cfg, const OutcomeFunction& s) {
  const std::vector<Vec> el = elements(cfg, s.context);
  if (s.values.size() != el.size()) return false;
  if (s.values.at(vec_zero(cfg.dim())) != 0) return false;
  for (const Vec& v : el)
    for (const Vec& w : el) {
      const int lhs = mod_p(s.values.at(v) + s.values.at(w) -
                            s.values.at(vec_add(cfg.p, v, w)), cfg.p);
      if (lhs != beta_restricted_pair(cfg, v, w)) return false;
    }
  return true;
}

// All p^{dim I} events of a context, parametrized by basis values and
// extended through s(x + b) = s(x) + s(b) - beta|(x, b); every candidate is
// re-verified against the full pairwise law.
inline std::vector<OutcomeFunction> events(const PrimeConfig& cfg, const Subspace& I) {
  if (!is_isotropic(cfg, I))
    throw input_error("events are defined for isotropic contexts only");
  std::vector<OutcomeFunction> out;
  const int k = I.dim();
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= cfg.p;
  for (std::int64_t choice = 0; choice < total; ++choice) {
    std::vector<int> bval(std::size_t(k), 0);
    std::int64_t t = choice;
    for (int i = k - 1; i >= 0; --i) { bval[std::size_t(i)] = int(t % cfg.p); t /= cfg.p; }
    OutcomeFunction s;
    s.context = I;
    s.values[vec_zero(cfg.dim())] = 0;
    std::vector<Vec> built{vec_zero(cfg.dim())};
    for (int i = 0; i < k; ++i) {
      const Vec& b = I.basis[std::size_t(i)];
      std::vector<Vec> next = built;
      for (const Vec& x : built) {
        Vec cur = x;
        int val = s.values.at(x);
        for (int c = 1; c < cfg.p; ++c) {
          val = mod_p(val + bval[std::size_t(i)] - beta_restricted_pair(cfg, cur, b), cfg.p);
          cur = vec_add(cfg.p, cur, b);
          s.values[cur] = val;
          next.push_back(cur);
        }
      }
      built = std::move(next);
    }
    if (!outcome_valid(cfg, s))
      throw std::logic_error("event extension failed the pairwise law");
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Global sections of a cover: solutions of the combined linear system over
// the unknowns s(v), v in Sigma \ 0.  Enumerated when there are at most
// `enumeration_limit` of them; always described exactly.
struct GlobalSectionSet {
  std::vector<Vec> domain;          // Sigma \ 0, by vector index
  AffineSolutionSet structure;      // solution set over the domain unknowns
  bool enumerated = false;
  std::vector<std::map<Vec, int>> sections;  // includes s(0) = 0 entries

  std::uint64_t count(int p) const { return structure.count(p); }
};

inline GlobalSectionSet global_sections(const ContextCover& cover,
                                        std::uint64_t enumeration_limit = 1000000) {
  const PrimeConfig& cfg = cover.cfg;
  GlobalSectionSet out;
  for (const Vec& v : cover.support())
    if (!is_zero(v)) out.domain.push_back(v);
  std::map<Vec, int> col;
  for (std::size_t i = 0; i < out.domain.size(); ++i) col[out.domain[i]] = int(i);
  const int nu = int(out.domain.size());

  std::vector<Vec> rows;
  Vec rhs;
  for (const Subspace& I : cover.contexts) {
    const std::vector<Vec> el = elements(cfg, I);
    for (const Vec& v : el) {
      if (is_zero(v)) continue;
      for (const Vec& w : el) {
        if (is_zero(w)) continue;
        Vec row(std::size_t(nu), 0);
        row[std::size_t(col.at(v))] = mod_p(row[std::size_t(col.at(v))] + 1, cfg.p);
        row[std::size_t(col.at(w))] = mod_p(row[std::size_t(col.at(w))] + 1, cfg.p);
        const Vec u = vec_add(cfg.p, v, w);
        if (!is_zero(u))
          row[std::size_t(col.at(u))] = mod_p(row[std::size_t(col.at(u))] - 1, cfg.p);
        rows.push_back(std::move(row));
        rhs.push_back(beta_restricted_pair(cfg, v, w));
      }
    }
  }
  out.structure = solve_affine(cfg.p, rows, rhs, nu);
  if (!out.structure.consistent) { out.enumerated = true; return out; }
  if (out.structure.count(cfg.p) <= enumeration_limit) {
    out.enumerated = true;
    for (const Vec& sol : affine_elements(cfg.p, out.structure, enumeration_limit)) {
      std::map<Vec, int> s;
      s[vec_zero(cfg.dim())] = 0;
      for (int i = 0; i < nu; ++i) s[out.domain[std::size_t(i)]] = sol[std::size_t(i)];
      out.sections.push_back(std::move(s));
    }
  }
  return out;
}

// Restriction of a global section to one context, as an OutcomeFunction.
inline OutcomeFunction restrict_section(const PrimeConfig& cfg,
                                        const std::map<Vec, int>& section,
                                        const Subspace& I) {
  OutcomeFunction s;
  s.context = I;
  for (const Vec& v : elements(cfg, I)) s.values[v] = section.at(v);
  return s;
}

}  // namespace contexta
