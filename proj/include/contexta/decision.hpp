#pragma once

// Exact contextuality decisions.
//
// A model is strongly contextual when its cover admits no deterministic
// global section at all.  Otherwise noncontextuality is an exact rational
// feasibility problem: does some probability measure on deterministic
// value assignments push forward to the model?  On the full cover at odd p
// the assignments are taken to be the phase-space characters v -> form(v,t),
// which by the marginal law makes feasibility equivalent to pointwise
// nonnegativity of the Wigner function; at p = 2 (or on partial covers) the
// variables are the enumerated global sections.
//
// Model entries reach the LP exactly: each is snapped to the rational grid
// k / p^{2n+4} when it is within 1e-9 of it; otherwise, on full covers, the
// model is rebuilt from its (dyadically exact) recovered Wigner vector, a
// perturbation bounded by the no-signaling residual.  Anything else is a
// numeric error: the decision refuses to silently round.

#include <sstream>

#include "contexta/model.hpp"

namespace contexta {

enum class Verdict { noncontextual, contextual, strongly_contextual };

inline std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::noncontextual: return "noncontextual";
    case Verdict::contextual: return "contextual";
    default: return "strongly_contextual";
  }
}

struct DecisionResult {
  Verdict verdict = Verdict::noncontextual;
  // Noncontextual: convex weights on deterministic value assignments over
  // the cover's support (only nonzero weights are listed).
  std::vector<std::pair<std::map<Vec, int>, Rat>> witness;
  // Contextual: exact Farkas certificate y for the pushforward equalities
  // A x = b, x >= 0: y^T A >= 0 while y^T b < 0.
  RatVec certificate;
  std::vector<std::string> certificate_rows;  // labels aligned with y
  std::string detail;
};

// Snap every table entry to the grid k / p^{2n+4}; fall back to rebuilding
// from the recovered Wigner vector on full covers.  The result is verified
// exactly no-signaling before it is returned.
inline RatModel rationalize_model(const EmpiricalModel& m, double tol = kProbTol) {
  const PrimeConfig& cfg = m.cover.cfg;
  long long denom = 1;
  for (int i = 0; i < 2 * cfg.n + 4; ++i) denom *= cfg.p;
  RatModel out;
  out.cover = m.cover;
  bool snapped = true;
  for (const auto& table : m.tables) {
    RatVec row;
    for (double x : table) {
      Rat r;
      if (!snap_to_grid(x, BigInt(denom), tol, r)) { snapped = false; break; }
      row.push_back(r);
    }
    if (!snapped) break;
    out.tables.push_back(std::move(row));
  }
  std::string why;
  if (snapped && rat_no_signaling(out, &why)) return out;
  if (is_full_cover(m.cover)) {
    // exact dyadic Wigner bridge; renormalized so sum_t c_t = 1 exactly,
    // which makes every context table sum to exactly 1 as well
    const std::vector<double> w = wigner_of_model(m);
    RatVec c;
    Rat total(0);
    for (double x : w) { c.push_back(rat_from_double(x)); total += c.back(); }
    if (total == 0) throw numeric_error("recovered Wigner vector sums to zero");
    for (Rat& x : c) x /= total;
    RatModel bridged = model_of_wigner(m.cover, c);
    double dev = 0.0;
    for (std::size_t i = 0; i < m.tables.size(); ++i)
      for (std::size_t j = 0; j < m.tables[i].size(); ++j)
        dev = std::max(dev, std::abs(rat_to_double(bridged.tables[i][j]) - m.tables[i][j]));
    if (dev > 1e-6)
      throw numeric_error("Wigner bridge moved a model entry by " + std::to_string(dev));
    if (!rat_no_signaling(bridged, &why))
      throw std::logic_error("bridged model violates no-signaling: " + why);
    return bridged;
  }
  if (snapped)
    throw numeric_error("snapped model is not exactly no-signaling (" + why +
                        ") and the cover is not full");
  throw numeric_error(
      "model entries are not within 1e-9 of k/" + std::to_string(denom) +
      " and Wigner recovery needs the full cover; supply exact probabilities");
}

namespace detail {

// Deterministic assignments used as LP columns.
struct AssignmentFamily {
  std::vector<std::map<Vec, int>> maps;  // value assignment on the support
  std::string kind;
};

inline AssignmentFamily section_columns(const ContextCover& cover,
                                        const GlobalSectionSet& g) {
  if (!g.enumerated)
    throw capacity_error("global section set too large to enumerate for the LP");
  AssignmentFamily fam;
  fam.maps = g.sections;
  fam.kind = "global sections";
  return fam;
}

inline AssignmentFamily character_columns(const ContextCover& cover) {
  AssignmentFamily fam;
  fam.kind = "phase-space characters";
  const PrimeConfig& cfg = cover.cfg;
  const std::vector<Vec> sup = cover.support();
  for (const Vec& t : all_vectors(cfg)) {
    std::map<Vec, int> s;
    for (const Vec& v : sup) s[v] = symplectic_form(cfg, v, t);
    fam.maps.push_back(std::move(s));
  }
  return fam;
}

}  // namespace detail

// Decide the model exactly.  Precondition: it passes compatibility_check at
// the given tolerance.
inline DecisionResult is_noncontextual(const EmpiricalModel& m, double tol = kProbTol) {
  const PrimeConfig& cfg = m.cover.cfg;
  const CompatibilityReport compat = compatibility_check(m, tol);
  if (!compat.pass)
    throw input_error("model fails the compatibility check: " + compat.violations.front());

  DecisionResult res;
  GlobalSectionSet g = global_sections(m.cover);
  if (g.count(cfg.p) == 0) {
    res.verdict = Verdict::strongly_contextual;
    res.detail = "the cover admits no deterministic global section";
    return res;
  }

  const RatModel exact = rationalize_model(m, tol);
  const bool characters = cfg.p > 2 && is_full_cover(m.cover);
  detail::AssignmentFamily fam = characters ? detail::character_columns(m.cover)
                                            : detail::section_columns(m.cover, g);
  if (fam.maps.size() > 100000)
    throw capacity_error("LP would have " + std::to_string(fam.maps.size()) + " columns");

  RationalLP lp;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m.cover.contexts.size(); ++i) {
    const Subspace& I = m.cover.contexts[i];
    const std::vector<Vec> el = elements(cfg, I);
    std::size_t j = 0;
    for (const OutcomeFunction& s : events(cfg, I)) {
      RatVec row;
      row.reserve(fam.maps.size());
      for (const std::map<Vec, int>& a : fam.maps) {
        bool match = true;
        for (const Vec& v : el)
          if (mod_p(a.at(v), cfg.p) != s.values.at(v)) { match = false; break; }
        row.push_back(match ? Rat(1) : Rat(0));
      }
      lp.a.push_back(std::move(row));
      lp.b.push_back(exact.tables[i][j]);
      std::ostringstream lab;
      lab << "context " << i << " event " << j;
      labels.push_back(lab.str());
      ++j;
    }
  }

  const LPResult r = lp_feasible(lp);
  if (r.feasible) {
    res.verdict = Verdict::noncontextual;
    for (std::size_t k = 0; k < fam.maps.size(); ++k)
      if (r.witness[k] != 0) res.witness.emplace_back(fam.maps[k], r.witness[k]);
    res.detail = "distribution over " + std::to_string(res.witness.size()) + " of " +
                 std::to_string(fam.maps.size()) + " " + fam.kind;
  } else {
    res.verdict = Verdict::contextual;
    res.certificate = r.certificate;
    res.certificate_rows = std::move(labels);
    res.detail = "no distribution over " + std::to_string(fam.maps.size()) + " " +
                 fam.kind + " reproduces the model";
  }
  return res;
}

struct NegativityReport {
  double min_value = 0.0;
  Vec argmin;
  bool negative = false;  // min < -1e-9
  bool marginal = false;  // |min| <= 1e-6: too close to the boundary to trust
};

inline NegativityReport wigner_negativity(const DensityMatrix& rho) {
  const std::vector<double> w = wigner(rho);
  NegativityReport rep;
  rep.min_value = w[0];
  std::size_t arg = 0;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] < rep.min_value) { rep.min_value = w[i]; arg = i; }
  rep.argmin = vec_from_index(rho.cfg, (long long)arg);
  rep.negative = rep.min_value < -kProbTol;
  rep.marginal = std::abs(rep.min_value) <= 1e-6;
  return rep;
}

inline double eigenvalue_functional(const DensityMatrix& rho, const OutcomeFunction& s0) {
  return born(rho, s0);
}

// Rebuild a cover with one extra context.
inline ContextCover extend_cover(const ContextCover& cover, const std::vector<Vec>& gens) {
  std::vector<std::vector<Vec>> lists;
  for (const Subspace& I : cover.maximal())
    if (I.dim() > 0) lists.push_back(I.basis);
  lists.push_back(gens);
  return make_cover(cover.cfg, lists);
}

// Best value of the anchored correlator over deterministic sections of the
// cover: max_g (1/|A|) sum_{u in A} (-1)^{g(u)+s0(u)} with A the nonzero
// part of J seen by the cover.  Defined for p = 2.
inline Rat noncontextual_bound(const ContextCover& cover, const OutcomeFunction& s0) {
  const PrimeConfig& cfg = cover.cfg;
  if (cfg.p != 2)
    throw input_error("the anchored correlator bound is specific to p = 2");
  if (!outcome_valid(cfg, s0))
    throw input_error("s0 is not an admissible outcome function of its context");
  std::vector<Vec> anchors;
  const std::vector<Vec> sup = cover.support();
  for (const Vec& u : elements(cfg, s0.context)) {
    if (is_zero(u)) continue;
    if (std::find(sup.begin(), sup.end(), u) != sup.end()) anchors.push_back(u);
  }
  if (anchors.empty())
    throw input_error("the cover sees no nonzero element of the anchor context");
  GlobalSectionSet g = global_sections(cover);
  if (!g.enumerated)
    throw capacity_error("global section set too large to enumerate for the bound");
  if (g.sections.empty())
    throw input_error("cover admits no deterministic section; the bound is undefined");
  long long best = -(long long)anchors.size() - 1;
  for (const auto& sec : g.sections) {
    long long acc = 0;
    for (const Vec& u : anchors)
      acc += sec.at(u) == s0.values.at(u) ? 1 : -1;
    best = std::max(best, acc);
  }
  return Rat(best, (long long)anchors.size());
}

// Inequality analysis against a full scenario cover: drop the anchor
// context J, compute the classical bound from the remaining contexts, and
// compare with the quantum value of the state.
struct InequalityReport {
  Subspace anchor_context;
  std::map<Vec, int> s0;            // on J
  std::vector<Vec> anchors;         // nonzero elements of J seen by the rest
  Rat bound;                        // classical correlator bound
  double ev = 0.0;                  // Born weight of the joint outcome s0
  double correlator = 0.0;          // (1/|A|) sum (-1)^{s0(u)} <eta(u)>
  bool violated = false;            // correlator exceeds the bound
  ContextCover remaining;           // the cover with J removed, re-closed
  std::vector<std::pair<Vec, double>> anchor_expectations;
};

// s0 == nullopt: read outcomes off the state, requiring |<eta(u)>| near 1.
inline InequalityReport analyze_inequality(const DensityMatrix& rho,
                                           const ContextCover& cover,
                                           const std::vector<Vec>& anchor_gens,
                                           const std::optional<std::map<Vec, int>>& s0opt,
                                           double tol = kProbTol) {
  const PrimeConfig& cfg = cover.cfg;
  if (cfg.p != 2) throw input_error("inequality analysis is specific to p = 2");
  if (rho.cfg.p != cfg.p || rho.cfg.n != cfg.n)
    throw input_error("state and cover have different (p, n)");
  InequalityReport rep;
  rep.anchor_context = span(cfg, anchor_gens);
  if (!is_isotropic(cfg, rep.anchor_context))
    throw input_error("anchor generators do not span an isotropic subspace");

  // remaining cover: all maximal contexts except J, re-closed
  std::vector<std::vector<Vec>> lists;
  bool dropped = false;
  for (const Subspace& I : cover.maximal()) {
    if (I == rep.anchor_context) { dropped = true; continue; }
    if (I.dim() > 0) lists.push_back(I.basis);
  }
  if (!dropped)
    throw input_error("anchor context is not a maximal context of the cover");
  rep.remaining = make_cover(cfg, lists);

  OutcomeFunction s0;
  s0.context = rep.anchor_context;
  if (s0opt) {
    s0.values = *s0opt;
  } else {
    for (const Vec& u : elements(cfg, rep.anchor_context)) {
      if (is_zero(u)) { s0.values[u] = 0; continue; }
      const std::complex<double> e = pauli_expectation(rho, u);
      if (std::abs(e.imag()) > 1e-6 || std::abs(std::abs(e.real()) - 1.0) > 1e-6)
        throw input_error("state is not a joint eigenstate of the anchor context "
                          "(|<eta(" + vec_str(cfg, u) + ")>| != 1); supply s0 explicitly");
      s0.values[u] = e.real() > 0 ? 0 : 1;
    }
  }
  if (!outcome_valid(cfg, s0))
    throw input_error("s0 is not an admissible outcome function of the anchor context");
  rep.s0 = s0.values;
  rep.ev = born(rho, s0);
  rep.bound = noncontextual_bound(rep.remaining, s0);

  const std::vector<Vec> sup = rep.remaining.support();
  for (const Vec& u : elements(cfg, rep.anchor_context)) {
    if (is_zero(u)) continue;
    if (std::find(sup.begin(), sup.end(), u) == sup.end()) continue;
    rep.anchors.push_back(u);
    const double e = pauli_expectation(rho, u).real();
    rep.anchor_expectations.emplace_back(u, e);
    rep.correlator += (s0.values.at(u) == 0 ? 1.0 : -1.0) * e;
  }
  rep.correlator /= double(rep.anchors.size());
  rep.violated = rep.correlator > rat_to_double(rep.bound) + tol;
  return rep;
}

}  // namespace contexta
