#pragma once

// JSON file formats and report builders.
//
// Every vector is written in (z|x) order: the first n entries are the Z
// part, the last n the X part.  Files carry explicit "p" and "n"; nothing
// is inferred.  Reports are deterministic for fixed inputs: timing is only
// included on request, all keys keep insertion order, and rationals are
// emitted as exact strings.

#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "contexta/covers.hpp"
#include "contexta/decision.hpp"
#include "contexta/topology.hpp"

namespace contexta {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "contexta/1";
inline constexpr const char* kToolVersion = "0.1.0";

// --- small converters -------------------------------------------------------

inline Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (int c : v) a.push_back(c);
  return a;
}

inline Vec vec_from_json(const Json& j, const PrimeConfig& cfg, const std::string& where) {
  if (!j.is_array() || j.size() != std::size_t(cfg.dim()))
    throw input_error(where + ": expected a length-" + std::to_string(cfg.dim()) +
                      " integer array in (z|x) order");
  Vec v;
  for (const Json& c : j) {
    if (!c.is_number_integer())
      throw input_error(where + ": vector entries must be integers");
    v.push_back(mod_p(int(c.get<long long>()), cfg.p));
  }
  return v;
}

inline Json generators_to_json(const Subspace& I) {
  Json a = Json::array();
  for (const Vec& b : I.basis) a.push_back(vec_to_json(b));
  return a;
}

inline std::string bigint_str(const BigInt& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// --- file loading -----------------------------------------------------------

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries the line/column of the failure
    throw input_error(path + ": " + e.what());
  }
}

inline ContextCover cover_from_json(const Json& j) {
  if (j.contains("name")) {
    const std::string name = j.at("name").get<std::string>();
    if (name == "full") {
      if (!j.contains("p") || !j.contains("n"))
        throw input_error("cover name \"full\" needs explicit \"p\" and \"n\"");
      return full_cover(make_config(int(j.at("p").get<long long>()),
                                    int(j.at("n").get<long long>())));
    }
    return named_cover(name);
  }
  if (!j.contains("p") || !j.contains("n") || !j.contains("contexts"))
    throw input_error("cover file needs \"p\", \"n\", and \"contexts\" (or a \"name\")");
  const PrimeConfig cfg =
      make_config(int(j.at("p").get<long long>()), int(j.at("n").get<long long>()));
  std::vector<std::vector<Vec>> gens;
  const Json& ctxs = j.at("contexts");
  if (!ctxs.is_array()) throw input_error("\"contexts\" must be an array of generator lists");
  for (std::size_t i = 0; i < ctxs.size(); ++i) {
    std::vector<Vec> list;
    const Json& one = ctxs[i];
    if (!one.is_array()) throw input_error("context " + std::to_string(i) +
                                           " must be an array of generators");
    for (std::size_t g = 0; g < one.size(); ++g)
      list.push_back(vec_from_json(one[g], cfg, "context " + std::to_string(i) +
                                                    ", generator " + std::to_string(g)));
    gens.push_back(std::move(list));
  }
  return make_cover(cfg, gens);
}

// Either a cover name (mermin-square, mermin-star, full:p,n) or a JSON file.
inline ContextCover load_cover(const std::string& arg) {
  if (std::ifstream probe(arg); probe) return cover_from_json(load_json_file(arg));
  return named_cover(arg);
}

inline DensityMatrix state_from_json(const Json& j, const PrimeConfig& cfg) {
  const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "named";
  if (kind == "named") {
    std::string name = j.at("name").get<std::string>();
    if (j.contains("params")) {
      std::string args;
      for (const Json& a : j.at("params")) {
        if (!args.empty()) args += ",";
        args += a.dump();
      }
      name += "(" + args + ")";
    }
    return named_state(name, cfg);
  }
  if (kind == "matrix") {
    if (!j.contains("p") || !j.contains("n"))
      throw input_error("matrix state files need explicit \"p\" and \"n\"");
    if (int(j.at("p").get<long long>()) != cfg.p || int(j.at("n").get<long long>()) != cfg.n)
      throw input_error("state is for p=" + j.at("p").dump() + ", n=" + j.at("n").dump() +
                        " but the cover has p=" + std::to_string(cfg.p) +
                        ", n=" + std::to_string(cfg.n));
    const int d = cfg.d();
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != std::size_t(d) ||
        im.size() != std::size_t(d))
      throw input_error("matrix state needs d x d \"re\" and \"im\" arrays, d = " +
                        std::to_string(d));
    CMat mat(d, d);
    for (int r = 0; r < d; ++r) {
      const Json& rre = re[std::size_t(r)];
      const Json& rim = im[std::size_t(r)];
      if (rre.size() != std::size_t(d) || rim.size() != std::size_t(d))
        throw input_error("matrix state row " + std::to_string(r) + " has wrong length");
      for (int c = 0; c < d; ++c)
        mat(r, c) = std::complex<double>(rre[std::size_t(c)].get<double>(),
                                         rim[std::size_t(c)].get<double>());
    }
    return make_density(cfg, mat);
  }
  throw input_error("state \"kind\" must be \"named\" or \"matrix\"");
}

// Either a state name (ghz, bell, basis(k), maximally_mixed, random(seed[,mix]))
// or a JSON file.  The (p, n) comes from the cover under analysis.
inline DensityMatrix load_state(const std::string& arg, const PrimeConfig& cfg) {
  if (std::ifstream probe(arg); probe) return state_from_json(load_json_file(arg), cfg);
  return named_state(arg, cfg);
}

// --- emission ---------------------------------------------------------------

inline Json cover_to_json(const ContextCover& cover) {
  Json j;
  j["p"] = cover.cfg.p;
  j["n"] = cover.cfg.n;
  j["coordinate_order"] = "(z|x)";
  Json ctxs = Json::array();
  for (const Subspace& M : cover.maximal()) ctxs.push_back(generators_to_json(M));
  j["contexts"] = ctxs;
  return j;
}

inline Json cfg_to_json(const PrimeConfig& cfg) {
  Json j;
  j["p"] = cfg.p;
  j["n"] = cfg.n;
  j["coordinate_order"] = "(z|x)";
  return j;
}

// --- report payloads --------------------------------------------------------

inline Json report_analyze_cover(const ContextCover& cover) {
  Json r;
  r["contexts_after_closure"] = cover.contexts.size();
  Json maximal = Json::array();
  for (const Subspace& M : cover.maximal()) maximal.push_back(generators_to_json(M));
  r["maximal_contexts"] = maximal;
  r["support_size"] = cover.support().size();
  const GlobalSectionSet gs = global_sections(cover);
  r["global_sections"] = (std::uint64_t)gs.count(cover.cfg.p);
  r["strongly_contextual"] = gs.count(cover.cfg.p) == 0;
  const ChainComplex cx = build_chain_complex(cover);
  r["beta_is_coboundary"] = beta_is_coboundary(cx);
  const HomologyDims h = homology_dims(cx);
  r["homology"] = Json{{"h1", h.h1}, {"h2_cochain", h.h2_cochain}};
  return r;
}

namespace detail {

inline Json witness_to_json(const std::vector<std::pair<std::map<Vec, int>, Rat>>& witness) {
  Json w = Json::array();
  for (const auto& [assignment, weight] : witness) {
    Json entry;
    entry["weight"] = rat_str(weight);
    Json vals = Json::array();
    for (const auto& [v, s] : assignment)
      vals.push_back(Json::array({vec_to_json(v), s}));
    entry["assignment"] = vals;
    w.push_back(entry);
  }
  return w;
}

inline std::string certificate_digest(const RatVec& y) {
  std::string flat;
  for (const Rat& c : y) {
    flat += rat_str(c);
    flat += ';';
  }
  std::ostringstream os;
  os << std::hex << fnv1a(flat.data(), flat.size());
  return os.str();
}

}  // namespace detail

inline Json report_analyze_state(const DensityMatrix& rho, const ContextCover& cover,
                                 double tol = kProbTol) {
  const PrimeConfig& cfg = cover.cfg;
  const EmpiricalModel m = empirical_model(rho, cover);
  Json r;

  // only maximal contexts are listed; every other table is one of their marginals
  Json table = Json::array();
  for (const Subspace& M : cover.maximal()) {
    // locate the table row for this context
    std::size_t idx = 0;
    while (!(cover.contexts[idx] == M)) ++idx;
    Json ctx;
    ctx["generators"] = generators_to_json(M);
    Json rows = Json::array();
    const std::vector<OutcomeFunction> ev = events(cfg, M);
    for (std::size_t jj = 0; jj < ev.size(); ++jj) {
      Json row;
      Json on_gens = Json::array();
      for (const Vec& b : M.basis) on_gens.push_back(ev[jj].values.at(b));
      row["outcome_on_generators"] = on_gens;
      row["probability"] = m.tables[idx][jj];
      rows.push_back(row);
    }
    ctx["table"] = rows;
    table.push_back(ctx);
  }
  r["model"] = table;

  const CompatibilityReport compat = compatibility_check(m, tol);
  r["compatibility"] = Json{{"pass", compat.pass}, {"max_deviation", compat.max_deviation}};

  const DecisionResult dec = is_noncontextual(m, tol);
  r["verdict"] = verdict_str(dec.verdict);
  r["detail"] = dec.detail;
  if (!dec.witness.empty()) r["witness"] = detail::witness_to_json(dec.witness);
  if (!dec.certificate.empty()) {
    r["certificate"] = Json{{"rows", dec.certificate_rows.size()},
                            {"digest", detail::certificate_digest(dec.certificate)}};
  }

  if (is_full_cover(cover)) {
    const NegativityReport neg = wigner_negativity(rho);
    const std::vector<double> w = wigner(rho);
    Json wig;
    wig["values"] = w;
    wig["min"] = neg.min_value;
    wig["argmin"] = vec_to_json(neg.argmin);
    wig["negative"] = neg.negative;
    wig["marginal"] = neg.marginal;
    r["wigner"] = wig;
    if (cfg.p > 2) {
      const bool lp_nc = dec.verdict == Verdict::noncontextual;
      Json cc;
      cc["applies"] = true;
      cc["wigner_nonnegative"] = !neg.negative;
      cc["lp_noncontextual"] = lp_nc;
      cc["agrees"] = (!neg.negative) == lp_nc;
      cc["near_boundary"] = neg.marginal;
      r["nonnegativity_equivalence"] = cc;
    }
  }
  return r;
}

inline Json report_topology(const ContextCover& cover, const std::string& group_mode) {
  const PrimeConfig& cfg = cover.cfg;
  const bool full = is_full_cover(cover);
  std::string view = group_mode;
  if (view == "auto") view = full ? "full-extension" : "abelian";
  CosetPoset poset;
  if (view == "abelian") {
    poset = coset_poset_abelian(cover);
  } else if (view == "full-extension") {
    if (!full)
      throw input_error("--group full-extension needs the full cover; got a partial one");
    poset = coset_poset_extension(cover);
  } else {
    throw input_error("unknown group view: " + view +
                      " (expected auto, abelian, or full-extension)");
  }
  Json r;
  r["group_view"] = view;
  r["poset"] = Json{{"size", poset.cosets.size()},
                    {"group_order", poset.group_order},
                    {"max_chain", poset.max_chain}};
  const long long chi = euler_characteristic(poset);
  r["euler_characteristic"] = chi;
  r["fiber_dimension"] = poset.max_chain;
  const long long spheres = sphere_count(poset, poset.max_chain);
  r["sphere_count"] = spheres;
  if (full && view == "full-extension") {
    const BigInt d = d_formula(cfg.p, cfg.n);
    Json f;
    f["interpretation"] = "r = n";
    f["value"] = bigint_str(d);
    f["poset_sphere_count"] = spheres;
    const bool agrees = BigInt(spheres) == d;
    f["agrees"] = agrees;
    if (!agrees)
      f["note"] = "formula value differs from the coset-poset count; "
                  "the poset value is authoritative";
    r["wedge_formula"] = f;
  }
  return r;
}

inline Json report_inequality(const DensityMatrix& rho, const ContextCover& cover,
                              const std::vector<Vec>& anchor_gens,
                              const std::optional<std::map<Vec, int>>& s0,
                              double tol = kProbTol) {
  const InequalityReport rep = analyze_inequality(rho, cover, anchor_gens, s0, tol);
  Json r;
  r["anchor_context"] = generators_to_json(rep.anchor_context);
  Json sign_table = Json::array();
  for (const auto& [u, expectation] : rep.anchor_expectations) {
    Json row;
    row["observable"] = vec_to_json(u);
    row["s0"] = rep.s0.at(u);
    row["sign"] = rep.s0.at(u) == 0 ? 1 : -1;
    row["expectation"] = expectation;
    sign_table.push_back(row);
  }
  r["sign_table"] = sign_table;
  r["bound"] = rat_str(rep.bound);
  r["ev"] = rep.ev;
  r["correlator"] = rep.correlator;
  r["violated"] = rep.violated;
  r["remaining_contexts"] = rep.remaining.contexts.size();
  return r;
}

// --- envelope ---------------------------------------------------------------

inline Json report_envelope(const std::string& command, const Json& args_echo,
                            const PrimeConfig& cfg, Json result,
                            std::optional<double> timing_ms) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = Json{{"name", "contexta"}, {"version", kToolVersion}};
  j["command"] = command;
  j["args"] = args_echo;
  j["cfg"] = cfg_to_json(cfg);
  j["result"] = std::move(result);
  j["timing_ms"] = timing_ms ? Json(*timing_ms) : Json(nullptr);
  return j;
}

}  // namespace contexta
