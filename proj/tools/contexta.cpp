// Command-line front end.
//
//   contexta analyze-cover <cover>
//   contexta analyze-state <state> <cover>
//   contexta topology <cover> [--group auto|abelian|full-extension]
//   contexta inequality <state> <cover> --context <gen-list|index> [--s0 auto|<list>]
//
// <cover>: a name (mermin-square, mermin-star, full:P,N) or a JSON file.
// <state>: a name (ghz, bell, basis(K), maximally_mixed, random(SEED[,MIX]))
//          or a JSON file; (p, n) always comes from the cover.
// Global flags: --json <out> (file, or "-" for stdout), --seed <u64>,
// --tolerance <float>, --timing.
//
// Exit codes: 0 ok, 2 input/validation, 3 capacity guard, 4 numerical integrity.

#include <chrono>
#include <iostream>

#include "contexta/contexta.hpp"

namespace {

using namespace contexta;

struct Options {
  std::string command;
  std::vector<std::string> positional;
  std::string json_out;  // empty: no JSON; "-": stdout
  std::uint64_t seed = 0;
  bool seed_given = false;
  double tolerance = kProbTol;
  bool timing = false;
  std::string group = "auto";
  std::string context_arg;
  std::string s0_arg = "auto";
};

constexpr const char* kUsage =
    "usage: contexta <command> [args] [flags]\n"
    "\n"
    "commands:\n"
    "  analyze-cover <cover>                     sections, cocycle class, homology\n"
    "  analyze-state <state> <cover>             empirical model, verdict, Wigner\n"
    "  topology <cover> [--group G]              coset poset, Euler characteristic,\n"
    "                                            sphere count (G: auto, abelian,\n"
    "                                            full-extension)\n"
    "  inequality <state> <cover> --context C    bound, expectation, violation\n"
    "            [--s0 auto|v1,v2,...]           (C: maximal-context index, or\n"
    "                                            generators \"g1;g2;...\" with gi\n"
    "                                            comma-separated in (z|x) order)\n"
    "\n"
    "covers: mermin-square | mermin-star | full:P,N | file.json\n"
    "states: ghz | bell | basis(K) | maximally_mixed | random(SEED[,MIX]) | file.json\n"
    "flags:  --json <out|->  --seed <u64>  --tolerance <x>  --timing\n";

Options parse_args(int argc, char** argv) {
  Options opt;
  if (argc < 2) throw input_error(std::string("missing command\n") + kUsage);
  opt.command = argv[1];
  for (int i = 2; i < argc; ++i) {
    const std::string a = argv[i];
    auto need_value = [&](const std::string& flag) -> std::string {
      if (i + 1 >= argc) throw input_error(flag + " needs a value");
      return argv[++i];
    };
    if (a == "--json") opt.json_out = need_value(a);
    else if (a == "--seed") {
      const std::string raw = need_value(a);
      try {
        std::size_t used = 0;
        opt.seed = std::stoull(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
      } catch (const std::exception&) {
        throw input_error("cannot parse seed from '" + raw + "'");
      }
      opt.seed_given = true;
    }
    else if (a == "--tolerance") opt.tolerance = detail::parse_real_arg(need_value(a), "tolerance");
    else if (a == "--timing") opt.timing = true;
    else if (a == "--group") opt.group = need_value(a);
    else if (a == "--context") opt.context_arg = need_value(a);
    else if (a == "--s0") opt.s0_arg = need_value(a);
    else if (a == "--help" || a == "-h") { std::cout << kUsage; std::exit(0); }
    else if (!a.empty() && a[0] == '-') throw input_error("unknown flag: " + a);
    else opt.positional.push_back(a);
  }
  return opt;
}

// "random" with --seed expands to random(seed); anything else passes through.
std::string resolve_state_arg(const Options& opt, const std::string& arg) {
  if (arg == "random" && opt.seed_given)
    return "random(" + std::to_string(opt.seed) + ")";
  return arg;
}

// Context selector: a bare integer indexes the cover's maximal contexts;
// otherwise "g1;g2;..." with each generator comma-separated in (z|x) order.
std::vector<Vec> parse_context_arg(const std::string& arg, const ContextCover& cover) {
  if (arg.empty()) throw input_error("--context is required (index or generator list)");
  if (arg.find(';') == std::string::npos && arg.find(',') == std::string::npos) {
    const long long k = detail::parse_int_arg(arg, "context index");
    const std::vector<Subspace> maximal = cover.maximal();
    if (k < 0 || k >= (long long)maximal.size())
      throw input_error("context index " + std::to_string(k) + " out of range [0, " +
                        std::to_string(maximal.size()) + ")");
    return maximal[std::size_t(k)].basis;
  }
  std::vector<Vec> gens;
  std::stringstream ss(arg);
  std::string part;
  while (std::getline(ss, part, ';')) {
    Vec v;
    std::stringstream vs(part);
    std::string num;
    while (std::getline(vs, num, ','))
      v.push_back(mod_p(int(detail::parse_int_arg(num, "generator entry")), cover.cfg.p));
    if ((int)v.size() != cover.cfg.dim())
      throw input_error("generator \"" + part + "\" has " + std::to_string(v.size()) +
                        " entries, expected " + std::to_string(cover.cfg.dim()));
    gens.push_back(std::move(v));
  }
  return gens;
}

std::optional<std::map<Vec, int>> parse_s0_arg(const std::string& arg,
                                               const ContextCover& cover,
                                               const std::vector<Vec>& anchor_gens) {
  if (arg == "auto") return std::nullopt;
  std::vector<int> vals;
  std::stringstream ss(arg);
  std::string num;
  while (std::getline(ss, num, ','))
    vals.push_back(mod_p(int(detail::parse_int_arg(num, "s0 entry")), cover.cfg.p));
  if (vals.size() != anchor_gens.size())
    throw input_error("--s0 has " + std::to_string(vals.size()) + " values for " +
                      std::to_string(anchor_gens.size()) + " generators");
  // extend generator values to the whole context the canonical way
  const Subspace J = span(cover.cfg, anchor_gens);
  for (const OutcomeFunction& s : events(cover.cfg, J)) {
    bool match = true;
    for (std::size_t i = 0; i < anchor_gens.size(); ++i)
      if (s.values.at(anchor_gens[i]) != vals[i]) { match = false; break; }
    if (match) return s.values;
  }
  throw input_error("no event of the anchor context matches the given --s0");
}

int run(int argc, char** argv) {
  const Options opt = parse_args(argc, argv);
  const auto t0 = std::chrono::steady_clock::now();

  Json args_echo;
  Json result;
  PrimeConfig cfg{};
  std::string human;

  if (opt.command == "analyze-cover") {
    if (opt.positional.size() != 1)
      throw input_error("analyze-cover takes exactly one cover argument");
    const ContextCover cover = load_cover(opt.positional[0]);
    cfg = cover.cfg;
    args_echo = Json{{"cover", opt.positional[0]}};
    result = report_analyze_cover(cover);
    std::ostringstream os;
    os << "contexts after closure: " << result.at("contexts_after_closure").get<std::size_t>()
       << "  (support " << result.at("support_size").get<std::size_t>() << ")\n"
       << "global sections: " << result.at("global_sections").get<std::uint64_t>()
       << (result.at("strongly_contextual").get<bool>() ? "   [strongly contextual]" : "")
       << "\n"
       << "cocycle class trivial: "
       << (result.at("beta_is_coboundary").get<bool>() ? "yes" : "no") << "\n"
       << "H1 dimension: " << result.at("homology").at("h1").get<int>()
       << ", H2 (cochain) dimension: " << result.at("homology").at("h2_cochain").get<int>()
       << "\n";
    human = os.str();
  } else if (opt.command == "analyze-state") {
    if (opt.positional.size() != 2)
      throw input_error("analyze-state takes <state> <cover>");
    const ContextCover cover = load_cover(opt.positional[1]);
    cfg = cover.cfg;
    const DensityMatrix rho = load_state(resolve_state_arg(opt, opt.positional[0]), cfg);
    args_echo = Json{{"state", opt.positional[0]}, {"cover", opt.positional[1]}};
    result = report_analyze_state(rho, cover, opt.tolerance);
    std::ostringstream os;
    os << "verdict: " << result.at("verdict").get<std::string>() << "\n";
    if (result.contains("wigner")) {
      os << "Wigner minimum: " << result.at("wigner").at("min").get<double>()
         << (result.at("wigner").at("negative").get<bool>() ? "   [negative]" : "")
         << (result.at("wigner").at("marginal").get<bool>() ? "   [boundary]" : "") << "\n";
    }
    human = os.str();
  } else if (opt.command == "topology") {
    if (opt.positional.size() != 1)
      throw input_error("topology takes exactly one cover argument");
    const ContextCover cover = load_cover(opt.positional[0]);
    cfg = cover.cfg;
    args_echo = Json{{"cover", opt.positional[0]}, {"group", opt.group}};
    result = report_topology(cover, opt.group);
    std::ostringstream os;
    os << "group view: " << result.at("group_view").get<std::string>() << "\n"
       << "coset poset size: " << result.at("poset").at("size").get<std::size_t>() << "\n"
       << "Euler characteristic: " << result.at("euler_characteristic").get<long long>()
       << "\n"
       << "sphere count (dim " << result.at("fiber_dimension").get<int>()
       << "): " << result.at("sphere_count").get<long long>() << "\n";
    if (result.contains("wedge_formula"))
      os << "wedge formula (r = n): " << result.at("wedge_formula").at("value").get<std::string>()
         << (result.at("wedge_formula").at("agrees").get<bool>() ? "   [agrees]"
                                                                 : "   [DISAGREES]")
         << "\n";
    human = os.str();
  } else if (opt.command == "inequality") {
    if (opt.positional.size() != 2)
      throw input_error("inequality takes <state> <cover>");
    const ContextCover cover = load_cover(opt.positional[1]);
    cfg = cover.cfg;
    const DensityMatrix rho = load_state(resolve_state_arg(opt, opt.positional[0]), cfg);
    const std::vector<Vec> anchor_gens = parse_context_arg(opt.context_arg, cover);
    const auto s0 = parse_s0_arg(opt.s0_arg, cover, anchor_gens);
    args_echo = Json{{"state", opt.positional[0]},
                     {"cover", opt.positional[1]},
                     {"context", opt.context_arg},
                     {"s0", opt.s0_arg}};
    result = report_inequality(rho, cover, anchor_gens, s0, opt.tolerance);
    std::ostringstream os;
    os << "eigenvalue-functional value: " << result.at("ev").get<double>() << "\n"
       << "correlator: " << result.at("correlator").get<double>() << "\n"
       << "noncontextual bound: " << result.at("bound").get<std::string>() << "\n"
       << (result.at("violated").get<bool>() ? "VIOLATED" : "not violated") << "\n";
    human = os.str();
  } else {
    throw input_error("unknown command: " + opt.command + "\n" + kUsage);
  }

  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0).count();
  const Json report = report_envelope(opt.command, args_echo, cfg, std::move(result),
                                      opt.timing ? std::optional<double>(ms) : std::nullopt);
  if (opt.json_out == "-") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << human;
    if (!opt.json_out.empty()) {
      std::ofstream out(opt.json_out);
      if (!out) throw input_error("cannot write to " + opt.json_out);
      out << report.dump(2) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const contexta::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const contexta::capacity_error& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const contexta::numeric_error& e) {
    std::cerr << "numeric: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
