#include "cli.hpp"

#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsn/fixstab.hpp"
#include "bsn/io.hpp"
#include "bsn/oracle.hpp"
#include "bsn/sample.hpp"

namespace bsn::cli {

namespace {

using nlohmann::json;

struct Options {
  std::int64_t n = 0;
  bool json = false;
  bool verbose = false;
  std::int64_t k = 0;
  bool has_k = false;
  std::int64_t bound = 3;
  std::uint64_t seed = 42;
  std::vector<std::string> args;
};

struct Output {
  std::string text;
  json data;
  int code = 0;
};

struct Report {
  std::int64_t checked = 0;
  std::vector<std::string> mismatches;
};

ParseError usage(const std::string& what) { return ParseError(0, "", what); }

void want_args(const Options& o, std::size_t lo, std::size_t hi, const char* shape) {
  if (o.args.size() < lo || o.args.size() > hi) {
    throw usage(std::string("expected ") + shape + ", got " + std::to_string(o.args.size()) +
                " argument(s)");
  }
}

std::int64_t want_k(const Options& o) {
  if (!o.has_k) throw usage("--k is required");
  return o.k;
}

std::vector<BsElem> elems(const Options& o, const BaseRef& base) {
  if (o.args.empty()) throw usage("expected at least one element");
  std::vector<BsElem> out;
  for (const auto& a : o.args) out.push_back(parse_elem(a, base));
  return out;
}

Output element_output(const BsElem& g) { return {to_string(g) + "\n", to_json(g)}; }

Output morphism_output(const Morphism& f) { return {to_string(f) + "\n", to_json(f)}; }

Output classify_output(const SubgroupClass& cls) {
  if (const auto* c = std::get_if<CyclicSubgroup>(&cls)) {
    return {"cyclic generator " + to_string(c->generator) + "\n",
            {{"type", "cyclic"}, {"generator", to_json(c->generator)}}};
  }
  const auto& f = std::get<FiniteIndexSubgroup>(cls);
  return {"finite index t_part " + to_string(f.t_part) + " kernel " +
              to_string(f.kernel_gen) + "\n",
          {{"type", "finite_index"},
           {"t_part", to_json(f.t_part)},
           {"kernel_generator", to_json(f.kernel_gen)}}};
}

// ---- verify ---------------------------------------------------------------

Report verify_word(const Options& o, const BaseRef& base) {
  const DifferentialReport r = oracle_word_differential(1000, 30, base, o.seed);
  return {r.checked, r.mismatches};
}

// Fixed-point scans over |c| <= bound * c_tilde against the closed form.
Report verify_fix(const Options& o, const BaseRef& base) {
  Sampler sample(base, o.seed);
  Report report;
  for (int i = 0; i < 200; ++i) {
    Morphism f = identity_morphism(base);
    switch (i % 3) {
      case 0: {
        AffinePair a = sample.automorphism();
        while (a.alpha() == zn_int(1, base)) a = sample.automorphism();
        f = a;
        break;
      }
      case 1:
        f = sample.type_i();
        break;
      default:
        f = sample.type_ii();
        break;
    }
    const FixResult result = fix(f).result;
    std::vector<BsElem> expected;
    std::int64_t c_bound = o.bound;
    if (const auto* cyc = std::get_if<FixCyclic>(&result)) {
      c_bound = o.bound * cyc->generator.c;
      for (std::int64_t m = -o.bound; m <= o.bound; ++m) {
        expected.push_back(bs_pow(cyc->generator, m));
      }
    } else {
      expected.push_back(bs_identity(base));
    }
    ++report.checked;
    if (oracle_fixed_scan(f, {c_bound, 1, false}) != expected) {
      report.mismatches.push_back(to_string(f));
    }
  }
  return report;
}

// Every box-scanned stabilizing automorphism must lie in the lattice
// spanned by the emitted generators, and every generator must stabilize.
Report verify_stab(const Options& o, const BaseRef& base) {
  Sampler sample(base, o.seed);
  Report report;
  for (int i = 0; i < 100; ++i) {
    const BsElem g = sample.elem_nonzero_c();
    ++report.checked;
    const auto lattice = std::get<StabLattice>(stab_aut(g));
    bool ok = lattice.rank == static_cast<std::int64_t>(base->r());
    for (const AffinePair& a : lattice.generators) ok = ok && apply(a, g) == g;
    for (const AffinePair& a : oracle_stab_scan(g, {1, o.bound, true})) {
      if (!ok) break;
      ok = oracle_lattice_member(a, lattice.generators, 2 * o.bound + 2).has_value();
    }
    if (!ok) report.mismatches.push_back(to_string(g));
  }
  return report;
}

Report verify_roots(const Options& o, const BaseRef& base) {
  Sampler sample(base, o.seed);
  Report report;
  for (int i = 0; i < 300; ++i) {
    const BsElem g = sample.elem();
    const std::int64_t k = sample.uniform(1, 5);
    ++report.checked;
    bool ok = bs_kth_root(bs_pow(g, k), k) == std::optional<BsElem>(g);
    if (g.c != 0) {
      const auto [h, m] = bs_root_closure(g);
      ok = ok && bs_pow(h, m) == g;
    }
    if (!ok) report.mismatches.push_back(to_string(g) + " k=" + std::to_string(k));
  }
  return report;
}

// For cyclic H = <g>, c != 0: the closure generators form a root chain
// ending at g, and Cl(H) is generated by the maximal root of g.
Report verify_closures(const Options& o, const BaseRef& base) {
  Sampler sample(base, o.seed);
  Report report;
  for (int i = 0; i < 100; ++i) {
    BsElem g = sample.elem_nonzero_c();
    ++report.checked;
    const auto cl = std::get<FixCyclic>(closure({g})).generator;
    const auto ecl = std::get<FixCyclic>(eclosure({g})).generator;
    if (g.c < 0) g = bs_inv(g);
    const auto [root, power] = bs_root_closure(g);
    bool ok = cl == root && g.c % ecl.c == 0 && ecl.c % cl.c == 0 &&
              bs_pow(ecl, g.c / ecl.c) == g && bs_pow(cl, ecl.c / cl.c) == ecl;
    if (!ok) report.mismatches.push_back(to_string(g));
  }
  return report;
}

Output verify(const Options& o, const BaseRef& base) {
  want_args(o, 1, 1, "one verify subject");
  static const std::map<std::string, std::function<Report(const Options&, const BaseRef&)>>
      subjects = {{"word", verify_word},
                  {"fix", verify_fix},
                  {"stab", verify_stab},
                  {"roots", verify_roots},
                  {"closures", verify_closures}};
  const auto it = subjects.find(o.args[0]);
  if (it == subjects.end()) {
    throw ParseError(0, o.args[0],
                     "unknown verify subject '" + o.args[0] +
                         "' (expected word, fix, stab, roots or closures)");
  }
  if (o.bound < 1) throw usage("--bound must be >= 1");
  const Report r = it->second(o, base);
  std::string text = o.args[0] + ": checked " + std::to_string(r.checked) + ", mismatches " +
                     std::to_string(r.mismatches.size()) + "\n";
  for (const auto& m : r.mismatches) text += "mismatch " + m + "\n";
  return {text, {{"checked", r.checked}, {"mismatches", r.mismatches}},
          r.mismatches.empty() ? 0 : 4};
}

// ---- dispatch --------------------------------------------------------------

Output dispatch(const std::string& command, const Options& o) {
  const BaseRef base = make_base(o.n);
  if (command == "eval") {
    want_args(o, 0, 1, "one word");
    return element_output(bs_from_word(o.args.empty() ? "" : o.args[0], base));
  }
  if (command == "mul") {
    BsElem acc = bs_identity(base);
    for (const BsElem& g : elems(o, base)) acc = acc * g;
    return element_output(acc);
  }
  if (command == "pow") {
    want_args(o, 1, 1, "one element");
    return element_output(bs_pow(parse_elem(o.args[0], base), want_k(o)));
  }
  if (command == "inv") {
    want_args(o, 1, 1, "one element");
    return element_output(bs_inv(parse_elem(o.args[0], base)));
  }
  if (command == "root") {
    want_args(o, 1, 1, "one element");
    const auto root = bs_kth_root(parse_elem(o.args[0], base), want_k(o));
    if (!root) return {"none\n", nullptr};
    return element_output(*root);
  }
  if (command == "rootclosure") {
    want_args(o, 1, 1, "one element");
    const auto [h, m] = bs_root_closure(parse_elem(o.args[0], base));
    return {"root " + to_string(h) + " power " + std::to_string(m) + "\n",
            {{"root", to_json(h)}, {"power", m}}};
  }
  if (command == "classify") return classify_output(classify_subgroup(elems(o, base)));
  if (command == "apply") {
    want_args(o, 2, 2, "a morphism and an element");
    return element_output(bsn::apply(parse_morphism(o.args[0], base), parse_elem(o.args[1], base)));
  }
  if (command == "compose") {
    want_args(o, 2, 2, "two morphisms");
    return morphism_output(
        compose(parse_morphism(o.args[0], base), parse_morphism(o.args[1], base)));
  }
  if (command == "fix") {
    want_args(o, 1, 1, "one morphism");
    const FixOutcome r = fix(parse_morphism(o.args[0], base));
    return {format_fix(r, o.verbose), to_json(r, o.verbose)};
  }
  if (command == "per") {
    want_args(o, 1, 1, "one morphism");
    const FixResult r = per(parse_morphism(o.args[0], base));
    return {format_fix(r) + "\n", to_json(r)};
  }
  if (command == "stab") {
    const auto gens = elems(o, base);
    const StabResult r = gens.size() == 1 ? stab_aut(gens[0]) : stab_subgroup(gens);
    return {format_stab(r, o.verbose), to_json(r, o.verbose)};
  }
  if (command == "estab") {
    want_args(o, 1, 1, "one element");
    const EStabResult r = estab(parse_elem(o.args[0], base));
    return {format_estab(r), to_json(r)};
  }
  if (command == "cl" || command == "ecl") {
    const auto gens = elems(o, base);
    const ClosureResult r = command == "cl" ? closure(gens) : eclosure(gens);
    return {format_fix(r) + "\n", to_json(r)};
  }
  return verify(o, base);
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"eval", "evaluate a word in a, t, A, T"},
    {"mul", "product of elements"},
    {"pow", "k-th power of an element"},
    {"inv", "inverse of an element"},
    {"root", "unique k-th root of an element, or none"},
    {"rootclosure", "maximal root h and m with h^m = g"},
    {"classify", "classify a finitely generated subgroup"},
    {"apply", "apply a morphism to an element"},
    {"compose", "f o g for morphisms f, g"},
    {"fix", "fixed subgroup of a morphism"},
    {"per", "periodic subgroup of a morphism"},
    {"stab", "stabilizer in Aut of an element or subgroup"},
    {"estab", "stabilizer in End of an element"},
    {"cl", "auto-fixed closure of a subgroup"},
    {"ecl", "endo-fixed closure of a subgroup"},
    {"verify", "oracle cross-check: word, fix, stab, roots or closures"},
};

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Exact arithmetic, fixed points and stabilizers in BS(1,n)", "bsn"};
  app.add_option("--n", o.n, "the n of BS(1,n)")
      ->required()
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1'000'000'000'000}));
  app.add_flag("--json", o.json, "print JSON");
  app.add_flag("--verbose", o.verbose, "include derivations");
  CLI::Option* k_opt = app.add_option("--k", o.k, "power or root exponent");
  app.add_option("--bound", o.bound, "oracle box bound")->capture_default_str();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.require_subcommand(1, 1);
  app.allow_extras();
  // Literals are collected as extras: CLI11 would split a positional that
  // looks like "[alpha; beta]" as a bracketed list.
  for (const auto& [name, help] : kCommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  RunResult result;
  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str(), err.str()};
  }
  o.has_k = k_opt->count() > 0;
  CLI::App* command = app.get_subcommands().front();
  o.args = app.remaining();
  for (const auto& a : o.args) {
    if (a.size() > 1 && a[0] == '-' && a[1] == '-') {
      return {2, "", "unknown option " + a + "\n"};
    }
  }

  try {
    const Output r = dispatch(command->get_name(), o);
    result.code = r.code;
    result.out = o.json ? r.data.dump() + "\n" : r.text;
  } catch (const ParseError& e) {
    result = {2, "", std::string("parse error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    result = {3, "", std::string("error (") + to_string(e.kind()) + "): " + e.what() + "\n"};
  } catch (const std::exception& e) {
    result = {1, "", std::string("internal error: ") + e.what() + "\n"};
  }
  return result;
}

}  // namespace bsn::cli
