#include "bsn/io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace bsn {

namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::size_t at, const std::string& expected) const {
    std::string token = at < text_.size() ? std::string(text_.substr(at, 1)) : "";
    std::string shown = token.empty() ? "end of input" : "'" + token + "'";
    throw ParseError(at, token,
                     "unexpected " + shown + " at position " + std::to_string(at) +
                         " (expected " + expected + ")");
  }

  void expect(std::string_view lit) {
    skip_space();
    if (text_.substr(pos_, lit.size()) != lit) fail(pos_, "'" + std::string(lit) + "'");
    pos_ += lit.size();
  }

  bool accept(std::string_view lit) {
    skip_space();
    if (text_.substr(pos_, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  // Optional sign followed by decimal digits.
  std::string_view integer_token() {
    skip_space();
    const std::size_t start = pos_;
    if (!done() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail(digits, "a decimal integer");
    return text_.substr(start, pos_ - start);
  }

  std::int64_t small_integer() {
    skip_space();
    const std::size_t start = pos_;
    std::string_view tok = integer_token();
    if (tok.front() == '+') tok.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(start, std::string(tok),
                       "integer '" + std::string(tok) + "' out of range at position " +
                           std::to_string(start));
    }
    return v;
  }

  ZnElem ring(const BaseRef& base) {
    skip_space();
    const std::size_t start = pos_;
    std::string_view num = integer_token();
    std::string_view den = "1";
    if (accept("/")) {
      skip_space();
      const std::size_t den_start = pos_;
      while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == den_start) fail(den_start, "a positive denominator");
      den = text_.substr(den_start, pos_ - den_start);
    }
    const std::string literal(text_.substr(start, pos_ - start));
    Integer a(std::string(num.front() == '+' ? num.substr(1) : num));
    Integer b{std::string(den)};
    if (b == 0) {
      throw ParseError(start, literal,
                       "zero denominator in '" + literal + "' at position " +
                           std::to_string(start));
    }
    auto z = zn_from_rational(Rational(a, b), base);
    if (!z) {
      throw ParseError(start, literal,
                       "'" + literal + "' at position " + std::to_string(start) +
                           " is not in Z[1/" + std::to_string(base->n()) + "]");
    }
    return *z;
  }

  void finish() {
    skip_space();
    if (!done()) fail(pos_, "end of input");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string derivation_text(const FixDerivation& d) {
  std::ostringstream out;
  out << "kappa " << d.kappa.get_str() << "\n"
      << "modulus " << d.modulus.get_str() << "\n"
      << "c_tilde " << d.c_tilde << "\n"
      << "q_core " << d.q_core.get_str() << "\n";
  if (d.c0) out << "c0 " << d.c0->get_str() << "\n";
  return out.str();
}

std::string tuple_text(const std::vector<std::int64_t>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

std::string integers_text(const std::vector<Integer>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += v[i].get_str();
  }
  return out;
}

std::string derivation_text(const StabDerivation& d) {
  std::ostringstream out;
  out << "mu " << to_string(d.mu) << "\n"
      << "d " << d.d.get_str() << "\n"
      << "gamma' " << to_string(d.gamma_prime) << "\n"
      << "mu' " << d.mu_prime.get_str() << "\n"
      << "prime orders " << integers_text(d.prime_orders) << "\n"
      << "order of n " << d.n_order.get_str() << "\n";
  auto sets = [&](const char* label,
                  const std::vector<std::vector<std::vector<std::int64_t>>>& l) {
    for (std::size_t j = 0; j < l.size(); ++j) {
      out << label << "[" << j << "]";
      for (const auto& s : l[j]) out << ' ' << tuple_text(s);
      out << "\n";
    }
  };
  sets("L", d.lsets);
  sets("-L", d.sign_lsets);
  return out.str();
}

json derivation_json(const FixDerivation& d) {
  json out = {{"kappa", d.kappa.get_str()},
              {"modulus", d.modulus.get_str()},
              {"c_tilde", d.c_tilde},
              {"q_core", d.q_core.get_str()}};
  if (d.c0) out["c0"] = d.c0->get_str();
  return out;
}

json derivation_json(const StabDerivation& d) {
  json orders = json::array();
  for (const Integer& o : d.prime_orders) orders.push_back(o.get_str());
  return {{"mu", to_string(d.mu)},
          {"d", d.d.get_str()},
          {"gamma_prime", to_string(d.gamma_prime)},
          {"mu_prime", d.mu_prime.get_str()},
          {"prime_orders", orders},
          {"n_order", d.n_order.get_str()},
          {"lsets", d.lsets},
          {"sign_lsets", d.sign_lsets}};
}

}  // namespace

ZnElem parse_zn(std::string_view text, const BaseRef& base) {
  Cursor cur(text);
  ZnElem z = cur.ring(base);
  cur.finish();
  return z;
}

BsElem parse_elem(std::string_view text, const BaseRef& base) {
  Cursor cur(text);
  cur.expect("(");
  ZnElem gamma = cur.ring(base);
  cur.expect(";");
  const std::int64_t c = cur.small_integer();
  cur.expect(")");
  cur.finish();
  return {gamma, c};
}

Morphism parse_morphism(std::string_view text, const BaseRef& base) {
  Cursor cur(text);
  if (cur.accept("<<")) {
    ZnElem gamma = cur.ring(base);
    cur.expect(";");
    const std::int64_t c = cur.small_integer();
    cur.expect(">>");
    cur.finish();
    return TypeII{{gamma, c}};
  }
  cur.skip_space();
  if (!cur.accept("[")) cur.fail(cur.pos(), "'[' or '<<'");
  ZnElem alpha = cur.ring(base);
  cur.expect(";");
  ZnElem beta = cur.ring(base);
  cur.expect("]");
  cur.finish();
  return AffinePair(alpha, beta);
}

std::string format_fix(const FixResult& fix) {
  return std::visit(Overloaded{[](const FixWhole&) { return std::string("whole"); },
                               [](const FixKernel&) { return std::string("kernel"); },
                               [](const FixCyclic& c) {
                                 return "cyclic generator " + to_string(c.generator);
                               },
                               [](const FixTrivial&) { return std::string("trivial"); }},
                    fix);
}

std::string format_fix(const FixOutcome& fix, bool verbose) {
  std::string out = format_fix(fix.result) + "\n";
  if (verbose && fix.derivation) out += derivation_text(*fix.derivation);
  return out;
}

std::string format_stab(const StabResult& stab, bool verbose) {
  return std::visit(
      Overloaded{[](const StabTrivial&) { return std::string("trivial\n"); },
                 [](const StabKernelTranslations&) {
                   return std::string("kernel translations [1; beta]\n");
                 },
                 [&](const StabLattice& l) {
                   std::string out = "lattice rank " + std::to_string(l.rank) + "\n";
                   for (std::size_t i = 0; i < l.generators.size(); ++i) {
                     const bool torsion = l.has_torsion && i + 1 == l.generators.size();
                     out += (torsion ? "torsion " : "generator ") +
                            to_string(Morphism(l.generators[i])) + "\n";
                   }
                   if (verbose && l.derivation) out += derivation_text(*l.derivation);
                   return out;
                 }},
      stab);
}

std::string format_estab(const EStabResult& estab) {
  std::string out = std::visit(
      Overloaded{[](const EStabAllTranslations&) {
                   return std::string("type I [1; beta], beta in Z[1/n]\n");
                 },
                 [](const EStabParametric& p) {
                   std::string line = "type I [1 - (" + p.coeff.get_str() +
                                      ") beta; beta], beta in " + p.tau.get_str() +
                                      " Z[1/n]";
                   if (p.excluded_beta) line += ", beta != " + to_string(*p.excluded_beta);
                   return line + "\n";
                 },
                 [](const EStabDiagonal&) {
                   return std::string("type I [alpha; 0], alpha != 0\n");
                 }},
      estab.type_i);
  out += "type II " + (estab.type_ii ? to_string(Morphism(*estab.type_ii)) : "none") + "\n";
  return out;
}

json to_json(const ZnElem& a) { return to_string(a); }

json to_json(const BsElem& g) { return {{"gamma", to_string(g.gamma)}, {"c", g.c}}; }

json to_json(const Morphism& f) {
  return std::visit(
      Overloaded{[](const AffinePair& a) -> json {
                   return {{"type", "affine"},
                           {"alpha", to_string(a.alpha())},
                           {"beta", to_string(a.beta())}};
                 },
                 [](const TypeII& t) -> json {
                   return {{"type", "type_ii"},
                           {"gamma", to_string(t.target.gamma)},
                           {"c", t.target.c}};
                 }},
      f);
}

json to_json(const FixResult& fix) {
  return std::visit(Overloaded{[](const FixWhole&) -> json { return {{"type", "whole"}}; },
                               [](const FixKernel&) -> json { return {{"type", "kernel"}}; },
                               [](const FixCyclic& c) -> json {
                                 return {{"type", "cyclic"},
                                         {"generator", to_json(c.generator)}};
                               },
                               [](const FixTrivial&) -> json {
                                 return {{"type", "trivial"}};
                               }},
                    fix);
}

json to_json(const FixOutcome& fix, bool verbose) {
  json out = to_json(fix.result);
  if (verbose && fix.derivation) out["derivation"] = derivation_json(*fix.derivation);
  return out;
}

json to_json(const StabResult& stab, bool verbose) {
  return std::visit(
      Overloaded{[](const StabTrivial&) -> json { return {{"type", "trivial"}}; },
                 [](const StabKernelTranslations&) -> json {
                   return {{"type", "kernel_translations"}};
                 },
                 [&](const StabLattice& l) -> json {
                   json gens = json::array();
                   for (const AffinePair& a : l.generators) {
                     gens.push_back({{"alpha", to_string(a.alpha())},
                                     {"beta", to_string(a.beta())}});
                   }
                   json out = {{"type", "lattice"}, {"generators", gens}, {"rank", l.rank}};
                   if (verbose && l.derivation) {
                     out["derivation"] = derivation_json(*l.derivation);
                   }
                   return out;
                 }},
      stab);
}

json to_json(const EStabResult& estab) {
  json type_i = std::visit(
      Overloaded{[](const EStabAllTranslations&) -> json {
                   return {{"type", "all_translations"}};
                 },
                 [](const EStabParametric& p) -> json {
                   json out = {{"type", "parametric"},
                               {"coeff", p.coeff.get_str()},
                               {"tau", p.tau.get_str()}};
                   if (p.excluded_beta) out["excluded_beta"] = to_string(*p.excluded_beta);
                   return out;
                 },
                 [](const EStabDiagonal&) -> json { return {{"type", "diagonal"}}; }},
      estab.type_i);
  json out = {{"type_i", type_i}};
  if (estab.type_ii) {
    out["type_ii"] = {{"gamma", to_string(estab.type_ii->target.gamma)},
                      {"c", estab.type_ii->target.c}};
  }
  return out;
}

}  // namespace bsn
