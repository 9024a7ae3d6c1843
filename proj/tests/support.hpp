#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "morgandk/corpus.hpp"
#include "morgandk/parser.hpp"
#include "morgandk/rewriter.hpp"
#include "morgandk/signature.hpp"
#include "morgandk/term.hpp"
#include "morgandk/typechecker.hpp"

namespace morgandk::testing {

inline constexpr unsigned kSeed = 20240611;

inline Term parse(const std::string& text) { return parse_term(text); }

// 2LTT plus the cubical fragment, the example level and the filling parameters.
inline const Signature& cubical_sig() {
  static const Signature sig = [] {
    TheoryConfig cfg;
    cfg.cubical = true;
    auto decls = build_theory(cfg);
    auto fill = filling_declarations();
    decls.insert(decls.end(), fill.begin(), fill.end());
    return check_signature(decls);
  }();
  return sig;
}

inline Term resolved(const Signature& sig, const std::string& text) { return sig.resolve(parse_term(text)); }

inline Term nf(const Signature& sig, const std::string& text, std::size_t fuel = 10000) {
  return normalize(sig, resolved(sig, text), fuel);
}

inline std::string show(const Term& t) { return pretty_print(t); }

// Random well-scoped terms over a few free names and constants.
class TermGen {
 public:
  explicit TermGen(unsigned seed = kSeed) : rng_(seed) {}

  Term operator()(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 6);
    switch (pick(rng_)) {
      case 0: return Term::free(one_of(free_names_));
      case 1: return Term::constant(one_of(constants_));
      case 2: return Term::type();
      case 3:
      case 4: return Term::app((*this)(depth - 1), (*this)(depth - 1));
      case 5: {
        const std::string x = one_of(free_names_);
        std::optional<Term> dom;
        if (coin()) dom = (*this)(depth - 1);
        return Term::lam(x, dom, close((*this)(depth - 1), x));
      }
      default: {
        const std::string x = one_of(free_names_);
        Term dom = (*this)(depth - 1);
        return Term::pi(x, dom, close((*this)(depth - 1), x));
      }
    }
  }

  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
  std::mt19937& rng() { return rng_; }

 private:
  const std::string& one_of(const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }

  std::mt19937 rng_;
  std::vector<std::string> free_names_{"x", "y", "z", "f"};
  std::vector<std::string> constants_{"c", "d", "Imin"};
};

// Random interval expressions over 0, 1, sym, Imin, Imax and the given
// generators, as resolved terms.
inline Term random_interval(std::mt19937& rng, int depth, const std::vector<std::string>& gens) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 6);
  const int k = pick(rng);
  if (k == 0) return Term::constant("0");
  if (k == 1) return Term::constant("1");
  if (k <= 3) return Term::free(gens[std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng)]);
  if (k == 4) return Term::app(Term::constant("sym"), random_interval(rng, depth - 1, gens));
  return Term::app(Term::constant(k == 5 ? "Imin" : "Imax"),
                   {random_interval(rng, depth - 1, gens), random_interval(rng, depth - 1, gens)});
}

inline Term random_face(std::mt19937& rng, int depth, const std::vector<std::string>& gens) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 5);
  const int k = pick(rng);
  if (k == 0) return Term::constant("0f");
  if (k == 1) return Term::constant("1f");
  if (k <= 3) {
    return Term::app(Term::constant(k == 2 ? "eq0" : "eq1"), random_interval(rng, depth <= 0 ? 0 : depth - 1, gens));
  }
  return Term::app(Term::constant(k == 4 ? "Fmin" : "Fmax"),
                   {random_face(rng, depth - 1, gens), random_face(rng, depth - 1, gens)});
}

// Every occurrence of constant `name` replaced by `value` (closed).
inline Term replace_constant(const Term& t, const std::string& name, const Term& value) {
  if (const auto* c = t.as<Const>()) return c->name == name ? value : t;
  if (const auto* a = t.as<App>()) {
    return Term::app(replace_constant(a->fn, name, value), replace_constant(a->arg, name, value));
  }
  if (const auto* l = t.as<Lam>()) {
    std::optional<Term> dom;
    if (l->domain) dom = replace_constant(*l->domain, name, value);
    return Term::lam(l->binder, dom, replace_constant(l->body, name, value));
  }
  if (const auto* p = t.as<Pi>()) {
    return Term::pi(p->binder, replace_constant(p->domain, name, value), replace_constant(p->codomain, name, value));
  }
  return t;
}

// The same term with every binder name changed.
inline Term rename_binders(const Term& t, const std::string& suffix = "'") {
  if (const auto* a = t.as<App>()) return Term::app(rename_binders(a->fn, suffix), rename_binders(a->arg, suffix));
  if (const auto* l = t.as<Lam>()) {
    std::optional<Term> dom;
    if (l->domain) dom = rename_binders(*l->domain, suffix);
    return Term::lam(l->binder + suffix, dom, rename_binders(l->body, suffix));
  }
  if (const auto* p = t.as<Pi>()) {
    return Term::pi(p->binder + suffix, rename_binders(p->domain, suffix), rename_binders(p->codomain, suffix));
  }
  return t;
}

// Equal up to alpha, with the same names and pattern variables.
inline bool same_declaration(const Declaration& a, const Declaration& b) {
  if (a.value.index() != b.value.index() || a.name() != b.name()) return false;
  return std::visit(
      [&](const auto& x) {
        using V = std::decay_t<decltype(x)>;
        const auto& y = std::get<V>(b.value);
        if constexpr (std::is_same_v<V, RuleDecl>) {
          if (x.vars.size() != y.vars.size()) return false;
          for (std::size_t k = 0; k < x.vars.size(); ++k) {
            if (x.vars[k].name != y.vars[k].name) return false;
          }
          return alpha_eq(x.lhs, y.lhs) && alpha_eq(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<V, Definition>) {
          if (x.type.has_value() != y.type.has_value()) return false;
          return (!x.type || alpha_eq(*x.type, *y.type)) && alpha_eq(x.body, y.body);
        } else {
          return alpha_eq(x.type, y.type);
        }
      },
      a.value);
}

}  // namespace morgandk::testing
