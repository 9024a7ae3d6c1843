#include "morgandk/typechecker.hpp"

#include <map>
#include <set>

#include "morgandk/rewriter.hpp"

namespace morgandk {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Mismatch: return "mismatch";
    case ErrorKind::NotAFunction: return "not-a-function";
    case ErrorKind::Unbound: return "unbound";
    case ErrorKind::SortError: return "sort-error";
    case ErrorKind::RuleIllTyped: return "rule-ill-typed";
    case ErrorKind::Fuel: return "fuel";
    case ErrorKind::Redeclaration: return "redeclaration";
  }
  return "error";
}

namespace {

std::string render_error(ErrorKind kind, const std::string& expected, const std::string& actual,
                         const SourceSpan& span) {
  std::string where = span.file.empty() ? "<unknown>" : span.location();
  return where + ": [" + to_string(kind) + "] expected " + expected + " got " + actual;
}

}  // namespace

TypeError::TypeError(ErrorKind kind, std::string expected, std::string actual, SourceSpan span)
    : std::runtime_error(render_error(kind, expected, actual, span)),
      kind_(kind),
      expected_(std::move(expected)),
      actual_(std::move(actual)),
      span_(std::move(span)) {}

std::string TypeError::render() const { return what(); }

TypeError TypeError::at(const SourceSpan& span) const { return TypeError(kind_, expected_, actual_, span); }

TypeError TypeError::as(ErrorKind kind) const { return TypeError(kind, expected_, actual_, span_); }

const Term* TypingContext::lookup(const std::string& name) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

TypingContext TypingContext::extended(std::string name, Term type) const {
  TypingContext out = *this;
  out.entries.emplace_back(std::move(name), std::move(type));
  return out;
}

namespace {

TypeError fuel_error() { return TypeError(ErrorKind::Fuel, "a terminating reduction", "exhausted fuel"); }

class Checker {
 public:
  Checker(const Signature& sig, std::size_t fuel) : sig_(sig), red_(sig, fuel) {}

  Term whnf(const Term& t) { return red_.whnf(t); }
  bool convertible(const Term& a, const Term& b) { return red_.convertible(a, b); }
  const Signature& sig() const { return sig_; }

  Term infer(const TypingContext& ctx, const Term& t) {
    if (const Sort* s = t.as<Sort>()) {
      if (s->kind == SortKind::Kind) throw TypeError(ErrorKind::SortError, "a typable term", "Kind");
      return Term::kind();
    }
    if (const Free* f = t.as<Free>()) {
      if (const Term* ty = ctx.lookup(f->name)) return *ty;
      if (const ConstInfo* c = sig_.find(f->name)) return c->type;
      throw TypeError(ErrorKind::Unbound, "a declared name", f->name);
    }
    if (const Const* c = t.as<Const>()) {
      if (const ConstInfo* info = sig_.find(c->name)) return info->type;
      throw TypeError(ErrorKind::Unbound, "a declared name", c->name);
    }
    if (t.is<Bound>()) throw TypeError(ErrorKind::Unbound, "a well-scoped term", pretty_print(t));
    if (const App* a = t.as<App>()) {
      Term ft = whnf(infer(ctx, a->fn));
      const Pi* p = ft.as<Pi>();
      if (!p) throw TypeError(ErrorKind::NotAFunction, "a function type for " + pretty_print(a->fn), pretty_print(ft));
      check(ctx, a->arg, p->domain);
      return open(p->codomain, a->arg);
    }
    if (const Lam* l = t.as<Lam>()) {
      if (!l->domain) throw TypeError(ErrorKind::Mismatch, "an annotated abstraction", pretty_print(t));
      expect_type_sort(ctx, *l->domain);
      auto [x, body] = open_fresh(l->body, l->binder);
      Term body_type = infer(ctx.extended(x, *l->domain), body);
      if (Term s = whnf(body_type); s.is<Sort>() && s.as<Sort>()->kind == SortKind::Kind) {
        throw TypeError(ErrorKind::SortError, "an abstraction over terms", pretty_print(t));
      }
      return Term::pi(l->binder, *l->domain, close(body_type, x));
    }
    const Pi* p = t.as<Pi>();
    expect_type_sort(ctx, p->domain);
    auto [x, cod] = open_fresh(p->codomain, p->binder);
    Term s = whnf(infer(ctx.extended(x, p->domain), cod));
    if (!s.is<Sort>()) throw TypeError(ErrorKind::SortError, "Type or Kind", pretty_print(s));
    return s;
  }

  void check(const TypingContext& ctx, const Term& t, const Term& expected) {
    if (const Lam* l = t.as<Lam>()) {
      Term e = whnf(expected);
      const Pi* p = e.as<Pi>();
      if (!p) throw TypeError(ErrorKind::Mismatch, pretty_print(e), "an abstraction " + pretty_print(t));
      if (l->domain) {
        expect_type_sort(ctx, *l->domain);
        if (!convertible(*l->domain, p->domain)) {
          throw TypeError(ErrorKind::Mismatch, pretty_print(p->domain), pretty_print(*l->domain));
        }
      }
      std::string x = fresh_name(l->binder);
      Term v = Term::free(x);
      check(ctx.extended(x, p->domain), open(l->body, v), open(p->codomain, v));
      return;
    }
    Term actual = infer(ctx, t);
    if (!convertible(actual, expected)) {
      throw TypeError(ErrorKind::Mismatch, pretty_print(expected), pretty_print(actual));
    }
  }

  // `t` must be a type, i.e. have sort Type.
  void expect_type_sort(const TypingContext& ctx, const Term& t) {
    Term s = whnf(infer(ctx, t));
    const Sort* so = s.as<Sort>();
    if (!so || so->kind != SortKind::Type) throw TypeError(ErrorKind::SortError, "Type", pretty_print(s));
  }

  // `t` must be a type or a kind.
  void expect_sort(const TypingContext& ctx, const Term& t) {
    if (const Sort* so = t.as<Sort>(); so && so->kind == SortKind::Kind) {
      throw TypeError(ErrorKind::SortError, "a type or Type", "Kind");
    }
    Term s = whnf(infer(ctx, t));
    if (!s.is<Sort>()) throw TypeError(ErrorKind::SortError, "Type or Kind", pretty_print(s));
  }

 private:
  const Signature& sig_;
  Reducer red_;
};

std::set<std::string> context_names(const TypingContext& ctx) {
  std::set<std::string> out;
  for (const auto& [name, type] : ctx.entries) out.insert(name);
  return out;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const FuelExhausted&) {
    throw fuel_error();
  }
}

bool same_rigid_head(const Term& a, const Term& b) {
  if (const Const* x = a.as<Const>()) {
    const Const* y = b.as<Const>();
    return y && x->name == y->name;
  }
  if (const Free* x = a.as<Free>()) {
    const Free* y = b.as<Free>();
    return y && x->name == y->name;
  }
  return false;
}

// Types the left-hand side of a rule by decomposing the declared types of its
// constants. Where a nested pattern's type disagrees with the expected domain,
// still unconstrained pattern variables are solved by first-order unification
// (e.g. the endpoints `u`, `v` of a path built with `lam`).
class RuleTyper {
 public:
  RuleTyper(Checker& c, const RewriteRule& r) : c_(c), vars_(r.vars.begin(), r.vars.end()) {}

  Term type_of(const Pattern& p, const std::optional<Term>& expected) {
    if (p.is_var()) {
      auto it = types_.find(p.name);
      if (it == types_.end()) {
        types_.emplace(p.name, *expected);
        order_.push_back(p.name);
        return *expected;
      }
      if (expected) require(it->second, *expected);
      return it->second;
    }
    const ConstInfo* info = c_.sig().find(p.name);
    if (!info) throw TypeError(ErrorKind::Unbound, "a declared name", p.name);
    Term ty = info->type;
    for (const auto& arg : p.args) {
      Term w = c_.whnf(instantiate(ty));
      const Pi* pi = w.as<Pi>();
      if (!pi) throw TypeError(ErrorKind::NotAFunction, "a function type for " + p.name, pretty_print(w));
      type_of(arg, pi->domain);
      ty = open(pi->codomain, arg.to_term());
    }
    if (expected) require(ty, *expected);
    return ty;
  }

  Term instantiate(const Term& t) const { return subst(t, solved_); }

  TypingContext context() const {
    TypingContext ctx;
    for (const auto& v : order_) ctx.entries.emplace_back(v, instantiate(types_.at(v)));
    return ctx;
  }

 private:
  void require(const Term& actual, const Term& expected) {
    if (!unify(actual, expected)) {
      throw TypeError(ErrorKind::Mismatch, pretty_print(instantiate(expected)), pretty_print(instantiate(actual)));
    }
  }

  bool solvable(const Term& t) const {
    const Free* f = t.as<Free>();
    return f && vars_.count(f->name) && !solved_.count(f->name);
  }

  void solve(const std::string& v, const Term& value) {
    Substitution one{{v, value}};
    for (auto& [name, val] : solved_) val = subst(val, one);
    solved_.emplace(v, value);
  }

  bool unify(const Term& a0, const Term& b0) {
    Term a = instantiate(a0);
    Term b = instantiate(b0);
    if (c_.convertible(a, b)) return true;
    a = c_.whnf(a);
    b = c_.whnf(b);
    if (solvable(a) && !occurs_free(b, a.as<Free>()->name)) {
      solve(a.as<Free>()->name, b);
      return true;
    }
    if (solvable(b) && !occurs_free(a, b.as<Free>()->name)) {
      solve(b.as<Free>()->name, a);
      return true;
    }
    const Pi* pa = a.as<Pi>();
    const Pi* pb = b.as<Pi>();
    if (pa && pb) {
      if (!unify(pa->domain, pb->domain)) return false;
      Term x = Term::free(fresh_name(pa->binder));
      return unify(open(pa->codomain, x), open(pb->codomain, x));
    }
    const Lam* la = a.as<Lam>();
    const Lam* lb = b.as<Lam>();
    if (la && lb) {
      Term x = Term::free(fresh_name(la->binder));
      return unify(open(la->body, x), open(lb->body, x));
    }
    Spine sa = spine(a);
    Spine sb = spine(b);
    if (sa.args.empty() || sa.args.size() != sb.args.size() || !same_rigid_head(sa.head, sb.head)) return false;
    for (std::size_t k = 0; k < sa.args.size(); ++k) {
      if (!unify(sa.args[k], sb.args[k])) return false;
    }
    return true;
  }

  Checker& c_;
  std::set<std::string> vars_;
  std::map<std::string, Term> types_;
  std::vector<std::string> order_;
  Substitution solved_;
};

void check_rule_with(Checker& c, const RewriteRule& r) {
  const ConstInfo* head = c.sig().find(r.head);
  if (!head) throw TypeError(ErrorKind::Unbound, "a declared head", r.head);
  if (head->kind != ConstKind::Definable) {
    throw TypeError(ErrorKind::RuleIllTyped, "a definable head", "static constant " + r.head);
  }
  if (head->body && !r.args.empty()) {
    throw TypeError(ErrorKind::RuleIllTyped, "a head without a body", "defined constant " + r.head);
  }
  RuleTyper typer(c, r);
  std::optional<Term> lhs_type;
  try {
    lhs_type = typer.type_of(Pattern::constant(r.head, r.args), std::nullopt);
  } catch (const TypeError& e) {
    throw TypeError(ErrorKind::RuleIllTyped, "well-typed lhs: " + e.expected(), e.actual());
  }
  try {
    c.check(typer.context(), typer.instantiate(r.rhs), typer.instantiate(*lhs_type));
  } catch (const TypeError& e) {
    throw TypeError(ErrorKind::RuleIllTyped, "rhs of type " + e.expected(), e.actual());
  }
}

void add_checked(Signature& sig, const Declaration& d, std::size_t fuel) {
  Checker c(sig, fuel);
  auto add_const = [&](const std::string& name, ConstKind kind, const Term& raw_type) {
    if (sig.contains(name)) throw TypeError(ErrorKind::Redeclaration, "a fresh name", name);
    Term type = sig.resolve(raw_type);
    c.expect_sort({}, type);
    sig.add_constant(ConstInfo{name, kind, type, std::nullopt, d.span});
  };
  if (const auto* s = std::get_if<StaticConst>(&d.value)) {
    add_const(s->name, ConstKind::Static, s->type);
  } else if (const auto* dc = std::get_if<DefinableConst>(&d.value)) {
    add_const(dc->name, ConstKind::Definable, dc->type);
  } else if (const auto* def = std::get_if<Definition>(&d.value)) {
    if (sig.contains(def->name)) throw TypeError(ErrorKind::Redeclaration, "a fresh name", def->name);
    Term body = sig.resolve(def->body);
    std::optional<Term> declared;
    if (def->type) {
      declared = sig.resolve(*def->type);
      c.expect_sort({}, *declared);
      c.check({}, body, *declared);
    }
    Term type = declared ? *declared : c.infer({}, body);
    sig.add_constant(ConstInfo{def->name, ConstKind::Definable, type, body, d.span});
    sig.add_rule(RewriteRule{def->name + ":=", def->name, {}, body, {}, d.span});
  } else {
    const auto& rd = std::get<RuleDecl>(d.value);
    RewriteRule r = make_rule(rd, sig, d.span);
    check_rule_with(c, r);
    sig.add_rule(std::move(r));
  }
}

}  // namespace

Term infer(const Signature& sig, const TypingContext& ctx, const Term& t, std::size_t fuel) {
  return guarded([&] {
    Checker c(sig, fuel);
    return c.infer(ctx, sig.resolve(t, context_names(ctx)));
  });
}

void check(const Signature& sig, const TypingContext& ctx, const Term& t, const Term& expected, std::size_t fuel) {
  guarded([&] {
    Checker c(sig, fuel);
    auto locals = context_names(ctx);
    c.check(ctx, sig.resolve(t, locals), sig.resolve(expected, locals));
    return 0;
  });
}

void check_rule(const Signature& sig, const RewriteRule& rule, std::size_t fuel) {
  guarded([&] {
    Checker c(sig, fuel);
    check_rule_with(c, rule);
    return 0;
  });
}

void extend_checked(Signature& sig, const std::vector<Declaration>& decls, std::size_t fuel) {
  for (const auto& d : decls) {
    try {
      guarded([&] {
        add_checked(sig, d, fuel);
        return 0;
      });
    } catch (const TypeError& e) {
      throw e.at(d.span);
    }
  }
}

Signature check_declaration(const Signature& sig, const Declaration& d, std::size_t fuel) {
  Signature out = sig;
  extend_checked(out, {d}, fuel);
  return out;
}

Signature check_signature(const std::vector<Declaration>& decls, std::size_t fuel) {
  Signature sig;
  extend_checked(sig, decls, fuel);
  return sig;
}

}  // namespace morgandk
