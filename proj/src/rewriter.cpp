#include "morgandk/rewriter.hpp"

namespace morgandk {

namespace {

Position extend(const Position& at, std::size_t zeros, std::optional<int> last = std::nullopt) {
  Position p = at;
  p.insert(p.end(), zeros, 0);
  if (last) p.push_back(*last);
  return p;
}

// Position of argument k in a spine of m arguments rooted at `at`.
Position arg_position(const Position& at, std::size_t m, std::size_t k) { return extend(at, m - 1 - k, 1); }

bool match_syntactic(const Pattern& p, const Term& t, Substitution& sub, const ConvPredicate& conv) {
  if (p.is_var()) {
    auto it = sub.find(p.name);
    if (it != sub.end()) return conv(it->second, t);
    sub.emplace(p.name, t);
    return true;
  }
  Spine s = spine(t);
  const Const* c = s.head.as<Const>();
  if (!c || c->name != p.name || s.args.size() != p.args.size()) return false;
  for (std::size_t k = 0; k < p.args.size(); ++k) {
    if (!match_syntactic(p.args[k], s.args[k], sub, conv)) return false;
  }
  return true;
}

std::vector<Term> tail(const std::vector<Term>& xs, std::size_t from) {
  return std::vector<Term>(xs.begin() + static_cast<std::ptrdiff_t>(from), xs.end());
}

bool same_head(const Term& a, const Term& b) {
  if (const Const* x = a.as<Const>()) {
    const Const* y = b.as<Const>();
    return y && x->name == y->name;
  }
  if (const Free* x = a.as<Free>()) {
    const Free* y = b.as<Free>();
    return y && x->name == y->name;
  }
  if (const Bound* x = a.as<Bound>()) {
    const Bound* y = b.as<Bound>();
    return y && x->index == y->index;
  }
  return false;
}

}  // namespace

std::optional<Substitution> match_pattern(const Pattern& p, const Term& t, const ConvPredicate& conv) {
  Substitution sub;
  if (!match_syntactic(p, t, sub, conv)) return std::nullopt;
  return sub;
}

Reducer::Reducer(const Signature& sig, std::size_t fuel, Trace* trace)
    : sig_(sig), own_{fuel}, fuel_(&own_), trace_(trace) {}

Reducer::Reducer(const Signature& sig, Fuel* shared) : sig_(sig), own_{0}, fuel_(shared), trace_(nullptr) {}

void Reducer::record(const Position& at, const std::string& rule) {
  if (trace_) trace_->push_back(TraceStep{at, rule});
}

bool Reducer::same(const Term& a, const Term& b) {
  Reducer untraced(sig_, fuel_);
  return untraced.convertible(a, b);
}

bool Reducer::match_at(const Pattern& p, Term& t, Substitution& sub, const Position& at) {
  if (p.is_var()) {
    auto it = sub.find(p.name);
    if (it != sub.end()) return same(it->second, t);
    sub.emplace(p.name, t);
    return true;
  }
  t = whnf_at(t, at);
  Spine s = spine(t);
  const Const* c = s.head.as<Const>();
  if (!c || c->name != p.name || s.args.size() != p.args.size()) return false;
  bool ok = true;
  for (std::size_t k = 0; k < p.args.size() && ok; ++k) {
    ok = match_at(p.args[k], s.args[k], sub, arg_position(at, s.args.size(), k));
  }
  t = Term::app(s.head, s.args);
  return ok;
}

Term Reducer::whnf_at(Term t, const Position& at) {
  for (;;) {
    Spine s = spine(t);
    const std::size_t m = s.args.size();
    if (const Lam* l = s.head.as<Lam>(); l && m > 0) {
      fuel_->spend();
      record(extend(at, m - 1), "beta");
      t = Term::app(open(l->body, s.args[0]), tail(s.args, 1));
      continue;
    }
    const Const* c = s.head.as<Const>();
    if (!c) return t;
    const RewriteRule* fired = nullptr;
    Substitution sub;
    for (const auto& r : sig_.rules_for(c->name)) {
      const std::size_t n = r.args.size();
      if (n > m) continue;
      sub.clear();
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) ok = match_at(r.args[k], s.args[k], sub, arg_position(at, m, k));
      if (ok) {
        fired = &r;
        break;
      }
    }
    if (!fired) return Term::app(s.head, s.args);
    fuel_->spend();
    record(extend(at, m - fired->args.size()), fired->name);
    t = Term::app(subst(fired->rhs, sub), tail(s.args, fired->args.size()));
  }
}

Term Reducer::normalize_at(const Term& input, const Position& at) {
  Term t = whnf_at(input, at);
  if (const Lam* l = t.as<Lam>()) {
    std::optional<Term> dom;
    if (l->domain) dom = normalize_at(*l->domain, extend(at, 0, 0));
    auto [x, body] = open_fresh(l->body, l->binder);
    body = normalize_at(body, extend(at, 0, 1));
    if (const App* a = body.as<App>()) {
      const Free* v = a->arg.as<Free>();
      if (v && v->name == x && !occurs_free(a->fn, x)) {
        fuel_->spend();
        record(at, "eta");
        return a->fn;
      }
    }
    return Term::lam(l->binder, dom, close(body, x));
  }
  if (const Pi* p = t.as<Pi>()) {
    Term dom = normalize_at(p->domain, extend(at, 0, 0));
    auto [x, cod] = open_fresh(p->codomain, p->binder);
    cod = normalize_at(cod, extend(at, 0, 1));
    return Term::pi(p->binder, dom, close(cod, x));
  }
  Spine s = spine(t);
  if (s.args.empty()) return t;
  for (std::size_t k = 0; k < s.args.size(); ++k) {
    s.args[k] = normalize_at(s.args[k], arg_position(at, s.args.size(), k));
  }
  Term r = Term::app(s.head, s.args);
  if (s.head.is<Const>()) {
    const std::size_t before = fuel_->remaining;
    Term again = whnf_at(r, at);
    if (fuel_->remaining != before) return normalize_at(again, at);
  }
  return r;
}

bool Reducer::convertible(const Term& a0, const Term& b0) {
  if (alpha_eq(a0, b0)) return true;
  Trace* saved = trace_;
  trace_ = nullptr;
  Term a = whnf_at(a0, {});
  Term b = whnf_at(b0, {});
  trace_ = saved;
  if (alpha_eq(a, b)) return true;
  if (const Sort* s = a.as<Sort>()) {
    const Sort* t = b.as<Sort>();
    return t && s->kind == t->kind;
  }
  const Lam* la = a.as<Lam>();
  const Lam* lb = b.as<Lam>();
  if (la || lb) {
    std::string x = fresh_name(la ? la->binder : lb->binder);
    Term v = Term::free(x);
    Term ba = la ? open(la->body, v) : Term::app(a, v);
    Term bb = lb ? open(lb->body, v) : Term::app(b, v);
    return convertible(ba, bb);
  }
  const Pi* pa = a.as<Pi>();
  const Pi* pb = b.as<Pi>();
  if (pa || pb) {
    if (!pa || !pb || !convertible(pa->domain, pb->domain)) return false;
    Term v = Term::free(fresh_name(pa->binder));
    return convertible(open(pa->codomain, v), open(pb->codomain, v));
  }
  Spine sa = spine(a);
  Spine sb = spine(b);
  if (sa.args.size() != sb.args.size() || !same_head(sa.head, sb.head)) return false;
  for (std::size_t k = 0; k < sa.args.size(); ++k) {
    if (!convertible(sa.args[k], sb.args[k])) return false;
  }
  return true;
}

Term Reducer::whnf(const Term& t) { return whnf_at(t, {}); }
Term Reducer::normalize(const Term& t) { return normalize_at(t, {}); }

Term whnf(const Signature& sig, const Term& t, std::size_t fuel) { return Reducer(sig, fuel).whnf(t); }

Term normalize(const Signature& sig, const Term& t, std::size_t fuel, Trace* trace) {
  return Reducer(sig, fuel, trace).normalize(t);
}

bool convertible(const Signature& sig, const Term& a, const Term& b, std::size_t fuel) {
  return Reducer(sig, fuel).convertible(a, b);
}

namespace {

Term step_at_root(const Signature& sig, const Term& t, const std::string& rule, std::size_t fuel) {
  if (rule == "beta") {
    const App* a = t.as<App>();
    const Lam* l = a ? a->fn.as<Lam>() : nullptr;
    if (!l) throw std::invalid_argument("beta step on a non-redex");
    return open(l->body, a->arg);
  }
  if (rule == "eta") {
    const Lam* l = t.as<Lam>();
    if (!l) throw std::invalid_argument("eta step on a non-abstraction");
    const App* a = l->body.as<App>();
    const Bound* b = a ? a->arg.as<Bound>() : nullptr;
    if (!b || b->index != 0 || uses_outer_binder(a->fn)) throw std::invalid_argument("eta step on a non-redex");
    return open(a->fn, Term::type());
  }
  const RewriteRule* r = sig.rule(rule);
  if (!r) throw std::invalid_argument("unknown rule `" + rule + "`");
  Reducer conv(sig, fuel);
  auto sub = match_pattern(Pattern::constant(r->head, r->args), t,
                           [&conv](const Term& x, const Term& y) { return conv.convertible(x, y); });
  if (!sub) throw std::invalid_argument("rule `" + rule + "` does not match");
  return subst(r->rhs, *sub);
}

Term apply_at(const Signature& sig, const Term& t, const Position& pos, std::size_t depth, const std::string& rule,
              std::size_t fuel) {
  if (depth == pos.size()) return step_at_root(sig, t, rule, fuel);
  const int dir = pos[depth];
  if (const App* a = t.as<App>()) {
    if (dir == 0) return Term::app(apply_at(sig, a->fn, pos, depth + 1, rule, fuel), a->arg);
    return Term::app(a->fn, apply_at(sig, a->arg, pos, depth + 1, rule, fuel));
  }
  if (const Lam* l = t.as<Lam>()) {
    if (dir == 0) {
      if (!l->domain) throw std::invalid_argument("position into a missing domain");
      return Term::lam(l->binder, apply_at(sig, *l->domain, pos, depth + 1, rule, fuel), l->body);
    }
    auto [x, body] = open_fresh(l->body, l->binder);
    return Term::lam(l->binder, l->domain, close(apply_at(sig, body, pos, depth + 1, rule, fuel), x));
  }
  if (const Pi* p = t.as<Pi>()) {
    if (dir == 0) return Term::pi(p->binder, apply_at(sig, p->domain, pos, depth + 1, rule, fuel), p->codomain);
    auto [x, cod] = open_fresh(p->codomain, p->binder);
    return Term::pi(p->binder, p->domain, close(apply_at(sig, cod, pos, depth + 1, rule, fuel), x));
  }
  throw std::invalid_argument("position " + format_position(pos) + " does not exist");
}

}  // namespace

Term apply_step(const Signature& sig, const Term& t, const TraceStep& step, std::size_t fuel) {
  return apply_at(sig, t, step.position, 0, step.rule, fuel);
}

Term replay(const Signature& sig, const Term& t, const Trace& trace, std::size_t fuel) {
  Term cur = t;
  for (const auto& step : trace) cur = apply_step(sig, cur, step, fuel);
  return cur;
}

std::string format_position(const Position& p) {
  if (p.empty()) return "root";
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "." : "") + std::to_string(p[k]);
  return s;
}

}  // namespace morgandk
