#include "morgandk/term.hpp"

#include <atomic>
#include <functional>

namespace morgandk {

Term Term::sort(SortKind kind) {
  return Term(std::make_shared<const detail::Node>(detail::Node{Sort{kind}}));
}
Term Term::constant(std::string name) {
  return Term(std::make_shared<const detail::Node>(detail::Node{Const{std::move(name)}}));
}
Term Term::free(std::string name) {
  return Term(std::make_shared<const detail::Node>(detail::Node{Free{std::move(name)}}));
}
Term Term::bound(std::size_t index, std::string hint) {
  return Term(std::make_shared<const detail::Node>(detail::Node{Bound{index, std::move(hint)}}));
}
Term Term::app(Term fn, Term arg) {
  return Term(std::make_shared<const detail::Node>(detail::Node{App{std::move(fn), std::move(arg)}}));
}
Term Term::app(Term fn, const std::vector<Term>& args) {
  for (const auto& a : args) fn = app(std::move(fn), a);
  return fn;
}
Term Term::lam(std::string binder, std::optional<Term> domain, Term body) {
  return Term(std::make_shared<const detail::Node>(
      detail::Node{Lam{std::move(binder), std::move(domain), std::move(body)}}));
}
Term Term::pi(std::string binder, Term domain, Term codomain) {
  return Term(std::make_shared<const detail::Node>(
      detail::Node{Pi{std::move(binder), std::move(domain), std::move(codomain)}}));
}
Term Term::arrow(Term domain, Term codomain) {
  return pi("_", std::move(domain), shift(codomain, 1));
}

Spine spine(const Term& t) {
  std::vector<Term> rev;
  Term head = t;
  while (const App* a = head.as<App>()) {
    rev.push_back(a->arg);
    head = a->fn;
  }
  return Spine{head, std::vector<Term>(rev.rbegin(), rev.rend())};
}

namespace {

// Generic bottom-up map that rebuilds only changed nodes. `leaf` is called on
// Free and Bound nodes with the current binder depth.
Term map_leaves(const Term& t, std::size_t depth,
                const std::function<std::optional<Term>(const Term&, std::size_t)>& leaf) {
  if (t.is<Free>() || t.is<Bound>()) {
    auto r = leaf(t, depth);
    return r ? *r : t;
  }
  if (const App* a = t.as<App>()) {
    Term f = map_leaves(a->fn, depth, leaf);
    Term x = map_leaves(a->arg, depth, leaf);
    if (f.id() == a->fn.id() && x.id() == a->arg.id()) return t;
    return Term::app(f, x);
  }
  if (const Lam* l = t.as<Lam>()) {
    std::optional<Term> dom;
    if (l->domain) dom = map_leaves(*l->domain, depth, leaf);
    Term body = map_leaves(l->body, depth + 1, leaf);
    if (body.id() == l->body.id() && (!dom || dom->id() == l->domain->id())) return t;
    return Term::lam(l->binder, dom, body);
  }
  if (const Pi* p = t.as<Pi>()) {
    Term dom = map_leaves(p->domain, depth, leaf);
    Term cod = map_leaves(p->codomain, depth + 1, leaf);
    if (dom.id() == p->domain.id() && cod.id() == p->codomain.id()) return t;
    return Term::pi(p->binder, dom, cod);
  }
  return t;
}

bool any_leaf(const Term& t, std::size_t depth,
              const std::function<bool(const Term&, std::size_t)>& pred) {
  if (t.is<Free>() || t.is<Bound>()) return pred(t, depth);
  if (const App* a = t.as<App>()) return any_leaf(a->fn, depth, pred) || any_leaf(a->arg, depth, pred);
  if (const Lam* l = t.as<Lam>())
    return (l->domain && any_leaf(*l->domain, depth, pred)) || any_leaf(l->body, depth + 1, pred);
  if (const Pi* p = t.as<Pi>())
    return any_leaf(p->domain, depth, pred) || any_leaf(p->codomain, depth + 1, pred);
  return false;
}

}  // namespace

Term shift(const Term& t, std::size_t by, std::size_t cutoff) {
  if (by == 0) return t;
  return map_leaves(t, cutoff, [by](const Term& leaf, std::size_t depth) -> std::optional<Term> {
    const Bound* b = leaf.as<Bound>();
    if (b && b->index >= depth) return Term::bound(b->index + by, b->hint);
    return std::nullopt;
  });
}

Term open(const Term& body, const Term& value) {
  return map_leaves(body, 0, [&value](const Term& leaf, std::size_t depth) -> std::optional<Term> {
    const Bound* b = leaf.as<Bound>();
    if (!b || b->index < depth) return std::nullopt;
    if (b->index == depth) return shift(value, depth);
    return Term::bound(b->index - 1, b->hint);
  });
}

std::pair<std::string, Term> open_fresh(const Term& body, const std::string& hint) {
  std::string name = fresh_name(hint);
  return {name, open(body, Term::free(name))};
}

Term close(const Term& t, const std::string& name) {
  return map_leaves(t, 0, [&name](const Term& leaf, std::size_t depth) -> std::optional<Term> {
    if (const Free* f = leaf.as<Free>(); f && f->name == name) return Term::bound(depth, base_name(name));
    if (const Bound* b = leaf.as<Bound>(); b && b->index >= depth) return Term::bound(b->index + 1, b->hint);
    return std::nullopt;
  });
}

Term subst(const Term& body, const std::string& target, const Term& replacement) {
  return map_leaves(body, 0, [&](const Term& leaf, std::size_t depth) -> std::optional<Term> {
    if (const Free* f = leaf.as<Free>(); f && f->name == target) return shift(replacement, depth);
    return std::nullopt;
  });
}

Term subst(const Term& body, const std::map<std::string, Term>& replacements) {
  if (replacements.empty()) return body;
  return map_leaves(body, 0, [&](const Term& leaf, std::size_t depth) -> std::optional<Term> {
    if (const Free* f = leaf.as<Free>()) {
      auto it = replacements.find(f->name);
      if (it != replacements.end()) return shift(it->second, depth);
    }
    return std::nullopt;
  });
}

bool alpha_eq(const Term& a, const Term& b) {
  if (a.id() == b.id()) return true;
  if (const Sort* s = a.as<Sort>()) {
    const Sort* t = b.as<Sort>();
    return t && s->kind == t->kind;
  }
  if (const Const* c = a.as<Const>()) {
    const Const* d = b.as<Const>();
    return d && c->name == d->name;
  }
  if (const Free* f = a.as<Free>()) {
    const Free* g = b.as<Free>();
    return g && f->name == g->name;
  }
  if (const Bound* x = a.as<Bound>()) {
    const Bound* y = b.as<Bound>();
    return y && x->index == y->index;
  }
  if (const App* x = a.as<App>()) {
    const App* y = b.as<App>();
    return y && alpha_eq(x->fn, y->fn) && alpha_eq(x->arg, y->arg);
  }
  if (const Lam* x = a.as<Lam>()) {
    const Lam* y = b.as<Lam>();
    if (!y || x->domain.has_value() != y->domain.has_value()) return false;
    if (x->domain && !alpha_eq(*x->domain, *y->domain)) return false;
    return alpha_eq(x->body, y->body);
  }
  const Pi* x = a.as<Pi>();
  const Pi* y = b.as<Pi>();
  return x && y && alpha_eq(x->domain, y->domain) && alpha_eq(x->codomain, y->codomain);
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  any_leaf(t, 0, [&out](const Term& leaf, std::size_t) {
    if (const Free* f = leaf.as<Free>()) out.insert(f->name);
    return false;
  });
  return out;
}

bool occurs_free(const Term& t, const std::string& name) {
  return any_leaf(t, 0, [&name](const Term& leaf, std::size_t) {
    const Free* f = leaf.as<Free>();
    return f && f->name == name;
  });
}

bool uses_outer_binder(const Term& t) {
  return any_leaf(t, 0, [](const Term& leaf, std::size_t depth) {
    const Bound* b = leaf.as<Bound>();
    return b && b->index == depth;
  });
}

bool locally_closed(const Term& t) {
  return !any_leaf(t, 0, [](const Term& leaf, std::size_t depth) {
    const Bound* b = leaf.as<Bound>();
    return b && b->index >= depth;
  });
}

std::size_t term_size(const Term& t) {
  if (const App* a = t.as<App>()) return 1 + term_size(a->fn) + term_size(a->arg);
  if (const Lam* l = t.as<Lam>()) return 1 + (l->domain ? term_size(*l->domain) : 0) + term_size(l->body);
  if (const Pi* p = t.as<Pi>()) return 1 + term_size(p->domain) + term_size(p->codomain);
  return 1;
}

std::string fresh_name(const std::string& hint) {
  static std::atomic<std::size_t> counter{0};
  return base_name(hint) + "#" + std::to_string(counter.fetch_add(1));
}

std::string base_name(const std::string& name) {
  auto pos = name.find('#');
  return pos == std::string::npos ? name : name.substr(0, pos);
}

}  // namespace morgandk
