#include "morgandk/signature.hpp"

#include <algorithm>
#include <stdexcept>

namespace morgandk {

Term Pattern::to_term() const {
  if (is_var()) return Term::free(name);
  std::vector<Term> xs;
  xs.reserve(args.size());
  for (const auto& a : args) xs.push_back(a.to_term());
  return Term::app(Term::constant(name), xs);
}

void Pattern::collect_vars(std::vector<std::string>& out) const {
  if (is_var()) {
    out.push_back(name);
    return;
  }
  for (const auto& a : args) a.collect_vars(out);
}

Term RewriteRule::lhs() const { return Pattern::constant(head, args).to_term(); }

bool RewriteRule::left_linear() const {
  std::vector<std::string> seen;
  for (const auto& a : args) a.collect_vars(seen);
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

const ConstInfo* Signature::find(const std::string& name) const {
  auto it = constants_.find(name);
  return it == constants_.end() ? nullptr : &it->second;
}

const std::vector<RewriteRule>& Signature::rules_for(const std::string& head) const {
  static const std::vector<RewriteRule> none;
  auto it = rules_.find(head);
  return it == rules_.end() ? none : it->second;
}

const RewriteRule* Signature::rule(const std::string& name) const {
  for (const auto& [head, rs] : rules_) {
    for (const auto& r : rs) {
      if (r.name == name) return &r;
    }
  }
  return nullptr;
}

std::vector<RewriteRule> Signature::rules() const {
  std::vector<RewriteRule> out;
  for (const auto& name : rule_order_) out.push_back(*rule(name));
  return out;
}

Term Signature::resolve(const Term& t, const std::set<std::string>& locals) const {
  std::map<std::string, Term> repl;
  for (const auto& n : free_vars(t)) {
    if (!locals.count(n) && contains(n)) repl.emplace(n, Term::constant(n));
  }
  return subst(t, repl);
}

void Signature::add_constant(ConstInfo info) {
  info.index = order_.size();
  order_.push_back(info.name);
  std::string name = info.name;
  constants_.insert_or_assign(name, std::move(info));
}

void Signature::add_rule(RewriteRule rule) {
  rule_order_.push_back(rule.name);
  rules_[rule.head].push_back(std::move(rule));
}

namespace {

Pattern to_pattern(const Term& t, const std::set<std::string>& vars) {
  Spine s = spine(t);
  std::string name;
  if (const Free* f = s.head.as<Free>()) {
    name = f->name;
  } else if (const Const* c = s.head.as<Const>()) {
    name = c->name;
  } else {
    throw std::invalid_argument("pattern is not first-order");
  }
  if (vars.count(name)) {
    if (!s.args.empty()) throw std::invalid_argument("applied pattern variable `" + name + "`");
    return Pattern::var(name);
  }
  std::vector<Pattern> args;
  for (const auto& a : s.args) args.push_back(to_pattern(a, vars));
  return Pattern::constant(name, std::move(args));
}

}  // namespace

RewriteRule make_rule(const RuleDecl& decl, const Signature& sig, const SourceSpan& span) {
  std::set<std::string> vars;
  std::vector<std::string> names;
  for (const auto& v : decl.vars) {
    vars.insert(v.name);
    names.push_back(v.name);
  }
  Pattern lhs = to_pattern(decl.lhs, vars);
  std::string name = lhs.name + "." + std::to_string(sig.rules_for(lhs.name).size() + 1);
  return RewriteRule{std::move(name), lhs.name, std::move(lhs.args), sig.resolve(decl.rhs, vars), std::move(names),
                     span};
}

Signature assemble_unchecked(const std::vector<Declaration>& decls) {
  Signature sig;
  for (const auto& d : decls) {
    if (const auto* s = std::get_if<StaticConst>(&d.value)) {
      sig.add_constant(ConstInfo{s->name, ConstKind::Static, s->type, std::nullopt, d.span});
    } else if (const auto* c = std::get_if<DefinableConst>(&d.value)) {
      sig.add_constant(ConstInfo{c->name, ConstKind::Definable, c->type, std::nullopt, d.span});
    } else if (const auto* def = std::get_if<Definition>(&d.value)) {
      Term body = sig.resolve(def->body);
      sig.add_constant(ConstInfo{def->name, ConstKind::Definable, def->type.value_or(Term::type()), body, d.span});
      RewriteRule unfold{def->name + ":=", def->name, {}, body, {}, d.span};
      sig.add_rule(std::move(unfold));
    }
  }
  // Rules last, so patterns can mention constants declared after them.
  for (const auto& d : decls) {
    if (const auto* r = std::get_if<RuleDecl>(&d.value)) sig.add_rule(make_rule(*r, sig, d.span));
  }
  return sig;
}

}  // namespace morgandk
