#include "morgandk/critical_pairs.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "morgandk/parser.hpp"

namespace morgandk {

namespace {

using PatternSubst = std::map<std::string, Pattern>;

Pattern walk(const Pattern& p, const PatternSubst& s) {
  if (!p.is_var()) return p;
  auto it = s.find(p.name);
  return it == s.end() ? p : walk(it->second, s);
}

bool occurs(const std::string& v, const Pattern& p, const PatternSubst& s) {
  Pattern q = walk(p, s);
  if (q.is_var()) return q.name == v;
  for (const auto& a : q.args) {
    if (occurs(v, a, s)) return true;
  }
  return false;
}

bool unify(const Pattern& a, const Pattern& b, PatternSubst& s) {
  Pattern x = walk(a, s);
  Pattern y = walk(b, s);
  if (x.is_var() && y.is_var() && x.name == y.name) return true;
  if (x.is_var()) {
    if (occurs(x.name, y, s)) return false;
    s.emplace(x.name, y);
    return true;
  }
  if (y.is_var()) return unify(y, x, s);
  if (x.name != y.name || x.args.size() != y.args.size()) return false;
  for (std::size_t k = 0; k < x.args.size(); ++k) {
    if (!unify(x.args[k], y.args[k], s)) return false;
  }
  return true;
}

Pattern resolve(const Pattern& p, const PatternSubst& s) {
  Pattern q = walk(p, s);
  if (q.is_var()) return q;
  for (auto& a : q.args) a = resolve(a, s);
  return q;
}

Pattern rename(const Pattern& p, const std::map<std::string, std::string>& names) {
  if (p.is_var()) return Pattern::var(names.at(p.name));
  Pattern q = p;
  for (auto& a : q.args) a = rename(a, names);
  return q;
}

struct Site {
  std::vector<std::size_t> path;  // argument indices from the root
  const Pattern* node;
};

void collect_sites(const Pattern& p, std::vector<std::size_t>& path, std::vector<Site>& out) {
  if (p.is_var()) return;
  out.push_back(Site{path, &p});
  for (std::size_t k = 0; k < p.args.size(); ++k) {
    path.push_back(k);
    collect_sites(p.args[k], path, out);
    path.pop_back();
  }
}

Position term_position(const Pattern& root, const std::vector<std::size_t>& path, std::size_t inner_arity) {
  Position pos;
  const Pattern* cur = &root;
  for (std::size_t k : path) {
    pos.insert(pos.end(), cur->args.size() - 1 - k, 0);
    pos.push_back(1);
    cur = &cur->args[k];
  }
  pos.insert(pos.end(), cur->args.size() - inner_arity, 0);
  return pos;
}

Term to_term(const Pattern& p) { return p.to_term(); }

Substitution term_subst(const PatternSubst& s, const std::set<std::string>& vars) {
  Substitution out;
  for (const auto& v : vars) out.emplace(v, to_term(resolve(Pattern::var(v), s)));
  return out;
}

// The resolved outer lhs with the subterm at `path` replaced by `replacement`
// applied to the arguments the inner rule does not consume.
Term rebuild(const Pattern& p, const std::vector<std::size_t>& path, std::size_t depth, std::size_t inner_arity,
             const Term& replacement) {
  if (depth == path.size()) {
    std::vector<Term> rest;
    for (std::size_t k = inner_arity; k < p.args.size(); ++k) rest.push_back(to_term(p.args[k]));
    return Term::app(replacement, rest);
  }
  std::vector<Term> args;
  for (std::size_t k = 0; k < p.args.size(); ++k) {
    args.push_back(k == path[depth] ? rebuild(p.args[k], path, depth + 1, inner_arity, replacement)
                                    : to_term(p.args[k]));
  }
  return Term::app(Term::constant(p.name), args);
}

void preorder_vars(const Term& t, std::vector<std::string>& out) {
  Spine s = spine(t);
  if (const Free* f = s.head.as<Free>()) {
    if (std::find(out.begin(), out.end(), f->name) == out.end()) out.push_back(f->name);
  }
  for (const auto& a : s.args) preorder_vars(a, out);
}

// Renames overlap variables back to readable names, in order of appearance.
std::map<std::string, Term> readable_names(const Term& overlap) {
  std::vector<std::string> vars;
  preorder_vars(overlap, vars);
  std::map<std::string, Term> out;
  std::set<std::string> used;
  for (const auto& v : vars) {
    std::string base = v.substr(0, v.find('\''));
    std::string name = base;
    for (int k = 1; used.count(name); ++k) name = base + std::to_string(k);
    used.insert(name);
    out.emplace(v, Term::free(name));
  }
  return out;
}

std::string canonical_key(const CriticalPair& cp) {
  std::vector<std::string> vars;
  preorder_vars(cp.overlap, vars);
  std::map<std::string, Term> numbered;
  for (std::size_t k = 0; k < vars.size(); ++k) numbered.emplace(vars[k], Term::free("v" + std::to_string(k)));
  return cp.outer_rule + "|" + cp.inner_rule + "|" + format_position(cp.position) + "|" +
         pretty_print(subst(cp.overlap, numbered));
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const std::vector<RewriteRule>& rules) {
  std::vector<CriticalPair> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const RewriteRule& outer = rules[i];
    const Pattern outer_lhs = Pattern::constant(outer.head, outer.args);
    std::set<std::string> outer_vars(outer.vars.begin(), outer.vars.end());
    std::vector<Site> sites;
    std::vector<std::size_t> path;
    collect_sites(outer_lhs, path, sites);

    for (std::size_t j = 0; j < rules.size(); ++j) {
      const RewriteRule& inner = rules[j];
      std::map<std::string, std::string> names;
      std::set<std::string> inner_vars;
      for (const auto& v : inner.vars) {
        std::string n = v;
        while (outer_vars.count(n) || inner_vars.count(n)) n += '\'';
        names.emplace(v, n);
        inner_vars.insert(n);
      }
      std::vector<Pattern> inner_args;
      for (const auto& a : inner.args) inner_args.push_back(rename(a, names));
      Substitution inner_rename;
      for (const auto& [from, to] : names) inner_rename.emplace(from, Term::free(to));
      Term inner_rhs = subst(inner.rhs, inner_rename);

      for (const auto& site : sites) {
        const Pattern& sub = *site.node;
        if (sub.name != inner.head || inner.args.size() > sub.args.size()) continue;
        const bool at_root = site.path.empty() && inner.args.size() == sub.args.size();
        if (at_root && j <= i) continue;

        PatternSubst s;
        bool ok = true;
        for (std::size_t k = 0; k < inner_args.size() && ok; ++k) ok = unify(sub.args[k], inner_args[k], s);
        if (!ok) continue;

        std::set<std::string> all_vars = outer_vars;
        all_vars.insert(inner_vars.begin(), inner_vars.end());
        Substitution sigma = term_subst(s, all_vars);
        Pattern instance = resolve(outer_lhs, s);

        CriticalPair cp{outer.name,
                        inner.name,
                        term_position(outer_lhs, site.path, inner.args.size()),
                        to_term(instance),
                        subst(outer.rhs, sigma),
                        rebuild(instance, site.path, 0, inner.args.size(), subst(inner_rhs, sigma))};
        auto readable = readable_names(cp.overlap);
        cp.overlap = subst(cp.overlap, readable);
        cp.outer_reduct = subst(cp.outer_reduct, readable);
        cp.inner_reduct = subst(cp.inner_reduct, readable);
        if (seen.insert(canonical_key(cp)).second) out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

Verdict<NormalFormPair> joinable(const Signature& sig, const CriticalPair& cp, std::size_t fuel) {
  Term a = normalize(sig, cp.outer_reduct, fuel);
  Term b = normalize(sig, cp.inner_reduct, fuel);
  if (alpha_eq(a, b)) return Verdict<NormalFormPair>::success();
  return Verdict<NormalFormPair>::fails({a, b});
}

std::string describe(const CriticalPair& cp) {
  return pretty_print(cp.overlap) + " [" + cp.outer_rule + " / " + cp.inner_rule + " at " +
         format_position(cp.position) + "]: " + pretty_print(cp.outer_reduct) + " <- . -> " +
         pretty_print(cp.inner_reduct);
}

}  // namespace morgandk
