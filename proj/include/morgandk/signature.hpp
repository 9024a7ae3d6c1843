#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "morgandk/parser.hpp"
#include "morgandk/term.hpp"

namespace morgandk {

// First-order left-hand side pattern.
struct Pattern {
  enum class Kind { Var, Const };
  Kind kind = Kind::Var;
  std::string name;
  std::vector<Pattern> args;

  static Pattern var(std::string name) { return Pattern{Kind::Var, std::move(name), {}}; }
  static Pattern constant(std::string name, std::vector<Pattern> args = {}) {
    return Pattern{Kind::Const, std::move(name), std::move(args)};
  }
  bool is_var() const { return kind == Kind::Var; }
  // Pattern variables become Free names.
  Term to_term() const;
  void collect_vars(std::vector<std::string>& out) const;
};

struct RewriteRule {
  std::string name;  // e.g. "Imin.3"; definitions unfold with "tSig:="
  std::string head;
  std::vector<Pattern> args;
  Term rhs;  // pattern variables occur as Free names
  std::vector<std::string> vars;
  SourceSpan span;

  Term lhs() const;
  bool left_linear() const;
};

enum class ConstKind { Static, Definable };

struct ConstInfo {
  std::string name;
  ConstKind kind = ConstKind::Static;
  Term type;
  std::optional<Term> body;
  SourceSpan span;
  std::size_t index = 0;  // declaration position
};

// Constants and rewrite rules. Mutation is only used while building; the
// checker hands out signatures that are never modified afterwards.
class Signature {
 public:
  const ConstInfo* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const std::vector<RewriteRule>& rules_for(const std::string& head) const;
  const RewriteRule* rule(const std::string& name) const;
  // Every rule, in declaration order.
  std::vector<RewriteRule> rules() const;
  const std::vector<std::string>& order() const { return order_; }
  std::size_t size() const { return constants_.size(); }

  // Turns Free names declared here (and not listed in `locals`) into constants.
  Term resolve(const Term& t, const std::set<std::string>& locals = {}) const;

  void add_constant(ConstInfo info);
  void add_rule(RewriteRule rule);

 private:
  std::map<std::string, ConstInfo> constants_;
  std::vector<std::string> order_;
  std::map<std::string, std::vector<RewriteRule>> rules_;
  std::vector<std::string> rule_order_;
};

// Builds the rewrite rule for a parsed rule declaration. Names in the lhs that
// are not pattern variables become constant patterns.
RewriteRule make_rule(const RuleDecl& decl, const Signature& sig, const SourceSpan& span);

// Collects declarations into a signature without type checking. Used by the
// confluence analyzer, which only needs the rules.
Signature assemble_unchecked(const std::vector<Declaration>& decls);

}  // namespace morgandk
