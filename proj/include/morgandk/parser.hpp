#pragma once

// Reader and printer for the `.dk`-style theory format:
//
//   Lev : Type.                          static constant
//   def eps : i : Lev -> T i -> Type.    definable constant (may head rules)
//   def tSig := (i : Lev => ...).        transparent definition
//   [i] eps (lsuc i) (t i) --> T i.      rewrite rule(s), several per `.`
//   (; comments, nesting allowed ;)
//
// Identifiers not bound by a binder are produced as Free names; resolving
// them to constants is the checker's job.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "morgandk/term.hpp"

namespace morgandk {

struct SourceSpan {
  std::string file;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  std::string location() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, const std::string& message);
  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

struct PatternVar {
  std::string name;
  std::optional<std::size_t> arity;  // accepted, ignored
};

struct StaticConst {
  std::string name;
  Term type;
};
struct DefinableConst {
  std::string name;
  Term type;
};
struct Definition {
  std::string name;
  std::optional<Term> type;
  Term body;
};
struct RuleDecl {
  std::vector<PatternVar> vars;
  Term lhs;
  Term rhs;
};

struct Declaration {
  std::variant<StaticConst, DefinableConst, Definition, RuleDecl> value;
  SourceSpan span;

  // Declared name, or the head constant for a rule.
  std::string name() const;
  bool is_rule() const { return std::holds_alternative<RuleDecl>(value); }
};

// Names declared so far, mapped to whether they are definable. Threading one
// table through several parse_file calls lets a file add rules to constants
// declared in an earlier file.
using DeclaredNames = std::map<std::string, bool>;

std::vector<Declaration> parse_file(std::string_view text, const std::string& file_name,
                                    DeclaredNames& declared);
std::vector<Declaration> parse_file(std::string_view text, const std::string& file_name = "<input>");

Term parse_term(std::string_view text);

std::string pretty_print(const Term& t);
std::string print_declaration(const Declaration& d);
std::string print_declarations(const std::vector<Declaration>& decls);

}  // namespace morgandk
