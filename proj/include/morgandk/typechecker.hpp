#pragma once

// Bidirectional type checking for lambda-Pi modulo rewriting.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "morgandk/parser.hpp"
#include "morgandk/signature.hpp"
#include "morgandk/term.hpp"

namespace morgandk {

inline constexpr std::size_t default_fuel = 100000;

enum class ErrorKind { Mismatch, NotAFunction, Unbound, SortError, RuleIllTyped, Fuel, Redeclaration };

std::string to_string(ErrorKind kind);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorKind kind, std::string expected, std::string actual, SourceSpan span = {});

  ErrorKind kind() const { return kind_; }
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }
  const SourceSpan& span() const { return span_; }

  // `file:line:col: [kind] expected <term> got <term>`
  std::string render() const;
  TypeError at(const SourceSpan& span) const;
  TypeError as(ErrorKind kind) const;

 private:
  ErrorKind kind_;
  std::string expected_;
  std::string actual_;
  SourceSpan span_;
};

// Innermost entry last.
struct TypingContext {
  std::vector<std::pair<std::string, Term>> entries;

  const Term* lookup(const std::string& name) const;
  TypingContext extended(std::string name, Term type) const;
};

Term infer(const Signature& sig, const TypingContext& ctx, const Term& t, std::size_t fuel = default_fuel);
void check(const Signature& sig, const TypingContext& ctx, const Term& t, const Term& expected,
           std::size_t fuel = default_fuel);
void check_rule(const Signature& sig, const RewriteRule& rule, std::size_t fuel = default_fuel);

// Returns a copy of `sig` extended with `d`; `sig` itself is left untouched.
Signature check_declaration(const Signature& sig, const Declaration& d, std::size_t fuel = default_fuel);
Signature check_signature(const std::vector<Declaration>& decls, std::size_t fuel = default_fuel);

// Appends `decls` to `sig` in place, checking each against the prefix.
void extend_checked(Signature& sig, const std::vector<Declaration>& decls, std::size_t fuel = default_fuel);

}  // namespace morgandk
