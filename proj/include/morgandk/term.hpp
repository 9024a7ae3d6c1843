#pragma once

// Locally nameless terms of the lambda-Pi calculus.
//
// Bound variables are de Bruijn indices, free variables are names. Binder
// names are kept only as printing hints, so structural equality of two
// terms is alpha-equivalence. Terms are immutable and share structure.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace morgandk {

enum class SortKind { Type, Kind };

class Term;

struct Sort {
  SortKind kind;
};
struct Const {
  std::string name;
};
struct Free {
  std::string name;
};
struct Bound {
  std::size_t index;
  std::string hint;
};

namespace detail {
struct Node;
}

class Term {
 public:
  static Term sort(SortKind kind);
  static Term type() { return sort(SortKind::Type); }
  static Term kind() { return sort(SortKind::Kind); }
  static Term constant(std::string name);
  static Term free(std::string name);
  static Term bound(std::size_t index, std::string hint = "x");
  static Term app(Term fn, Term arg);
  static Term app(Term fn, const std::vector<Term>& args);
  static Term lam(std::string binder, std::optional<Term> domain, Term body);
  static Term pi(std::string binder, Term domain, Term codomain);
  // Non-dependent arrow.
  static Term arrow(Term domain, Term codomain);

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const {
    return as<T>() != nullptr;
  }

  // Identity of the underlying node; equal pointers imply alpha-equality.
  const void* id() const { return node_.get(); }

 private:
  explicit Term(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;
};

struct App {
  Term fn;
  Term arg;
};
struct Lam {
  std::string binder;
  std::optional<Term> domain;
  Term body;
};
struct Pi {
  std::string binder;
  Term domain;
  Term codomain;
};

namespace detail {
struct Node {
  std::variant<Sort, Const, Free, Bound, App, Lam, Pi> value;
};
}  // namespace detail

template <class T>
const T* Term::as() const {
  return std::get_if<T>(&node_->value);
}

// Head symbol and argument list of an iterated application.
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine spine(const Term& t);

// Replaces the outermost loose bound variable of `body` by `value`.
Term open(const Term& body, const Term& value);
// Opens with a fresh free variable; returns the variable name and the body.
std::pair<std::string, Term> open_fresh(const Term& body, const std::string& hint);
// Abstracts the free variable `name` into a new outermost bound variable.
Term close(const Term& t, const std::string& name);
// Adds `by` to every loose bound index at or above `cutoff`.
Term shift(const Term& t, std::size_t by, std::size_t cutoff = 0);

// Capture-avoiding substitution of a free variable.
Term subst(const Term& body, const std::string& target, const Term& replacement);
Term subst(const Term& body, const std::map<std::string, Term>& replacements);

bool alpha_eq(const Term& a, const Term& b);
std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, const std::string& name);
// True when `t` mentions the bound variable that a binder directly above it
// introduces (index 0 at the top of `t`).
bool uses_outer_binder(const Term& t);
bool locally_closed(const Term& t);
std::size_t term_size(const Term& t);

// Globally unique names that the surface syntax cannot produce.
std::string fresh_name(const std::string& hint);
// Strips the uniqueness suffix added by fresh_name.
std::string base_name(const std::string& name);

}  // namespace morgandk
