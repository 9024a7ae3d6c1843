#pragma once

// Hand-built 2LTT judgments Γ ⊢ t : A at a level, for the translation
// soundness checks.

#include <string>
#include <vector>

#include "morgandk/corpus.hpp"

namespace morgandk::testing {

struct Judgment {
  std::string name;
  std::vector<ContextEntry> context;
  Ast term;
  Ast type;
  Term level;       // the term is encoded at this level
  Term type_level;  // and its type decoded at this one
  Layer layer = Layer::Internal;
};

inline std::vector<Judgment> encode_judgments() {
  using namespace ast;
  const Layer in = Layer::Internal;
  const Layer ex = Layer::External;
  const Term l0 = Term::constant("l0");
  const Term l1 = Term::app(Term::constant("lsuc"), l0);
  const Term l2 = Term::app(Term::constant("lsuc"), l1);

  auto type_var = [&](const std::string& name, Layer layer = Layer::Internal) {
    return ContextEntry{name, univ(l0, layer), l1, layer};
  };
  auto elem = [&](const std::string& name, Ast type, Layer layer = Layer::Internal) {
    return ContextEntry{name, std::move(type), l0, layer};
  };
  const Ast A = var("A");
  const Ast a = var("a");
  const Ast eq_family = eq(A, var("x"), var("x"));

  return {
      {"variable", {type_var("A"), elem("a", A)}, a, A, l0, l0},
      {"zero", {}, zero(), nat(), l0, l0},
      {"successor", {}, succ(zero()), nat(), l0, l0},
      {"unit", {}, tt(), truth(), l0, l0},
      {"reflexivity", {type_var("A"), elem("a", A)}, refl(A, a), eq(A, a, a), l0, l0},
      {"dependent pair",
       {type_var("A"), elem("a", A)},
       pair("x", A, eq_family, a, refl(A, a)),
       sig("x", A, eq_family),
       l0,
       l0},
      {"first projection", {type_var("A"), elem("p", sig("x", A, nat()))}, fst("x", A, nat(), var("p")), A, l0, l0},
      {"second projection", {type_var("A"), elem("p", sig("x", A, nat()))}, snd("x", A, nat(), var("p")), nat(), l0, l0},
      {"abstraction", {type_var("A")}, lam("x", A, A, var("x")), pi("x", A, A), l0, l0},
      {"application",
       {type_var("A"), elem("f", pi("x", A, nat())), elem("a", A)},
       app("x", A, nat(), var("f"), a),
       nat(),
       l0,
       l0},
      {"left injection", {type_var("A"), elem("a", A)}, inl(A, nat(), a), sum(A, nat()), l0, l0},
      {"universe code", {}, nat(), univ(l0), l0, l1},
      {"lift", {type_var("A")}, lift(l0, A), univ(l1), l0, l2},
      {"external zero", {}, zero(ex), nat(ex), l0, l0, ex},
      {"external reflexivity",
       {type_var("A", ex), elem("a", A, ex)},
       refl(A, a, ex),
       eq(A, a, a, ex),
       l0,
       l0,
       ex},
      {"external pair",
       {type_var("A", ex), elem("a", A, ex)},
       pair("x", A, nat(ex), a, zero(ex), ex),
       sig("x", A, nat(ex), ex),
       l0,
       l0,
       ex},
      {"coercion", {type_var("A")}, coerce(A), univ(l0, ex), l0, l1, ex},
      {"isomorphism up", {type_var("A"), elem("a", A)}, up(A, a), coerce(A), l0, l0, ex},
      {"isomorphism down", {type_var("A"), elem("b", coerce(A), ex)}, down(A, var("b")), A, l0, l0, in},
  };
}

}  // namespace morgandk::testing
