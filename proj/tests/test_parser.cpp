#include <doctest.h>

#include "support.hpp"

using namespace morgandk;
using namespace morgandk::testing;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_file(text, "fixture.dk");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

// Every shipped file except the quarantined fixture, in load order.
std::vector<std::string> shipped_names() {
  std::vector<std::string> names;
  for (const auto& f : theory_files()) {
    if (f.name.find('/') == std::string::npos) names.push_back(f.name);
  }
  return names;
}

}  // namespace

TEST_SUITE("parser") {
  TEST_CASE("static constant with an arrow type") {
    auto decls = parse_file("Lev : Type.\nT : Lev -> Type.");
    REQUIRE(decls.size() == 2);
    const auto* t = std::get_if<StaticConst>(&decls[1].value);
    REQUIRE(t);
    CHECK(t->name == "T");
    CHECK(alpha_eq(t->type, Term::arrow(Term::free("Lev"), Term::type())));
  }

  TEST_CASE("rule with five pattern variables") {
    const std::string text =
        "Lev : Type.\ndef T : Lev -> Type.\ndef eps : i : Lev -> T i -> Type.\n"
        "def Sig : i : Lev -> A : T i -> (eps i A -> T i) -> T i.\n"
        "def pair : i : Lev -> A : T i -> B : (eps i A -> T i) -> a : eps i A -> eps i (B a) -> eps i (Sig i A B).\n"
        "def p1 : i : Lev -> A : T i -> B : (eps i A -> T i) -> eps i (Sig i A B) -> eps i A.\n"
        "[i,A,B,a,b] p1 i A B (pair i A B a b) --> a.";
    auto decls = parse_file(text);
    const auto* r = std::get_if<RuleDecl>(&decls.back().value);
    REQUIRE(r);
    CHECK(r->vars.size() == 5);
    CHECK(decls.back().name() == "p1");
    CHECK(alpha_eq(r->rhs, Term::free("a")));
  }

  TEST_CASE("empty input") { CHECK(parse_file("").empty()); }

  TEST_CASE("comments nest") {
    auto decls = parse_file("(; outer (; inner ;) still outer ;) Lev : Type.");
    CHECK(decls.size() == 1);
  }

  TEST_CASE("terms") {
    CHECK(alpha_eq(parse("x : A => x"), Term::lam("x", Term::free("A"), Term::bound(0))));
    Term expected = Term::app(Term::app(Term::free("Imax"), Term::app(Term::free("sym"), Term::free("i"))),
                              Term::free("j"));
    CHECK(alpha_eq(parse("Imax (sym i) j"), expected));
    Term pi = Term::pi("i", Term::free("Lev"),
                       Term::app(Term::free("T"), Term::app(Term::free("lsuc"), Term::bound(0))));
    CHECK(alpha_eq(parse("i : Lev -> T (lsuc i)"), pi));
  }

  TEST_CASE("associativity and binding") {
    CHECK(alpha_eq(parse("f a b c"), parse("((f a) b) c")));
    CHECK(alpha_eq(parse("A -> B -> C"), parse("A -> (B -> C)")));
    CHECK(alpha_eq(parse("x => y => x"), parse("x => (y => x)")));
    const Pi* p = parse("x : A -> B x").as<Pi>();
    REQUIRE(p);
    CHECK(uses_outer_binder(p->codomain));
    CHECK(alpha_eq(parse("A : T i => f A"), Term::lam("A", parse("T i"), close(parse("f A"), "A"))));
  }

  TEST_CASE("pretty printing") {
    CHECK(show(Term::type()) == "Type");
    CHECK(alpha_eq(parse(show(parse("x => x"))), parse("x => x")));
    CHECK(show(parse("x => x")) == "x => x");
    const ConstInfo* tsig = cubical_sig().find("tSig");
    REQUIRE(tsig);
    REQUIRE(tsig->body);
    CHECK(alpha_eq(cubical_sig().resolve(parse(show(*tsig->body))), *tsig->body));
  }

  TEST_CASE("numerals are identifiers") {
    Spine s = spine(parse("Imin 0 1"));
    REQUIRE(s.args.size() == 2);
    CHECK(s.args[0].as<Free>()->name == "0");
    CHECK(s.args[1].as<Free>()->name == "1");
  }

  TEST_CASE("pattern variable arities are accepted") {
    auto decls = parse_file("A : Type.\ndef f : A -> A.\n[x : 0] f x --> x.");
    const auto* r = std::get_if<RuleDecl>(&decls.back().value);
    REQUIRE(r);
    CHECK(r->vars[0].arity == std::optional<std::size_t>(0));
  }

  TEST_CASE("errors carry a location") {
    CHECK(parse_error("Lev : Type").find("fixture.dk:1:") == 0);
    CHECK(parse_error("Lev : Type.\nT : Lev -> .").find("fixture.dk:2:") == 0);
    CHECK(parse_error("(; open").find("unterminated comment") != std::string::npos);
    CHECK(parse_error("A : Type.\nf : A -> A.\n[x] f x --> x.").find("not a definable constant") != std::string::npos);
    CHECK(parse_error("A : Type.\ndef f : A -> A.\n[x] f x --> y.").find("unbound variable `y`") != std::string::npos);
    CHECK(parse_error("A : Type.\ndef f : A -> A.\n[x, y] f x --> x.").find("does not occur") != std::string::npos);
    CHECK(parse_error("[x] g x --> x.").find("not declared") != std::string::npos);
    CHECK(parse_error("A : Type.\nA : Type.").find("redeclaration") != std::string::npos);
  }

  TEST_CASE("round trip over every shipped file") {
    DeclaredNames first_names, second_names;
    for (const auto& name : shipped_names()) {
      auto first = parse_file(theory_text(name), name, first_names);
      const std::string printed = print_declarations(first);
      auto second = parse_file(printed, name, second_names);
      REQUIRE(first.size() == second.size());
      for (std::size_t k = 0; k < first.size(); ++k) {
        INFO(name << ": " << print_declaration(first[k]));
        CHECK(same_declaration(first[k], second[k]));
      }
    }
  }

  TEST_CASE("property: printing random terms re-parses to the same term") {
    TermGen gen;
    for (int n = 0; n < 300; ++n) {
      Term t = gen(4);
      INFO(show(t));
      // Constants print as their names and come back as free names.
      CHECK(show(parse(show(t))) == show(t));
    }
  }
}
