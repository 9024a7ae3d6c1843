#include <doctest.h>

#include "encode_instances.hpp"
#include "support.hpp"

using namespace morgandk;
using namespace morgandk::testing;

namespace {

const Signature& core() {
  static const Signature sig = check_signature(build_theory(TheoryConfig{}));
  return sig;
}

const Term l0 = Term::constant("l0");

}  // namespace

TEST_SUITE("encode") {
  TEST_CASE("variables are kept") { CHECK(alpha_eq(encode(ast::var("x"), l0), Term::free("x"))); }

  TEST_CASE("dependent sums") {
    Ast s = ast::sig("x", ast::var("A"), ast::eq(ast::var("A"), ast::var("x"), ast::var("x")));
    Term expected = core().resolve(parse("Sig l0 A (x : eps l0 A => Eq l0 A x x)"), {"A"});
    CHECK(alpha_eq(encode(s, l0), expected));
  }

  TEST_CASE("pairs") {
    Ast p = ast::pair("x", ast::var("A"), ast::var("B"), ast::var("a"), ast::var("b"));
    // The family keeps its domain annotation, as in the sum former.
    Term expected = core().resolve(parse("pair l0 A (x : eps l0 A => B) a b"), {"A", "B", "a", "b"});
    CHECK(alpha_eq(encode(p, l0), expected));
  }

  TEST_CASE("external formers are prefixed") {
    CHECK(show(encode(ast::nat(Layer::External), l0)) == "xNat l0");
    CHECK(show(encode(ast::pi("x", ast::var("A"), ast::truth(Layer::External), Layer::External), l0)) ==
          "xPi l0 A (_ : xeps l0 A => xTrue l0)");
    CHECK(show(encode(ast::coerce(ast::nat()), l0)) == "c l0 (Nat l0)");
    CHECK(show(encode(ast::lift(l0, ast::nat()), Term::app(Term::constant("lsuc"), l0))) == "lUp l0 (Nat l0)");
  }

  TEST_CASE("contexts") {
    CHECK(encode_context({}).entries.empty());
    TypingContext ctx = encode_context({{"n", ast::nat(), l0, Layer::Internal},
                                        {"m", ast::nat(Layer::External), l0, Layer::External}});
    REQUIRE(ctx.entries.size() == 2);
    CHECK(show(ctx.entries[0].second) == "eps l0 (Nat l0)");
    CHECK(show(ctx.entries[1].second) == "xeps l0 (xNat l0)");
  }

  TEST_CASE("layer mismatches") {
    CHECK_THROWS_AS(encode(ast::sum(ast::nat(), ast::nat(Layer::External)), l0), LayerError);
    CHECK_THROWS_AS(encode(ast::coerce(ast::nat(Layer::External)), l0), LayerError);
    CHECK_THROWS_AS(encode(ast::up(ast::nat(), ast::zero(Layer::External)), l0), LayerError);
    CHECK_THROWS_AS(encode_context({{"n", ast::nat(), l0, Layer::External}}), LayerError);
  }

  TEST_CASE("soundness on hand-built judgments") {
    const auto judgments = encode_judgments();
    CHECK(judgments.size() >= 12);
    for (const auto& j : judgments) {
      INFO(j.name);
      TypingContext ctx = encode_context(j.context);
      Term term = encode(j.term, j.level);
      Term type = decode(j.layer, j.type_level, encode(j.type, j.level));
      CHECK_NOTHROW(check(core(), ctx, term, type));
    }
  }

  TEST_CASE("soundness fails on a wrong type") {
    auto judgments = encode_judgments();
    const Judgment& j = judgments.at(1);
    REQUIRE(j.name == "zero");
    Term wrong = decode(Layer::Internal, l0, encode(ast::truth(), l0));
    CHECK_THROWS_AS(check(core(), {}, encode(j.term, l0), wrong), TypeError);
  }
}
