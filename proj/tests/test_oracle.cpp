#include <doctest.h>

#include <set>

#include "morgandk/oracle.hpp"
#include "support.hpp"

using namespace morgandk;
using namespace morgandk::testing;

namespace {

const Signature& sig() { return cubical_sig(); }

IExpr gi(const char* n) { return IExpr::gen(n); }

RewriteRule rule(const std::string& text) {
  DeclaredNames declared;
  for (const auto& n : sig().order()) declared[n] = sig().find(n)->kind == ConstKind::Definable;
  auto decls = parse_file(text, "fixture.dk", declared);
  return make_rule(std::get<RuleDecl>(decls.at(0).value), sig(), decls.at(0).span);
}

// Second oracle: the free De Morgan algebra on generators G is the free
// bounded distributive lattice on the literals {g, not g}. Elements are
// antichains of clauses (join of meets of literals).
using Literal = std::pair<std::string, bool>;
using Clause = std::set<Literal>;
using Dnf = std::set<Clause>;

Dnf absorb(const Dnf& d) {
  Dnf out;
  for (const auto& c : d) {
    bool subsumed = false;
    for (const auto& e : d) {
      if (e != c && std::includes(c.begin(), c.end(), e.begin(), e.end())) subsumed = true;
    }
    if (!subsumed) out.insert(c);
  }
  return out;
}

Dnf dnf_join(const Dnf& a, const Dnf& b) {
  Dnf u = a;
  u.insert(b.begin(), b.end());
  return absorb(u);
}

Dnf dnf_meet(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& c : a) {
    for (const auto& e : b) {
      Clause u = c;
      u.insert(e.begin(), e.end());
      out.insert(u);
    }
  }
  return absorb(out);
}

const Dnf dnf_bot{};
const Dnf dnf_top{Clause{}};

Dnf dnf_neg(const Dnf& d) {
  Dnf acc = dnf_top;
  for (const auto& c : d) {
    Dnf alt = dnf_bot;
    for (const auto& [name, negated] : c) alt = dnf_join(alt, Dnf{Clause{{name, !negated}}});
    acc = dnf_meet(acc, alt);
  }
  return acc;
}

Dnf dnf(const IExpr& e) {
  switch (e.kind) {
    case IExpr::Kind::Zero: return dnf_bot;
    case IExpr::Kind::One: return dnf_top;
    case IExpr::Kind::Gen: return Dnf{Clause{{e.name, false}}};
    case IExpr::Kind::Neg: return dnf_neg(dnf(e.kids[0]));
    case IExpr::Kind::Meet: return dnf_meet(dnf(e.kids[0]), dnf(e.kids[1]));
    case IExpr::Kind::Join: return dnf_join(dnf(e.kids[0]), dnf(e.kids[1]));
  }
  return dnf_bot;
}

std::vector<IExpr> random_exprs(std::uint32_t seed, int count, int depth, const std::vector<std::string>& gens) {
  std::mt19937 rng(seed);
  std::vector<IExpr> out;
  for (int n = 0; n < count; ++n) out.push_back(interval_of_term(random_interval(rng, depth, gens)));
  return out;
}

std::vector<std::string> algebra_heads() { return {"sym", "Imin", "Imax", "eq0", "eq1", "Fmin", "Fmax"}; }

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("DM4 operations") {
    CHECK(dm4_meet(DM4Value::A, DM4Value::B) == DM4Value::Bot);
    CHECK(dm4_join(DM4Value::A, DM4Value::B) == DM4Value::Top);
    CHECK(dm4_neg(DM4Value::A) == DM4Value::A);
    CHECK(dm4_neg(DM4Value::B) == DM4Value::B);
    CHECK(dm4_neg(DM4Value::Bot) == DM4Value::Top);
    CHECK(dm4_neg(DM4Value::Top) == DM4Value::Bot);
  }

  TEST_CASE("interval evaluation") {
    for (DM4Value v : dm4_values) {
      CHECK(eval_interval(IExpr::meet(gi("i"), IExpr::zero()), {{"i", v}}) == DM4Value::Bot);
      CHECK(eval_interval(IExpr::neg(IExpr::neg(gi("i"))), {{"i", v}}) == v);
    }
    CHECK(eval_interval(IExpr::join(gi("i"), IExpr::neg(gi("i"))), {{"i", DM4Value::A}}) == DM4Value::A);
    CHECK_THROWS_AS(eval_interval(gi("k"), {{"i", DM4Value::A}}), UnboundGenerator);
  }

  TEST_CASE("interval equality") {
    CHECK(interval_eq(IExpr::meet(gi("i"), gi("j")), IExpr::meet(gi("j"), gi("i"))).holds());
    CHECK(interval_eq(IExpr::join(IExpr::meet(gi("i"), gi("j")), gi("k")),
                      IExpr::meet(IExpr::join(gi("i"), gi("k")), IExpr::join(gi("j"), gi("k"))))
              .holds());
    auto v = interval_eq(IExpr::join(gi("i"), IExpr::neg(gi("i"))), IExpr::one());
    REQUIRE_FALSE(v.holds());
    CHECK(format_assignment(*v.counterexample) == "i = A");
    CHECK(eval_interval(IExpr::join(gi("i"), IExpr::neg(gi("i"))), *v.counterexample) != DM4Value::Top);
  }

  TEST_CASE("face evaluation") {
    FExpr disjoint = FExpr::meet(FExpr::eq0(gi("i")), FExpr::eq1(gi("i")));
    FExpr endpoints = FExpr::join(FExpr::eq0(gi("i")), FExpr::eq1(gi("i")));
    for (FacePoint p : face_points) {
      CHECK_FALSE(eval_face(disjoint, {{"i", p}}));
      CHECK(eval_face(FExpr::top(), {{"i", p}}));
    }
    CHECK_FALSE(eval_face(endpoints, {{"i", FacePoint::Half}}));
    CHECK(eval_face(FExpr::eq1(IExpr::neg(gi("i"))), {{"i", FacePoint::Zero}}));
    CHECK_THROWS_AS(eval_face(FExpr::eq0(gi("j")), {{"i", FacePoint::Zero}}), UnboundGenerator);
  }

  TEST_CASE("face equality") {
    CHECK(face_eq(FExpr::meet(FExpr::eq0(gi("i")), FExpr::eq1(gi("i"))), FExpr::bot()).holds());
    CHECK(face_eq(FExpr::eq1(IExpr::join(gi("i"), gi("j"))), FExpr::join(FExpr::eq1(gi("i")), FExpr::eq1(gi("j"))))
              .holds());
    auto v = face_eq(FExpr::join(FExpr::eq0(gi("i")), FExpr::eq1(gi("i"))), FExpr::top());
    REQUIRE_FALSE(v.holds());
    CHECK(format_assignment(*v.counterexample) == "i = 1/2");
  }

  TEST_CASE("rule audits") {
    CHECK(check_rule_sound(rule("[i, j] sym (Imin i j) --> Imax (sym i) (sym j).")).holds());
    CHECK(check_rule_sound(rule("[i] Imax i 0 --> i.")).holds());
    auto literal = check_rule_sound(rule("[i] Imax i 1 --> 0."));
    REQUIRE_FALSE(literal.holds());
    const auto* rho = std::get_if<DM4Assignment>(&*literal.counterexample);
    REQUIRE(rho);
    CHECK(*rho == DM4Assignment{{"i", DM4Value::Top}});
    CHECK(check_rule_sound(rule("[e] eq1 (sym e) --> eq0 e.")).holds());
    // Non-linear patterns map to one generator.
    CHECK(check_rule_sound(rule("[i] Imin i i --> i.")).holds());
  }

  TEST_CASE("out of domain") {
    CHECK_THROWS_AS(check_rule_sound(rule("[i, A, B, a, b] p1 i A B (pair i A B a b) --> a.")), OutOfDomain);
    CHECK_THROWS_AS(interval_of_term(resolved(sig(), "Imin i")), OutOfDomain);
    CHECK_THROWS_AS(interval_of_term(resolved(sig(), "eq0 i")), OutOfDomain);
    CHECK_THROWS_AS(face_of_term(resolved(sig(), "Fmin (eq0 i) (lsuc l0)")), OutOfDomain);
    CHECK_THROWS_AS(equation_domain(resolved(sig(), "a"), resolved(sig(), "b")), OutOfDomain);
    CHECK(equation_domain(resolved(sig(), "f"), resolved(sig(), "0f")) == Domain::Face);
  }

  TEST_CASE("every shipped interval and face rule is sound") {
    std::size_t audited = 0;
    const auto heads = algebra_heads();
    for (const auto& r : sig().rules()) {
      if (std::find(heads.begin(), heads.end(), r.head) == heads.end()) continue;
      INFO(r.name);
      auto v = check_rule_sound(r);
      CHECK(v.holds());
      ++audited;
    }
    CHECK(audited >= 25);
  }

  TEST_CASE("every shipped external equation holds") {
    auto eqs = external_equations(sig());
    std::set<std::string> names;
    for (const auto& e : eqs) {
      INFO(e.name << ": " << show(e.lhs) << " = " << show(e.rhs));
      names.insert(e.name);
      CHECK(check_equation(e.lhs, e.rhs).holds());
      // External, not definitional.
      if (e.domain == Domain::Interval) CHECK_FALSE(convertible(sig(), e.lhs, e.rhs, 10000));
    }
    for (const char* n : {"Imax_comm", "Imax_idem", "Imax_dist", "Imin_comm", "Imin_idem", "Imin_dist", "Fdiscr"}) {
      CHECK_MESSAGE(names.count(n), n);
    }
  }

  TEST_CASE("DM4 agrees with the free-algebra normal form on two generators") {
    auto exprs = random_exprs(kSeed, 120, 3, {"i", "j"});
    exprs.push_back(IExpr::join(gi("i"), IExpr::neg(gi("i"))));
    exprs.push_back(IExpr::one());
    exprs.push_back(IExpr::meet(IExpr::join(gi("i"), IExpr::neg(gi("i"))), IExpr::join(gi("j"), IExpr::neg(gi("j")))));
    std::size_t equal = 0;
    for (std::size_t a = 0; a < exprs.size(); ++a) {
      for (std::size_t b = a; b < exprs.size(); ++b) {
        const bool semantic = interval_eq(exprs[a], exprs[b]).holds();
        CHECK(semantic == (dnf(exprs[a]) == dnf(exprs[b])));
        equal += semantic;
      }
    }
    CHECK(equal > exprs.size());
  }

  TEST_CASE("property: interval equality is an equivalence and a congruence") {
    auto exprs = random_exprs(kSeed + 7, 60, 3, {"i", "j"});
    std::mt19937 rng(kSeed + 8);
    for (std::size_t a = 0; a < exprs.size(); ++a) {
      CHECK(interval_eq(exprs[a], exprs[a]).holds());
      for (std::size_t b = 0; b < exprs.size(); ++b) {
        const bool ab = interval_eq(exprs[a], exprs[b]).holds();
        CHECK(ab == interval_eq(exprs[b], exprs[a]).holds());
        if (!ab) continue;
        const IExpr& c = exprs[rng() % exprs.size()];
        CHECK(interval_eq(IExpr::neg(exprs[a]), IExpr::neg(exprs[b])).holds());
        CHECK(interval_eq(IExpr::meet(exprs[a], c), IExpr::meet(exprs[b], c)).holds());
        CHECK(interval_eq(IExpr::join(c, exprs[a]), IExpr::join(c, exprs[b])).holds());
        for (std::size_t d = 0; d < exprs.size(); d += 5) {
          if (interval_eq(exprs[b], exprs[d]).holds()) CHECK(interval_eq(exprs[a], exprs[d]).holds());
        }
      }
    }
  }

  TEST_CASE("counterexamples refute the claim") {
    auto exprs = random_exprs(kSeed + 9, 80, 3, {"i", "j", "k"});
    for (std::size_t a = 0; a + 1 < exprs.size(); a += 2) {
      auto v = interval_eq(exprs[a], exprs[a + 1]);
      if (v.holds()) continue;
      CHECK(eval_interval(exprs[a], *v.counterexample) != eval_interval(exprs[a + 1], *v.counterexample));
    }
  }
}
