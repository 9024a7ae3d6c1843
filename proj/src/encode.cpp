#include "morgandk/corpus.hpp"

namespace morgandk {

namespace ast {

namespace {

Ast node(AstKind kind, Layer layer, std::vector<Ast> kids = {}, std::string binder = {}) {
  return Ast{kind, layer, std::move(binder), std::move(kids), std::nullopt};
}

}  // namespace

Ast var(std::string name) { return node(AstKind::Var, Layer::Internal, {}, std::move(name)); }

Ast univ(Term from, Layer layer) {
  Ast a = node(AstKind::Univ, layer);
  a.from_level = std::move(from);
  return a;
}

Ast falsity(Layer layer) { return node(AstKind::False, layer); }
Ast truth(Layer layer) { return node(AstKind::True, layer); }
Ast nat(Layer layer) { return node(AstKind::Nat, layer); }
Ast pi(std::string x, Ast a, Ast b, Layer layer) { return node(AstKind::Pi, layer, {a, b}, std::move(x)); }
Ast sig(std::string x, Ast a, Ast b, Layer layer) { return node(AstKind::Sig, layer, {a, b}, std::move(x)); }
Ast sum(Ast a, Ast b, Layer layer) { return node(AstKind::Sum, layer, {a, b}); }
Ast eq(Ast a, Ast x, Ast y, Layer layer) { return node(AstKind::Eq, layer, {a, x, y}); }

Ast lift(Term from, Ast a, Layer layer) {
  Ast n = node(AstKind::Lift, layer, {a});
  n.from_level = std::move(from);
  return n;
}

Ast coerce(Ast a) { return node(AstKind::Coerce, Layer::External, {a}); }
Ast tt(Layer layer) { return node(AstKind::Tt, layer); }
Ast zero(Layer layer) { return node(AstKind::Zero, layer); }
Ast succ(Ast n, Layer layer) { return node(AstKind::Succ, layer, {n}); }

Ast lam(std::string x, Ast a, Ast b, Ast body, Layer layer) {
  return node(AstKind::Lam, layer, {a, b, body}, std::move(x));
}

Ast app(std::string x, Ast a, Ast b, Ast f, Ast arg, Layer layer) {
  return node(AstKind::App, layer, {a, b, f, arg}, std::move(x));
}

Ast pair(std::string x, Ast a, Ast b, Ast first, Ast second, Layer layer) {
  return node(AstKind::Pair, layer, {a, b, first, second}, std::move(x));
}

Ast fst(std::string x, Ast a, Ast b, Ast p, Layer layer) { return node(AstKind::Fst, layer, {a, b, p}, std::move(x)); }
Ast snd(std::string x, Ast a, Ast b, Ast p, Layer layer) { return node(AstKind::Snd, layer, {a, b, p}, std::move(x)); }
Ast inl(Ast a, Ast b, Ast v, Layer layer) { return node(AstKind::Inl, layer, {a, b, v}); }
Ast inr(Ast a, Ast b, Ast v, Layer layer) { return node(AstKind::Inr, layer, {a, b, v}); }
Ast refl(Ast a, Ast v, Layer layer) { return node(AstKind::Refl, layer, {a, v}); }
Ast up(Ast a, Ast v) { return node(AstKind::Up, Layer::External, {a, v}); }
Ast down(Ast a, Ast v) { return node(AstKind::Down, Layer::Internal, {a, v}); }

}  // namespace ast

Term decode(Layer layer, const Term& level, const Term& code) {
  return Term::app(Term::constant(layer == Layer::Internal ? "eps" : "xeps"), {level, code});
}

namespace {

std::string layer_name(Layer l) { return l == Layer::Internal ? "internal" : "external"; }

void expect_layer(const Ast& kid, Layer layer, const char* what) {
  if (kid.kind != AstKind::Var && kid.layer != layer) {
    throw LayerError(std::string(what) + ": expected an " + layer_name(layer) + " argument, got an " +
                     layer_name(kid.layer) + " one");
  }
}

class Encoder {
 public:
  Term operator()(const Ast& e, const Term& l) {
    const Layer ly = e.layer;
    auto k = [ly](const std::string& base) { return Term::constant(ly == Layer::External ? "x" + base : base); };
    auto sub = [&](std::size_t n) -> Term {
      const Ast& kid = e.kids[n];
      expect_layer(kid, ly, name(e.kind));
      return (*this)(kid, l);
    };
    // The family of kid `n` over a variable of type kid 0.
    auto family = [&](std::size_t n) {
      Term dom = decode(ly, l, sub(0));
      return Term::lam(e.binder, dom, close(sub(n), e.binder));
    };

    switch (e.kind) {
      case AstKind::Var: return Term::free(e.binder);
      case AstKind::Univ: return Term::app(k("t"), *e.from_level);
      case AstKind::False: return Term::app(k("False"), l);
      case AstKind::True: return Term::app(k("True"), l);
      case AstKind::Nat: return Term::app(k("Nat"), l);
      case AstKind::Pi: return Term::app(k("Pi"), {l, sub(0), family(1)});
      case AstKind::Sig: return Term::app(k("Sig"), {l, sub(0), family(1)});
      case AstKind::Sum: return Term::app(k("Sum"), {l, sub(0), sub(1)});
      case AstKind::Eq: return Term::app(k("Eq"), {l, sub(0), sub(1), sub(2)});
      case AstKind::Lift: {
        expect_layer(e.kids[0], ly, "lift");
        return Term::app(Term::constant(ly == Layer::External ? "xlUp" : "lUp"),
                         {*e.from_level, (*this)(e.kids[0], *e.from_level)});
      }
      case AstKind::Coerce: {
        expect_layer(e.kids[0], Layer::Internal, "coercion");
        return Term::app(Term::constant("c"), {l, (*this)(e.kids[0], l)});
      }
      case AstKind::Tt: return Term::app(Term::constant(ly == Layer::External ? "xtt" : "tt"), l);
      case AstKind::Zero: return Term::app(k("zero"), l);
      case AstKind::Succ: return Term::app(k("succ"), {l, sub(0)});
      case AstKind::Lam: return Term::app(k("fun"), {l, sub(0), family(1), family(2)});
      case AstKind::App: return Term::app(k("apply"), {l, sub(0), family(1), sub(2), sub(3)});
      case AstKind::Pair: return Term::app(k("pair"), {l, sub(0), family(1), sub(2), sub(3)});
      case AstKind::Fst: return Term::app(k("p1"), {l, sub(0), family(1), sub(2)});
      case AstKind::Snd: return Term::app(k("p2"), {l, sub(0), family(1), sub(2)});
      case AstKind::Inl: return Term::app(k("inl"), {l, sub(0), sub(1), sub(2)});
      case AstKind::Inr: return Term::app(k("inr"), {l, sub(0), sub(1), sub(2)});
      case AstKind::Refl: return Term::app(k("refl"), {l, sub(0), sub(1)});
      case AstKind::Up:
      case AstKind::Down: {
        expect_layer(e.kids[0], Layer::Internal, name(e.kind));
        Layer inner = e.kind == AstKind::Up ? Layer::Internal : Layer::External;
        expect_layer(e.kids[1], inner, name(e.kind));
        return Term::app(Term::constant(e.kind == AstKind::Up ? "isoUp" : "isoDown"),
                         {l, (*this)(e.kids[0], l), (*this)(e.kids[1], l)});
      }
    }
    throw LayerError("unknown syntax node");
  }

 private:
  static const char* name(AstKind k) {
    switch (k) {
      case AstKind::Up: return "isoUp";
      case AstKind::Down: return "isoDown";
      default: return "former";
    }
  }
};

}  // namespace

Term encode(const Ast& e, const Term& level) { return Encoder{}(e, level); }

TypingContext encode_context(const std::vector<ContextEntry>& gamma) {
  TypingContext ctx;
  for (const auto& entry : gamma) {
    if (entry.type.kind != AstKind::Var && entry.type.layer != entry.layer) {
      throw LayerError("context entry `" + entry.name + "` has a type of the other layer");
    }
    ctx.entries.emplace_back(entry.name, decode(entry.layer, entry.level, encode(entry.type, entry.level)));
  }
  return ctx;
}

}  // namespace morgandk
