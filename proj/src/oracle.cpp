#include "morgandk/oracle.hpp"

#include <algorithm>

#include "morgandk/parser.hpp"
#include "morgandk/rewriter.hpp"

namespace morgandk {

DM4Value dm4_meet(DM4Value a, DM4Value b) {
  return static_cast<DM4Value>(static_cast<std::uint8_t>(a) & static_cast<std::uint8_t>(b));
}

DM4Value dm4_join(DM4Value a, DM4Value b) {
  return static_cast<DM4Value>(static_cast<std::uint8_t>(a) | static_cast<std::uint8_t>(b));
}

DM4Value dm4_neg(DM4Value a) {
  const auto v = static_cast<std::uint8_t>(a);
  const std::uint8_t low = (v & 2) ? 0 : 1;
  const std::uint8_t high = (v & 1) ? 0 : 2;
  return static_cast<DM4Value>(low | high);
}

std::string to_string(DM4Value v) {
  switch (v) {
    case DM4Value::Bot: return "Bot";
    case DM4Value::A: return "A";
    case DM4Value::B: return "B";
    case DM4Value::Top: return "Top";
  }
  return "?";
}

std::string to_string(FacePoint p) {
  switch (p) {
    case FacePoint::Zero: return "0";
    case FacePoint::Half: return "1/2";
    case FacePoint::One: return "1";
  }
  return "?";
}

namespace {

void collect(const IExpr& e, std::set<std::string>& out) {
  if (e.kind == IExpr::Kind::Gen) out.insert(e.name);
  for (const auto& k : e.kids) collect(k, out);
}

void collect(const FExpr& f, std::set<std::string>& out) {
  for (const auto& a : f.arg) collect(a, out);
  for (const auto& k : f.kids) collect(k, out);
}

template <typename Value, std::size_t N, typename Eval>
Verdict<std::map<std::string, Value>> exhaustive(const std::set<std::string>& gens, const Value (&values)[N],
                                                 Eval&& agree) {
  std::vector<std::string> names(gens.begin(), gens.end());
  std::vector<std::size_t> digits(names.size(), 0);
  std::map<std::string, Value> rho;
  for (;;) {
    for (std::size_t k = 0; k < names.size(); ++k) rho[names[k]] = values[digits[k]];
    if (!agree(rho)) return Verdict<std::map<std::string, Value>>::fails(rho);
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == N) digits[k++] = 0;
    if (k == digits.size()) return Verdict<std::map<std::string, Value>>::success();
  }
}

FacePoint chain_meet(FacePoint a, FacePoint b) { return std::min(a, b); }
FacePoint chain_join(FacePoint a, FacePoint b) { return std::max(a, b); }

FacePoint chain_neg(FacePoint a) {
  switch (a) {
    case FacePoint::Zero: return FacePoint::One;
    case FacePoint::One: return FacePoint::Zero;
    default: return FacePoint::Half;
  }
}

FacePoint eval_chain(const IExpr& e, const FaceAssignment& sigma) {
  switch (e.kind) {
    case IExpr::Kind::Zero: return FacePoint::Zero;
    case IExpr::Kind::One: return FacePoint::One;
    case IExpr::Kind::Gen: {
      auto it = sigma.find(e.name);
      if (it == sigma.end()) throw UnboundGenerator(e.name);
      return it->second;
    }
    case IExpr::Kind::Neg: return chain_neg(eval_chain(e.kids[0], sigma));
    case IExpr::Kind::Meet: return chain_meet(eval_chain(e.kids[0], sigma), eval_chain(e.kids[1], sigma));
    case IExpr::Kind::Join: return chain_join(eval_chain(e.kids[0], sigma), eval_chain(e.kids[1], sigma));
  }
  return FacePoint::Zero;
}

template <typename Map>
std::string format_map(const Map& m) {
  std::string s;
  for (const auto& [name, value] : m) s += (s.empty() ? "" : ", ") + name + " = " + to_string(value);
  return s.empty() ? "(no generators)" : s;
}

}  // namespace

std::set<std::string> generators(const IExpr& e) {
  std::set<std::string> out;
  collect(e, out);
  return out;
}

std::set<std::string> generators(const FExpr& f) {
  std::set<std::string> out;
  collect(f, out);
  return out;
}

DM4Value eval_interval(const IExpr& e, const DM4Assignment& rho) {
  switch (e.kind) {
    case IExpr::Kind::Zero: return DM4Value::Bot;
    case IExpr::Kind::One: return DM4Value::Top;
    case IExpr::Kind::Gen: {
      auto it = rho.find(e.name);
      if (it == rho.end()) throw UnboundGenerator(e.name);
      return it->second;
    }
    case IExpr::Kind::Neg: return dm4_neg(eval_interval(e.kids[0], rho));
    case IExpr::Kind::Meet: return dm4_meet(eval_interval(e.kids[0], rho), eval_interval(e.kids[1], rho));
    case IExpr::Kind::Join: return dm4_join(eval_interval(e.kids[0], rho), eval_interval(e.kids[1], rho));
  }
  return DM4Value::Bot;
}

// Witnesses are searched from the top of the lattice down.
constexpr DM4Value dm4_search_order[] = {DM4Value::Top, DM4Value::A, DM4Value::B, DM4Value::Bot};

Verdict<DM4Assignment> interval_eq(const IExpr& a, const IExpr& b) {
  auto gens = generators(a);
  gens.merge(generators(b));
  return exhaustive(gens, dm4_search_order,
                    [&](const DM4Assignment& rho) { return eval_interval(a, rho) == eval_interval(b, rho); });
}

bool eval_face(const FExpr& f, const FaceAssignment& sigma) {
  switch (f.kind) {
    case FExpr::Kind::Bot: return false;
    case FExpr::Kind::Top: return true;
    case FExpr::Kind::Eq0: return eval_chain(f.arg[0], sigma) == FacePoint::Zero;
    case FExpr::Kind::Eq1: return eval_chain(f.arg[0], sigma) == FacePoint::One;
    case FExpr::Kind::Meet: return eval_face(f.kids[0], sigma) && eval_face(f.kids[1], sigma);
    case FExpr::Kind::Join: return eval_face(f.kids[0], sigma) || eval_face(f.kids[1], sigma);
  }
  return false;
}

Verdict<FaceAssignment> face_eq(const FExpr& a, const FExpr& b) {
  auto gens = generators(a);
  gens.merge(generators(b));
  return exhaustive(gens, face_points,
                    [&](const FaceAssignment& s) { return eval_face(a, s) == eval_face(b, s); });
}

std::string format_assignment(const DM4Assignment& rho) { return format_map(rho); }
std::string format_assignment(const FaceAssignment& sigma) { return format_map(sigma); }

namespace {

const std::set<std::string> interval_ops{"0", "1", "sym", "Imin", "Imax"};
const std::set<std::string> face_ops{"0f", "1f", "eq0", "eq1", "Fmin", "Fmax"};

// Head symbol name and arguments. Operators are recognised by name, so terms
// read without a signature (all names free) translate the same way.
std::pair<std::string, std::vector<Term>> head_of(const Term& t) {
  Spine s = spine(t);
  if (const Const* c = s.head.as<Const>()) return {c->name, s.args};
  if (const Free* f = s.head.as<Free>()) return {f->name, s.args};
  throw OutOfDomain("not an algebraic expression: " + pretty_print(t));
}

void expect_arity(const std::string& name, const std::vector<Term>& args, std::size_t n) {
  if (args.size() != n) {
    throw OutOfDomain("`" + name + "` expects " + std::to_string(n) + " arguments, got " +
                      std::to_string(args.size()));
  }
}

bool is_operator(const Term& t, const std::set<std::string>& ops) {
  Term head = spine(t).head;
  if (const Const* c = head.as<Const>()) return ops.count(c->name) > 0;
  if (const Free* f = head.as<Free>()) return ops.count(f->name) > 0;
  return false;
}

}  // namespace

IExpr interval_of_term(const Term& t) {
  auto [name, args] = head_of(t);
  if (face_ops.count(name)) throw OutOfDomain("face expression where an interval was expected: " + pretty_print(t));
  if (!interval_ops.count(name)) {
    if (!args.empty()) throw OutOfDomain("not an interval expression: " + pretty_print(t));
    return IExpr::gen(name);
  }
  if (name == "0" || name == "1") {
    expect_arity(name, args, 0);
    return name == "0" ? IExpr::zero() : IExpr::one();
  }
  if (name == "sym") {
    expect_arity(name, args, 1);
    return IExpr::neg(interval_of_term(args[0]));
  }
  expect_arity(name, args, 2);
  IExpr a = interval_of_term(args[0]);
  IExpr b = interval_of_term(args[1]);
  return name == "Imin" ? IExpr::meet(std::move(a), std::move(b)) : IExpr::join(std::move(a), std::move(b));
}

FExpr face_of_term(const Term& t) {
  auto [name, args] = head_of(t);
  if (interval_ops.count(name)) throw OutOfDomain("interval expression where a face was expected: " + pretty_print(t));
  if (!face_ops.count(name)) {
    if (!args.empty()) throw OutOfDomain("not a face expression: " + pretty_print(t));
    return FExpr::eq1(IExpr::gen(name));
  }
  if (name == "0f" || name == "1f") {
    expect_arity(name, args, 0);
    return name == "0f" ? FExpr::bot() : FExpr::top();
  }
  if (name == "eq0" || name == "eq1") {
    expect_arity(name, args, 1);
    IExpr e = interval_of_term(args[0]);
    return name == "eq0" ? FExpr::eq0(std::move(e)) : FExpr::eq1(std::move(e));
  }
  expect_arity(name, args, 2);
  FExpr a = face_of_term(args[0]);
  FExpr b = face_of_term(args[1]);
  return name == "Fmin" ? FExpr::meet(std::move(a), std::move(b)) : FExpr::join(std::move(a), std::move(b));
}

Domain equation_domain(const Term& lhs, const Term& rhs) {
  for (const Term* side : {&lhs, &rhs}) {
    if (is_operator(*side, interval_ops)) return Domain::Interval;
    if (is_operator(*side, face_ops)) return Domain::Face;
  }
  throw OutOfDomain("neither side is an interval or face expression");
}

std::string format_witness(const Witness& w) {
  return std::visit([](const auto& m) { return format_assignment(m); }, w);
}

Verdict<Witness> check_equation(const Term& lhs, const Term& rhs) {
  if (equation_domain(lhs, rhs) == Domain::Interval) {
    auto v = interval_eq(interval_of_term(lhs), interval_of_term(rhs));
    return v.holds() ? Verdict<Witness>::success() : Verdict<Witness>::fails(*v.counterexample);
  }
  auto v = face_eq(face_of_term(lhs), face_of_term(rhs));
  return v.holds() ? Verdict<Witness>::success() : Verdict<Witness>::fails(*v.counterexample);
}

Verdict<Witness> check_rule_sound(const RewriteRule& r) {
  if (!interval_ops.count(r.head) && !face_ops.count(r.head)) {
    throw OutOfDomain("rule " + r.name + " is not an interval or face rule");
  }
  return check_equation(r.lhs(), r.rhs);
}

std::vector<ExternalEquation> external_equations(const Signature& sig, std::size_t fuel) {
  std::vector<ExternalEquation> out;
  for (const auto& name : sig.order()) {
    const ConstInfo* info = sig.find(name);
    if (info->kind != ConstKind::Static) continue;
    Reducer red(sig, fuel);
    Term ty = red.whnf(info->type);
    std::set<std::string> used;
    while (const Pi* p = ty.as<Pi>()) {
      std::string x = p->binder == "_" ? "x" : p->binder;
      while (used.count(x)) x += '\'';
      used.insert(x);
      ty = red.whnf(open(p->codomain, Term::free(x)));
    }
    Spine s = spine(ty);
    const Const* head = s.head.as<Const>();
    if (!head || head->name != "xeps" || s.args.size() != 2) continue;
    const Const* level = s.args[0].as<Const>();
    if (!level || level->name != "cL") continue;
    Spine eq = spine(red.whnf(s.args[1]));
    const Const* eq_head = eq.head.as<Const>();
    if (!eq_head || eq_head->name != "xEq" || eq.args.size() != 4) continue;
    const Const* carrier = eq.args[1].as<Const>();
    if (!carrier || (carrier->name != "I" && carrier->name != "F")) continue;
    out.push_back(ExternalEquation{name, carrier->name == "I" ? Domain::Interval : Domain::Face, eq.args[2],
                                   eq.args[3]});
  }
  return out;
}

}  // namespace morgandk
