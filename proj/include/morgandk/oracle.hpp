#pragma once

// Semantic oracles for the interval and face algebras.
//
// Interval expressions are compared in the four-element De Morgan algebra,
// which generates the variety of De Morgan algebras: two expressions are
// equal in the free algebra iff they agree under every assignment of their
// generators to DM4. Faces are compared pointwise on the three-valued cube
// {0, 1/2, 1}^n, where interior points separate (i=0) or (i=1) from 1f.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "morgandk/signature.hpp"
#include "morgandk/term.hpp"
#include "morgandk/verdict.hpp"

namespace morgandk {

// Encoded as a pair of bits (low, high); meet and join are bitwise and the
// negation of (x, y) is (not y, not x), which fixes A and B.
enum class DM4Value : std::uint8_t { Bot = 0, A = 1, B = 2, Top = 3 };

DM4Value dm4_meet(DM4Value a, DM4Value b);
DM4Value dm4_join(DM4Value a, DM4Value b);
DM4Value dm4_neg(DM4Value a);
std::string to_string(DM4Value v);
inline constexpr DM4Value dm4_values[] = {DM4Value::Bot, DM4Value::A, DM4Value::B, DM4Value::Top};

struct IExpr {
  enum class Kind { Zero, One, Gen, Neg, Meet, Join };
  Kind kind = Kind::Zero;
  std::string name;  // generator name
  std::vector<IExpr> kids;

  static IExpr zero() { return {Kind::Zero, {}, {}}; }
  static IExpr one() { return {Kind::One, {}, {}}; }
  static IExpr gen(std::string name) { return {Kind::Gen, std::move(name), {}}; }
  static IExpr neg(IExpr a) { return {Kind::Neg, {}, {std::move(a)}}; }
  static IExpr meet(IExpr a, IExpr b) { return {Kind::Meet, {}, {std::move(a), std::move(b)}}; }
  static IExpr join(IExpr a, IExpr b) { return {Kind::Join, {}, {std::move(a), std::move(b)}}; }
};

enum class FacePoint : std::uint8_t { Zero, Half, One };
std::string to_string(FacePoint p);
inline constexpr FacePoint face_points[] = {FacePoint::Zero, FacePoint::Half, FacePoint::One};

struct FExpr {
  enum class Kind { Bot, Top, Eq0, Eq1, Meet, Join };
  Kind kind = Kind::Bot;
  std::vector<IExpr> arg;  // the interval expression of Eq0/Eq1
  std::vector<FExpr> kids;

  static FExpr bot() { return {Kind::Bot, {}, {}}; }
  static FExpr top() { return {Kind::Top, {}, {}}; }
  static FExpr eq0(IExpr e) { return {Kind::Eq0, {std::move(e)}, {}}; }
  static FExpr eq1(IExpr e) { return {Kind::Eq1, {std::move(e)}, {}}; }
  static FExpr meet(FExpr a, FExpr b) { return {Kind::Meet, {}, {std::move(a), std::move(b)}}; }
  static FExpr join(FExpr a, FExpr b) { return {Kind::Join, {}, {std::move(a), std::move(b)}}; }
};

using DM4Assignment = std::map<std::string, DM4Value>;
using FaceAssignment = std::map<std::string, FacePoint>;

class UnboundGenerator : public std::out_of_range {
 public:
  explicit UnboundGenerator(const std::string& name) : std::out_of_range("unbound generator `" + name + "`") {}
};

std::set<std::string> generators(const IExpr& e);
std::set<std::string> generators(const FExpr& f);

DM4Value eval_interval(const IExpr& e, const DM4Assignment& rho);
// Exhaustive over the 4^n assignments of the generators of both sides.
Verdict<DM4Assignment> interval_eq(const IExpr& a, const IExpr& b);

bool eval_face(const FExpr& f, const FaceAssignment& sigma);
// Exhaustive over the 3^n assignments of the generators of both sides.
Verdict<FaceAssignment> face_eq(const FExpr& a, const FExpr& b);

std::string format_assignment(const DM4Assignment& rho);
std::string format_assignment(const FaceAssignment& sigma);

// Terms over 0, 1, sym, Imin, Imax (interval) and 0f, 1f, eq0, eq1, Fmin,
// Fmax (faces). Any other symbol is out of the oracle's domain.
class OutOfDomain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Domain { Interval, Face };

// Variables and opaque constants of interval type become generators.
IExpr interval_of_term(const Term& t);
// A face variable f becomes Eq1(f) for a fresh generator f: it then ranges
// over both truth values independently of every other generator.
FExpr face_of_term(const Term& t);
// The domain an equation lives in, decided by whichever side has an
// algebraic head symbol. Throws OutOfDomain if neither does.
Domain equation_domain(const Term& lhs, const Term& rhs);

using Witness = std::variant<DM4Assignment, FaceAssignment>;
std::string format_witness(const Witness& w);

// Semantic validity of `lhs = rhs` in the given algebra.
Verdict<Witness> check_equation(const Term& lhs, const Term& rhs);
// Pattern variables become generators (repeated ones the same generator).
Verdict<Witness> check_rule_sound(const RewriteRule& r);

// A declared constant whose type states an external equation between
// interval or face expressions, e.g. `Imax_comm` or `Fdiscr`.
struct ExternalEquation {
  std::string name;
  Domain domain;
  Term lhs;
  Term rhs;
};

std::vector<ExternalEquation> external_equations(const Signature& sig, std::size_t fuel = 10000);

}  // namespace morgandk
