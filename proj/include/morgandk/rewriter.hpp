#pragma once

// Reduction for lambda-Pi modulo rewriting: beta, eta and signature rules.
//
// All entry points take a fuel budget. Every root step costs one unit;
// running out raises FuelExhausted instead of returning a term that might
// still have a redex.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "morgandk/signature.hpp"
#include "morgandk/term.hpp"

namespace morgandk {

class FuelExhausted : public std::runtime_error {
 public:
  FuelExhausted() : std::runtime_error("reduction fuel exhausted (possible divergence)") {}
};

struct Fuel {
  std::size_t remaining;
  void spend() {
    if (remaining == 0) throw FuelExhausted();
    --remaining;
  }
};

// Path from the root: for App 0 = function, 1 = argument; for Lam/Pi
// 0 = domain, 1 = body.
using Position = std::vector<int>;

struct TraceStep {
  Position position;
  std::string rule;  // rule name, "beta" or "eta"
};
using Trace = std::vector<TraceStep>;

using Substitution = std::map<std::string, Term>;
using ConvPredicate = std::function<bool(const Term&, const Term&)>;

// Syntactic head matching. Repeated pattern variables must satisfy `conv`.
std::optional<Substitution> match_pattern(const Pattern& p, const Term& t, const ConvPredicate& conv);

class Reducer {
 public:
  Reducer(const Signature& sig, std::size_t fuel, Trace* trace = nullptr);

  Term whnf(const Term& t);
  Term normalize(const Term& t);
  bool convertible(const Term& a, const Term& b);

  std::size_t fuel_left() const { return fuel_->remaining; }

 private:
  Reducer(const Signature& sig, Fuel* shared);

  Term whnf_at(Term t, const Position& at);
  Term normalize_at(const Term& t, const Position& at);
  bool match_at(const Pattern& p, Term& t, Substitution& sub, const Position& at);
  bool same(const Term& a, const Term& b);
  void record(const Position& at, const std::string& rule);

  const Signature& sig_;
  Fuel own_;
  Fuel* fuel_;
  Trace* trace_;
};

Term whnf(const Signature& sig, const Term& t, std::size_t fuel);
Term normalize(const Signature& sig, const Term& t, std::size_t fuel, Trace* trace = nullptr);
bool convertible(const Signature& sig, const Term& a, const Term& b, std::size_t fuel);

// Applies a single recorded step. Throws std::invalid_argument if the step
// does not apply at that position.
Term apply_step(const Signature& sig, const Term& t, const TraceStep& step, std::size_t fuel);
Term replay(const Signature& sig, const Term& t, const Trace& trace, std::size_t fuel);

std::string format_position(const Position& p);

}  // namespace morgandk
