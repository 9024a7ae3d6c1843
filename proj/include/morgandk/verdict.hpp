#pragma once

#include <optional>
#include <utility>

namespace morgandk {

// Outcome of an oracle or joinability query. A failing verdict carries a
// witness that refutes the claim when replayed.
template <typename Witness>
struct Verdict {
  std::optional<Witness> counterexample;

  static Verdict success() { return Verdict{}; }
  static Verdict fails(Witness w) { return Verdict{std::move(w)}; }
  bool holds() const { return !counterexample.has_value(); }
};

}  // namespace morgandk
