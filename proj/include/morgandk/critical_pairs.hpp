#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "morgandk/rewriter.hpp"
#include "morgandk/signature.hpp"
#include "morgandk/term.hpp"
#include "morgandk/verdict.hpp"

namespace morgandk {

// Overlap of `inner_rule`'s lhs at `position` inside `outer_rule`'s lhs.
// Variables of the overlap are Free names.
struct CriticalPair {
  std::string outer_rule;
  std::string inner_rule;
  Position position;
  Term overlap;
  Term outer_reduct;  // rewrite the root with the outer rule
  Term inner_reduct;  // rewrite at `position` with the inner rule
};

// Every overlap between the given rules, found by syntactic first-order
// unification. Deduplicated up to renaming of variables.
std::vector<CriticalPair> critical_pairs(const std::vector<RewriteRule>& rules);

using NormalFormPair = std::pair<Term, Term>;

// Holds iff both reducts normalise to alpha-equal terms. Throws
// FuelExhausted when either side runs out of fuel.
Verdict<NormalFormPair> joinable(const Signature& sig, const CriticalPair& cp, std::size_t fuel);

std::string describe(const CriticalPair& cp);

}  // namespace morgandk
