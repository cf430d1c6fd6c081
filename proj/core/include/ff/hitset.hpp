#pragma once

#include <vector>

#include "ff/ast.hpp"
#include "ff/checker.hpp"

namespace ff {

/// A collection of non-empty pair sets to hit.
struct Collection {
  std::vector<PairSet> sets;
};

enum class MhsMode { Minimum, Minimal };

/// Exact minimum hitting set via branch and bound, then lexicographic
/// refinement: among all optimum-size hitting sets, returns the least under
/// the canonical pair order. Empty collection yields the empty set.
/// Throws Error if any member set is empty.
PairSet minimum_hitting_set(const Collection& c);

/// Greedy hitting set (descending hit count, ties broken toward the smaller
/// pair) pruned to minimality: no element can be dropped. Deterministic.
PairSet minimal_hitting_set(const Collection& c);

/// Treats each clause of `phi` as a set to hit: banning one pair per clause
/// satisfies the whole constraint. Minimal is irreducible; Minimum is a
/// globally smallest solution.
PairSet compute_minimal_solution(const OrderingConstraint& phi, MhsMode mode);

}  // namespace ff
