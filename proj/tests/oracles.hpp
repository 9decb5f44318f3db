#pragma once

// Test-side reference implementations, kept independent of the library
// code paths they check.

#include <vector>

#include "mkcs/mkcs.hpp"
#include "mkcs/qubo.hpp"

namespace mkcs::testing {

/// All non-isomorphic simple graphs on exactly n vertices (n <= 7), by
/// canonicalizing every labeled graph under vertex permutations.
std::vector<Graph> nonisomorphic_graphs(int n);

/// Exact optimum by recursive branch and prune over per-vertex color
/// choices; shares no code with the enumeration solver.
int alpha_branch_and_prune(const MkcsInstance& inst);

/// Objective of the nonlinear reformulation evaluated straight from its
/// defining sums (no coefficient expansion): ones - c1 * same-color edge
/// products - c2 * distinct-color products per vertex (unordered pairs).
double nonlinear_value_reference(const MkcsInstance& inst, double c1,
                                 double c2, const Assignment& a);

/// Objective of the linear reformulation evaluated from the squared
/// penalty terms directly.
double linear_value_reference(const MkcsInstance& inst, double c1, double c2,
                              const Assignment& a, const LinearSlacks& st);

}  // namespace mkcs::testing
