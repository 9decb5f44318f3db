#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mkcs/mkcs.hpp"

namespace mkcs {

/// Identity of one binary variable in a model built from an instance.
///  - X(i, r): vertex i carries color r (both reformulations)
///  - S(i, j, r): slack for edge (i, j) on color r (linear-based only)
///  - T(i): slack for the one-color-per-vertex constraint (linear-based only)
/// Indices are 0-based internally; the textual form (x:i:r, s:i:j:r, t:i)
/// is 1-based, matching the graph I/O convention.
struct VarIndex {
  enum class Kind : std::uint8_t { X, S, T };
  Kind kind = Kind::X;
  int i = 0;
  int j = 0;  // S only
  int r = 0;  // X, S

  bool operator==(const VarIndex&) const = default;
};

std::string var_to_string(const VarIndex& v);
VarIndex var_from_string(const std::string& text);

enum class Sense : std::uint8_t { maximize, minimize };
enum class Provenance : std::uint8_t {
  linear_based,
  nonlinear_based,
  stable_set,
  external
};

struct QuadTerm {
  int u = 0;
  int v = 0;  // u < v always
  double coeff = 0.0;
};

/// Quadratic pseudo-Boolean objective over 0/1 variables:
///   value(x) = offset + sum_v linear[v] x_v + sum_{(u,v)} coeff_uv x_u x_v.
/// Quadratic terms are stored once per unordered pair (u < v), sorted;
/// diagonal contributions are folded into the linear part (x^2 = x).
struct QuboModel {
  int num_vars = 0;
  Sense sense = Sense::maximize;
  double offset = 0.0;
  std::vector<double> linear;           // indexed by variable
  std::vector<QuadTerm> quadratic;      // sorted by (u, v), unique
  std::vector<VarIndex> vars;           // variable index -> identity
  Provenance provenance = Provenance::external;
  double c1 = 0.0;
  double c2 = 0.0;

  /// Position of a variable identity in this model, if present.
  std::optional<int> find_var(const VarIndex& v) const;
};

/// Nonlinear-based reformulation over the n*k color variables:
/// maximize  sum_ir x_ir  - c1 * (same-color edge products)
///                        - c2 * (distinct-color products per vertex).
/// The per-vertex color-pair coefficient is -c2 for each unordered pair,
/// which makes the optimum of the k+1-clique instance equal (k+1) - c1 and
/// the optimum of the pendant instance equal (k+2) - c2 when the other
/// penalty exceeds one.
QuboModel build_nonlinear(const MkcsInstance& inst, double c1, double c2);

/// Linear-based reformulation with slack variables: for each (edge, color)
/// a squared term (x_ir + x_jr + s_ijr - 1)^2 weighted by -c1, and for each
/// vertex (sum_r x_ir + t_i - 1)^2 weighted by -c2, expanded symbolically
/// with x^2 = x. Variable order: all X (vertex-major, color-minor), then
/// all S (edge-major in sorted edge order, color-minor), then all T.
QuboModel build_linear(const MkcsInstance& inst, double c1, double c2);

/// Stable-set special case: identical to build_nonlinear with k = 1.
/// Requires c1 >= 1 (below one the reformulation overshoots the optimum).
QuboModel build_stable_set(const Graph& g, double c1);

double evaluate(const QuboModel& m, const std::vector<std::uint8_t>& bits);

struct SolveResult {
  double value = 0.0;
  std::vector<std::uint8_t> bits;
  std::uint64_t optima_count = 0;
};

/// Exact optimum over all 2^num_vars vectors. Bit v of the enumeration
/// index is variable v; the reported vector is the optimum with the
/// smallest index, and ties are counted by exact double comparison.
SolveResult solve_bruteforce(const QuboModel& m, int budget_bits = 24);
SolveResult solve_bruteforce_serial(const QuboModel& m, int budget_bits = 24);

/// Reads the X block of a solution vector back into an assignment.
Assignment extract_assignment(const QuboModel& m,
                              const std::vector<std::uint8_t>& bits,
                              const MkcsInstance& inst);

/// Drops color r from vertex i (no-op when the entry is already zero).
Assignment apply_mapping_x(const Assignment& a, int i, int r);

/// Slack state of a linear-based model, kept next to the instance that
/// defines the edge order.
struct LinearSlacks {
  std::vector<std::uint8_t> s;  // (edge_index * k + r)
  std::vector<std::uint8_t> t;  // per vertex
};

/// Canonical slacks for a feasible assignment: s_ijr = 1 - x_ir - x_jr,
/// t_i = 1 - sum_r x_ir. Defined only when those values are 0/1.
LinearSlacks canonical_slacks(const MkcsInstance& inst, const Assignment& a);

/// Slack update paired with dropping color r' from vertex i' over edge
/// (i', j'): every edge (i', u) with u != j' gets s -> 1 - s on color r',
/// edge (i', j') gets s -> (1 - s) * p, and t_{i'} -> 1 - p.
LinearSlacks apply_mapping_m(const LinearSlacks& st, const MkcsInstance& inst,
                             int i, int j, int r, int p);

/// Objective value of a linear-based model at an (assignment, slacks) pair.
double evaluate_linear(const QuboModel& m, const MkcsInstance& inst,
                       const Assignment& a, const LinearSlacks& st);

/// Model file:
///   nvars <N> sense <max|min> offset <real>
///   l <v> <coeff>
///   q <u> <v> <coeff>
/// with 0-based variable numbers, plus a ".vars" sidecar mapping each
/// number to its identity string.
void write_qubo_file(const QuboModel& m, const std::string& path);
QuboModel read_qubo_file(const std::string& path);

}  // namespace mkcs
