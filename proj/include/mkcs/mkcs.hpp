#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mkcs/graph.hpp"

namespace mkcs {

/// Binary vertex-color matrix: bit (i, r) set means vertex i carries
/// color r. Row-major over vertices, r fastest.
struct Assignment {
  int n = 0;
  int k = 0;
  std::vector<std::uint8_t> bits;

  Assignment() = default;
  Assignment(int n_, int k_) : n(n_), k(k_), bits(std::size_t(n_) * k_, 0) {}

  std::uint8_t at(int i, int r) const { return bits[std::size_t(i) * k + r]; }
  void set(int i, int r, bool v) { bits[std::size_t(i) * k + r] = v ? 1 : 0; }

  bool operator==(const Assignment&) const = default;
};

/// One problem instance: which graph, how many colors.
struct MkcsInstance {
  Graph graph;
  int k = 1;
};

MkcsInstance make_instance(Graph g, int k);

/// Unpacks the low n*k bits of `mask` into an assignment; bit i*k+r is
/// entry (i, r). This is the enumeration order used by the exact solvers.
Assignment assignment_from_mask(const MkcsInstance& inst, std::uint64_t mask);

/// True iff no edge has both endpoints on the same color and no vertex
/// carries more than one color.
bool is_feasible(const MkcsInstance& inst, const Assignment& a);

/// Number of set entries (the number of colored vertices when feasible).
int objective(const Assignment& a);

/// Greedy feasibility restoration, two passes over the entries in a fixed
/// order (vertices ascending; for each vertex, incident edges by partner
/// ascending; colors ascending):
///   1. drop color r from vertex i whenever the edge partner also carries r;
///   2. drop color r from vertex i whenever i still carries another color.
/// Conditions are evaluated against the mutating matrix. Output is always
/// feasible, never has more set entries than the input, and the function
/// is idempotent.
Assignment repair(const MkcsInstance& inst, const Assignment& a);

struct AlphaResult {
  int value = 0;
  Assignment witness;
};

/// Exact optimum by exhaustive enumeration of all 2^(n*k) matrices.
/// The witness is the feasible maximizer with the smallest mask in the
/// assignment_from_mask order, independent of thread count.
/// Throws when n*k exceeds budget_bits.
AlphaResult alpha_bruteforce(const MkcsInstance& inst, int budget_bits = 24);

/// Single-threaded variant, kept as the reference implementation for the
/// parallel kernel.
AlphaResult alpha_bruteforce_serial(const MkcsInstance& inst,
                                    int budget_bits = 24);

/// One line per vertex, k space-separated bits.
std::string write_assignment(const Assignment& a);
Assignment read_assignment(const std::string& text, int n, int k);

}  // namespace mkcs
