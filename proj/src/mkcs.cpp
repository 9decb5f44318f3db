#include "mkcs/mkcs.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mkcs {

MkcsInstance make_instance(Graph g, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return MkcsInstance{std::move(g), k};
}

namespace {

void check_dims(const MkcsInstance& inst, const Assignment& a) {
  if (a.n != inst.graph.n || a.k != inst.k)
    throw std::invalid_argument("assignment dimensions do not match instance");
}

}  // namespace

Assignment assignment_from_mask(const MkcsInstance& inst, std::uint64_t mask) {
  Assignment a(inst.graph.n, inst.k);
  const int nbits = inst.graph.n * inst.k;
  for (int b = 0; b < nbits; ++b) a.bits[b] = (mask >> b) & 1u;
  return a;
}

bool is_feasible(const MkcsInstance& inst, const Assignment& a) {
  check_dims(inst, a);
  const int k = inst.k;
  for (auto [i, j] : inst.graph.edges)
    for (int r = 0; r < k; ++r)
      if (a.at(i, r) + a.at(j, r) > 1) return false;
  for (int i = 0; i < a.n; ++i) {
    int colors = 0;
    for (int r = 0; r < k; ++r) colors += a.at(i, r);
    if (colors > 1) return false;
  }
  return true;
}

int objective(const Assignment& a) {
  int total = 0;
  for (auto b : a.bits) total += b;
  return total;
}

Assignment repair(const MkcsInstance& inst, const Assignment& a) {
  check_dims(inst, a);
  Assignment x = a;
  const int n = inst.graph.n;
  const int k = inst.k;

  // Incident edges seen from both endpoints, partner ascending.
  std::vector<std::vector<int>> adjacency(n);
  for (auto [i, j] : inst.graph.edges) {
    adjacency[i].push_back(j);
    adjacency[j].push_back(i);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());

  for (int i = 0; i < n; ++i)
    for (int j : adjacency[i])
      for (int r = 0; r < k; ++r)
        if (x.at(i, r) + x.at(j, r) > 1) x.set(i, r, false);

  for (int i = 0; i < n; ++i)
    for (int r = 0; r < k; ++r) {
      if (!x.at(i, r)) continue;
      int others = 0;
      for (int p = 0; p < k; ++p)
        if (p != r) others += x.at(i, p);
      if (others >= 1) x.set(i, r, false);
    }
  return x;
}

namespace {

// Feasibility and popcount straight off the packed mask; hot path of the
// enumeration kernels.
struct MaskChecker {
  int n, k;
  std::vector<std::uint64_t> edge_pair_masks;  // per (edge, r): two bits
  std::vector<std::uint64_t> vertex_masks;     // per vertex: its k bits

  explicit MaskChecker(const MkcsInstance& inst)
      : n(inst.graph.n), k(inst.k) {
    for (auto [i, j] : inst.graph.edges)
      for (int r = 0; r < k; ++r)
        edge_pair_masks.push_back((std::uint64_t(1) << (i * k + r)) |
                                  (std::uint64_t(1) << (j * k + r)));
    for (int i = 0; i < n; ++i) {
      std::uint64_t m = 0;
      for (int r = 0; r < k; ++r) m |= std::uint64_t(1) << (i * k + r);
      vertex_masks.push_back(m);
    }
  }

  bool feasible(std::uint64_t x) const {
    for (std::uint64_t m : edge_pair_masks)
      if ((x & m) == m) return false;
    for (std::uint64_t m : vertex_masks)
      if (__builtin_popcountll(x & m) > 1) return false;
    return true;
  }
};

}  // namespace

AlphaResult alpha_bruteforce_serial(const MkcsInstance& inst, int budget_bits) {
  const int nbits = inst.graph.n * inst.k;
  if (nbits > budget_bits)
    throw std::invalid_argument("instance exceeds enumeration budget");
  MaskChecker checker(inst);
  int best = -1;
  std::uint64_t best_mask = 0;
  const std::uint64_t total = std::uint64_t(1) << nbits;
  for (std::uint64_t x = 0; x < total; ++x) {
    if (!checker.feasible(x)) continue;
    int value = __builtin_popcountll(x);
    if (value > best) {
      best = value;
      best_mask = x;
    }
  }
  return AlphaResult{best, assignment_from_mask(inst, best_mask)};
}

AlphaResult alpha_bruteforce(const MkcsInstance& inst, int budget_bits) {
  const int nbits = inst.graph.n * inst.k;
  if (nbits > budget_bits)
    throw std::invalid_argument("instance exceeds enumeration budget");
  MaskChecker checker(inst);
  const std::uint64_t total = std::uint64_t(1) << nbits;

  int best = -1;
  std::uint64_t best_mask = 0;
#pragma omp parallel
  {
    int local_best = -1;
    std::uint64_t local_mask = 0;
#pragma omp for schedule(static)
    for (std::int64_t xs = 0; xs < std::int64_t(total); ++xs) {
      const std::uint64_t x = std::uint64_t(xs);
      if (!checker.feasible(x)) continue;
      int value = __builtin_popcountll(x);
      if (value > local_best) {
        local_best = value;
        local_mask = x;
      }
    }
#pragma omp critical
    {
      // Smallest mask wins ties so the witness does not depend on the
      // thread count.
      if (local_best > best ||
          (local_best == best && local_mask < best_mask)) {
        best = local_best;
        best_mask = local_mask;
      }
    }
  }
  return AlphaResult{best, assignment_from_mask(inst, best_mask)};
}

std::string write_assignment(const Assignment& a) {
  std::ostringstream os;
  for (int i = 0; i < a.n; ++i) {
    for (int r = 0; r < a.k; ++r) {
      if (r) os << ' ';
      os << int(a.at(i, r));
    }
    os << '\n';
  }
  return os.str();
}

Assignment read_assignment(const std::string& text, int n, int k) {
  Assignment a(n, k);
  std::istringstream in(text);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < k; ++r) {
      int v;
      if (!(in >> v) || (v != 0 && v != 1))
        throw std::invalid_argument("malformed assignment text");
      a.set(i, r, v == 1);
    }
  return a;
}

}  // namespace mkcs
