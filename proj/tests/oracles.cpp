#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mkcs::testing {

std::vector<Graph> nonisomorphic_graphs(int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("supported for n in 1..7");
  const int pairs = n * (n - 1) / 2;
  auto pair_bit = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    // lexicographic position of (i, j) among i < j
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  };
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::uint64_t> canonical;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs); ++mask) {
    std::uint64_t best = ~std::uint64_t(0);
    for (const auto& sigma : perms) {
      std::uint64_t image = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if ((mask >> pair_bit(i, j)) & 1u)
            image |= std::uint64_t(1) << pair_bit(sigma[i], sigma[j]);
      best = std::min(best, image);
    }
    canonical.insert(best);
  }

  std::vector<Graph> out;
  for (std::uint64_t mask : canonical) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if ((mask >> pair_bit(i, j)) & 1u) edges.emplace_back(i, j);
    out.push_back(make_graph(n, std::move(edges)));
  }
  return out;
}

namespace {

void alpha_recurse(const MkcsInstance& inst,
                   const std::vector<std::vector<int>>& adjacency,
                   std::vector<int>& color_of, int vertex, int count,
                   int& best) {
  const int n = inst.graph.n;
  if (count + (n - vertex) <= best) return;  // cannot beat best
  if (vertex == n) {
    best = std::max(best, count);
    return;
  }
  for (int c = 0; c < inst.k; ++c) {
    bool ok = true;
    for (int u : adjacency[vertex]) {
      if (u < vertex && color_of[u] == c) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    color_of[vertex] = c;
    alpha_recurse(inst, adjacency, color_of, vertex + 1, count + 1, best);
    color_of[vertex] = -1;
  }
  alpha_recurse(inst, adjacency, color_of, vertex + 1, count, best);
}

}  // namespace

int alpha_branch_and_prune(const MkcsInstance& inst) {
  std::vector<std::vector<int>> adjacency(inst.graph.n);
  for (auto [i, j] : inst.graph.edges) {
    adjacency[i].push_back(j);
    adjacency[j].push_back(i);
  }
  std::vector<int> color_of(inst.graph.n, -1);
  int best = 0;
  alpha_recurse(inst, adjacency, color_of, 0, 0, best);
  return best;
}

double nonlinear_value_reference(const MkcsInstance& inst, double c1,
                                 double c2, const Assignment& a) {
  double ones = 0.0;
  for (auto b : a.bits) ones += b;
  double edge_products = 0.0;
  for (auto [i, j] : inst.graph.edges)
    for (int r = 0; r < inst.k; ++r)
      edge_products += double(a.at(i, r)) * a.at(j, r);
  double color_products = 0.0;
  for (int i = 0; i < inst.graph.n; ++i)
    for (int r = 0; r < inst.k; ++r)
      for (int p = r + 1; p < inst.k; ++p)
        color_products += double(a.at(i, r)) * a.at(i, p);
  return ones - c1 * edge_products - c2 * color_products;
}

double linear_value_reference(const MkcsInstance& inst, double c1, double c2,
                              const Assignment& a, const LinearSlacks& st) {
  double ones = 0.0;
  for (auto b : a.bits) ones += b;
  double edge_penalty = 0.0;
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    auto [i, j] = inst.graph.edges[e];
    for (int r = 0; r < inst.k; ++r) {
      const double term =
          a.at(i, r) + a.at(j, r) + st.s[std::size_t(e) * inst.k + r] - 1.0;
      edge_penalty += term * term;
    }
  }
  double vertex_penalty = 0.0;
  for (int i = 0; i < inst.graph.n; ++i) {
    double term = st.t[i] - 1.0;
    for (int r = 0; r < inst.k; ++r) term += a.at(i, r);
    vertex_penalty += term * term;
  }
  return ones - c1 * edge_penalty - c2 * vertex_penalty;
}

}  // namespace mkcs::testing
