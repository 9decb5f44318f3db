#include "mkcs/qubo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mkcs {

std::string var_to_string(const VarIndex& v) {
  std::ostringstream os;
  switch (v.kind) {
    case VarIndex::Kind::X:
      os << "x:" << v.i + 1 << ":" << v.r + 1;
      break;
    case VarIndex::Kind::S:
      os << "s:" << v.i + 1 << ":" << v.j + 1 << ":" << v.r + 1;
      break;
    case VarIndex::Kind::T:
      os << "t:" << v.i + 1;
      break;
  }
  return os.str();
}

VarIndex var_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string field;
  std::vector<std::string> parts;
  while (std::getline(in, field, ':')) parts.push_back(field);
  auto want = [&](std::size_t count) {
    if (parts.size() != count)
      throw std::invalid_argument("malformed variable string: " + text);
  };
  VarIndex v;
  if (parts.empty()) throw std::invalid_argument("empty variable string");
  if (parts[0] == "x") {
    want(3);
    v.kind = VarIndex::Kind::X;
    v.i = std::stoi(parts[1]) - 1;
    v.r = std::stoi(parts[2]) - 1;
  } else if (parts[0] == "s") {
    want(4);
    v.kind = VarIndex::Kind::S;
    v.i = std::stoi(parts[1]) - 1;
    v.j = std::stoi(parts[2]) - 1;
    v.r = std::stoi(parts[3]) - 1;
  } else if (parts[0] == "t") {
    want(2);
    v.kind = VarIndex::Kind::T;
    v.i = std::stoi(parts[1]) - 1;
  } else {
    throw std::invalid_argument("unknown variable kind: " + text);
  }
  return v;
}

std::optional<int> QuboModel::find_var(const VarIndex& v) const {
  for (int idx = 0; idx < num_vars; ++idx)
    if (vars[idx] == v) return idx;
  return std::nullopt;
}

namespace {

// Accumulates terms into canonical form; pairs are normalized to u < v and
// merged, diagonal pairs fold into the linear part.
struct ModelBuilder {
  int num_vars;
  double offset = 0.0;
  std::vector<double> linear;
  std::map<std::pair<int, int>, double> quad;

  explicit ModelBuilder(int n) : num_vars(n), linear(n, 0.0) {}

  void add_linear(int v, double c) { linear[v] += c; }

  void add_quadratic(int u, int v, double c) {
    if (u == v) {
      linear[u] += c;
      return;
    }
    if (u > v) std::swap(u, v);
    quad[{u, v}] += c;
  }

  QuboModel finish(Sense sense, std::vector<VarIndex> vars, Provenance prov,
                   double c1, double c2) {
    QuboModel m;
    m.num_vars = num_vars;
    m.sense = sense;
    m.offset = offset;
    m.linear = std::move(linear);
    for (auto& [uv, c] : quad)
      if (c != 0.0) m.quadratic.push_back({uv.first, uv.second, c});
    m.vars = std::move(vars);
    m.provenance = prov;
    m.c1 = c1;
    m.c2 = c2;
    return m;
  }
};

void check_penalties(double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0))
    throw std::invalid_argument("penalty parameters must be positive");
  if (!std::isfinite(c1) || !std::isfinite(c2))
    throw std::invalid_argument("penalty parameters must be finite");
}

}  // namespace

QuboModel build_nonlinear(const MkcsInstance& inst, double c1, double c2) {
  check_penalties(c1, c2);
  const int n = inst.graph.n;
  const int k = inst.k;
  ModelBuilder b(n * k);
  std::vector<VarIndex> vars;
  vars.reserve(std::size_t(n) * k);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < k; ++r)
      vars.push_back({VarIndex::Kind::X, i, 0, r});

  auto xv = [k](int i, int r) { return i * k + r; };

  for (int i = 0; i < n; ++i)
    for (int r = 0; r < k; ++r) b.add_linear(xv(i, r), 1.0);

  for (auto [i, j] : inst.graph.edges)
    for (int r = 0; r < k; ++r) b.add_quadratic(xv(i, r), xv(j, r), -c1);

  for (int i = 0; i < n; ++i)
    for (int r = 0; r < k; ++r)
      for (int p = r + 1; p < k; ++p) b.add_quadratic(xv(i, r), xv(i, p), -c2);

  return b.finish(Sense::maximize, std::move(vars),
                  Provenance::nonlinear_based, c1, c2);
}

QuboModel build_linear(const MkcsInstance& inst, double c1, double c2) {
  check_penalties(c1, c2);
  const int n = inst.graph.n;
  const int k = inst.k;
  const int m_edges = inst.graph.edge_count();
  const int nx = n * k;
  const int ns = m_edges * k;
  ModelBuilder b(nx + ns + n);
  std::vector<VarIndex> vars;
  vars.reserve(std::size_t(nx) + ns + n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < k; ++r)
      vars.push_back({VarIndex::Kind::X, i, 0, r});
  for (auto [i, j] : inst.graph.edges)
    for (int r = 0; r < k; ++r) vars.push_back({VarIndex::Kind::S, i, j, r});
  for (int i = 0; i < n; ++i) vars.push_back({VarIndex::Kind::T, i, 0, 0});

  auto xv = [k](int i, int r) { return i * k + r; };
  auto sv = [k, nx](int edge, int r) { return nx + edge * k + r; };
  auto tv = [nx, ns](int i) { return nx + ns + i; };

  for (int i = 0; i < n; ++i)
    for (int r = 0; r < k; ++r) b.add_linear(xv(i, r), 1.0);

  // -c1 * (x_ir + x_jr + s - 1)^2 expanded over binaries:
  //   constant +1, linear -1 on each of the three variables,
  //   quadratic +2 on each pair.
  for (int e = 0; e < m_edges; ++e) {
    auto [i, j] = inst.graph.edges[e];
    for (int r = 0; r < k; ++r) {
      const int a = xv(i, r), c = xv(j, r), s = sv(e, r);
      b.offset += -c1;
      b.add_linear(a, c1);
      b.add_linear(c, c1);
      b.add_linear(s, c1);
      b.add_quadratic(a, c, -2.0 * c1);
      b.add_quadratic(a, s, -2.0 * c1);
      b.add_quadratic(c, s, -2.0 * c1);
    }
  }

  // -c2 * (sum_r x_ir + t_i - 1)^2, same expansion over k+1 variables.
  for (int i = 0; i < n; ++i) {
    b.offset += -c2;
    b.add_linear(tv(i), c2);
    for (int r = 0; r < k; ++r) {
      b.add_linear(xv(i, r), c2);
      b.add_quadratic(xv(i, r), tv(i), -2.0 * c2);
      for (int p = r + 1; p < k; ++p)
        b.add_quadratic(xv(i, r), xv(i, p), -2.0 * c2);
    }
  }

  return b.finish(Sense::maximize, std::move(vars), Provenance::linear_based,
                  c1, c2);
}

QuboModel build_stable_set(const Graph& g, double c1) {
  if (!(c1 >= 1.0))
    throw std::invalid_argument("stable-set form requires c1 >= 1");
  QuboModel m = build_nonlinear(MkcsInstance{g, 1}, c1, 1.0);
  m.provenance = Provenance::stable_set;
  return m;
}

double evaluate(const QuboModel& m, const std::vector<std::uint8_t>& bits) {
  if (int(bits.size()) != m.num_vars)
    throw std::invalid_argument("bit vector length does not match model");
  double value = m.offset;
  for (int v = 0; v < m.num_vars; ++v)
    if (bits[v]) value += m.linear[v];
  for (const auto& q : m.quadratic)
    if (bits[q.u] && bits[q.v]) value += q.coeff;
  return value;
}

namespace {

double evaluate_mask(const QuboModel& m, std::uint64_t x) {
  double value = m.offset;
  for (int v = 0; v < m.num_vars; ++v)
    if ((x >> v) & 1u) value += m.linear[v];
  for (const auto& q : m.quadratic)
    if (((x >> q.u) & 1u) && ((x >> q.v) & 1u)) value += q.coeff;
  return value;
}

std::vector<std::uint8_t> unpack_mask(std::uint64_t x, int nvars) {
  std::vector<std::uint8_t> bits(nvars);
  for (int v = 0; v < nvars; ++v) bits[v] = (x >> v) & 1u;
  return bits;
}

}  // namespace

SolveResult solve_bruteforce_serial(const QuboModel& m, int budget_bits) {
  if (m.num_vars > budget_bits)
    throw std::invalid_argument("model exceeds enumeration budget");
  const bool maximize = m.sense == Sense::maximize;
  const std::uint64_t total = std::uint64_t(1) << m.num_vars;
  double best = evaluate_mask(m, 0);
  std::uint64_t best_mask = 0, count = 1;
  for (std::uint64_t x = 1; x < total; ++x) {
    const double value = evaluate_mask(m, x);
    const bool better = maximize ? value > best : value < best;
    if (better) {
      best = value;
      best_mask = x;
      count = 1;
    } else if (value == best) {
      ++count;
    }
  }
  return SolveResult{best, unpack_mask(best_mask, m.num_vars), count};
}

SolveResult solve_bruteforce(const QuboModel& m, int budget_bits) {
  if (m.num_vars > budget_bits)
    throw std::invalid_argument("model exceeds enumeration budget");
  const bool maximize = m.sense == Sense::maximize;
  const std::uint64_t total = std::uint64_t(1) << m.num_vars;

  double best = evaluate_mask(m, 0);
  std::uint64_t best_mask = 0;
  std::uint64_t count = 0;
#pragma omp parallel
  {
    double local_best = best;
    std::uint64_t local_mask = 0;
    bool local_seen = false;
#pragma omp for schedule(static)
    for (std::int64_t xs = 0; xs < std::int64_t(total); ++xs) {
      const std::uint64_t x = std::uint64_t(xs);
      const double value = evaluate_mask(m, x);
      const bool better =
          !local_seen || (maximize ? value > local_best : value < local_best);
      if (better) {
        local_best = value;
        local_mask = x;
        local_seen = true;
      }
    }
#pragma omp critical
    {
      if (local_seen) {
        const bool better = maximize ? local_best > best : local_best < best;
        if (better || (local_best == best && local_mask < best_mask)) {
          best = local_best;
          best_mask = local_mask;
        }
      }
    }
  }
  // Second pass for the tie count at the exact optimum.
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::int64_t xs = 0; xs < std::int64_t(total); ++xs)
    if (evaluate_mask(m, std::uint64_t(xs)) == best) ++count;

  return SolveResult{best, unpack_mask(best_mask, m.num_vars), count};
}

Assignment extract_assignment(const QuboModel& m,
                              const std::vector<std::uint8_t>& bits,
                              const MkcsInstance& inst) {
  if (int(bits.size()) != m.num_vars)
    throw std::invalid_argument("bit vector length does not match model");
  Assignment a(inst.graph.n, inst.k);
  for (int v = 0; v < m.num_vars; ++v) {
    const VarIndex& id = m.vars[v];
    if (id.kind == VarIndex::Kind::X && bits[v]) a.set(id.i, id.r, true);
  }
  return a;
}

Assignment apply_mapping_x(const Assignment& a, int i, int r) {
  if (i < 0 || i >= a.n || r < 0 || r >= a.k)
    throw std::invalid_argument("mapping index out of range");
  Assignment out = a;
  out.set(i, r, false);
  return out;
}

LinearSlacks canonical_slacks(const MkcsInstance& inst, const Assignment& a) {
  const int k = inst.k;
  LinearSlacks st;
  st.s.resize(std::size_t(inst.graph.edge_count()) * k);
  st.t.resize(inst.graph.n);
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    auto [i, j] = inst.graph.edges[e];
    for (int r = 0; r < k; ++r) {
      const int v = 1 - a.at(i, r) - a.at(j, r);
      if (v < 0 || v > 1)
        throw std::invalid_argument(
            "canonical slacks undefined for infeasible assignment");
      st.s[std::size_t(e) * k + r] = std::uint8_t(v);
    }
  }
  for (int i = 0; i < inst.graph.n; ++i) {
    int colors = 0;
    for (int r = 0; r < k; ++r) colors += a.at(i, r);
    const int v = 1 - colors;
    if (v < 0 || v > 1)
      throw std::invalid_argument(
          "canonical slacks undefined for infeasible assignment");
    st.t[i] = std::uint8_t(v);
  }
  return st;
}

LinearSlacks apply_mapping_m(const LinearSlacks& st, const MkcsInstance& inst,
                             int i, int j, int r, int p) {
  const int k = inst.k;
  if (i < 0 || i >= inst.graph.n || r < 0 || r >= k || (p != 0 && p != 1))
    throw std::invalid_argument("mapping index out of range");
  if (!inst.graph.has_edge(i, j))
    throw std::invalid_argument("mapping edge not in graph");
  LinearSlacks out = st;
  for (int e = 0; e < inst.graph.edge_count(); ++e) {
    auto [a, b] = inst.graph.edges[e];
    if (a != i && b != i) continue;
    const int partner = (a == i) ? b : a;
    const std::size_t idx = std::size_t(e) * k + r;
    if (partner == j)
      out.s[idx] = std::uint8_t((1 - st.s[idx]) * p);
    else
      out.s[idx] = std::uint8_t(1 - st.s[idx]);
  }
  out.t[i] = std::uint8_t(1 - p);
  return out;
}

double evaluate_linear(const QuboModel& m, const MkcsInstance& inst,
                       const Assignment& a, const LinearSlacks& st) {
  if (m.provenance != Provenance::linear_based)
    throw std::invalid_argument("model is not linear-based");
  const int k = inst.k;
  const int nx = inst.graph.n * k;
  const int ns = inst.graph.edge_count() * k;
  std::vector<std::uint8_t> bits(std::size_t(nx) + ns + inst.graph.n);
  std::copy(a.bits.begin(), a.bits.end(), bits.begin());
  std::copy(st.s.begin(), st.s.end(), bits.begin() + nx);
  std::copy(st.t.begin(), st.t.end(), bits.begin() + nx + ns);
  return evaluate(m, bits);
}

namespace {

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_qubo_file(const QuboModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "nvars " << m.num_vars << " sense "
      << (m.sense == Sense::maximize ? "max" : "min") << " offset "
      << fmt_full(m.offset) << "\n";
  for (int v = 0; v < m.num_vars; ++v)
    if (m.linear[v] != 0.0)
      out << "l " << v << " " << fmt_full(m.linear[v]) << "\n";
  for (const auto& q : m.quadratic)
    out << "q " << q.u << " " << q.v << " " << fmt_full(q.coeff) << "\n";

  std::ofstream vars(path + ".vars");
  if (!vars) throw std::runtime_error("cannot open output file: " + path + ".vars");
  for (int v = 0; v < m.num_vars; ++v)
    vars << v << " " << var_to_string(m.vars[v]) << "\n";
}

QuboModel read_qubo_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  QuboModel m;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty model file: " + path);
  {
    std::istringstream hs(line);
    std::string nvars_tag, sense_tag, sense_val, offset_tag;
    int nvars;
    if (!(hs >> nvars_tag >> nvars >> sense_tag >> sense_val >> offset_tag >>
          m.offset) ||
        nvars_tag != "nvars" || sense_tag != "sense" || offset_tag != "offset")
      throw std::runtime_error("malformed model header: " + line);
    if (sense_val == "max")
      m.sense = Sense::maximize;
    else if (sense_val == "min")
      m.sense = Sense::minimize;
    else
      throw std::runtime_error("unknown sense: " + sense_val);
    m.num_vars = nvars;
    m.linear.assign(nvars, 0.0);
  }
  std::map<std::pair<int, int>, double> quad;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "l") {
      int v;
      double c;
      if (!(ls >> v >> c) || v < 0 || v >= m.num_vars)
        throw std::runtime_error("malformed linear term: " + line);
      m.linear[v] += c;
    } else if (tag == "q") {
      int u, v;
      double c;
      if (!(ls >> u >> v >> c) || u < 0 || v < 0 || u >= m.num_vars ||
          v >= m.num_vars || u == v)
        throw std::runtime_error("malformed quadratic term: " + line);
      if (u > v) std::swap(u, v);
      quad[{u, v}] += c;
    } else {
      throw std::runtime_error("unknown model line: " + line);
    }
  }
  for (auto& [uv, c] : quad) m.quadratic.push_back({uv.first, uv.second, c});

  m.vars.assign(m.num_vars, VarIndex{});
  std::ifstream vars(path + ".vars");
  if (vars) {
    while (std::getline(vars, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      int v;
      std::string ident;
      if (!(ls >> v >> ident) || v < 0 || v >= m.num_vars)
        throw std::runtime_error("malformed sidecar line: " + line);
      m.vars[v] = var_from_string(ident);
    }
  }
  return m;
}

}  // namespace mkcs
