#include "mkcs/ising.hpp"

#include <stdexcept>

namespace mkcs {

IsingModel to_ising(const QuboModel& m) {
  // sign * value(x(sigma)) with x = (1 + sigma)/2:
  //   linear c*x   -> c/2 sigma + c/2
  //   quad c*x*x   -> c/4 (1 + sigma_u + sigma_v + sigma_u sigma_v)
  const double sign = m.sense == Sense::maximize ? -1.0 : 1.0;
  IsingModel ising;
  ising.num_spins = m.num_vars;
  ising.offset = sign * m.offset;
  ising.h.assign(m.num_vars, 0.0);
  for (int v = 0; v < m.num_vars; ++v) {
    ising.h[v] += sign * m.linear[v] / 2.0;
    ising.offset += sign * m.linear[v] / 2.0;
  }
  for (const auto& q : m.quadratic) {
    const double quarter = sign * q.coeff / 4.0;
    ising.offset += quarter;
    ising.h[q.u] += quarter;
    ising.h[q.v] += quarter;
    if (quarter != 0.0) ising.couplings.push_back({q.u, q.v, quarter});
  }
  return ising;
}

double ising_energy(const IsingModel& ising, const std::vector<int>& spins) {
  if (int(spins.size()) != ising.num_spins)
    throw std::invalid_argument("spin vector length does not match model");
  double e = ising.offset;
  for (int v = 0; v < ising.num_spins; ++v) e += ising.h[v] * spins[v];
  for (const auto& c : ising.couplings)
    e += c.coeff * spins[c.u] * spins[c.v];
  return e;
}

double ising_energy_basis(const IsingModel& ising, std::uint64_t b) {
  auto spin = [b](int v) { return ((b >> v) & 1u) ? 1.0 : -1.0; };
  double e = ising.offset;
  for (int v = 0; v < ising.num_spins; ++v) e += ising.h[v] * spin(v);
  for (const auto& c : ising.couplings)
    e += c.coeff * spin(c.u) * spin(c.v);
  return e;
}

std::vector<double> ising_diagonal(const IsingModel& ising) {
  if (ising.num_spins > 30)
    throw std::invalid_argument("diagonal table too large");
  const std::size_t total = std::size_t(1) << ising.num_spins;
  std::vector<double> diag(total);
  for (std::size_t b = 0; b < total; ++b)
    diag[b] = ising_energy_basis(ising, b);
  return diag;
}

}  // namespace mkcs
