#pragma once

#include <cstdint>
#include <vector>

#include "mkcs/qubo.hpp"

namespace mkcs {

/// Spin form of a model: energy(sigma) = offset + sum h_v sigma_v
/// + sum J_uv sigma_u sigma_v with sigma in {-1, +1}.
///
/// Conversion convention, pinned here and verified by round-trip tests:
/// x_v = (1 + sigma_v) / 2, and maximize-sense models are negated so the
/// Ising ground state is the model optimum. For a maximize model,
/// energy(sigma) == -value(x(sigma)) exactly; for minimize, energy ==
/// value.
struct IsingModel {
  int num_spins = 0;
  double offset = 0.0;
  std::vector<double> h;
  std::vector<QuadTerm> couplings;  // u < v, sorted, unique
};

IsingModel to_ising(const QuboModel& m);

double ising_energy(const IsingModel& ising, const std::vector<int>& spins);

/// Energy of the computational basis state with index `b`: bit v of b is
/// x_v, i.e. sigma_v = +1 when the bit is set.
double ising_energy_basis(const IsingModel& ising, std::uint64_t b);

/// Energies of all 2^num_spins basis states, indexed by basis state.
std::vector<double> ising_diagonal(const IsingModel& ising);

}  // namespace mkcs
