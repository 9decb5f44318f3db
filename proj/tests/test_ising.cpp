#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mkcs/ising.hpp"
#include "mkcs/rng.hpp"

using namespace mkcs;

namespace {

QuboModel random_model(int nvars, std::mt19937_64& gen, Sense sense) {
  QuboModel m;
  m.num_vars = nvars;
  m.sense = sense;
  m.offset = uniform_real(gen, -2.0, 2.0);
  m.linear.resize(nvars);
  m.vars.assign(nvars, VarIndex{});
  for (auto& c : m.linear) c = uniform_real(gen, -3.0, 3.0);
  for (int u = 0; u < nvars; ++u)
    for (int v = u + 1; v < nvars; ++v)
      if (gen() & 1u)
        m.quadratic.push_back({u, v, uniform_real(gen, -3.0, 3.0)});
  return m;
}

std::vector<std::uint8_t> bits_of(std::uint64_t mask, int nvars) {
  std::vector<std::uint8_t> bits(nvars);
  for (int v = 0; v < nvars; ++v) bits[v] = (mask >> v) & 1u;
  return bits;
}

}  // namespace

TEST_CASE("single maximize variable") {
  QuboModel m;
  m.num_vars = 1;
  m.linear = {1.0};
  m.vars = {VarIndex{}};
  const IsingModel ising = to_ising(m);
  CHECK(ising.h == std::vector<double>{-0.5});
  CHECK(ising.offset == -0.5);
  CHECK(ising.couplings.empty());
  CHECK(ising_energy(ising, {+1}) == -1.0);  // ground state recovers x = 1
  CHECK(ising_energy(ising, {-1}) == 0.0);
}

TEST_CASE("offset-only model keeps its offset") {
  QuboModel m;
  m.num_vars = 2;
  m.linear = {0.0, 0.0};
  m.vars = {VarIndex{}, VarIndex{}};
  m.offset = 3.25;
  m.sense = Sense::minimize;
  const IsingModel ising = to_ising(m);
  CHECK(ising.offset == 3.25);
  CHECK(ising.h == std::vector<double>{0.0, 0.0});
  CHECK(ising.couplings.empty());
}

TEST_CASE("conversion preserves the whole landscape") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Sense sense = (trial & 1) ? Sense::minimize : Sense::maximize;
    const QuboModel m = random_model(6, gen, sense);
    const IsingModel ising = to_ising(m);
    const double sign = sense == Sense::maximize ? -1.0 : 1.0;
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      const double value = evaluate(m, bits_of(mask, 6));
      CHECK(std::fabs(ising_energy_basis(ising, mask) - sign * value) <=
            1e-12);
    }
  }
}

TEST_CASE("ising ground state tracks the model optimum") {
  std::mt19937_64 gen(18);
  for (int trial = 0; trial < 100; ++trial) {
    const QuboModel m = random_model(6, gen, Sense::maximize);
    const IsingModel ising = to_ising(m);
    double best_value = -1e100, best_energy = 1e100;
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      best_value = std::max(best_value, evaluate(m, bits_of(mask, 6)));
      best_energy = std::min(best_energy, ising_energy_basis(ising, mask));
    }
    CHECK(std::fabs(best_energy + best_value) <= 1e-12);
  }
}

TEST_CASE("spin-vector and basis-index energies agree") {
  std::mt19937_64 gen(19);
  const QuboModel m = random_model(5, gen, Sense::maximize);
  const IsingModel ising = to_ising(m);
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    std::vector<int> spins(5);
    for (int v = 0; v < 5; ++v) spins[v] = (mask >> v) & 1u ? +1 : -1;
    CHECK(ising_energy(ising, spins) == ising_energy_basis(ising, mask));
  }
  const std::vector<double> diag = ising_diagonal(ising);
  REQUIRE(diag.size() == 32);
  for (std::uint64_t mask = 0; mask < 32; ++mask)
    CHECK(diag[mask] == ising_energy_basis(ising, mask));
}
