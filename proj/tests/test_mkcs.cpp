#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mkcs/mkcs.hpp"
#include "mkcs/rng.hpp"
#include "oracles.hpp"

using namespace mkcs;

namespace {

Assignment random_assignment(int n, int k, std::mt19937_64& gen) {
  Assignment a(n, k);
  for (auto& bit : a.bits) bit = std::uint8_t(gen() & 1u);
  return a;
}

}  // namespace

TEST_CASE("feasibility") {
  const MkcsInstance empty = make_instance(make_graph(3, {}), 1);
  Assignment ones(3, 1);
  ones.bits = {1, 1, 1};
  CHECK(is_feasible(empty, ones));

  const MkcsInstance k3 = make_instance(clique_counterexample(2), 1);
  Assignment single(3, 1);
  single.set(0, 0, true);
  CHECK(is_feasible(k3, single));
  Assignment conflict(3, 1);
  conflict.bits = {1, 1, 0};
  CHECK_FALSE(is_feasible(k3, conflict));

  Assignment wrong(4, 1);
  CHECK_THROWS(is_feasible(k3, wrong));
}

TEST_CASE("objective counts set entries") {
  CHECK(objective(Assignment(3, 2)) == 0);
  Assignment two(3, 2);
  two.set(0, 0, true);
  two.set(2, 1, true);
  CHECK(objective(two) == 2);
  Assignment full(3, 2);
  full.bits.assign(6, 1);
  CHECK(objective(full) == 6);
}

TEST_CASE("alpha on the counterexample families") {
  for (int k = 1; k <= 3; ++k) {
    const auto inst = make_instance(clique_counterexample(k), k);
    CHECK(alpha_bruteforce(inst).value == k);
  }
  for (int k = 2; k <= 3; ++k) {
    const auto inst = make_instance(pendant_counterexample(k), k);
    CHECK(alpha_bruteforce(inst).value == k + 1);
  }
  CHECK(alpha_bruteforce(make_instance(clique_counterexample(2), 2)).value ==
        2);
}

TEST_CASE("alpha respects the enumeration budget") {
  const auto inst = make_instance(make_graph(13, {}), 2);
  CHECK_THROWS(alpha_bruteforce(inst, 24));
  CHECK_NOTHROW(alpha_bruteforce(inst, 26));
}

TEST_CASE("alpha witness is feasible and attains the value") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = make_instance(er_generate(6, 0.5, seed), 2);
    const auto result = alpha_bruteforce(inst);
    CHECK(is_feasible(inst, result.witness));
    CHECK(objective(result.witness) == result.value);
  }
}

TEST_CASE("two independent exact solvers agree on n <= 6, k <= 2") {
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : mkcs::testing::nonisomorphic_graphs(n)) {
      for (int k = 1; k <= 2; ++k) {
        const auto inst = make_instance(g, k);
        CHECK(alpha_bruteforce(inst).value ==
              mkcs::testing::alpha_branch_and_prune(inst));
      }
    }
  }
}

TEST_CASE("parallel and serial enumeration agree") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = make_instance(er_generate(5, 0.6, seed), 2);
    const auto par = alpha_bruteforce(inst);
    const auto ser = alpha_bruteforce_serial(inst);
    CHECK(par.value == ser.value);
    CHECK(par.witness == ser.witness);
  }
}

TEST_CASE("repair trace on K3 with one color") {
  const auto inst = make_instance(clique_counterexample(2), 1);
  Assignment all(3, 1);
  all.bits = {1, 1, 1};
  const Assignment fixed = repair(inst, all);
  CHECK(fixed.bits == std::vector<std::uint8_t>{0, 0, 1});
  CHECK(objective(fixed) == 1);
}

TEST_CASE("repair drops extra colors in color order") {
  const auto inst = make_instance(make_graph(1, {}), 2);
  Assignment both(1, 2);
  both.bits = {1, 1};
  const Assignment fixed = repair(inst, both);
  CHECK(objective(fixed) == 1);
  CHECK(fixed.bits == std::vector<std::uint8_t>{0, 1});
}

TEST_CASE("repair leaves feasible assignments alone") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst =
        make_instance(er_generate(5, uniform01(gen), gen()), 1 + int(gen() % 3));
    const auto result = alpha_bruteforce(inst);
    CHECK(repair(inst, result.witness) == result.witness);
  }
}

TEST_CASE("repair is idempotent, feasible, never adds entries") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + int(gen() % 6);
    const int k = 1 + int(gen() % 3);
    const auto inst = make_instance(er_generate(n, uniform01(gen), gen()), k);
    const Assignment a = random_assignment(n, k, gen);
    const Assignment fixed = repair(inst, a);
    CHECK(is_feasible(inst, fixed));
    CHECK(objective(fixed) <= objective(a));
    CHECK(repair(inst, fixed) == fixed);
  }
}

TEST_CASE("assignment text round trip") {
  Assignment a(3, 2);
  a.set(0, 1, true);
  a.set(2, 0, true);
  CHECK(write_assignment(a) == "0 1\n0 0\n1 0\n");
  CHECK(read_assignment(write_assignment(a), 3, 2) == a);
  CHECK_THROWS(read_assignment("0 2\n", 1, 2));
}
