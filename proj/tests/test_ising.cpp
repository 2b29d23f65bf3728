#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "critlang/ising.hpp"

using namespace critlang;

TEST_CASE("ordered lattice energies count bonds with the +mu convention") {
  NeighborTable nb2(2, 2);
  auto up = SpinLattice::ordered(2, 2);
  CHECK(ising_energy(up, nb2) == -8);  // 4 sites x 2 bonds, doubled on L=2
  CHECK(magnetization(up) == 4);

  NeighborTable nb3(3, 3);
  CHECK(ising_energy(SpinLattice::ordered(3, 3), nb3) == -81);  // 3 * 27

  NeighborTable nb4(4, 3);
  auto down = SpinLattice::ordered(4, 3, -1);
  CHECK(ising_energy(down, nb4) == -324);  // 4 * 81
  CHECK(magnetization(down) == -81);
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(SpinLattice::ordered(1, 8), std::invalid_argument);
  CHECK_THROWS_AS(SpinLattice::ordered(5, 8), std::invalid_argument);
  CHECK_THROWS_AS(SpinLattice::ordered(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(SpinLattice::ordered(2, 8, 2), std::invalid_argument);
}

TEST_CASE("neighbor tables are mutual and wrap") {
  NeighborTable nb(3, 4);
  std::size_t n = 64;
  for (std::size_t s = 0; s < n; ++s) {
    for (int k = 0; k < 6; ++k) {
      std::uint32_t t = nb.all[s * 6 + k];
      // the reverse direction of t must point back to s
      int back = k % 2 == 0 ? k + 1 : k - 1;
      CHECK(nb.all[t * 6 + back] == s);
    }
  }
  // +x from the last column wraps to the first
  CHECK(nb.plus[3 * 3 + 0] == 0);
}

TEST_CASE("single-flip energy differences are consistent") {
  SplitMix64 rng(17);
  NeighborTable nb(3, 4);
  auto lat = SpinLattice::random(3, 4, rng);
  for (int trial = 0; trial < 50; ++trial) {
    auto site = static_cast<std::size_t>(rng.uniform_below(lat.size()));
    long long before = ising_energy(lat, nb);
    int h = 0;
    for (int k = 0; k < 6; ++k) h += lat.spins[nb.all[site * 6 + k]];
    long long predicted = 2LL * lat.spins[site] * h;
    lat.spins[site] = static_cast<std::int8_t>(-lat.spins[site]);
    CHECK(ising_energy(lat, nb) - before == predicted);
  }
}

TEST_CASE("metropolis at low temperature relaxes monotonically in energy") {
  SplitMix64 rng(3);
  auto lat = SpinLattice::random(2, 8, rng);
  NeighborTable nb(2, 8);
  long long prev = ising_energy(lat, nb);
  SplitMix64 mc(4);
  for (int sweep = 0; sweep < 30; ++sweep) {
    metropolis_sweep(lat, nb, 1e-6, mc);
    long long cur = ising_energy(lat, nb);
    CHECK(cur <= prev);
    prev = cur;
  }
}

// exact 2x2 mean energy density: levels E = -8 (2 states), 0 (12), +8 (2)
static double exact_2x2_energy_density(double t) {
  double w = std::exp(8.0 / t), wi = std::exp(-8.0 / t);
  return (-8.0 * 2.0 * w + 8.0 * 2.0 * wi) / (2.0 * w + 12.0 + 2.0 * wi) / 4.0;
}

TEST_CASE("metropolis reproduces the exact 2x2 energy") {
  MCConfig cfg;
  cfg.algorithm = Algorithm::metropolis;
  cfg.temperature = 2.0;
  cfg.updates = 60'000;
  cfg.thermalization = 2'000;
  cfg.stride = 2;
  cfg.seed = 11;
  auto lat = SpinLattice::ordered(2, 2);
  auto obs = run_mc(cfg, lat);
  double exact = exact_2x2_energy_density(2.0);
  CHECK(std::abs(obs.e_mean - exact) < 4.0 * obs.e_err);
  CHECK(obs.acceptance > 0.05);
  CHECK(obs.acceptance < 1.0);
}

TEST_CASE("wolff reproduces the exact 2x2 energy") {
  MCConfig cfg;
  cfg.algorithm = Algorithm::wolff;
  cfg.temperature = 2.0;
  cfg.updates = 60'000;
  cfg.thermalization = 2'000;
  cfg.stride = 2;
  cfg.seed = 12;
  auto lat = SpinLattice::ordered(2, 2);
  auto obs = run_mc(cfg, lat);
  double exact = exact_2x2_energy_density(2.0);
  CHECK(std::abs(obs.e_mean - exact) < 4.0 * obs.e_err);
  CHECK(obs.mean_cluster > 0.0);
}

TEST_CASE("runs are reproducible and sized as configured") {
  MCConfig cfg;
  cfg.algorithm = Algorithm::wolff;
  cfg.temperature = 2.3;
  cfg.updates = 400;
  cfg.thermalization = 50;
  cfg.stride = 4;
  cfg.seed = 77;
  auto la = SpinLattice::ordered(2, 8);
  auto lb = SpinLattice::ordered(2, 8);
  auto oa = run_mc(cfg, la);
  auto ob = run_mc(cfg, lb);
  CHECK(oa.energy.size() == 100);
  CHECK(oa.energy == ob.energy);
  CHECK(oa.mag == ob.mag);
  CHECK(la.spins == lb.spins);

  CHECK_THROWS_AS(run_mc(MCConfig{Algorithm::wolff, 2.0, 0, 0, 1, 1}, la),
                  std::invalid_argument);
}

TEST_CASE("binder cumulant hits its limits") {
  // deep in the ordered phase |m| = 1, so U4 -> 2/3
  MCConfig cold;
  cold.algorithm = Algorithm::metropolis;
  cold.temperature = 0.5;
  cold.updates = 4'000;
  cold.thermalization = 200;
  cold.seed = 5;
  auto lat = SpinLattice::ordered(2, 8);
  auto obs = run_mc(cold, lat);
  CHECK(obs.binder == doctest::Approx(2.0 / 3.0).epsilon(0.02));

  // far above T_c the magnetization is Gaussian and U4 -> 0
  MCConfig hot = cold;
  hot.algorithm = Algorithm::wolff;
  hot.temperature = 25.0;
  hot.updates = 40'000;
  hot.seed = 6;
  auto lat2 = SpinLattice::ordered(2, 16);
  auto obs2 = run_mc(hot, lat2);
  CHECK(std::abs(obs2.binder) < 0.1);
}
