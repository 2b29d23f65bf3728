#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "critlang/wordlattice.hpp"

using namespace critlang;

TEST_CASE("construction is validated") {
  CHECK_THROWS_AS(WordLattice::uniform(0, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(WordLattice::uniform(4, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(WordLattice::uniform(4, 3, 2), std::invalid_argument);
  auto wl = WordLattice::uniform(6, 3, 1);
  CHECK(wl.sites() == 6);
  CHECK(wl.letters.size() == 18);
}

TEST_CASE("aligned words sit at minus one per bond per letter") {
  NeighborTable nb(2, 4);
  auto bonds = lattice_bonds(nb);
  CHECK(bonds.size() == 32);  // 16 sites x 2 directions
  CHECK(word_energy(WordLattice::uniform(16, 3, 1), bonds) == -96);
  CHECK(word_energy(WordLattice::uniform(16, 3, 0), bonds) == -96);

  // L = 2 keeps both parallel bonds, matching the Ising convention
  NeighborTable nb2(2, 2);
  auto bonds2 = lattice_bonds(nb2);
  CHECK(bonds2.size() == 8);
  CHECK(word_energy(WordLattice::uniform(4, 1, 1), bonds2) == -8);
}

TEST_CASE("length-one words reduce to the plain Ising energy") {
  SplitMix64 rng(21);
  NeighborTable nb(3, 4);
  auto lat = SpinLattice::random(3, 4, rng);
  WordLattice wl = WordLattice::uniform(lat.size(), 1, 0);
  for (std::size_t s = 0; s < lat.size(); ++s)
    wl.letters[s] = lat.spins[s] > 0 ? 1 : 0;
  CHECK(word_energy(wl, lattice_bonds(nb)) == ising_energy(lat, nb));
}

TEST_CASE("graph bonds list each undirected edge once") {
  NeighborGraph g;
  g.n_neighbors = 2;
  g.adj = {{1, 2}, {0, 3}, {0, 3}, {1, 2}};
  auto bonds = graph_bonds(g);
  REQUIRE(bonds.size() == 4);
  CHECK(bonds[0] == std::pair<std::uint32_t, std::uint32_t>{0, 1});
  CHECK(bonds[1] == std::pair<std::uint32_t, std::uint32_t>{0, 2});
  CHECK(word_energy(WordLattice::uniform(4, 2, 1), bonds) == -8);
}

TEST_CASE("word dynamics stay in the ground state at low temperature") {
  NeighborTable nb(2, 4);
  auto bonds = lattice_bonds(nb);
  auto wl = WordLattice::uniform(16, 2, 1);
  WordMCConfig cfg;
  cfg.temperature = 0.1;
  cfg.updates = 1000;
  cfg.thermalization = 100;
  cfg.seed = 9;
  auto obs = run_word_mc(cfg, wl, bonds);
  CHECK(obs.e_mean == doctest::Approx(-2.0).epsilon(1e-3));
  CHECK(obs.m_abs_mean == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("word runs are reproducible") {
  NeighborTable nb(2, 4);
  auto bonds = lattice_bonds(nb);
  WordMCConfig cfg;
  cfg.temperature = 2.3;
  cfg.updates = 400;
  cfg.thermalization = 50;
  cfg.stride = 2;
  cfg.seed = 123;
  auto wa = WordLattice::uniform(16, 3, 1);
  auto wb = WordLattice::uniform(16, 3, 1);
  auto oa = run_word_mc(cfg, wa, bonds);
  auto ob = run_word_mc(cfg, wb, bonds);
  CHECK(oa.energy.size() == 200);
  CHECK(oa.energy == ob.energy);
  CHECK(wa.letters == wb.letters);
  CHECK(oa.acceptance > 0.0);
  CHECK(oa.acceptance <= 1.0);
}

TEST_CASE("word observables at length one match the Ising sampler") {
  double t = 3.0;
  MCConfig ic;
  ic.algorithm = Algorithm::metropolis;
  ic.temperature = t;
  ic.updates = 20'000;
  ic.thermalization = 2'000;
  ic.stride = 2;
  ic.seed = 31;
  auto lat = SpinLattice::ordered(2, 8);
  auto ising = run_mc(ic, lat);

  NeighborTable nb(2, 8);
  auto bonds = lattice_bonds(nb);
  auto wl = WordLattice::uniform(64, 1, 1);
  WordMCConfig wc;
  wc.temperature = t;
  wc.updates = 20'000;
  wc.thermalization = 2'000;
  wc.stride = 2;
  wc.seed = 32;
  auto words = run_word_mc(wc, wl, bonds);

  CHECK(std::abs(words.e_mean - ising.e_mean) <
        4.0 * std::hypot(words.e_err, ising.e_err) + 0.002);
  CHECK(std::abs(words.m_abs_mean - ising.m_abs_mean) <
        4.0 * std::hypot(words.m_abs_err, ising.m_abs_err) + 0.002);
}

TEST_CASE("word runs validate their inputs") {
  auto wl = WordLattice::uniform(4, 2, 0);
  BondList bad{{0, 7}};
  WordMCConfig cfg;
  CHECK_THROWS_AS(run_word_mc(cfg, wl, bad), std::invalid_argument);
  WordMCConfig cold;
  cold.temperature = 0.0;
  BondList ok{{0, 1}};
  CHECK_THROWS_AS(run_word_mc(cold, wl, ok), std::invalid_argument);
  WordMCConfig none;
  none.updates = 0;
  CHECK_THROWS_AS(run_word_mc(none, wl, ok), std::invalid_argument);
}
