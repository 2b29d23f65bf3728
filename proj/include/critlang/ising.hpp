#pragma once
// Ferromagnetic Ising model on periodic hypercubic lattices in d = 2, 3, 4
// with unit coupling: E = -sum_<xy> s_x s_y, bonds counted once per site and
// +mu direction (so L = 2 carries double bonds, and the 2x2 all-up square has
// E = -8).  Two update schemes: single-site Metropolis and Wolff clusters.

#include <cstdint>
#include <vector>

#include "critlang/rng.hpp"

namespace critlang {

struct SpinLattice {
  int d;
  int L;
  std::vector<std::int8_t> spins;  // +1 / -1, site index in mixed radix base L

  static SpinLattice ordered(int d, int L, int value = +1);
  static SpinLattice random(int d, int L, SplitMix64& rng);
  std::size_t size() const { return spins.size(); }
};

// plus[site*d + mu]: +mu neighbor; all[site*2d + k]: both directions, so a
// flip's energy change is a plain sum even on L = 2 double bonds
struct NeighborTable {
  int d;
  int L;
  std::vector<std::uint32_t> plus;
  std::vector<std::uint32_t> all;
  explicit NeighborTable(int d, int L);
};

long long ising_energy(const SpinLattice& lat, const NeighborTable& nb);
long long magnetization(const SpinLattice& lat);

// one sweep = size() random-site proposals; returns accepted count
std::uint64_t metropolis_sweep(SpinLattice& lat, const NeighborTable& nb, double t,
                               SplitMix64& rng);
// one Wolff cluster flip; returns cluster size
std::size_t wolff_update(SpinLattice& lat, const NeighborTable& nb, double t,
                         SplitMix64& rng);

enum class Algorithm { metropolis, wolff };

struct MCConfig {
  Algorithm algorithm = Algorithm::metropolis;
  double temperature = 2.0;
  std::int64_t updates = 1000;         // measured updates after thermalization
  std::int64_t thermalization = 100;   // discarded updates
  int stride = 1;                      // updates per measurement
  std::uint64_t seed = 1;
};

struct Observables {
  std::vector<double> energy;  // per-site energy at each measurement
  std::vector<double> mag;     // signed per-site magnetization
  double acceptance = 0.0;     // metropolis only
  double mean_cluster = 0.0;   // wolff only, as a fraction of the volume
  // summary with blocking errors; binder = 1 - <m^4>/(3<m^2>^2) via jackknife
  double e_mean = 0.0, e_err = 0.0;
  double m_abs_mean = 0.0, m_abs_err = 0.0;
  double binder = 0.0, binder_err = 0.0;
  double susceptibility = 0.0;  // N (<m^2> - <|m|>^2) / T
};

// evolves the lattice in place (callers can checkpoint the final state)
Observables run_mc(const MCConfig& cfg, SpinLattice& lat);

}  // namespace critlang
