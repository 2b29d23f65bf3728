#pragma once
// Lattices whose site variable is a binary word rather than a single spin.
// Neighboring words couple letter by letter under the a/b product (a -> -1,
// b -> +1), so the Hamiltonian is n independent Ising layers sharing the same
// bond structure: E = -sum_<uv> sum_k s_k(u) s_k(v).  Bonds come either from
// a periodic lattice (+mu per site, like the Ising convention) or from a
// complexity neighbor graph (each undirected edge once).

#include <cstdint>
#include <utility>
#include <vector>

#include "critlang/complexity.hpp"
#include "critlang/ising.hpp"

namespace critlang {

struct WordLattice {
  int word_len;
  std::vector<std::uint8_t> letters;  // sites x word_len, values 0 (=a) / 1 (=b)

  std::size_t sites() const { return letters.size() / static_cast<std::size_t>(word_len); }
  static WordLattice uniform(std::size_t n_sites, int word_len, std::uint8_t letter);
  static WordLattice random(std::size_t n_sites, int word_len, SplitMix64& rng);
};

using BondList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

BondList lattice_bonds(const NeighborTable& nb);
BondList graph_bonds(const NeighborGraph& g);

long long word_energy(const WordLattice& wl, const BondList& bonds);

struct WordMCConfig {
  double temperature = 2.0;
  std::int64_t updates = 1000;        // sweeps after thermalization
  std::int64_t thermalization = 100;  // discarded sweeps
  int stride = 1;
  std::uint64_t seed = 1;
};

// Metropolis on single letters; energy/mag densities are per letter, so a
// word length of 1 reproduces the plain Ising observables exactly
Observables run_word_mc(const WordMCConfig& cfg, WordLattice& wl, const BondList& bonds);

}  // namespace critlang
