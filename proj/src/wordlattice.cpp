#include "critlang/wordlattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "critlang/stats.hpp"

namespace critlang {

WordLattice WordLattice::uniform(std::size_t n_sites, int word_len, std::uint8_t letter) {
  if (n_sites == 0 || word_len < 1)
    throw std::invalid_argument("word lattice needs sites and a positive word length");
  if (letter > 1) throw std::invalid_argument("word lattice letters are binary");
  return {word_len, std::vector<std::uint8_t>(n_sites * static_cast<std::size_t>(word_len),
                                              letter)};
}

WordLattice WordLattice::random(std::size_t n_sites, int word_len, SplitMix64& rng) {
  WordLattice wl = uniform(n_sites, word_len, 0);
  for (auto& v : wl.letters) v = static_cast<std::uint8_t>(rng.next() & 1);
  return wl;
}

BondList lattice_bonds(const NeighborTable& nb) {
  BondList bonds;
  std::size_t n = nb.plus.size() / static_cast<std::size_t>(nb.d);
  bonds.reserve(n * static_cast<std::size_t>(nb.d));
  for (std::size_t s = 0; s < n; ++s)
    for (int mu = 0; mu < nb.d; ++mu)
      bonds.emplace_back(static_cast<std::uint32_t>(s), nb.plus[s * nb.d + mu]);
  return bonds;
}

BondList graph_bonds(const NeighborGraph& g) {
  BondList bonds;
  for (std::uint32_t u = 0; u < g.adj.size(); ++u)
    for (std::uint32_t v : g.adj[u])
      if (u < v) bonds.emplace_back(u, v);
  return bonds;
}

static inline int spin(std::uint8_t letter) { return letter ? 1 : -1; }

long long word_energy(const WordLattice& wl, const BondList& bonds) {
  long long e = 0;
  int n = wl.word_len;
  for (auto [u, v] : bonds) {
    const auto* a = wl.letters.data() + static_cast<std::size_t>(u) * n;
    const auto* b = wl.letters.data() + static_cast<std::size_t>(v) * n;
    for (int k = 0; k < n; ++k) e -= spin(a[k]) * spin(b[k]);
  }
  return e;
}

Observables run_word_mc(const WordMCConfig& cfg, WordLattice& wl, const BondList& bonds) {
  if (!(cfg.temperature > 0.0))
    throw std::invalid_argument("run_word_mc: temperature must be positive");
  if (cfg.updates <= 0 || cfg.thermalization < 0 || cfg.stride < 1)
    throw std::invalid_argument("run_word_mc: need updates > 0, thermalization >= 0, stride >= 1");
  std::size_t sites = wl.sites();
  int n = wl.word_len;

  // adjacency with multiplicity (an L = 2 lattice lists a neighbor twice)
  std::vector<std::vector<std::uint32_t>> adj(sites);
  std::size_t max_deg = 0;
  for (auto [u, v] : bonds) {
    if (u >= sites || v >= sites)
      throw std::invalid_argument("run_word_mc: bond endpoint outside lattice");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (const auto& a : adj) max_deg = std::max(max_deg, a.size());
  std::vector<double> acc(max_deg + 1, 1.0);
  for (std::size_t k = 1; k <= max_deg; ++k)
    acc[k] = std::exp(-2.0 * static_cast<double>(k) / cfg.temperature);

  SplitMix64 rng(cfg.seed);
  auto sweep = [&]() {
    std::uint64_t accepted = 0;
    std::size_t proposals = sites * static_cast<std::size_t>(n);
    for (std::size_t p = 0; p < proposals; ++p) {
      auto u = static_cast<std::size_t>(rng.uniform_below(sites));
      int k = n == 1 ? 0 : static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
      auto* word = wl.letters.data() + u * static_cast<std::size_t>(n);
      int h = 0;
      for (auto v : adj[u]) h += spin(wl.letters[static_cast<std::size_t>(v) * n + k]);
      int de_half = spin(word[k]) * h;  // dE = 2 * de_half
      if (de_half <= 0 || rng.uniform() < acc[static_cast<std::size_t>(de_half)]) {
        word[k] ^= 1;
        ++accepted;
      }
    }
    return accepted;
  };

  for (std::int64_t i = 0; i < cfg.thermalization; ++i) sweep();

  Observables obs;
  std::int64_t nmeas = cfg.updates / cfg.stride;
  double letters_total = static_cast<double>(sites) * n;
  std::uint64_t accepted = 0;
  for (std::int64_t m = 0; m < nmeas; ++m) {
    for (int s = 0; s < cfg.stride; ++s) accepted += sweep();
    obs.energy.push_back(static_cast<double>(word_energy(wl, bonds)) / letters_total);
    long long mg = 0;
    for (auto v : wl.letters) mg += spin(v);
    obs.mag.push_back(static_cast<double>(mg) / letters_total);
  }
  obs.acceptance = static_cast<double>(accepted) /
                   (static_cast<double>(nmeas * cfg.stride) * letters_total);

  obs.e_mean = mean(obs.energy);
  obs.e_err = blocking_error(obs.energy);
  std::vector<double> absm(obs.mag.size());
  for (std::size_t i = 0; i < obs.mag.size(); ++i) absm[i] = std::abs(obs.mag[i]);
  obs.m_abs_mean = mean(absm);
  obs.m_abs_err = blocking_error(absm);
  std::vector<double> m2(obs.mag.size());
  for (std::size_t i = 0; i < obs.mag.size(); ++i) m2[i] = obs.mag[i] * obs.mag[i];
  obs.susceptibility =
      letters_total * (mean(m2) - obs.m_abs_mean * obs.m_abs_mean) / cfg.temperature;
  return obs;
}

}  // namespace critlang
