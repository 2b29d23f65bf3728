#include "critlang/ising.hpp"

#include <cmath>
#include <stdexcept>

#include "critlang/stats.hpp"

namespace critlang {

static void check_geometry(int d, int L) {
  if (d < 2 || d > 4) throw std::invalid_argument("lattice dimension must be 2, 3 or 4");
  if (L < 2) throw std::invalid_argument("lattice side must be at least 2");
  double vol = std::pow(static_cast<double>(L), d);
  if (vol > 1e8) throw std::invalid_argument("lattice volume too large");
}

SpinLattice SpinLattice::ordered(int d, int L, int value) {
  check_geometry(d, L);
  if (value != 1 && value != -1) throw std::invalid_argument("spins are +1/-1");
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(L);
  return {d, L, std::vector<std::int8_t>(n, static_cast<std::int8_t>(value))};
}

SpinLattice SpinLattice::random(int d, int L, SplitMix64& rng) {
  SpinLattice lat = ordered(d, L, +1);
  for (auto& s : lat.spins) s = rng.next() & 1 ? std::int8_t{1} : std::int8_t{-1};
  return lat;
}

NeighborTable::NeighborTable(int d_, int L_) : d(d_), L(L_) {
  check_geometry(d, L);
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(L);
  plus.resize(n * static_cast<std::size_t>(d));
  all.resize(n * static_cast<std::size_t>(2 * d));
  std::size_t stride = 1;
  for (int mu = 0; mu < d; ++mu) {
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t coord = (s / stride) % static_cast<std::size_t>(L);
      std::size_t up = coord + 1 == static_cast<std::size_t>(L)
                           ? s - coord * stride
                           : s + stride;
      std::size_t down = coord == 0 ? s + (static_cast<std::size_t>(L) - 1) * stride
                                    : s - stride;
      plus[s * d + mu] = static_cast<std::uint32_t>(up);
      all[s * 2 * d + 2 * mu] = static_cast<std::uint32_t>(up);
      all[s * 2 * d + 2 * mu + 1] = static_cast<std::uint32_t>(down);
    }
    stride *= static_cast<std::size_t>(L);
  }
}

long long ising_energy(const SpinLattice& lat, const NeighborTable& nb) {
  long long e = 0;
  std::size_t n = lat.size();
  for (std::size_t s = 0; s < n; ++s) {
    long long si = lat.spins[s];
    for (int mu = 0; mu < nb.d; ++mu) e -= si * lat.spins[nb.plus[s * nb.d + mu]];
  }
  return e;
}

long long magnetization(const SpinLattice& lat) {
  long long m = 0;
  for (auto s : lat.spins) m += s;
  return m;
}

std::uint64_t metropolis_sweep(SpinLattice& lat, const NeighborTable& nb, double t,
                               SplitMix64& rng) {
  if (!(t > 0.0)) throw std::invalid_argument("metropolis_sweep: temperature must be positive");
  std::size_t n = lat.size();
  int two_d = 2 * nb.d;
  // dE = 2 s_i sum_j s_j takes even values in [-4d, 4d]; precompute the
  // acceptance weights for the positive ones
  std::vector<double> acc(static_cast<std::size_t>(two_d) + 1, 1.0);
  for (int k = 1; k <= two_d; ++k) acc[static_cast<std::size_t>(k)] = std::exp(-2.0 * k / t);
  std::uint64_t accepted = 0;
  for (std::size_t step = 0; step < n; ++step) {
    auto site = static_cast<std::size_t>(rng.uniform_below(n));
    int h = 0;
    for (int k = 0; k < two_d; ++k) h += lat.spins[nb.all[site * two_d + k]];
    int de_half = lat.spins[site] * h;  // dE = 2 * de_half
    if (de_half <= 0 || rng.uniform() < acc[static_cast<std::size_t>(de_half)]) {
      lat.spins[site] = static_cast<std::int8_t>(-lat.spins[site]);
      ++accepted;
    }
  }
  return accepted;
}

std::size_t wolff_update(SpinLattice& lat, const NeighborTable& nb, double t,
                         SplitMix64& rng) {
  if (!(t > 0.0)) throw std::invalid_argument("wolff_update: temperature must be positive");
  double p_add = 1.0 - std::exp(-2.0 / t);
  std::size_t n = lat.size();
  int two_d = 2 * nb.d;
  auto seed_site = static_cast<std::size_t>(rng.uniform_below(n));
  std::int8_t cluster_spin = lat.spins[seed_site];
  std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(seed_site)};
  lat.spins[seed_site] = static_cast<std::int8_t>(-cluster_spin);
  std::size_t flipped = 1;
  while (!stack.empty()) {
    std::size_t site = stack.back();
    stack.pop_back();
    for (int k = 0; k < two_d; ++k) {
      std::uint32_t nbr = nb.all[site * two_d + k];
      // already-flipped neighbors fail the spin test automatically, so the
      // double bonds of L = 2 get their two independent activation trials
      if (lat.spins[nbr] == cluster_spin && rng.uniform() < p_add) {
        lat.spins[nbr] = static_cast<std::int8_t>(-cluster_spin);
        stack.push_back(nbr);
        ++flipped;
      }
    }
  }
  return flipped;
}

Observables run_mc(const MCConfig& cfg, SpinLattice& lat) {
  if (cfg.updates <= 0 || cfg.thermalization < 0 || cfg.stride < 1)
    throw std::invalid_argument("run_mc: need updates > 0, thermalization >= 0, stride >= 1");
  NeighborTable nb(lat.d, lat.L);
  SplitMix64 rng(cfg.seed);
  auto n = static_cast<double>(lat.size());

  for (std::int64_t i = 0; i < cfg.thermalization; ++i) {
    if (cfg.algorithm == Algorithm::metropolis)
      metropolis_sweep(lat, nb, cfg.temperature, rng);
    else
      wolff_update(lat, nb, cfg.temperature, rng);
  }

  Observables obs;
  std::int64_t nmeas = cfg.updates / cfg.stride;
  obs.energy.reserve(nmeas);
  obs.mag.reserve(nmeas);
  std::uint64_t accepted = 0;
  std::size_t cluster_total = 0;
  for (std::int64_t m = 0; m < nmeas; ++m) {
    for (int s = 0; s < cfg.stride; ++s) {
      if (cfg.algorithm == Algorithm::metropolis)
        accepted += metropolis_sweep(lat, nb, cfg.temperature, rng);
      else
        cluster_total += wolff_update(lat, nb, cfg.temperature, rng);
    }
    obs.energy.push_back(static_cast<double>(ising_energy(lat, nb)) / n);
    obs.mag.push_back(static_cast<double>(magnetization(lat)) / n);
  }
  std::int64_t total_updates = nmeas * cfg.stride;
  if (cfg.algorithm == Algorithm::metropolis)
    obs.acceptance = static_cast<double>(accepted) /
                     (static_cast<double>(total_updates) * n);
  else
    obs.mean_cluster = static_cast<double>(cluster_total) /
                       (static_cast<double>(total_updates) * n);

  obs.e_mean = mean(obs.energy);
  obs.e_err = blocking_error(obs.energy);
  std::vector<double> absm(obs.mag.size());
  for (std::size_t i = 0; i < obs.mag.size(); ++i) absm[i] = std::abs(obs.mag[i]);
  obs.m_abs_mean = mean(absm);
  obs.m_abs_err = blocking_error(absm);

  std::vector<double> m2(obs.mag.size());
  for (std::size_t i = 0; i < obs.mag.size(); ++i) m2[i] = obs.mag[i] * obs.mag[i];
  obs.susceptibility = n * (mean(m2) - obs.m_abs_mean * obs.m_abs_mean) / cfg.temperature;

  std::size_t nblocks = obs.mag.size() >= 100 ? 50 : (obs.mag.size() >= 4 ? 2 : 0);
  if (nblocks >= 2) {
    std::size_t len = obs.mag.size() / nblocks;
    std::vector<std::vector<double>> blocks(nblocks, std::vector<double>(2, 0.0));
    for (std::size_t b = 0; b < nblocks; ++b) {
      for (std::size_t i = b * len; i < (b + 1) * len; ++i) {
        double mm = obs.mag[i] * obs.mag[i];
        blocks[b][0] += mm;
        blocks[b][1] += mm * mm;
      }
      blocks[b][0] /= static_cast<double>(len);
      blocks[b][1] /= static_cast<double>(len);
    }
    auto bres = jackknife(blocks, [](const std::vector<double>& c) {
      return 1.0 - c[1] / (3.0 * c[0] * c[0]);
    });
    obs.binder = bres.value;
    obs.binder_err = bres.error;
  }
  return obs;
}

}  // namespace critlang
