#include "critlang/fss.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "critlang/errors.hpp"
#include "critlang/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace critlang {

enum Col { kM2 = 0, kM4, kH, kM2H, kM4H, kE, kAbsM, kNCols };

static double binder_of(const std::vector<double>& c) {
  return 1.0 - c[kM4] / (3.0 * c[kM2] * c[kM2]);
}

// dU/dT via d<A>/dbeta = <A><H> - <AH> and dbeta/dT = -1/T^2
static double dbinder_dt_of(const std::vector<double>& c, double t) {
  double dm2 = c[kM2] * c[kH] - c[kM2H];
  double dm4 = c[kM4] * c[kH] - c[kM4H];
  double dudb = -(dm4 / (c[kM2] * c[kM2]) -
                  2.0 * c[kM4] * dm2 / (c[kM2] * c[kM2] * c[kM2])) / 3.0;
  return -dudb / (t * t);
}

void summarize_cell(CellStats& cell) {
  auto b = jackknife(cell.blocks, binder_of);
  cell.binder = b.value;
  cell.binder_err = b.error;
  double t = cell.spec.t;
  auto d = jackknife(cell.blocks,
                     [t](const std::vector<double>& c) { return dbinder_dt_of(c, t); });
  cell.dbinder_dt = d.value;
  cell.dbinder_dt_err = d.error;
  auto am = jackknife(cell.blocks, [](const std::vector<double>& c) { return c[kAbsM]; });
  cell.abs_m = am.value;
  cell.abs_m_err = am.error;
  auto e = jackknife(cell.blocks, [](const std::vector<double>& c) { return c[kE]; });
  cell.e_density = e.value;
  cell.e_density_err = e.error;
}

CellStats run_cell(const CellSpec& spec, const FssConfig& cfg, std::uint64_t seed) {
  if (cfg.measurements < cfg.blocks || cfg.blocks < 2)
    throw std::invalid_argument("run_cell: need measurements >= blocks >= 2");
  SpinLattice lat = SpinLattice::ordered(spec.d, spec.L);
  NeighborTable nb(spec.d, spec.L);
  SplitMix64 rng(seed);
  auto n = static_cast<double>(lat.size());

  for (std::int64_t i = 0; i < cfg.thermalization; ++i) {
    if (cfg.algorithm == Algorithm::metropolis)
      metropolis_sweep(lat, nb, spec.t, rng);
    else
      wolff_update(lat, nb, spec.t, rng);
  }

  CellStats cell;
  cell.spec = spec;
  std::size_t len = static_cast<std::size_t>(cfg.measurements) /
                    static_cast<std::size_t>(cfg.blocks);
  cell.measurements = len * static_cast<std::size_t>(cfg.blocks);
  cell.blocks.assign(static_cast<std::size_t>(cfg.blocks),
                     std::vector<double>(kNCols, 0.0));
  for (std::size_t i = 0; i < cell.measurements; ++i) {
    for (int s = 0; s < cfg.stride; ++s) {
      if (cfg.algorithm == Algorithm::metropolis)
        metropolis_sweep(lat, nb, spec.t, rng);
      else
        wolff_update(lat, nb, spec.t, rng);
    }
    double h = static_cast<double>(ising_energy(lat, nb));
    double m = static_cast<double>(magnetization(lat)) / n;
    double m2 = m * m;
    auto& blk = cell.blocks[i / len];
    blk[kM2] += m2;
    blk[kM4] += m2 * m2;
    blk[kH] += h;
    blk[kM2H] += m2 * h;
    blk[kM4H] += m2 * m2 * h;
    blk[kE] += h / n;
    blk[kAbsM] += std::abs(m);
  }
  for (auto& blk : cell.blocks)
    for (auto& v : blk) v /= static_cast<double>(len);
  summarize_cell(cell);
  return cell;
}

std::vector<CellStats> run_cells(const std::vector<CellSpec>& specs, const FssConfig& cfg,
                                 std::uint64_t master_seed, int threads) {
  std::vector<CellStats> out(specs.size());
  SplitMix64 master(master_seed);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (long long i = 0; i < static_cast<long long>(specs.size()); ++i)
    out[static_cast<std::size_t>(i)] =
        run_cell(specs[static_cast<std::size_t>(i)], cfg,
                 master.split(static_cast<std::uint64_t>(i)).state());
  return out;
}

std::vector<CellStats> run_cells_serial(const std::vector<CellSpec>& specs,
                                        const FssConfig& cfg, std::uint64_t master_seed) {
  std::vector<CellStats> out;
  out.reserve(specs.size());
  SplitMix64 master(master_seed);
  for (std::size_t i = 0; i < specs.size(); ++i)
    out.push_back(run_cell(specs[i], cfg, master.split(i).state()));
  return out;
}

namespace {

struct Curve {  // one lattice size, sorted by temperature
  std::vector<double> t, u, uerr, du, duerr;
};

std::map<int, Curve> group_by_size(const std::vector<CellStats>& cells) {
  std::map<int, std::vector<const CellStats*>> bins;
  for (const auto& c : cells) bins[c.spec.L].push_back(&c);
  std::map<int, Curve> curves;
  for (auto& [L, list] : bins) {
    std::sort(list.begin(), list.end(),
              [](const CellStats* a, const CellStats* b) { return a->spec.t < b->spec.t; });
    Curve cv;
    for (const auto* c : list) {
      cv.t.push_back(c->spec.t);
      cv.u.push_back(c->binder);
      cv.uerr.push_back(c->binder_err);
      cv.du.push_back(c->dbinder_dt);
      cv.duerr.push_back(c->dbinder_dt_err);
    }
    curves[L] = std::move(cv);
  }
  return curves;
}

double hermite(double t0, double t1, double u0, double u1, double s0, double s1,
               double t) {
  double h = t1 - t0, x = (t - t0) / h;
  double x2 = x * x, x3 = x2 * x;
  return (2 * x3 - 3 * x2 + 1) * u0 + (x3 - 2 * x2 + x) * h * s0 +
         (-2 * x3 + 3 * x2) * u1 + (x3 - x2) * h * s1;
}

// U(T) interpolated over the grid segment containing t
double curve_value(const Curve& c, double t) {
  std::size_t k = 0;
  while (k + 2 < c.t.size() && c.t[k + 1] < t) ++k;
  return hermite(c.t[k], c.t[k + 1], c.u[k], c.u[k + 1], c.du[k], c.du[k + 1], t);
}

}  // namespace

CrossingEstimate binder_crossing(const std::vector<CellStats>& cells) {
  auto curves = group_by_size(cells);
  if (curves.size() < 2)
    throw std::invalid_argument("binder_crossing: need at least two lattice sizes");
  for (const auto& [L, cv] : curves)
    if (cv.t.size() < 2)
      throw std::invalid_argument("binder_crossing: size " + std::to_string(L) +
                                  " has fewer than two temperatures");

  CrossingEstimate est;
  std::vector<int> sizes;
  for (const auto& [L, cv] : curves) sizes.push_back(L);
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    for (std::size_t b = a + 1; b < sizes.size(); ++b) {
      const Curve& ca = curves[sizes[a]];
      const Curve& cb = curves[sizes[b]];
      if (ca.t != cb.t)
        throw std::invalid_argument("binder_crossing: temperature grids differ between sizes");
      // first sign change of g = U_small - U_large on the grid
      int kbest = -1;
      for (std::size_t k = 0; k + 1 < ca.t.size(); ++k) {
        double g0 = ca.u[k] - cb.u[k], g1 = ca.u[k + 1] - cb.u[k + 1];
        if (g0 == 0.0 || g0 * g1 < 0) {
          if (kbest < 0) kbest = static_cast<int>(k);
        }
      }
      if (kbest < 0)
        throw NumericError("binder_crossing: no U4 crossing between L=" +
                           std::to_string(sizes[a]) + " and L=" + std::to_string(sizes[b]) +
                           " inside the temperature grid (grid misses T_c)");
      double lo = ca.t[static_cast<std::size_t>(kbest)];
      double hi = ca.t[static_cast<std::size_t>(kbest) + 1];
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double g_lo = curve_value(ca, lo) - curve_value(cb, lo);
        double g_mid = curve_value(ca, mid) - curve_value(cb, mid);
        if ((g_lo <= 0) == (g_mid <= 0))
          lo = mid;
        else
          hi = mid;
      }
      double tc = 0.5 * (lo + hi);
      // error: combined U errors over the local slope difference
      std::size_t k = static_cast<std::size_t>(kbest);
      double slope_diff =
          std::abs((ca.du[k] + ca.du[k + 1]) / 2 - (cb.du[k] + cb.du[k + 1]) / 2);
      double uerr = std::hypot(std::max(ca.uerr[k], ca.uerr[k + 1]),
                               std::max(cb.uerr[k], cb.uerr[k + 1]));
      double terr = slope_diff > 0 ? uerr / slope_diff : hi - lo;
      est.pairs.push_back({sizes[a], sizes[b], tc, terr});
    }
  }

  double sum = 0;
  for (const auto& p : est.pairs) sum += p.t_c;
  est.t_c = sum / static_cast<double>(est.pairs.size());
  double var = 0, perr2 = 0;
  for (const auto& p : est.pairs) {
    var += (p.t_c - est.t_c) * (p.t_c - est.t_c);
    perr2 += p.err * p.err;
  }
  double npairs = static_cast<double>(est.pairs.size());
  double spread = est.pairs.size() > 1 ? std::sqrt(var / (npairs - 1)) : est.pairs[0].err;
  est.err = std::max(spread, std::sqrt(perr2) / npairs);
  return est;
}

CriticalFit estimate_nu(const std::vector<CellStats>& cells,
                        const CrossingEstimate& crossing) {
  auto curves = group_by_size(cells);
  if (curves.size() < 3)
    throw NumericError("estimate_nu: need at least three lattice sizes, have " +
                       std::to_string(curves.size()));
  CriticalFit fit;
  fit.t_c = crossing.t_c;
  fit.t_c_err = crossing.err;

  std::vector<double> lx, ly, lsig;
  for (const auto& [L, cv] : curves) {
    if (crossing.t_c < cv.t.front() || crossing.t_c > cv.t.back())
      throw NumericError("estimate_nu: T_c lies outside the simulated grid");
    std::size_t k = 0;
    while (k + 2 < cv.t.size() && cv.t[k + 1] < crossing.t_c) ++k;
    double w = (crossing.t_c - cv.t[k]) / (cv.t[k + 1] - cv.t[k]);
    double s = (1 - w) * cv.du[k] + w * cv.du[k + 1];
    double serr = std::hypot((1 - w) * cv.duerr[k], w * cv.duerr[k + 1]);
    double mag = std::abs(s);
    if (mag <= serr)
      throw NumericError("estimate_nu: derivative at T_c consistent with zero for L=" +
                         std::to_string(L));
    fit.points.push_back({L, mag, serr});
    lx.push_back(std::log(static_cast<double>(L)));
    ly.push_back(std::log(mag));
    lsig.push_back(serr / mag);
  }
  LinearFit lf = fit_line_weighted(lx, ly, lsig);
  fit.exponent = lf.slope;
  fit.exponent_err = lf.slope_err;
  if (lf.slope <= 0)
    throw NumericError("estimate_nu: |dU/dT| does not grow with L; no critical scaling");
  fit.nu = 1.0 / lf.slope;
  fit.nu_err = lf.slope_err / (lf.slope * lf.slope);
  fit.chi2 = lf.chi2;
  fit.dof = lf.dof;
  return fit;
}

CorrelatorResult energy_correlator(int d, int L, double t, const FssConfig& cfg,
                                   const std::vector<int>& rs, std::uint64_t seed) {
  if (rs.size() < 2)
    throw std::invalid_argument("energy_correlator: need at least two distances");
  for (int r : rs)
    if (r < 1 || r > L / 2)
      throw std::invalid_argument("energy_correlator: distances must lie in [1, L/2]");
  if (cfg.measurements < cfg.blocks || cfg.blocks < 2)
    throw std::invalid_argument("energy_correlator: need measurements >= blocks >= 2");

  SpinLattice lat = SpinLattice::ordered(d, L);
  NeighborTable nb(d, L);
  SplitMix64 rng(seed);
  std::size_t n = lat.size();

  // site offsets for a step of r along each axis, reusing the +1 tables
  std::vector<std::vector<std::uint32_t>> shift(rs.size(),
                                                std::vector<std::uint32_t>(n * d));
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    for (std::size_t s = 0; s < n; ++s) {
      for (int mu = 0; mu < d; ++mu) {
        std::uint32_t site = static_cast<std::uint32_t>(s);
        for (int step = 0; step < rs[ri]; ++step) site = nb.plus[site * d + mu];
        shift[ri][s * d + mu] = site;
      }
    }
  }

  for (std::int64_t i = 0; i < cfg.thermalization; ++i) {
    if (cfg.algorithm == Algorithm::metropolis)
      metropolis_sweep(lat, nb, t, rng);
    else
      wolff_update(lat, nb, t, rng);
  }

  std::size_t nblocks = static_cast<std::size_t>(cfg.blocks);
  std::size_t len = static_cast<std::size_t>(cfg.measurements) / nblocks;
  // block columns: <eps eps>(r) for each r, then <eps>
  std::vector<std::vector<double>> blocks(nblocks,
                                          std::vector<double>(rs.size() + 1, 0.0));
  std::vector<double> eps(n);
  for (std::size_t i = 0; i < len * nblocks; ++i) {
    for (int s = 0; s < cfg.stride; ++s) {
      if (cfg.algorithm == Algorithm::metropolis)
        metropolis_sweep(lat, nb, t, rng);
      else
        wolff_update(lat, nb, t, rng);
    }
    for (std::size_t s = 0; s < n; ++s) {
      int acc = 0;
      for (int mu = 0; mu < d; ++mu)
        acc += lat.spins[s] * lat.spins[nb.plus[s * d + mu]];
      eps[s] = static_cast<double>(acc);
    }
    auto& blk = blocks[i / len];
    double ebar = 0;
    for (std::size_t s = 0; s < n; ++s) ebar += eps[s];
    blk[rs.size()] += ebar / static_cast<double>(n);
    for (std::size_t ri = 0; ri < rs.size(); ++ri) {
      double acc = 0;
      const auto* sh = shift[ri].data();
      for (std::size_t s = 0; s < n; ++s)
        for (int mu = 0; mu < d; ++mu) acc += eps[s] * eps[sh[s * d + mu]];
      blk[ri] += acc / static_cast<double>(n * static_cast<std::size_t>(d));
    }
  }
  for (auto& blk : blocks)
    for (auto& v : blk) v /= static_cast<double>(len);

  CorrelatorResult res;
  res.t = t;
  std::vector<double> lx, ly, lsig;
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    auto jk = jackknife(blocks, [ri, nr = rs.size()](const std::vector<double>& c) {
      return c[ri] - c[nr] * c[nr];
    });
    res.points.push_back({rs[ri], jk.value, jk.error});
    if (jk.value <= 2.0 * jk.error) {
      res.reliable = false;
      continue;
    }
    lx.push_back(std::log(static_cast<double>(rs[ri])));
    ly.push_back(std::log(jk.value));
    lsig.push_back(jk.error / jk.value);
  }
  if (lx.size() < 2)
    throw NumericError("energy_correlator: correlator indistinguishable from zero");
  LinearFit lf = fit_line_weighted(lx, ly, lsig);
  res.exponent = -lf.slope;
  res.exponent_err = lf.slope_err;
  res.chi2 = lf.chi2;
  res.dof = lf.dof;
  return res;
}

}  // namespace critlang
