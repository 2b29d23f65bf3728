#pragma once
// Finite-size scaling around the critical point.  Independent (L, T) cells
// produce Binder cumulants and their thermal derivatives; crossings of U(T)
// between sizes locate T_c, and the growth |dU/dT| ~ L^{1/nu} at T_c gives the
// correlation-length exponent.  Derivatives come from the fluctuation
// identity d<A>/dbeta = <A><H> - <AH>, so each cell only stores block means
// of a handful of moments.

#include <cstdint>
#include <string>
#include <vector>

#include "critlang/ising.hpp"

namespace critlang {

struct CellSpec {
  int d;
  int L;
  double t;
};

struct FssConfig {
  Algorithm algorithm = Algorithm::wolff;
  std::int64_t thermalization = 2000;  // updates
  std::int64_t measurements = 20000;
  int stride = 2;      // updates between measurements
  int blocks = 50;     // jackknife blocks
};

struct CellStats {
  CellSpec spec;
  std::size_t measurements = 0;
  // per-block means of (m2, m4, H, m2*H, m4*H, e, |m|); H is extensive
  std::vector<std::vector<double>> blocks;
  double binder = 0.0, binder_err = 0.0;
  double dbinder_dt = 0.0, dbinder_dt_err = 0.0;
  double abs_m = 0.0, abs_m_err = 0.0;
  double e_density = 0.0, e_density_err = 0.0;
};

// recompute the jackknife summaries from stored blocks (used after loading a
// checkpointed cell back from disk)
void summarize_cell(CellStats& cell);

CellStats run_cell(const CellSpec& spec, const FssConfig& cfg, std::uint64_t seed);
// one stream per cell via rng splitting, so the batch result is independent
// of thread count; OpenMP across cells
std::vector<CellStats> run_cells(const std::vector<CellSpec>& specs, const FssConfig& cfg,
                                 std::uint64_t master_seed, int threads = 0);
std::vector<CellStats> run_cells_serial(const std::vector<CellSpec>& specs,
                                        const FssConfig& cfg, std::uint64_t master_seed);

struct CrossingPair {
  int l_small, l_large;
  double t_c, err;
};

struct CrossingEstimate {
  double t_c = 0.0;
  double err = 0.0;
  std::vector<CrossingPair> pairs;
};

// U(T) curves interpolated with cubic Hermite segments (values + thermal
// derivatives); every size pair must change sign somewhere on the grid,
// otherwise the grid missed T_c and a NumericError explains which pair
CrossingEstimate binder_crossing(const std::vector<CellStats>& cells);

struct ScalingPoint {
  int L;
  double slope, slope_err;  // |dU/dT| at t_c
};

struct CriticalFit {
  double t_c = 0.0, t_c_err = 0.0;
  double nu = 0.0, nu_err = 0.0;
  double exponent = 0.0, exponent_err = 0.0;  // fitted 1/nu
  double chi2 = 0.0;
  std::size_t dof = 0;
  std::vector<ScalingPoint> points;
  std::string method = "binder-derivative-scaling";
};

// needs at least three sizes; refuses rather than extrapolating from two
CriticalFit estimate_nu(const std::vector<CellStats>& cells,
                        const CrossingEstimate& crossing);

struct CorrelatorPoint {
  int r;
  double value, error;
};

struct CorrelatorResult {
  double t = 0.0;
  std::vector<CorrelatorPoint> points;
  double exponent = 0.0, exponent_err = 0.0;  // C(r) ~ r^-exponent, ~ 2 Delta_eps
  double chi2 = 0.0;
  std::size_t dof = 0;
  bool reliable = true;  // false when some C(r) in the fit window is <= 2 sigma
};

// connected energy-energy correlator along the lattice axes at distance r,
// with eps_x = sum_mu s_x s_{x+mu}; exponent from the log-log fit over rs
CorrelatorResult energy_correlator(int d, int L, double t, const FssConfig& cfg,
                                   const std::vector<int>& rs, std::uint64_t seed);

}  // namespace critlang
