#pragma once
// Error analysis for correlated Monte Carlo series: log2 blocking for naive
// observables, leave-one-out jackknife over block means for nonlinear
// combinations (Binder cumulant, thermal derivatives, connected correlators),
// and small least-squares / rank-correlation helpers for the scaling fits.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace critlang {

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased, needs size >= 2

// error of the mean including autocorrelation: block the series in powers of
// two and take the largest naive error across levels with >= 8 blocks
double blocking_error(std::span<const double> x);

// collapse a series into nblocks contiguous block means (remainder dropped)
std::vector<double> block_means(std::span<const double> x, std::size_t nblocks);

// blocks[b] holds one mean per observable column; f maps column means to the
// derived quantity.  Returns {estimate on full data, jackknife error}.
struct JackknifeResult {
  double value;
  double error;
};
JackknifeResult jackknife(const std::vector<std::vector<double>>& blocks,
                          const std::function<double(const std::vector<double>&)>& f);

struct LinearFit {
  double slope;
  double intercept;
  double slope_err;
  double intercept_err;
  double chi2;      // weighted: chi^2; unweighted: residual sum of squares
  std::size_t dof;  // points - 2
};

// unweighted fit; parameter errors scaled by the residual variance
LinearFit fit_line(std::span<const double> x, std::span<const double> y);
// weighted fit with known per-point errors; parameter errors from covariance
LinearFit fit_line_weighted(std::span<const double> x, std::span<const double> y,
                            std::span<const double> sigma);

// Spearman rank correlation with average ranks on ties
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace critlang
