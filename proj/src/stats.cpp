#include "critlang/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "critlang/accum.hpp"

namespace critlang {

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean: empty series");
  CompensatedSum s;
  for (double v : x) s.add(v);
  return s.value() / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("variance: need at least 2 points");
  double m = mean(x);
  CompensatedSum s;
  for (double v : x) s.add((v - m) * (v - m));
  return s.value() / static_cast<double>(x.size() - 1);
}

double blocking_error(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  std::vector<double> level(x.begin(), x.end());
  double best = 0.0;
  while (level.size() >= 8) {
    double err = std::sqrt(variance(level) / static_cast<double>(level.size()));
    best = std::max(best, err);
    std::vector<double> next(level.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = 0.5 * (level[2 * i] + level[2 * i + 1]);
    level.swap(next);
  }
  if (best == 0.0)  // series too short to block; fall back to the naive error
    best = std::sqrt(variance(x) / static_cast<double>(x.size()));
  return best;
}

std::vector<double> block_means(std::span<const double> x, std::size_t nblocks) {
  if (nblocks == 0 || x.size() < nblocks)
    throw std::invalid_argument("block_means: series shorter than block count");
  std::size_t len = x.size() / nblocks;
  std::vector<double> out(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    CompensatedSum s;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) s.add(x[i]);
    out[b] = s.value() / static_cast<double>(len);
  }
  return out;
}

JackknifeResult jackknife(const std::vector<std::vector<double>>& blocks,
                          const std::function<double(const std::vector<double>&)>& f) {
  std::size_t nb = blocks.size();
  if (nb < 2) throw std::invalid_argument("jackknife: need at least 2 blocks");
  std::size_t nc = blocks[0].size();
  std::vector<double> total(nc, 0.0);
  for (const auto& b : blocks) {
    if (b.size() != nc) throw std::invalid_argument("jackknife: ragged blocks");
    for (std::size_t c = 0; c < nc; ++c) total[c] += b[c];
  }
  std::vector<double> full(nc);
  for (std::size_t c = 0; c < nc; ++c) full[c] = total[c] / static_cast<double>(nb);
  double theta = f(full);

  std::vector<double> loo(nb);
  std::vector<double> reduced(nc);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t c = 0; c < nc; ++c)
      reduced[c] = (total[c] - blocks[i][c]) / static_cast<double>(nb - 1);
    loo[i] = f(reduced);
  }
  double m = mean(loo);
  double ss = 0.0;
  for (double v : loo) ss += (v - m) * (v - m);
  double err = std::sqrt(ss * static_cast<double>(nb - 1) / static_cast<double>(nb));
  return {theta, err};
}

static LinearFit fit_core(std::span<const double> x, std::span<const double> y,
                          const std::vector<double>& w) {
  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    S += w[i];
    Sx += w[i] * x[i];
    Sy += w[i] * y[i];
    Sxx += w[i] * x[i] * x[i];
    Sxy += w[i] * x[i] * y[i];
  }
  double det = S * Sxx - Sx * Sx;
  if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LinearFit fit{};
  fit.slope = (S * Sxy - Sx * Sy) / det;
  fit.intercept = (Sxx * Sy - Sx * Sxy) / det;
  fit.slope_err = std::sqrt(S / det);
  fit.intercept_err = std::sqrt(Sxx / det);
  fit.chi2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (fit.slope * x[i] + fit.intercept);
    fit.chi2 += w[i] * r * r;
  }
  fit.dof = x.size() - 2;
  return fit;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 points, equal lengths");
  std::vector<double> w(x.size(), 1.0);
  LinearFit fit = fit_core(x, y, w);
  // unit weights carry no scale, so size the errors by the scatter
  double s2 = fit.dof > 0 ? fit.chi2 / static_cast<double>(fit.dof) : 0.0;
  fit.slope_err *= std::sqrt(s2);
  fit.intercept_err *= std::sqrt(s2);
  return fit;
}

LinearFit fit_line_weighted(std::span<const double> x, std::span<const double> y,
                            std::span<const double> sigma) {
  if (x.size() != y.size() || x.size() != sigma.size() || x.size() < 2)
    throw std::invalid_argument("fit_line_weighted: need >= 2 points, equal lengths");
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sigma[i] <= 0.0) throw std::invalid_argument("fit_line_weighted: sigma <= 0");
    w[i] = 1.0 / (sigma[i] * sigma[i]);
  }
  return fit_core(x, y, w);
}

static std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // average rank, 1-based
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("spearman: need >= 2 points, equal lengths");
  std::vector<double> rx = ranks(x), ry = ranks(y);
  double mx = mean(rx), my = mean(ry);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;  // a constant list carries no ordering
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace critlang
