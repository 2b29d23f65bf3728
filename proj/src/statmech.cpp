#include "critlang/statmech.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "critlang/accum.hpp"
#include "critlang/errors.hpp"

namespace critlang {

// S < 1 decides convergence; within this band of 1 the reciprocal is pure
// rounding noise, so the result is reported divergent instead
static constexpr double kDivergenceBand = 1e-12;

WeightAssignment::WeightAssignment(std::vector<Word> words, std::vector<double> lambdas,
                                   double rate)
    : words_(std::move(words)), lambdas_(std::move(lambdas)), rate_(rate) {
  if (words_.empty() || words_.size() != lambdas_.size())
    throw std::invalid_argument("weight assignment: need one weight per word");
  if (!(rate_ > 0.0)) throw std::invalid_argument("weight assignment: rate must be positive");
  for (double l : lambdas_)
    if (!(l > 0.0)) throw std::invalid_argument("weight assignment: weights must be positive");
  std::vector<std::size_t> perm(words_.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return words_[a] < words_[b]; });
  std::vector<Word> w;
  std::vector<double> l;
  w.reserve(words_.size());
  l.reserve(words_.size());
  for (auto i : perm) {
    w.push_back(std::move(words_[i]));
    l.push_back(lambdas_[i]);
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1])
      throw std::invalid_argument("weight assignment: duplicate word '" + w[i].str() + "'");
  words_ = std::move(w);
  lambdas_ = std::move(l);
}

double WeightAssignment::lambda_of(const Word& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || *it != w)
    throw std::invalid_argument("weight assignment: unknown word '" + w.str() + "'");
  return lambdas_[static_cast<std::size_t>(it - words_.begin())];
}

WeightAssignment code_weights(const Code& code) {
  if (code.size() < 2)
    throw std::invalid_argument("code_weights: a one-word code has rate 0");
  double lambda = static_cast<double>(code.n()) * std::log(static_cast<double>(code.q()));
  return WeightAssignment(code.words(),
                          std::vector<double>(code.size(), lambda), code.rate());
}

static double weight_sum(const WeightAssignment& wa, double beta, int threads) {
  const auto& l = wa.lambdas();
  return chunked_sum(l.size(), [&](std::size_t i) { return std::exp(-beta * l[i]); },
                     threads);
}

static double weight_sum_serial(const WeightAssignment& wa, double beta) {
  const auto& l = wa.lambdas();
  return chunked_sum_serial(l.size(), [&](std::size_t i) { return std::exp(-beta * l[i]); });
}

double keane_residual(const WeightAssignment& wa, int threads) {
  return weight_sum(wa, wa.rate(), threads) - 1.0;
}

WeightAssignment rescale_to_keane(const WeightAssignment& wa) {
  double s = weight_sum(wa, wa.rate(), 0);
  double shift = std::log(s) / wa.rate();
  std::vector<double> shifted = wa.lambdas();
  for (double& l : shifted) {
    l += shift;
    if (!(l > 0.0))
      throw NumericError("rescale_to_keane: shift " + std::to_string(shift) +
                         " drives a weight nonpositive");
  }
  return WeightAssignment(wa.words(), std::move(shifted), wa.rate());
}

double hstat_eigenvalue(const std::vector<Word>& tuple, const WeightAssignment& wa) {
  if (tuple.empty()) throw std::invalid_argument("hstat_eigenvalue: empty tuple");
  CompensatedSum s;
  for (const auto& w : tuple) s.add(wa.lambda_of(w));
  return s.value();
}

static PartitionResult from_sum(double beta, double s) {
  PartitionResult r{beta, s, std::nullopt};
  if (s < 1.0 - kDivergenceBand) r.z = 1.0 / (1.0 - s);
  return r;
}

PartitionResult partition_function(const WeightAssignment& wa, double beta, int threads) {
  if (!(beta > 0.0)) throw std::invalid_argument("partition_function: beta must be positive");
  return from_sum(beta, weight_sum(wa, beta, threads));
}

PartitionResult partition_function_serial(const WeightAssignment& wa, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("partition_function: beta must be positive");
  return from_sum(beta, weight_sum_serial(wa, beta));
}

PartitionResult partition_function_closed(int q, int n, double rate, double beta) {
  if (q < 2 || n < 1) throw std::invalid_argument("partition_function_closed: bad alphabet");
  if (!(beta > 0.0)) throw std::invalid_argument("partition_function_closed: beta must be positive");
  double s = std::exp((rate - beta) * static_cast<double>(n) *
                      std::log(static_cast<double>(q)));
  return from_sum(beta, s);
}

CriticalBetaResult critical_beta(const WeightAssignment& wa) {
  if (wa.size() < 2)
    throw NumericError("critical_beta: S(beta) never reaches 1 with a single word");
  // S is strictly decreasing with S(0) = #words > 1, so one sign change exists
  double lo = 0.0, hi = 1.0;
  int iterations = 0;
  while (weight_sum_serial(wa, hi) >= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (++iterations > 200) throw NumericError("critical_beta: bracket search ran away");
  }
  double bracket_lo = lo, bracket_hi = hi;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // interval exhausted at double precision
    ++iterations;
    if (weight_sum_serial(wa, mid) >= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  double beta_star = 0.5 * (lo + hi);
  return {beta_star, weight_sum_serial(wa, beta_star) - 1.0, iterations, bracket_lo,
          bracket_hi};
}

std::complex<double> evolution_phase(int q, int n, double t) {
  if (q < 2 || n < 1) throw std::invalid_argument("evolution_phase: bad alphabet");
  double arg = t * static_cast<double>(n) * std::log(static_cast<double>(q));
  return {std::cos(arg), std::sin(arg)};
}

}  // namespace critlang
