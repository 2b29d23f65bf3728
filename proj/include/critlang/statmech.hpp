#pragma once
// Weighted words as a statistical-mechanical system: an assignment of
// positive weights lambda_a with rate R satisfies the Keane condition when
// sum_a exp(-R lambda_a) = 1.  The induced partition function
// Z(beta) = 1 / (1 - sum_a exp(-beta lambda_a)) converges for beta above the
// critical inverse temperature, which for Keane weights is R itself: the
// transmission rate is the critical point.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "critlang/codes.hpp"

namespace critlang {

class WeightAssignment {
 public:
  // words must be distinct, weights positive, rate positive
  WeightAssignment(std::vector<Word> words, std::vector<double> lambdas, double rate);

  double rate() const { return rate_; }
  std::size_t size() const { return lambdas_.size(); }
  const std::vector<Word>& words() const { return words_; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  double lambda_of(const Word& w) const;  // throws on unknown word

 private:
  std::vector<Word> words_;
  std::vector<double> lambdas_;
  double rate_;
};

// uniform Keane weights for a code: lambda = n ln q for every codeword
WeightAssignment code_weights(const Code& code);

// sum exp(-R lambda) - 1, compensated; zero iff the Keane condition holds
double keane_residual(const WeightAssignment& wa, int threads = 0);

// shift all weights by ln(S)/R so the Keane condition holds exactly; fails if
// the shift would drive some weight nonpositive
WeightAssignment rescale_to_keane(const WeightAssignment& wa);

// H-statistic eigenvalue of a word tuple: the weights add along the tuple
double hstat_eigenvalue(const std::vector<Word>& tuple, const WeightAssignment& wa);

struct PartitionResult {
  double beta;
  double weight_sum;        // S(beta) = sum exp(-beta lambda)
  std::optional<double> z;  // empty when the series diverges (S >= 1)
  bool divergent() const { return !z.has_value(); }
};

// divergence is a value, not an error: S within 1e-12 of 1 (or above) is
// reported as divergent rather than as an astronomically noisy Z
PartitionResult partition_function(const WeightAssignment& wa, double beta,
                                   int threads = 0);
PartitionResult partition_function_serial(const WeightAssignment& wa, double beta);

// closed form for uniform code weights: Z = 1 / (1 - q^{(R-beta) n})
PartitionResult partition_function_closed(int q, int n, double rate, double beta);

struct CriticalBetaResult {
  double beta_star;
  double residual;  // S(beta_star) - 1
  int iterations;
  double bracket_lo, bracket_hi;  // bracket entering the bisection
};

// bisection for S(beta) = 1; requires at least two words (otherwise S < 1
// everywhere and there is no critical point at positive beta)
CriticalBetaResult critical_beta(const WeightAssignment& wa);

// phase factor q^{i t n} of the time evolution at the critical line
std::complex<double> evolution_phase(int q, int n, double t);

}  // namespace critlang
