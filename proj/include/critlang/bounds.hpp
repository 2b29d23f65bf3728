#pragma once
// From critical exponent to correlation bound: the energy operator of the
// d-dimensional critical theory has scaling dimension Delta_eps = d - 1/nu,
// and 2*Delta_eps bounds the bipartite correlation strength of the associated
// word dynamics.  d = 2 (nu = 1) reproduces the classical value 2, d = 4
// (nu = 1/2) the PR-box value 4, and d = 3 lands just below the Tsirelson
// bound 2*sqrt(2).  Integer and p/q inputs go through exact rational
// arithmetic so the anchor cases are reproduced without rounding.

#include <cmath>
#include <optional>
#include <string>

namespace critlang {

struct Rational {
  long long num;
  long long den;  // normalized: den > 0, gcd(num, den) = 1
  Rational(long long n, long long d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational inverse() const;
  bool operator==(const Rational& o) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

inline constexpr double kClassicalBound = 2.0;
inline const double kTsirelsonBound = 2.0 * std::sqrt(2.0);
inline constexpr double kPrBoxBound = 4.0;

// lattice dimension served by an N-neighbor word lattice (N in {4, 6, 8})
int n_to_dimension(int N);

// Delta_eps = d - 1/nu; requires d in {2,3,4}, nu > 0 and a positive result
double delta_epsilon(int d, double nu);
Rational delta_epsilon_exact(int d, const Rational& nu);

struct BoundReport {
  int d = 0;
  double nu = 0.0, nu_err = 0.0;
  double delta_eps = 0.0, delta_eps_err = 0.0;  // err = nu_err / nu^2
  double two_delta = 0.0, two_delta_err = 0.0;
  double s_value = 0.0, s_err = 0.0;  // S = Delta_eps + 2
  bool exact = false;
  std::optional<Rational> nu_exact;
  std::optional<Rational> two_delta_exact;
  // how far the bound sits below each reference (positive = below)
  double gap_classical = 0.0, gap_tsirelson = 0.0, gap_pr = 0.0;
  std::string source;  // "exact", "simulated", "literature", ...
};

BoundReport bound_report(int d, double nu, double nu_err, std::string source);
BoundReport bound_report_exact(int d, const Rational& nu, std::string source);

}  // namespace critlang
