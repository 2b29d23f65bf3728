#include "critlang/bounds.hpp"

#include <numeric>
#include <stdexcept>

#include "critlang/errors.hpp"

namespace critlang {

static long long checked(__int128 v, const char* what) {
  if (v > static_cast<__int128>(0x7fffffffffffffffLL) ||
      v < -static_cast<__int128>(0x7fffffffffffffffLL))
    throw NumericError(std::string("rational overflow in ") + what);
  return static_cast<long long>(v);
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
  __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(checked(n, "+"), checked(d, "+"));
}

Rational Rational::operator-(const Rational& o) const {
  return *this + Rational(-o.num, o.den);
}

Rational Rational::operator*(const Rational& o) const {
  __int128 n = static_cast<__int128>(num) * o.num;
  __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(checked(n, "*"), checked(d, "*"));
}

Rational Rational::inverse() const {
  if (num == 0) throw std::invalid_argument("rational inverse of zero");
  return Rational(den, num);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

int n_to_dimension(int N) {
  switch (N) {
    case 4: return 2;
    case 6: return 3;
    case 8: return 4;
  }
  throw std::invalid_argument(
      "n_to_dimension: unknown regime, neighbor count must be 4, 6 or 8 (N = 2d)");
}

static void check_d(int d) {
  if (d < 2 || d > 4) throw std::invalid_argument("dimension must be 2, 3 or 4");
}

double delta_epsilon(int d, double nu) {
  check_d(d);
  if (!(nu > 0.0)) throw std::invalid_argument("delta_epsilon: nu must be positive");
  double delta = static_cast<double>(d) - 1.0 / nu;
  if (!(delta > 0.0))
    throw NumericError("delta_epsilon: 1/nu >= d leaves no positive scaling dimension");
  return delta;
}

Rational delta_epsilon_exact(int d, const Rational& nu) {
  check_d(d);
  if (nu.num <= 0) throw std::invalid_argument("delta_epsilon: nu must be positive");
  Rational delta = Rational(d, 1) - nu.inverse();
  if (delta.num <= 0)
    throw NumericError("delta_epsilon: 1/nu >= d leaves no positive scaling dimension");
  return delta;
}

static BoundReport assemble(int d, double nu, double nu_err, std::string source) {
  BoundReport r;
  r.d = d;
  r.nu = nu;
  r.nu_err = nu_err;
  r.delta_eps = delta_epsilon(d, nu);
  r.delta_eps_err = nu_err / (nu * nu);
  r.two_delta = 2.0 * r.delta_eps;
  r.two_delta_err = 2.0 * r.delta_eps_err;
  r.s_value = r.delta_eps + 2.0;
  r.s_err = r.delta_eps_err;
  r.gap_classical = kClassicalBound - r.two_delta;
  r.gap_tsirelson = kTsirelsonBound - r.two_delta;
  r.gap_pr = kPrBoxBound - r.two_delta;
  r.source = std::move(source);
  return r;
}

BoundReport bound_report(int d, double nu, double nu_err, std::string source) {
  if (nu_err < 0) throw std::invalid_argument("bound_report: negative error");
  return assemble(d, nu, nu_err, std::move(source));
}

BoundReport bound_report_exact(int d, const Rational& nu, std::string source) {
  Rational delta = delta_epsilon_exact(d, nu);
  BoundReport r = assemble(d, nu.value(), 0.0, std::move(source));
  r.exact = true;
  r.nu_exact = nu;
  r.two_delta_exact = delta * Rational(2, 1);
  // the double fields mirror the exact values so downstream formatting is
  // uniform either way
  r.delta_eps = delta.value();
  r.two_delta = r.two_delta_exact->value();
  r.s_value = r.delta_eps + 2.0;
  r.gap_classical = kClassicalBound - r.two_delta;
  r.gap_tsirelson = kTsirelsonBound - r.two_delta;
  r.gap_pr = kPrBoxBound - r.two_delta;
  return r;
}

}  // namespace critlang
