#pragma once
// Compensated accumulation.  Weight sums feed 1/(1-S) which is evaluated close
// to S = 1, so plain left-to-right addition is not good enough; Neumaier's
// variant of Kahan summation keeps the error at ~1 ulp of the true sum.
//
// chunked_sum is the parallel reduction used by the OpenMP kernels: terms are
// split into fixed 4096-element chunks, each chunk is compensated
// independently, and the per-chunk results are combined in index order.  The
// result is therefore identical no matter how many threads ran.

#include <cmath>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace critlang {

class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline constexpr std::size_t kSumChunk = 4096;

// deterministic sum of f(i) for i in [0, n); f must be pure
template <class F>
double chunked_sum(std::size_t n, F&& f, int threads = 0) {
  std::size_t nchunks = (n + kSumChunk - 1) / kSumChunk;
  std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
    std::size_t lo = static_cast<std::size_t>(c) * kSumChunk;
    std::size_t hi = lo + kSumChunk < n ? lo + kSumChunk : n;
    CompensatedSum s;
    for (std::size_t i = lo; i < hi; ++i) s.add(f(i));
    partial[static_cast<std::size_t>(c)] = s.value();
  }
  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

// serial reference for the reduction above (used by tests and the bench tool)
template <class F>
double chunked_sum_serial(std::size_t n, F&& f) {
  std::size_t nchunks = (n + kSumChunk - 1) / kSumChunk;
  CompensatedSum total;
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t lo = c * kSumChunk;
    std::size_t hi = lo + kSumChunk < n ? lo + kSumChunk : n;
    CompensatedSum s;
    for (std::size_t i = lo; i < hi; ++i) s.add(f(i));
    total.add(s.value());
  }
  return total.value();
}

}  // namespace critlang
