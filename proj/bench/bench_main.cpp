// Timing comparison of the OpenMP kernels against their serial reference
// implementations.  Every pair must agree bitwise (the parallel versions are
// deterministic by construction), so the bench doubles as a reproducibility
// check and prints the max absolute difference next to the speedup.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "critlang/accum.hpp"
#include "critlang/codes.hpp"
#include "critlang/complexity.hpp"
#include "critlang/fss.hpp"
#include "critlang/statmech.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace critlang;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_ms(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_ms();
    f();
    double t1 = now_ms();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double max_diff) {
  std::printf("%-22s %10.1f ms %10.1f ms %8.2fx %12g\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, max_diff);
}

Word bit_word(std::uint64_t index, int bits) {
  std::vector<std::uint8_t> letters(static_cast<std::size_t>(bits));
  for (int b = 0; b < bits; ++b)
    letters[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>((index >> b) & 1u);
  return Word(letters);
}

void bench_chunked_sum() {
  const std::size_t n = 20'000'000;
  auto f = [](std::size_t i) {
    double x = static_cast<double>(i % 10007) * 1e-4;
    return std::exp(-x) * std::cos(x);
  };
  double vs = 0.0, vp = 0.0;
  double ts = time_ms([&] { vs = chunked_sum_serial(n, f); }, 3);
  double tp = time_ms([&] { vp = chunked_sum(n, f); }, 3);
  report("chunked_sum", ts, tp, std::abs(vs - vp));
}

void bench_partition_function() {
  const int bits = 18;
  const std::size_t n = 1u << bits;
  std::vector<Word> words;
  std::vector<double> lambdas;
  words.reserve(n);
  lambdas.reserve(n);
  SplitMix64 rng(7);
  for (std::size_t i = 0; i < n; ++i) {
    words.push_back(bit_word(i, bits));
    lambdas.push_back(10.0 + 4.0 * rng.uniform());
  }
  WeightAssignment wa(std::move(words), std::move(lambdas), 1.2);

  double max_diff = 0.0, ts = 0.0, tp = 0.0;
  for (double beta : {1.3, 1.6, 2.4}) {
    PartitionResult rs, rp;
    ts += time_ms([&] { rs = partition_function_serial(wa, beta); }, 3);
    tp += time_ms([&] { rp = partition_function(wa, beta); }, 3);
    double diff = std::abs(rs.weight_sum - rp.weight_sum);
    if (diff > max_diff) max_diff = diff;
  }
  report("partition_function", ts, tp, max_diff);
}

void bench_batch_proxies() {
  const int count = 300, len = 512;
  std::vector<Word> words;
  words.reserve(count);
  SplitMix64 rng(11);
  for (int i = 0; i < count; ++i) {
    std::vector<std::uint8_t> letters(len);
    for (auto& l : letters) l = static_cast<std::uint8_t>(rng.uniform_below(2));
    words.push_back(Word(std::move(letters)));
  }
  std::vector<ProxyResult> rs, rp;
  double ts = time_ms([&] { rs = batch_proxies_serial(words, 2); }, 2);
  double tp = time_ms([&] { rp = batch_proxies(words, 2); }, 2);
  double max_diff = 0.0;
  for (int i = 0; i < count; ++i) {
    double diff = std::abs(rs[static_cast<std::size_t>(i)].kappa -
                           rp[static_cast<std::size_t>(i)].kappa);
    if (diff > max_diff) max_diff = diff;
  }
  report("batch_proxies", ts, tp, max_diff);
}

void bench_run_cells() {
  FssConfig cfg;
  cfg.algorithm = Algorithm::wolff;
  cfg.thermalization = 500;
  cfg.measurements = 4000;
  cfg.stride = 2;
  cfg.blocks = 20;
  std::vector<CellSpec> specs{{2, 8, 2.2}, {2, 8, 2.3}, {2, 12, 2.26}, {2, 12, 2.30}};

  std::vector<CellStats> rs, rp;
  double ts = time_ms([&] { rs = run_cells_serial(specs, cfg, 99); }, 1);
  double tp = time_ms([&] { rp = run_cells(specs, cfg, 99); }, 1);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    double diff = std::abs(rs[i].binder - rp[i].binder);
    if (diff > max_diff) max_diff = diff;
    diff = std::abs(rs[i].dbinder_dt - rp[i].dbinder_dt);
    if (diff > max_diff) max_diff = diff;
  }
  report("run_cells", ts, tp, max_diff);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    int threads = std::atoi(argv[1]);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
  }
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without openmp; parallel kernels run serially\n");
#endif
  std::printf("%-22s %13s %13s %9s %12s\n", "kernel", "serial", "parallel", "speedup",
              "max|diff|");
  bench_chunked_sum();
  bench_partition_function();
  bench_batch_proxies();
  bench_run_cells();
  return 0;
}
