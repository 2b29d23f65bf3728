// Every OpenMP kernel must reproduce its serial reference bitwise for any
// thread count: reductions run over fixed 4096-term chunks combined in order,
// and stochastic kernels draw from per-index split streams.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "critlang/accum.hpp"
#include "critlang/complexity.hpp"
#include "critlang/fractal.hpp"
#include "critlang/fss.hpp"
#include "critlang/rng.hpp"
#include "critlang/statmech.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace critlang;

static void force_threads(int k) {
#ifdef _OPENMP
  omp_set_num_threads(k);
#else
  (void)k;
#endif
}

TEST_CASE("chunked sums are thread-count independent") {
  // wildly varying magnitudes so naive per-thread accumulation would differ
  auto f = [](std::size_t i) {
    double x = static_cast<double>(i % 9973) - 4986.0;
    return std::sin(0.37 * static_cast<double>(i)) * std::exp(0.002 * x);
  };
  for (std::size_t n : {std::size_t{1}, std::size_t{4095}, std::size_t{4096},
                        std::size_t{4097}, std::size_t{100000}}) {
    double ref = chunked_sum_serial(n, f);
    for (int k : {1, 2, 3, 5}) {
      force_threads(k);
      CHECK(chunked_sum(n, f) == ref);
      CHECK(chunked_sum(n, f, k) == ref);
    }
  }
}

TEST_CASE("batch proxies match the serial reference bitwise") {
  SplitMix64 rng(2024);
  std::vector<Word> words;
  for (int i = 0; i < 200; ++i) {
    auto len = 5 + rng.uniform_below(60);
    std::vector<std::uint8_t> letters(len);
    for (auto& v : letters) v = static_cast<std::uint8_t>(rng.uniform_below(2));
    words.push_back(Word(letters));
  }
  auto ref = batch_proxies_serial(words, 2);
  for (int k : {2, 3, 5}) {
    force_threads(k);
    auto par = batch_proxies(words, 2, {}, k);
    REQUIRE(par.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(par[i].kappa == ref[i].kappa);
      CHECK(par[i].low_confidence == ref[i].low_confidence);
    }
  }
}

TEST_CASE("partition sums match the serial reference bitwise") {
  SplitMix64 rng(7);
  std::vector<Word> words;
  std::vector<double> lambdas;
  for (int i = 0; i < 20000; ++i) {
    std::vector<std::uint8_t> digits(15);
    for (int b = 0; b < 15; ++b) digits[b] = static_cast<std::uint8_t>((i >> b) & 1);
    words.push_back(Word(digits));
    lambdas.push_back(0.1 + 2.9 * rng.uniform());
  }
  WeightAssignment wa(words, lambdas, 0.7);
  for (double beta : {0.9, 1.4, 3.0}) {
    auto ref = partition_function_serial(wa, beta);
    for (int k : {2, 4}) {
      force_threads(k);
      auto par = partition_function(wa, beta, k);
      CHECK(par.weight_sum == ref.weight_sum);
      CHECK(par.z.has_value() == ref.z.has_value());
      if (ref.z) CHECK(*par.z == *ref.z);
    }
  }
  double res1 = keane_residual(wa, 1);
  force_threads(3);
  CHECK(keane_residual(wa, 3) == res1);
}

TEST_CASE("fractal samples depend only on the seed") {
  Code code(Alphabet(2), 2,
            {Word::parse("00", 2), Word::parse("11", 2), Word::parse("01", 2)});
  force_threads(2);
  auto a = sample_fractal(code, 12, 5000, 99);
  force_threads(5);
  auto b = sample_fractal(code, 12, 5000, 99);
  CHECK(a.choices == b.choices);
  CHECK(sampled_box_count(a, 6) == sampled_box_count(b, 6));
}

TEST_CASE("monte carlo cell batches match the serial reference bitwise") {
  FssConfig cfg;
  cfg.thermalization = 100;
  cfg.measurements = 400;
  cfg.stride = 1;
  cfg.blocks = 10;
  std::vector<CellSpec> specs{{2, 4, 2.2}, {2, 4, 2.3}, {2, 6, 2.3}};
  auto ref = run_cells_serial(specs, cfg, 11);
  for (int k : {2, 4}) {
    force_threads(k);
    auto par = run_cells(specs, cfg, 11, k);
    REQUIRE(par.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(par[i].blocks == ref[i].blocks);
      CHECK(par[i].binder == ref[i].binder);
      CHECK(par[i].dbinder_dt == ref[i].dbinder_dt);
    }
  }
}
