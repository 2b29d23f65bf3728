#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "critlang/accum.hpp"
#include "critlang/rng.hpp"
#include "critlang/stats.hpp"

using namespace critlang;

TEST_CASE("splitmix64 reference vector") {
  // first outputs for seed 0 from the reference implementation
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
  CHECK(rng.next() == 0xf88bb8a8724c81ecULL);
}

TEST_CASE("uniform stays in [0,1) and is seeded deterministically") {
  SplitMix64 a(42), b(42), c(43);
  bool diff = false;
  for (int i = 0; i < 1000; ++i) {
    double x = a.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.uniform());
    if (x != c.uniform()) diff = true;
  }
  CHECK(diff);
}

TEST_CASE("uniform_below respects the bound and covers it") {
  SplitMix64 rng(7);
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 20000; ++i) {
    auto v = rng.uniform_below(10);
    REQUIRE(v < 10);
    ++hits[static_cast<std::size_t>(v)];
  }
  for (int h : hits) CHECK(h > 1600);  // ~2000 expected per bin
}

TEST_CASE("split derives distinct reproducible streams") {
  SplitMix64 master(99);
  auto s0 = master.split(0);
  auto s1 = master.split(1);
  auto s0b = master.split(0);
  CHECK(s0.next() == s0b.next());
  CHECK(s0.state() != s1.state());
  // splitting must not advance the master
  SplitMix64 fresh(99);
  CHECK(master.next() == fresh.next());
}

TEST_CASE("compensated sum keeps tiny addends") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 10'000'000; ++i) s.add(1e-16);
  CHECK(s.value() == doctest::Approx(1.0 + 1e-9).epsilon(1e-6));
}

TEST_CASE("chunked_sum matches serial bit for bit") {
  auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e-3; };
  for (std::size_t n : {std::size_t{1}, std::size_t{4095}, std::size_t{4096},
                        std::size_t{4097}, std::size_t{100'000}}) {
    CHECK(chunked_sum(n, f, 4) == chunked_sum_serial(n, f));
  }
}

TEST_CASE("mean and variance on a small list") {
  std::vector<double> x{1, 2, 3, 4};
  CHECK(mean(x) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(variance(x) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(mean(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(variance(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("blocking error approximates the iid standard error") {
  SplitMix64 rng(5);
  std::vector<double> x(1 << 14);
  for (auto& v : x) v = rng.uniform();
  double se = std::sqrt(variance(x) / static_cast<double>(x.size()));
  double be = blocking_error(x);
  CHECK(be > 0.5 * se);
  CHECK(be < 2.5 * se);
}

TEST_CASE("jackknife of the identity reproduces the standard error") {
  SplitMix64 rng(11);
  std::vector<std::vector<double>> blocks(64);
  std::vector<double> flat;
  for (auto& b : blocks) {
    b = {rng.uniform()};
    flat.push_back(b[0]);
  }
  auto jk = jackknife(blocks, [](const std::vector<double>& c) { return c[0]; });
  CHECK(jk.value == doctest::Approx(mean(flat)).epsilon(1e-14));
  double se = std::sqrt(variance(flat) / static_cast<double>(flat.size()));
  CHECK(jk.error == doctest::Approx(se).epsilon(1e-10));
}

TEST_CASE("jackknife rejects bad block shapes") {
  CHECK_THROWS_AS(jackknife({{1.0}}, [](const std::vector<double>& c) { return c[0]; }),
                  std::invalid_argument);
  CHECK_THROWS_AS(jackknife({{1.0}, {1.0, 2.0}},
                            [](const std::vector<double>& c) { return c[0]; }),
                  std::invalid_argument);
}

TEST_CASE("line fit recovers exact data") {
  std::vector<double> x{0, 1, 2, 3, 4}, y;
  for (double v : x) y.push_back(2.0 * v + 1.0);
  auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(fit.chi2 < 1e-20);
}

TEST_CASE("weighted fit error matches the hand formula") {
  // two points, unit errors: slope variance = S/det = 2/1
  std::vector<double> x{0, 1}, y{0, 3}, s{1, 1};
  auto fit = fit_line_weighted(x, y, s);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fit.slope_err == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(fit_line_weighted(x, y, std::vector<double>{1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("spearman on monotone, reversed and tied data") {
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> up{2, 4, 9, 16, 50}, down{5, 4, 3, 2, 1};
  CHECK(spearman(x, up) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spearman(x, down) == doctest::Approx(-1.0).epsilon(1e-12));
  std::vector<double> tied{1, 1, 1, 1, 1};
  CHECK(spearman(x, tied) == 0.0);
}
