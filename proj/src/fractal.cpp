#include "critlang/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "critlang/errors.hpp"
#include "critlang/rng.hpp"
#include "critlang/stats.hpp"

namespace critlang {

DigitMatrix::DigitMatrix(const Code& code, std::vector<Word> rows_)
    : q(code.q()), n(code.n()), rows(std::move(rows_)) {
  if (rows.empty()) throw std::invalid_argument("digit matrix needs at least one row");
  for (const auto& r : rows)
    if (!code.contains(r))
      throw std::invalid_argument("digit row '" + r.str() + "' is not a codeword");
}

std::vector<double> matrix_to_point(const DigitMatrix& m) {
  std::vector<double> x(m.n, 0.0);
  double scale = 1.0;
  for (const auto& row : m.rows) {
    scale /= static_cast<double>(m.q);
    for (int j = 0; j < m.n; ++j) x[j] += scale * static_cast<double>(row[j]);
  }
  return x;
}

// (#C)^depth if it stays within budget, 0 otherwise
static std::uint64_t checked_power(std::uint64_t base, int depth, std::uint64_t budget) {
  unsigned __int128 v = 1;
  for (int i = 0; i < depth; ++i) {
    v *= base;
    if (v > budget) return 0;
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t enumerate_boxes(const Code& code, int depth, std::uint64_t budget) {
  if (depth < 1) throw std::invalid_argument("enumerate_boxes: depth must be positive");
  std::uint64_t n = checked_power(code.size(), depth, budget);
  if (n == 0)
    throw NumericError("enumerate_boxes: " + std::to_string(code.size()) + "^" +
                       std::to_string(depth) + " boxes exceeds budget " +
                       std::to_string(budget));
  return n;
}

FractalSample sample_fractal(const Code& code, int depth, std::size_t count,
                             std::uint64_t seed) {
  if (depth < 1) throw std::invalid_argument("sample_fractal: depth must be positive");
  if (count == 0) throw std::invalid_argument("sample_fractal: count must be positive");
  FractalSample s{code, depth, seed, {}};
  s.choices.resize(count * static_cast<std::size_t>(depth));
  SplitMix64 master(seed);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    SplitMix64 rng = master.split(static_cast<std::uint64_t>(i));
    for (int d = 0; d < depth; ++d)
      s.choices[static_cast<std::size_t>(i) * depth + d] =
          static_cast<std::uint32_t>(rng.uniform_below(code.size()));
  }
  return s;
}

std::vector<double> sample_point(const FractalSample& s, std::size_t i) {
  std::vector<Word> rows;
  rows.reserve(s.depth);
  for (int d = 0; d < s.depth; ++d)
    rows.push_back(s.code.words()[s.choices[i * s.depth + d]]);
  return matrix_to_point(DigitMatrix(s.code, std::move(rows)));
}

// sort samples lexicographically by their choice rows once, then the number
// of distinct depth-m prefixes falls out of the first-difference positions
static std::vector<std::uint64_t> prefix_counts(const FractalSample& s) {
  std::size_t cnt = s.count();
  std::size_t depth = static_cast<std::size_t>(s.depth);
  std::vector<std::uint32_t> order(cnt);
  std::iota(order.begin(), order.end(), 0u);
  const auto* ch = s.choices.data();
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(ch + a * depth, ch + (a + 1) * depth,
                                        ch + b * depth, ch + (b + 1) * depth);
  });
  // newfresh[d] = number of adjacent pairs whose first difference is at row d
  std::vector<std::uint64_t> fresh(depth, 0);
  for (std::size_t i = 1; i < cnt; ++i) {
    const auto* a = ch + order[i - 1] * depth;
    const auto* b = ch + order[i] * depth;
    for (std::size_t d = 0; d < depth; ++d) {
      if (a[d] != b[d]) {
        ++fresh[d];
        break;
      }
    }
  }
  std::vector<std::uint64_t> counts(depth, 1);
  std::uint64_t acc = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    acc += fresh[d];
    counts[d] = acc;  // distinct prefixes of length d+1
  }
  return counts;
}

std::uint64_t sampled_box_count(const FractalSample& s, int depth) {
  if (depth < 1 || depth > s.depth)
    throw std::invalid_argument("sampled_box_count: depth outside sample depth");
  return prefix_counts(s)[static_cast<std::size_t>(depth - 1)];
}

static DimensionEstimate fit_dimension(int q, int n, const std::vector<int>& depths,
                                       const std::vector<std::uint64_t>& counts,
                                       std::vector<bool> sampled, std::string method) {
  if (depths.size() < 2)
    throw std::invalid_argument("dimension fit needs at least two depths");
  std::vector<double> x(depths.size()), y(depths.size());
  double lq = std::log(static_cast<double>(q));
  for (std::size_t i = 0; i < depths.size(); ++i) {
    x[i] = static_cast<double>(depths[i]) * lq;
    y[i] = std::log(static_cast<double>(counts[i]));
  }
  LinearFit fit = fit_line(x, y);
  DimensionEstimate est;
  est.raw = fit.slope;
  est.normalized = fit.slope / static_cast<double>(n);
  est.slope_err = fit.slope_err;
  est.rss = fit.chi2;
  est.depths = depths;
  est.counts = counts;
  est.sampled = std::move(sampled);
  est.method = std::move(method);
  return est;
}

DimensionEstimate sampled_box_dimension(const FractalSample& s,
                                        const std::vector<int>& depths) {
  auto all = prefix_counts(s);
  std::vector<std::uint64_t> counts;
  for (int d : depths) {
    if (d < 1 || d > s.depth)
      throw std::invalid_argument("sampled_box_dimension: depth outside sample depth");
    counts.push_back(all[static_cast<std::size_t>(d - 1)]);
  }
  return fit_dimension(s.code.q(), s.code.n(), depths, counts,
                       std::vector<bool>(depths.size(), true), "sampled");
}

DimensionEstimate box_dimension(const Code& code, const std::vector<int>& depths,
                                std::uint64_t budget, bool allow_sampling,
                                std::uint64_t seed) {
  if (depths.size() < 2)
    throw std::invalid_argument("box_dimension: need at least two depths");
  std::vector<int> sorted_depths = depths;
  std::sort(sorted_depths.begin(), sorted_depths.end());
  std::vector<std::uint64_t> counts(sorted_depths.size());
  std::vector<bool> sampled(sorted_depths.size(), false);
  bool any_sampled = false;

  int deepest_sampled = 0;
  for (std::size_t i = 0; i < sorted_depths.size(); ++i) {
    if (checked_power(code.size(), sorted_depths[i], budget) == 0) {
      if (!allow_sampling)
        throw NumericError("box_dimension: depth " + std::to_string(sorted_depths[i]) +
                           " exceeds enumeration budget " + std::to_string(budget));
      sampled[i] = true;
      any_sampled = true;
      deepest_sampled = std::max(deepest_sampled, sorted_depths[i]);
    }
  }

  // one sample reused for every over-budget depth; occupancy it reports is a
  // lower bound on the true box count, hence the per-depth flag
  constexpr std::size_t kFallbackSamples = 200'000;
  FractalSample fallback{code, 0, 0, {}};
  std::vector<std::uint64_t> fallback_counts;
  if (any_sampled) {
    fallback = sample_fractal(code, deepest_sampled, kFallbackSamples, seed);
    fallback_counts = prefix_counts(fallback);
  }
  for (std::size_t i = 0; i < sorted_depths.size(); ++i)
    counts[i] = sampled[i]
                    ? fallback_counts[static_cast<std::size_t>(sorted_depths[i] - 1)]
                    : enumerate_boxes(code, sorted_depths[i], budget);

  return fit_dimension(code.q(), code.n(), sorted_depths, counts, sampled,
                       any_sampled ? "enumeration+sampling" : "enumeration");
}

// pack the depth-m digit content of a box into one integer so unions across
// codes of the same length can be deduplicated exactly
static bool content_keys(const Code& code, int depth, std::vector<unsigned __int128>& out,
                         std::uint64_t budget) {
  int bits_per_digit = 1;
  while ((1 << bits_per_digit) < code.q()) ++bits_per_digit;
  long long total_bits = static_cast<long long>(bits_per_digit) * code.n() * depth;
  if (total_bits > 127) return false;
  std::uint64_t count = checked_power(code.size(), depth, budget);
  if (count == 0) return false;

  std::vector<unsigned __int128> row_keys(code.size());
  for (std::size_t w = 0; w < code.size(); ++w) {
    unsigned __int128 k = 0;
    for (auto d : code.words()[w].letters()) k = (k << bits_per_digit) | d;
    row_keys[w] = k;
  }
  int row_bits = bits_per_digit * code.n();
  std::vector<std::uint32_t> odo(depth, 0);
  for (std::uint64_t t = 0; t < count; ++t) {
    unsigned __int128 key = 0;
    for (int d = 0; d < depth; ++d) key = (key << row_bits) | row_keys[odo[d]];
    out.push_back(key);
    int d = 0;
    while (d < depth && ++odo[d] == code.size()) odo[d++] = 0;
  }
  return true;
}

FamilyDimension family_dimension(const CodeFamily& family, const std::vector<int>& depths,
                                 std::uint64_t budget) {
  FamilyDimension result;
  for (const auto& c : family.codes)
    result.members.push_back(box_dimension(c, depths, budget));

  bool same_n = std::all_of(family.codes.begin(), family.codes.end(), [&](const Code& c) {
    return c.n() == family.codes[0].n();
  });
  if (!same_n) {
    // members occupy cubes of different dimension; the union's normalized
    // dimension is carried by the largest member
    result.mode = "max-member";
    result.union_estimate =
        *std::max_element(result.members.begin(), result.members.end(),
                          [](const DimensionEstimate& a, const DimensionEstimate& b) {
                            return a.normalized < b.normalized;
                          });
    result.union_estimate.method = "max-member";
    return result;
  }

  std::vector<int> sorted_depths = depths;
  std::sort(sorted_depths.begin(), sorted_depths.end());
  std::vector<std::uint64_t> counts;
  for (int depth : sorted_depths) {
    std::vector<unsigned __int128> keys;
    for (const auto& c : family.codes) {
      if (!content_keys(c, depth, keys, budget))
        throw NumericError("family_dimension: depth " + std::to_string(depth) +
                           " too deep for exact union enumeration");
    }
    if (keys.size() > budget)
      throw NumericError("family_dimension: union enumeration exceeds budget");
    std::sort(keys.begin(), keys.end());
    counts.push_back(static_cast<std::uint64_t>(
        std::unique(keys.begin(), keys.end()) - keys.begin()));
  }
  result.mode = "union-enumeration";
  result.union_estimate =
      fit_dimension(family.codes[0].q(), family.codes[0].n(), sorted_depths, counts,
                    std::vector<bool>(sorted_depths.size(), false), "union-enumeration");
  return result;
}

}  // namespace critlang
