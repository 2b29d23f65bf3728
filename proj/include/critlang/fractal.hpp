#pragma once
// Code fractals: the subset of [0,1]^n whose base-q digit expansions, read as
// rows of an (infinite) digit matrix, all lie in a fixed code C.  Truncating
// at depth m tiles the set with boxes of side q^-m; the box count grows as
// (#C)^m, so the box dimension recovers n*R and, after dividing by the
// embedding length n, the transmission rate itself.

#include <cstdint>
#include <string>
#include <vector>

#include "critlang/codes.hpp"

namespace critlang {

inline constexpr std::uint64_t kBoxBudget = 10'000'000;

// first `rows.size()` digit rows of a point's expansion; rows must be words
// of the code
struct DigitMatrix {
  DigitMatrix(const Code& code, std::vector<Word> rows_);
  int q;
  int n;
  std::vector<Word> rows;
};

// column j of the matrix gives coordinate x_j = sum_i d_ij q^-(i+1)
std::vector<double> matrix_to_point(const DigitMatrix& m);

// exact number of occupied boxes at depth m, i.e. (#C)^m, refusing rather
// than truncating when the enumeration would exceed the budget
std::uint64_t enumerate_boxes(const Code& code, int depth,
                              std::uint64_t budget = kBoxBudget);

struct DimensionEstimate {
  double raw = 0.0;         // slope of log N_m against m log q
  double normalized = 0.0;  // raw / n, comparable to the rate
  double slope_err = 0.0;
  double rss = 0.0;  // residual sum of squares of the log-log fit
  std::vector<int> depths;
  std::vector<std::uint64_t> counts;
  std::vector<bool> sampled;  // true where the budget forced the sampling fallback
  std::string method;
};

// depth-m box counts fitted over the given depths; depths whose exact
// enumeration would blow the budget fall back to sampled occupancy (flagged
// per depth and in `method`) unless allow_sampling is false
DimensionEstimate box_dimension(const Code& code, const std::vector<int>& depths,
                                std::uint64_t budget = kBoxBudget,
                                bool allow_sampling = true,
                                std::uint64_t seed = 0x626f78);

// Monte Carlo draw from the depth-m fractal cover: each sample picks `depth`
// codewords uniformly, one per digit row
struct FractalSample {
  Code code;
  int depth;
  std::uint64_t seed;
  std::vector<std::uint32_t> choices;  // count x depth, row-major
  std::size_t count() const { return choices.size() / static_cast<std::size_t>(depth); }
};

FractalSample sample_fractal(const Code& code, int depth, std::size_t count,
                             std::uint64_t seed);
std::vector<double> sample_point(const FractalSample& s, std::size_t i);
// distinct boxes hit by the sample at the given depth (depth <= s.depth)
std::uint64_t sampled_box_count(const FractalSample& s, int depth);
DimensionEstimate sampled_box_dimension(const FractalSample& s,
                                        const std::vector<int>& depths);

struct FamilyDimension {
  DimensionEstimate union_estimate;
  std::vector<DimensionEstimate> members;
  std::string mode;  // "union-enumeration" or "max-member"
};

// dimension of the union fractal of a family.  Members sharing one length are
// enumerated jointly per depth; mixed lengths live in different ambient cubes,
// so the union dimension is the largest member dimension (reported per member)
FamilyDimension family_dimension(const CodeFamily& family,
                                 const std::vector<int>& depths,
                                 std::uint64_t budget = kBoxBudget);

}  // namespace critlang
