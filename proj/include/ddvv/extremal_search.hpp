#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ddvv/equality_normal_form.hpp"
#include "ddvv/inequality.hpp"
#include "ddvv/matrix_core.hpp"
#include "ddvv/parallel.hpp"

namespace ddvv {

struct SearchConfig {
  int n = 3;
  int m = 3;
  SymmetryClass symmetry = SymmetryClass::Symmetric;
  long long trials = 1;
  std::uint64_t seed = 0;
  int max_iters = 2000;
  double step_init = 0.1;
  double tol_grad = 1e-10;
  bool normalize = true;        // keep norm_sum = 1 along the ascent
  double classify_tol = 1e-4;   // tolerance handed to the detector at the end
  bool record_trajectory = false;
};

/// Violation threshold: defect >= -1e-9 * max(1, bound) must hold for every
/// sampled tuple; anything below falsifies the inequality or the
/// implementation.
inline constexpr double kFuzzTol = 1e-9;

struct FuzzSummary {
  long long trials = 0;
  long long violations = 0;
  double min_defect = 0.0;
  double min_ratio_gap = 0.0;  // min over trials of (1 - ratio)
  double max_ratio = 0.0;
  std::vector<long long> ratio_histogram;  // 20 bins over [0, 1]
  std::optional<MatrixTuple> worst_tuple;  // tuple attaining min_defect
};

/// Random-tuple fuzz of the inequality. Trial i draws from seed xor i, so
/// the summary is deterministic and identical for both execution modes.
FuzzSummary fuzz_inequality(const SearchConfig& cfg);
FuzzSummary fuzz_inequality_serial(const SearchConfig& cfg);

struct SearchResult {
  double best_ratio = 0.0;
  std::optional<MatrixTuple> best_tuple;
  long long iterations = 0;
  NormalFormResult classified;
  std::vector<std::pair<long long, double>> trajectory;  // (iter, ratio)
};

/// Gradient of sum_{r,s} ||[B_r, B_s]||^2 in tuple space, restricted to the
/// symmetry class: +-4 sum_s [[B_r, B_s], B_s] per slot r (plus for
/// symmetric, minus for skew).
std::vector<Matrix> lhs_gradient(const MatrixTuple& t);

/// Projected gradient ascent on ratio = lhs / (K norm_sum^2) over the sphere
/// norm_sum = 1, with step halving on non-increase; the limit is classified
/// with the matching detector.
SearchResult ascend_ratio(const SearchConfig& cfg,
                          const std::optional<MatrixTuple>& start = {});

/// Best of cfg.trials ascents from seeded random starts (max ratio, ties by
/// trial index).
SearchResult multi_ascend(const SearchConfig& cfg);
SearchResult multi_ascend_serial(const SearchConfig& cfg);

struct BruteForceResult {
  double max_ratio = 0.0;
  std::optional<MatrixTuple> argmax;
  long long enumerated = 0;
  /// Largest |oracle defect - inequality::defect| seen over the compared
  /// tuples (every tuple when the grid has at most 1e5 entries).
  double max_defect_disagreement = 0.0;
};

/// Exhaustive enumeration of tuples with free entries from `grid`, using its
/// own plain-array arithmetic as an independent check of the defect path.
/// Refuses grids with more than 1e7 tuples.
BruteForceResult brute_oracle(int n, int m, SymmetryClass symmetry,
                              const std::vector<double>& grid);

}  // namespace ddvv
