#include "ddvv/extremal_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddvv/rng.hpp"

namespace ddvv {

namespace {

constexpr int kHistogramBins = 20;

struct FuzzRecord {
  double defect = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  bool violation = false;
};

FuzzRecord fuzz_trial(const SearchConfig& cfg, long long trial) {
  const MatrixTuple t =
      random_tuple(cfg.n, cfg.m, cfg.symmetry,
                   trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
  const DefectReport rep = defect(t);
  FuzzRecord rec;
  rec.defect = rep.defect;
  rec.ratio = rep.ratio;
  rec.bound = rep.bound;
  rec.violation = rep.defect < -kFuzzTol * std::max(1.0, rep.bound);
  return rec;
}

FuzzSummary summarize(const SearchConfig& cfg,
                      const std::vector<FuzzRecord>& recs) {
  FuzzSummary out;
  out.trials = static_cast<long long>(recs.size());
  out.ratio_histogram.assign(kHistogramBins, 0);
  out.min_defect = std::numeric_limits<double>::infinity();
  out.min_ratio_gap = std::numeric_limits<double>::infinity();
  out.max_ratio = -std::numeric_limits<double>::infinity();
  long long worst_trial = 0;
  for (long long i = 0; i < out.trials; ++i) {
    const FuzzRecord& rec = recs[static_cast<size_t>(i)];
    if (rec.violation) ++out.violations;
    if (rec.defect < out.min_defect) {
      out.min_defect = rec.defect;
      worst_trial = i;
    }
    out.min_ratio_gap = std::min(out.min_ratio_gap, 1.0 - rec.ratio);
    out.max_ratio = std::max(out.max_ratio, rec.ratio);
    const int bin = std::clamp(static_cast<int>(rec.ratio * kHistogramBins), 0,
                               kHistogramBins - 1);
    out.ratio_histogram[static_cast<size_t>(bin)] += 1;
  }
  if (out.trials > 0)
    out.worst_tuple = random_tuple(
        cfg.n, cfg.m, cfg.symmetry,
        trial_seed(cfg.seed, static_cast<std::uint64_t>(worst_trial)));
  return out;
}

FuzzSummary run_fuzz(const SearchConfig& cfg, Execution exec) {
  if (cfg.trials < 1) throw std::invalid_argument("fuzz: trials >= 1");
  std::vector<FuzzRecord> recs(static_cast<size_t>(cfg.trials));
  const long long count = cfg.trials;
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < count; ++i)
      recs[static_cast<size_t>(i)] = fuzz_trial(cfg, i);
  } else {
    for (long long i = 0; i < count; ++i)
      recs[static_cast<size_t>(i)] = fuzz_trial(cfg, i);
  }
  return summarize(cfg, recs);
}

MatrixTuple normalized(const MatrixTuple& t) {
  const double s = norm_sum(t);
  if (s <= 0.0) throw std::invalid_argument("cannot normalize a zero tuple");
  const double inv = 1.0 / std::sqrt(s);
  std::vector<Matrix> mats;
  mats.reserve(static_cast<size_t>(t.m()));
  for (const Matrix& A : t.mats()) mats.push_back(inv * A);
  return MatrixTuple(std::move(mats), t.symmetry());
}

MatrixTuple stepped(const MatrixTuple& t, const std::vector<Matrix>& dir,
                    double eta, bool renormalize) {
  std::vector<Matrix> mats;
  mats.reserve(static_cast<size_t>(t.m()));
  for (int r = 0; r < t.m(); ++r)
    mats.push_back(t.mat(r) + eta * dir[static_cast<size_t>(r)]);
  MatrixTuple out(std::move(mats), t.symmetry());
  return renormalize ? normalized(out) : out;
}

NormalFormResult classify(const MatrixTuple& t, double tol) {
  return t.symmetry() == SymmetryClass::Symmetric ? detect_symmetric(t, tol)
                                                  : detect_skew(t, tol);
}

SearchResult run_ascend(const SearchConfig& cfg,
                        const std::optional<MatrixTuple>& start) {
  const double constant = sharp_constant(cfg.n, cfg.symmetry);
  if (constant <= 0.0)
    throw std::invalid_argument(
        "ascend_ratio: no sharp bound for skew tuples with n <= 2");
  MatrixTuple current =
      start.has_value()
          ? *start
          : random_tuple(cfg.n, cfg.m, cfg.symmetry, cfg.seed);
  if (norm_sum(current) <= 0.0)
    throw std::invalid_argument("ascend_ratio: zero start tuple");
  if (cfg.normalize) current = normalized(current);

  auto ratio_of = [&](const MatrixTuple& t) {
    const double s = norm_sum(t);
    return comm_norm_sum(t) / (constant * s * s);
  };

  SearchResult result;
  double ratio = ratio_of(current);
  if (!std::isfinite(ratio))
    throw std::runtime_error("ascend_ratio: non-finite ratio at start");
  if (cfg.record_trajectory) result.trajectory.emplace_back(0, ratio);
  double step = cfg.step_init;
  long long iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    std::vector<Matrix> grad = lhs_gradient(current);
    // Tangent projection along the sphere norm_sum = 1.
    double inner = 0.0;
    for (int r = 0; r < current.m(); ++r)
      inner += frob_inner(grad[static_cast<size_t>(r)], current.mat(r));
    const double sphere = norm_sum(current);
    double grad_norm_sq = 0.0;
    for (int r = 0; r < current.m(); ++r) {
      grad[static_cast<size_t>(r)] -= (inner / sphere) * current.mat(r);
      grad_norm_sq += grad[static_cast<size_t>(r)].squaredNorm();
    }
    if (std::sqrt(grad_norm_sq) <= cfg.tol_grad) break;

    bool improved = false;
    while (step >= 1e-16) {
      const MatrixTuple next = stepped(current, grad, step, cfg.normalize);
      const double next_ratio = ratio_of(next);
      if (!std::isfinite(next_ratio))
        throw std::runtime_error("ascend_ratio: non-finite ratio");
      if (next_ratio > ratio) {
        current = next;
        ratio = next_ratio;
        step *= 1.5;
        improved = true;
        if (cfg.record_trajectory) result.trajectory.emplace_back(iter + 1, ratio);
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }

  result.best_ratio = ratio;
  result.iterations = iter;
  result.classified = classify(current, cfg.classify_tol);
  result.best_tuple = std::move(current);
  return result;
}

SearchResult run_multi_ascend(const SearchConfig& cfg, Execution exec) {
  if (cfg.trials < 1) throw std::invalid_argument("multi_ascend: trials >= 1");
  const long long count = cfg.trials;
  std::vector<SearchResult> results(static_cast<size_t>(count));
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
      SearchConfig trial_cfg = cfg;
      trial_cfg.seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
      results[static_cast<size_t>(i)] = run_ascend(trial_cfg, {});
    }
  } else {
    for (long long i = 0; i < count; ++i) {
      SearchConfig trial_cfg = cfg;
      trial_cfg.seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
      results[static_cast<size_t>(i)] = run_ascend(trial_cfg, {});
    }
  }
  // Deterministic merge: max ratio, ties keep the earliest trial.
  size_t best = 0;
  for (size_t i = 1; i < results.size(); ++i)
    if (results[i].best_ratio > results[best].best_ratio) best = i;
  return results[best];
}

}  // namespace

FuzzSummary fuzz_inequality(const SearchConfig& cfg) {
  return run_fuzz(cfg, Execution::Parallel);
}

FuzzSummary fuzz_inequality_serial(const SearchConfig& cfg) {
  return run_fuzz(cfg, Execution::Serial);
}

std::vector<Matrix> lhs_gradient(const MatrixTuple& t) {
  const int m = t.m();
  const double sign = t.symmetry() == SymmetryClass::Symmetric ? 1.0 : -1.0;
  std::vector<Matrix> grad(static_cast<size_t>(m),
                           Matrix::Zero(t.n(), t.n()));
  for (int r = 0; r < m; ++r) {
    for (int s = 0; s < m; ++s) {
      if (s == r) continue;
      const Matrix C = commutator(t.mat(r), t.mat(s));
      grad[static_cast<size_t>(r)] += 4.0 * sign * commutator(C, t.mat(s));
    }
    // Hygiene projection onto the symmetry class.
    Matrix& G = grad[static_cast<size_t>(r)];
    G = 0.5 * (G + sign * Matrix(G.transpose()));
  }
  return grad;
}

SearchResult ascend_ratio(const SearchConfig& cfg,
                          const std::optional<MatrixTuple>& start) {
  return run_ascend(cfg, start);
}

SearchResult multi_ascend(const SearchConfig& cfg) {
  return run_multi_ascend(cfg, Execution::Parallel);
}

SearchResult multi_ascend_serial(const SearchConfig& cfg) {
  return run_multi_ascend(cfg, Execution::Serial);
}

namespace {

// Plain-array helpers for the enumeration oracle; kept free of Eigen and of
// the library's own defect path on purpose.
void raw_matmul(const std::vector<double>& A, const std::vector<double>& B,
                std::vector<double>& out, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += A[i * n + k] * B[k * n + j];
      out[i * n + j] = acc;
    }
}

double raw_comm_norm_sq(const std::vector<double>& A,
                        const std::vector<double>& B, int n) {
  std::vector<double> AB(static_cast<size_t>(n) * n);
  std::vector<double> BA(static_cast<size_t>(n) * n);
  raw_matmul(A, B, AB, n);
  raw_matmul(B, A, BA, n);
  double sq = 0.0;
  for (size_t i = 0; i < AB.size(); ++i) {
    const double d = AB[i] - BA[i];
    sq += d * d;
  }
  return sq;
}

double raw_constant(int n, SymmetryClass symmetry) {
  if (symmetry == SymmetryClass::Symmetric) return 1.0;
  if (n <= 2) return 0.0;
  return n == 3 ? 1.0 / 3.0 : 2.0 / 3.0;
}

}  // namespace

BruteForceResult brute_oracle(int n, int m, SymmetryClass symmetry,
                              const std::vector<double>& grid) {
  if (n < 1 || m < 1) throw std::invalid_argument("brute_oracle: n, m >= 1");
  if (grid.empty()) throw std::invalid_argument("brute_oracle: empty grid");
  const int per_matrix = symmetry == SymmetryClass::Symmetric
                             ? n * (n + 1) / 2
                             : n * (n - 1) / 2;
  const int free_entries = per_matrix * m;
  const double budget = 1e7;
  double total = 1.0;
  for (int i = 0; i < free_entries; ++i) {
    total *= static_cast<double>(grid.size());
    if (total > budget)
      throw std::invalid_argument(
          "brute_oracle: grid too large, " + std::to_string(total) +
          " tuples exceed the 1e7 budget");
  }
  const long long count = static_cast<long long>(total);
  const bool compare_all = count <= 100000;
  const double constant = raw_constant(n, symmetry);

  std::vector<int> digits(static_cast<size_t>(free_entries), 0);
  std::vector<std::vector<double>> mats(
      static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(n) * n));
  BruteForceResult out;
  out.max_ratio = 0.0;
  std::vector<int> best_digits;

  for (long long idx = 0; idx < count; ++idx) {
    // Fill matrices from the odometer digits.
    int d = 0;
    for (int r = 0; r < m; ++r) {
      std::vector<double>& A = mats[static_cast<size_t>(r)];
      std::fill(A.begin(), A.end(), 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          if (symmetry == SymmetryClass::SkewSymmetric && i == j) continue;
          const double v = grid[static_cast<size_t>(
              digits[static_cast<size_t>(d++)])];
          A[i * n + j] = v;
          A[j * n + i] = symmetry == SymmetryClass::Symmetric ? v : -v;
        }
    }

    double norm_total = 0.0;
    for (const std::vector<double>& A : mats)
      for (double v : A) norm_total += v * v;
    double lhs = 0.0;
    for (int r = 0; r < m; ++r)
      for (int s = r + 1; s < m; ++s)
        lhs += 2.0 * raw_comm_norm_sq(mats[static_cast<size_t>(r)],
                                      mats[static_cast<size_t>(s)], n);
    const double bound = constant * norm_total * norm_total;
    const double ratio = bound > 0.0 ? lhs / bound : 0.0;

    if (compare_all) {
      std::vector<Matrix> emats;
      emats.reserve(static_cast<size_t>(m));
      for (const std::vector<double>& A : mats) {
        Matrix M(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) M(i, j) = A[i * n + j];
        emats.push_back(std::move(M));
      }
      const DefectReport rep =
          defect(MatrixTuple(std::move(emats), symmetry));
      out.max_defect_disagreement = std::max(
          out.max_defect_disagreement, std::abs(rep.defect - (bound - lhs)));
    }

    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      best_digits = digits;
    }

    // Advance the odometer.
    for (int p = 0; p < free_entries; ++p) {
      if (++digits[static_cast<size_t>(p)] <
          static_cast<int>(grid.size()))
        break;
      digits[static_cast<size_t>(p)] = 0;
    }
  }
  out.enumerated = count;

  if (!best_digits.empty() || count > 0) {
    // Rebuild the argmax tuple (all-zero digits when nothing beat ratio 0).
    if (best_digits.empty())
      best_digits.assign(static_cast<size_t>(free_entries), 0);
    std::vector<Matrix> emats(static_cast<size_t>(m), Matrix::Zero(n, n));
    int d = 0;
    for (int r = 0; r < m; ++r)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          if (symmetry == SymmetryClass::SkewSymmetric && i == j) continue;
          const double v = grid[static_cast<size_t>(
              best_digits[static_cast<size_t>(d++)])];
          emats[static_cast<size_t>(r)](i, j) = v;
          emats[static_cast<size_t>(r)](j, i) =
              symmetry == SymmetryClass::Symmetric ? v : -v;
        }
    out.argmax = MatrixTuple(std::move(emats), symmetry);
  }
  return out;
}

}  // namespace ddvv
