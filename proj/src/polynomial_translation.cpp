#include "ddvv/polynomial_translation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ddvv/rng.hpp"

namespace ddvv {

namespace {

bool is_orthogonal(const Matrix& Q, double tol) {
  if (Q.rows() != Q.cols()) return false;
  Matrix G = Q.transpose() * Q;
  G.diagonal().array() -= 1.0;
  return G.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

SymBasis::SymBasis(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("sym_basis: n >= 1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Matrix E = Matrix::Zero(n, n);
      if (i == j) {
        E(i, i) = 1.0;
      } else {
        E(i, j) = inv_sqrt2;
        E(j, i) = inv_sqrt2;
      }
      elements_.push_back(std::move(E));
      pairs_.emplace_back(i, j);
    }
}

int SymBasis::slot(int i, int j) const {
  if (i > j || i < 0 || j >= n_) throw std::invalid_argument("bad basis pair");
  // Lexicographic layout: row i starts after n + (n-1) + ... + (n-i+1) slots.
  return i * n_ - i * (i - 1) / 2 + (j - i);
}

SymBasis sym_basis(int n) { return SymBasis(n); }

Vectorization vectorize(const MatrixTuple& t) {
  if (t.symmetry() != SymmetryClass::Symmetric)
    throw std::invalid_argument("vectorize: symmetric tuples only");
  SymBasis basis(t.n());
  Matrix B(basis.N(), t.m());
  for (int a = 0; a < basis.N(); ++a)
    for (int r = 0; r < t.m(); ++r)
      B(a, r) = frob_inner(t.mat(r), basis.element(a));
  return Vectorization{std::move(basis), std::move(B)};
}

MatrixTuple devectorize(const Vectorization& v) {
  const int n = v.basis.n();
  const int m = static_cast<int>(v.B.cols());
  std::vector<Matrix> mats(static_cast<size_t>(m), Matrix::Zero(n, n));
  for (int r = 0; r < m; ++r)
    for (int a = 0; a < v.basis.N(); ++a)
      mats[static_cast<size_t>(r)] += v.B(a, r) * v.basis.element(a);
  return MatrixTuple(std::move(mats), SymmetryClass::Symmetric);
}

SpectralFrame spectral_frame(const Vectorization& v) {
  if (!v.B.allFinite())
    throw std::invalid_argument("spectral_frame: non-finite coefficients");
  const int N = v.basis.N();
  const Matrix gram = v.B * v.B.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("spectral_frame: eigendecomposition failed");
  SpectralFrame frame;
  frame.Q = Matrix(N, N);
  frame.x = Vector(N);
  for (int a = 0; a < N; ++a) {  // ascending -> descending
    frame.Q.col(a) = eig.eigenvectors().col(N - 1 - a);
    frame.x(a) = std::max(eig.eigenvalues()(N - 1 - a), 0.0);
  }
  if (frame.Q.determinant() < 0.0) frame.Q.col(N - 1) = -frame.Q.col(N - 1);
  return frame;
}

std::vector<Matrix> frame_matrices(const Matrix& Q, const SymBasis& basis) {
  if (Q.rows() != basis.N() || !is_orthogonal(Q, kTolOrth))
    throw std::invalid_argument("frame_matrices: Q must be N x N orthogonal");
  const int N = basis.N();
  std::vector<Matrix> out(static_cast<size_t>(N),
                          Matrix::Zero(basis.n(), basis.n()));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      out[static_cast<size_t>(a)] += Q(b, a) * basis.element(b);
  return out;
}

CommCoeffs comm_coeffs(const Matrix& Q, const SymBasis& basis) {
  const std::vector<Matrix> frame = frame_matrices(Q, basis);
  const int N = basis.N();
  Matrix C = Matrix::Zero(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      const double w = commutator(frame[static_cast<size_t>(a)],
                                  frame[static_cast<size_t>(b)])
                           .squaredNorm();
      C(a, b) = w;
      C(b, a) = w;
    }
  return CommCoeffs{std::move(C)};
}

double f_eval(const CommCoeffs& coeffs, const Vector& x) {
  const double s = x.sum();
  return x.dot(coeffs.C * x) - s * s;
}

double f_eval(const Matrix& Q, const Vector& x, const SymBasis& basis) {
  return f_eval(comm_coeffs(Q, basis), x);
}

std::pair<double, double> translation_check(const MatrixTuple& t) {
  const Vectorization v = vectorize(t);
  const SpectralFrame frame = spectral_frame(v);
  const CommCoeffs coeffs = comm_coeffs(frame.Q, v.basis);
  const double r1 = std::abs(norm_sum(t) - frame.x.sum());
  const double quad = frame.x.dot(coeffs.C * frame.x);
  const double r2 = std::abs(comm_norm_sum(t) - quad);
  return {r1, r2};
}

SimplexRegion::SimplexRegion(int N_, double epsilon_)
    : N(N_), epsilon(epsilon_) {
  if (N < 1) throw std::invalid_argument("simplex region: N >= 1");
  if (epsilon < 0.0 || epsilon * N > 1.0 + 1e-15)
    throw std::invalid_argument("simplex region empty: need 0 <= eps*N <= 1");
}

Vector project_simplex(const Vector& y, const SimplexRegion& region) {
  const int N = region.N;
  const double radius = 1.0 - region.epsilon * N;  // mass above the eps floor
  Vector z = y.array() - region.epsilon;
  std::vector<double> sorted(z.data(), z.data() + N);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (int k = 0; k < N; ++k) {
    cumulative += sorted[static_cast<size_t>(k)];
    const double candidate = (cumulative - radius) / (k + 1);
    if (sorted[static_cast<size_t>(k)] - candidate > 0.0 || k == 0)
      tau = candidate;
    else
      break;
  }
  Vector out(N);
  for (int a = 0; a < N; ++a)
    out(a) = std::max(z(a) - tau, 0.0) + region.epsilon;
  return out;
}

namespace {

struct StartResult {
  Vector x;
  double value;
  bool converged;
};

// Single projected-gradient ascent run with step halving and a terminal
// active-face KKT polish.
StartResult ascend_from(const CommCoeffs& coeffs, const SimplexRegion& region,
                        Vector x, const SimplexMaxConfig& cfg) {
  const int N = region.N;
  const Vector ones = Vector::Ones(N);
  x = project_simplex(x, region);
  double fx = f_eval(coeffs, x);
  double step = cfg.step_init;
  bool converged = false;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const Vector grad = 2.0 * (coeffs.C * x) - 2.0 * x.sum() * ones;
    bool improved = false;
    while (step >= cfg.tol) {
      Vector xn = project_simplex(x + step * grad, region);
      const double fn = f_eval(coeffs, xn);
      if (fn > fx) {
        x = std::move(xn);
        fx = fn;
        step *= 1.5;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      converged = true;
      break;
    }
  }

  // Polish: freeze coordinates at the eps floor and solve the stationarity
  // system on the remaining face.
  std::vector<int> free_idx;
  std::vector<int> active_idx;
  for (int a = 0; a < N; ++a) {
    if (x(a) <= region.epsilon + 1e-7)
      active_idx.push_back(a);
    else
      free_idx.push_back(a);
  }
  const int nf = static_cast<int>(free_idx.size());
  if (nf >= 2) {
    Matrix sys = Matrix::Zero(nf + 1, nf + 1);
    Vector rhs = Vector::Zero(nf + 1);
    for (int p = 0; p < nf; ++p) {
      for (int q = 0; q < nf; ++q)
        sys(p, q) = coeffs.C(free_idx[static_cast<size_t>(p)],
                             free_idx[static_cast<size_t>(q)]);
      sys(p, nf) = -1.0;
      sys(nf, p) = 1.0;
      double coupling = 0.0;
      for (int a : active_idx)
        coupling += coeffs.C(free_idx[static_cast<size_t>(p)], a);
      rhs(p) = -region.epsilon * coupling;
    }
    rhs(nf) = 1.0 - region.epsilon * static_cast<double>(active_idx.size());
    const Vector sol = sys.completeOrthogonalDecomposition().solve(rhs);
    if ((sys * sol - rhs).cwiseAbs().maxCoeff() <= 1e-9) {
      Vector cand = Vector::Constant(N, region.epsilon);
      bool feasible = true;
      for (int p = 0; p < nf; ++p) {
        cand(free_idx[static_cast<size_t>(p)]) = sol(p);
        if (sol(p) < region.epsilon - 1e-12) feasible = false;
      }
      if (feasible) {
        const double fc = f_eval(coeffs, cand);
        if (fc > fx) {
          x = std::move(cand);
          fx = fc;
        }
      }
    }
  }
  return StartResult{std::move(x), fx, converged};
}

// Exact oracle for small N: the maximum over the polytope is attained at a
// stationary point of f restricted to some face; enumerate every face
// (subset frozen at the eps floor) and solve its KKT system.
StartResult face_oracle(const CommCoeffs& coeffs, const SimplexRegion& region) {
  const int N = region.N;
  StartResult best{Vector(), -std::numeric_limits<double>::infinity(), true};
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    std::vector<int> free_idx;
    std::vector<int> active_idx;
    for (int a = 0; a < N; ++a) {
      if (mask & (1u << a))
        active_idx.push_back(a);
      else
        free_idx.push_back(a);
    }
    const int nf = static_cast<int>(free_idx.size());
    if (nf == 0) continue;
    Vector cand = Vector::Constant(N, region.epsilon);
    if (nf == 1) {
      const double rest = 1.0 - region.epsilon * (N - 1);
      if (rest < region.epsilon - 1e-12) continue;
      cand(free_idx[0]) = rest;
    } else {
      Matrix sys = Matrix::Zero(nf + 1, nf + 1);
      Vector rhs = Vector::Zero(nf + 1);
      for (int p = 0; p < nf; ++p) {
        for (int q = 0; q < nf; ++q)
          sys(p, q) = coeffs.C(free_idx[static_cast<size_t>(p)],
                               free_idx[static_cast<size_t>(q)]);
        sys(p, nf) = -1.0;
        sys(nf, p) = 1.0;
        double coupling = 0.0;
        for (int a : active_idx)
          coupling += coeffs.C(free_idx[static_cast<size_t>(p)], a);
        rhs(p) = -region.epsilon * coupling;
      }
      rhs(nf) = 1.0 - region.epsilon * static_cast<double>(active_idx.size());
      const Vector sol = sys.completeOrthogonalDecomposition().solve(rhs);
      // No stationary point on this face: its maximum sits on a sub-face,
      // which another mask enumerates.
      if ((sys * sol - rhs).cwiseAbs().maxCoeff() > 1e-9) continue;
      bool feasible = true;
      for (int p = 0; p < nf; ++p) {
        cand(free_idx[static_cast<size_t>(p)]) = sol(p);
        if (sol(p) < region.epsilon - 1e-12) feasible = false;
      }
      if (!feasible) continue;
    }
    const double fc = f_eval(coeffs, cand);
    if (fc > best.value) best = StartResult{std::move(cand), fc, true};
  }
  return best;
}

std::vector<Vector> build_starts(const SimplexRegion& region,
                                 const SimplexMaxConfig& cfg) {
  const int N = region.N;
  const double radius = 1.0 - region.epsilon * N;
  const Vector floor_pt = Vector::Constant(N, region.epsilon);
  std::vector<Vector> starts;
  starts.push_back(floor_pt + Vector::Constant(N, radius / N));  // barycenter
  for (int a = 0; a < N && static_cast<int>(starts.size()) < cfg.starts; ++a) {
    Vector v = floor_pt;
    v(a) += radius;
    starts.push_back(std::move(v));
  }
  for (int a = 0; a < N && static_cast<int>(starts.size()) < cfg.starts; ++a)
    for (int b = a + 1; b < N && static_cast<int>(starts.size()) < cfg.starts;
         ++b) {
      Vector v = floor_pt;
      v(a) += radius / 2;
      v(b) += radius / 2;
      starts.push_back(std::move(v));
    }
  Rng rng(cfg.seed);
  while (static_cast<int>(starts.size()) < cfg.starts) {
    Vector w(N);
    for (int a = 0; a < N; ++a) w(a) = -std::log(1.0 - rng.uniform());
    starts.push_back(floor_pt + radius * w / w.sum());
  }
  return starts;
}

SimplexMaxResult run_simplex_max(const CommCoeffs& coeffs,
                                 const SimplexRegion& region,
                                 const SimplexMaxConfig& cfg,
                                 Execution exec) {
  const int N = region.N;
  if (coeffs.C.rows() != N)
    throw std::invalid_argument("simplex_max: coefficient size mismatch");
  const double radius = 1.0 - region.epsilon * N;
  if (radius <= 1e-15) {  // single-point region
    Vector x = Vector::Constant(N, region.epsilon);
    return SimplexMaxResult{x, f_eval(coeffs, x), "degenerate", true};
  }

  const std::vector<Vector> starts = build_starts(region, cfg);
  const int count = static_cast<int>(starts.size());
  std::vector<StartResult> results(static_cast<size_t>(count));
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i)
      results[static_cast<size_t>(i)] =
          ascend_from(coeffs, region, starts[static_cast<size_t>(i)], cfg);
  } else {
    for (int i = 0; i < count; ++i)
      results[static_cast<size_t>(i)] =
          ascend_from(coeffs, region, starts[static_cast<size_t>(i)], cfg);
  }

  // Deterministic merge: strict improvement only, ties keep the lower index.
  SimplexMaxResult best;
  best.value = -std::numeric_limits<double>::infinity();
  bool all_converged = true;
  for (const StartResult& r : results) {
    all_converged = all_converged && r.converged;
    if (r.value > best.value) {
      best.value = r.value;
      best.x = r.x;
    }
  }
  best.method = "gradient";
  best.converged = all_converged;

  if (cfg.face_oracle && N <= 6) {
    const StartResult oracle = face_oracle(coeffs, region);
    if (oracle.value > best.value + 1e-13) {
      best.x = oracle.x;
      best.value = oracle.value;
      best.method = "face_oracle";
    } else if (std::abs(oracle.value - best.value) <= 1e-13) {
      best.method = "both";
    }
  }
  return best;
}

}  // namespace

SimplexMaxResult simplex_max(const CommCoeffs& coeffs,
                             const SimplexRegion& region,
                             const SimplexMaxConfig& cfg) {
  return run_simplex_max(coeffs, region, cfg, Execution::Parallel);
}

SimplexMaxResult simplex_max_serial(const CommCoeffs& coeffs,
                                    const SimplexRegion& region,
                                    const SimplexMaxConfig& cfg) {
  return run_simplex_max(coeffs, region, cfg, Execution::Serial);
}

SimplexMaxResult face_oracle_max(const CommCoeffs& coeffs,
                                 const SimplexRegion& region) {
  if (region.N > 20)
    throw std::invalid_argument("face_oracle_max: 2^N faces, need N <= 20");
  if (1.0 - region.epsilon * region.N <= 1e-15) {
    Vector x = Vector::Constant(region.N, region.epsilon);
    return SimplexMaxResult{x, f_eval(coeffs, x), "degenerate", true};
  }
  const StartResult res = face_oracle(coeffs, region);
  return SimplexMaxResult{res.x, res.value, "face_oracle", true};
}

MembershipResult g_epsilon_member(const Matrix& Q, const SymBasis& basis,
                                  double epsilon,
                                  const SimplexMaxConfig& cfg) {
  const CommCoeffs coeffs = comm_coeffs(Q, basis);
  const SimplexRegion region(basis.N(), epsilon);
  const SimplexMaxResult max = simplex_max(coeffs, region, cfg);
  MembershipResult out;
  out.member = max.value < -cfg.margin;
  out.max_value = max.value;
  out.margin = cfg.margin;
  out.certificate = max.x;
  return out;
}

}  // namespace ddvv
