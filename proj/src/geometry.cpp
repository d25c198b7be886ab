#include "ddvv/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ddvv {

namespace {

double pair_count_inv(int n) { return 1.0 / (n * (n - 1.0)); }

void require_curvature_dim(const ShapeOperatorSet& s) {
  if (s.n() < 2)
    throw std::domain_error("curvature quantities require n >= 2");
}

}  // namespace

ShapeOperatorSet::ShapeOperatorSet(std::vector<Matrix> ops, double c)
    : ops_(std::move(ops)), c_(c) {
  if (ops_.empty()) throw std::invalid_argument("empty shape operator set");
  n_ = static_cast<int>(ops_[0].rows());
  for (const Matrix& A : ops_) {
    if (A.rows() != n_ || A.cols() != n_)
      throw std::invalid_argument("shape operators must share dimension n");
    const double scale = 1.0 + A.cwiseAbs().maxCoeff();
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > kTolSym * scale)
      throw std::invalid_argument("shape operators must be symmetric");
  }
}

MatrixTuple ShapeOperatorSet::as_tuple() const {
  return MatrixTuple(ops_, SymmetryClass::Symmetric);
}

Vector mean_curvature(const ShapeOperatorSet& s) {
  Vector h(s.m());
  for (int r = 0; r < s.m(); ++r) h(r) = s.op(r).trace() / s.n();
  return h;
}

double mean_curvature_norm_sq(const ShapeOperatorSet& s) {
  return mean_curvature(s).squaredNorm();
}

double rho_direct(const ShapeOperatorSet& s) {
  require_curvature_dim(s);
  const int n = s.n();
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double sectional = s.c();
      for (const Matrix& A : s.ops())
        sectional += A(i, i) * A(j, j) - A(i, j) * A(i, j);
      sum += sectional;
    }
  return 2.0 * pair_count_inv(n) * sum;
}

double rho_via_translation(const ShapeOperatorSet& s) {
  require_curvature_dim(s);
  const MatrixTuple b = center(s.as_tuple());
  return mean_curvature_norm_sq(s) + s.c() - pair_count_inv(s.n()) * norm_sum(b);
}

double rho_perp(const ShapeOperatorSet& s) {
  require_curvature_dim(s);
  const int n = s.n();
  const int m = s.m();
  double sq = 0.0;
  for (int r = 0; r < m; ++r)
    for (int t = r + 1; t < m; ++t) {
      const Matrix C = commutator(s.op(r), s.op(t));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) sq += C(i, j) * C(i, j);
    }
  return 2.0 * pair_count_inv(n) * std::sqrt(sq);
}

double rho_perp_via_translation(const ShapeOperatorSet& s) {
  require_curvature_dim(s);
  const MatrixTuple b = center(s.as_tuple());
  return pair_count_inv(s.n()) * std::sqrt(comm_norm_sum(b));
}

double curvature_scale(const ShapeOperatorSet& s) {
  double ops_norm = 0.0;
  for (const Matrix& A : s.ops()) ops_norm += A.squaredNorm();
  return 1.0 + mean_curvature_norm_sq(s) + std::abs(s.c()) + ops_norm;
}

CurvatureReport curvature_report(const ShapeOperatorSet& s) {
  CurvatureReport rep;
  rep.rho = rho_direct(s);
  rep.rho_perp = rho_perp(s);
  rep.h_norm_sq = mean_curvature_norm_sq(s);
  rep.wintgen_defect = rep.h_norm_sq + s.c() - rep.rho - rep.rho_perp;
  rep.chen_defect = rep.h_norm_sq + s.c() - rep.rho;
  return rep;
}

bool ellipse_circle_test(const ShapeOperatorSet& s, double tol) {
  if (s.n() != 2)
    throw std::domain_error("ellipse_circle_test: surface case n = 2 only");
  const int m = s.m();
  Vector u(m), v(m);
  for (int r = 0; r < m; ++r) {
    u(r) = 0.5 * (s.op(r)(0, 0) - s.op(r)(1, 1));
    v(r) = s.op(r)(0, 1);
  }
  const double scale = u.squaredNorm() + v.squaredNorm();
  return std::abs(u.dot(v)) <= tol * scale &&
         std::abs(u.squaredNorm() - v.squaredNorm()) <= tol * scale;
}

ShapeOperatorSet equality_shape_ops(int n, int m, double mu, double lambda1,
                                    double lambda2, double lambda3, double c) {
  if (n < 2) throw std::invalid_argument("equality_shape_ops: n >= 2");
  const int min_m = lambda3 != 0.0 ? 3 : 2;
  if (m < min_m)
    throw std::invalid_argument("equality_shape_ops: too few normal slots");
  std::vector<Matrix> ops(static_cast<size_t>(m), Matrix::Zero(n, n));
  ops[0] = lambda1 * Matrix::Identity(n, n);
  ops[0](0, 0) += mu;
  ops[0](1, 1) -= mu;
  ops[1] = lambda2 * Matrix::Identity(n, n);
  ops[1](0, 1) += mu;
  ops[1](1, 0) += mu;
  if (m >= 3) ops[2] = lambda3 * Matrix::Identity(n, n);
  return ShapeOperatorSet(std::move(ops), c);
}

}  // namespace ddvv
