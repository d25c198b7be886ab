#include "ddvv/equality_normal_form.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ddvv {

namespace {

double tuple_distance(const MatrixTuple& a, const MatrixTuple& b) {
  double sq = 0.0;
  for (int r = 0; r < a.m(); ++r) sq += (a.mat(r) - b.mat(r)).squaredNorm();
  return std::sqrt(sq);
}

Matrix polar_orthogonal(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// Descending-order symmetric eigendecomposition.
void sym_eig_desc(const Matrix& A, Vector& values, Matrix& vectors) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
  const int k = static_cast<int>(A.rows());
  values.resize(k);
  vectors.resize(k, k);
  for (int i = 0; i < k; ++i) {
    values(i) = eig.eigenvalues()(k - 1 - i);
    vectors.col(i) = eig.eigenvectors().col(k - 1 - i);
  }
}

Matrix gram_matrix(const MatrixTuple& t) {
  const int m = t.m();
  Matrix G(m, m);
  for (int r = 0; r < m; ++r)
    for (int s = r; s < m; ++s) {
      G(r, s) = frob_inner(t.mat(r), t.mat(s));
      G(s, r) = G(r, s);
    }
  return G;
}

NormalFormResult failure(int n, int m, double residual = 0.0) {
  NormalFormResult res;
  res.kind = NormalFormKind::NotEquality;
  res.P = Matrix::Identity(n, n);
  res.R = Matrix::Identity(m, m);
  res.residual = residual;
  return res;
}

NormalFormResult zero_form(const MatrixTuple& t) {
  NormalFormResult res;
  res.kind = NormalFormKind::Zero;
  res.P = Matrix::Identity(t.n(), t.n());
  res.R = Matrix::Identity(t.m(), t.m());
  res.parameter = 0.0;
  res.residual = std::sqrt(norm_sum(t));
  return res;
}

// Axis vector of a skew 3x3 matrix: S x = w cross x.
Eigen::Vector3d skew3_axis(const Matrix& S) {
  return {S(2, 1), S(0, 2), S(1, 0)};
}

// Axes of the canonical so(3) triple (C_1, C_2, C_3) at lambda = 1, as
// columns. An orthogonal P maps axes by w -> det(P) P^t w, so a canonical
// match requires det(W) < 0, matching this frame's orientation.
Matrix skew3_axis_targets() {
  Matrix T = Matrix::Zero(3, 3);
  T(2, 0) = -1.0;
  T(1, 1) = 1.0;
  T(0, 2) = -1.0;
  return T;
}

// The 4x4 anticommuting blocks at lambda = 1 (quaternion left
// multiplications up to sign): d_i d_j = -d_k cyclically, d_i^2 = -I.
std::vector<Matrix> quaternionic_blocks() {
  std::vector<Matrix> d(3, Matrix::Zero(4, 4));
  d[0](0, 1) = 1;
  d[0](2, 3) = 1;
  d[1](0, 2) = 1;
  d[1](3, 1) = 1;
  d[2](0, 3) = 1;
  d[2](1, 2) = 1;
  for (Matrix& D : d) D -= Matrix(D.transpose());
  return d;
}

}  // namespace

std::string to_string(NormalFormKind k) {
  switch (k) {
    case NormalFormKind::SymmetricPair: return "symmetric_pair";
    case NormalFormKind::SkewTriple3: return "skew_triple3";
    case NormalFormKind::SkewQuaternionic4: return "skew_quaternionic4";
    case NormalFormKind::Zero: return "zero";
    case NormalFormKind::NotEquality: return "not_equality";
  }
  return "unknown";
}

MatrixTuple make_symmetric_pair(int n, int m, double mu) {
  if (mu < 0.0) throw std::invalid_argument("make_symmetric_pair: mu >= 0");
  if (n < 1 || m < 1) throw std::invalid_argument("make_symmetric_pair: n, m >= 1");
  if (mu > 0.0 && (n < 2 || m < 2))
    throw std::invalid_argument("make_symmetric_pair: need n, m >= 2 for mu > 0");
  std::vector<Matrix> mats(static_cast<size_t>(m), Matrix::Zero(n, n));
  if (mu > 0.0) {
    mats[0](0, 0) = mu;
    mats[0](1, 1) = -mu;
    mats[1](0, 1) = mu;
    mats[1](1, 0) = mu;
  }
  return MatrixTuple(std::move(mats), SymmetryClass::Symmetric);
}

MatrixTuple make_skew_triple3(int m, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("make_skew_triple3: lambda >= 0");
  if (m < 1) throw std::invalid_argument("make_skew_triple3: m >= 1");
  if (lambda > 0.0 && m < 3)
    throw std::invalid_argument("make_skew_triple3: need m >= 3 for lambda > 0");
  std::vector<Matrix> mats(static_cast<size_t>(m), Matrix::Zero(3, 3));
  if (lambda > 0.0) {
    mats[0](0, 1) = lambda;
    mats[0](1, 0) = -lambda;
    mats[1](0, 2) = lambda;
    mats[1](2, 0) = -lambda;
    mats[2](1, 2) = lambda;
    mats[2](2, 1) = -lambda;
  }
  return MatrixTuple(std::move(mats), SymmetryClass::SkewSymmetric);
}

MatrixTuple make_skew_quaternionic(int n, int m, double lambda) {
  if (lambda < 0.0)
    throw std::invalid_argument("make_skew_quaternionic: lambda >= 0");
  if (n < 1 || m < 1)
    throw std::invalid_argument("make_skew_quaternionic: n, m >= 1");
  if (lambda > 0.0 && (n < 4 || m < 3))
    throw std::invalid_argument(
        "make_skew_quaternionic: need n >= 4 and m >= 3 for lambda > 0");
  std::vector<Matrix> mats(static_cast<size_t>(m), Matrix::Zero(n, n));
  if (lambda > 0.0) {
    const std::vector<Matrix> d = quaternionic_blocks();
    for (int i = 0; i < 3; ++i)
      mats[static_cast<size_t>(i)].topLeftCorner(4, 4) = lambda * d[static_cast<size_t>(i)];
  }
  return MatrixTuple(std::move(mats), SymmetryClass::SkewSymmetric);
}

NormalFormResult detect_symmetric(const MatrixTuple& t, double tol) {
  if (t.symmetry() != SymmetryClass::Symmetric)
    throw std::invalid_argument("detect_symmetric: symmetric tuples only");
  const int n = t.n();
  const int m = t.m();
  const double ns = norm_sum(t);
  if (ns <= tol) return zero_form(t);
  const double scale_lin = std::sqrt(ns);

  // Equality forces traceless matrices: centering keeps the commutators and
  // shrinks the bound.
  for (const Matrix& A : t.mats())
    if (std::abs(A.trace()) > tol * (1.0 + scale_lin)) return failure(n, m);

  if (m < 2 || n < 2) return failure(n, m);

  // The Gram matrix <B_r, B_s> of an equality tuple has rank 2 with both
  // nonzero eigenvalues equal to 2 mu^2; its eigenvalues are invariants of
  // the O(n) x O(m) action.
  Vector g;
  Matrix V;
  sym_eig_desc(gram_matrix(t), g, V);
  const double tol_g = tol * (1.0 + g(0));
  if (std::abs(g(0) - g(1)) > tol_g) return failure(n, m);
  for (int i = 2; i < m; ++i)
    if (g(i) > tol_g) return failure(n, m);
  const double mu = std::sqrt(std::max((g(0) + g(1)) / 4.0, 0.0));

  const MatrixTuple rotated = act(GroupElement(Matrix::Identity(n, n), V), t);

  // First slot must have spectrum (mu, 0, ..., 0, -mu).
  Vector nu;
  Matrix W;
  sym_eig_desc(rotated.mat(0), nu, W);
  const double tol_nu = tol * (1.0 + mu);
  if (std::abs(nu(0) - mu) > tol_nu || std::abs(nu(n - 1) + mu) > tol_nu)
    return failure(n, m);
  for (int i = 1; i < n - 1; ++i)
    if (std::abs(nu(i)) > tol_nu) return failure(n, m);

  Matrix P(n, n);
  P.col(0) = W.col(0);
  P.col(1) = W.col(n - 1);
  for (int i = 1; i < n - 1; ++i) P.col(i + 1) = W.col(i);

  // Fix the sign of the off-diagonal pattern by flipping e_2 if needed.
  if ((P.transpose() * rotated.mat(1) * P)(0, 1) < 0.0) P.col(1) = -P.col(1);

  const GroupElement group(P, V);
  const MatrixTuple canonicalized = act(group, t);
  const double residual =
      tuple_distance(canonicalized, make_symmetric_pair(n, m, mu));
  if (residual > tol * (1.0 + scale_lin)) return failure(n, m, residual);

  NormalFormResult res;
  res.kind = NormalFormKind::SymmetricPair;
  res.P = P;
  res.R = V;
  res.parameter = mu;
  res.residual = residual;
  return res;
}

NormalFormResult detect_skew(const MatrixTuple& t, double tol) {
  if (t.symmetry() != SymmetryClass::SkewSymmetric)
    throw std::invalid_argument("detect_skew: skew tuples only");
  const int n = t.n();
  const int m = t.m();
  const double ns = norm_sum(t);
  if (ns <= tol) return zero_form(t);
  const double scale_lin = std::sqrt(ns);
  if (n < 3 || m < 3) return failure(n, m);

  // Gram step: three equal nonzero eigenvalues (2 lambda^2 at n = 3,
  // 4 lambda^2 at n >= 4), the rest zero.
  Vector g;
  Matrix V;
  sym_eig_desc(gram_matrix(t), g, V);
  const double tol_g = tol * (1.0 + g(0));
  if (std::abs(g(0) - g(2)) > tol_g) return failure(n, m);
  for (int i = 3; i < m; ++i)
    if (g(i) > tol_g) return failure(n, m);
  const double gavg = (g(0) + g(1) + g(2)) / 3.0;
  const double lambda = std::sqrt(std::max(gavg / (n == 3 ? 2.0 : 4.0), 0.0));
  if (lambda <= 0.0) return failure(n, m);

  Matrix R = V;
  MatrixTuple rotated = act(GroupElement(Matrix::Identity(n, n), R), t);

  if (n == 3) {
    // so(3) is R^3 under the axis map; the triple must be lambda times an
    // orthogonal frame with the same orientation as the canonical one.
    Matrix W(3, 3);
    for (int i = 0; i < 3; ++i) W.col(i) = skew3_axis(rotated.mat(i));
    const double tol_ax = tol * (1.0 + lambda);
    for (int i = 0; i < 3; ++i) {
      if (std::abs(W.col(i).norm() - lambda) > tol_ax) return failure(n, m);
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(W.col(i).dot(W.col(j))) > tol_ax * (1.0 + lambda))
          return failure(n, m);
    }
    if (W.determinant() > 0.0) {  // wrong orientation: flip the third slot
      R.col(2) = -R.col(2);
      W.col(2) = -W.col(2);
    }
    const Matrix P = polar_orthogonal(W) * skew3_axis_targets().transpose();

    const GroupElement group(P, R);
    const MatrixTuple canonicalized = act(group, t);
    const double residual =
        tuple_distance(canonicalized, make_skew_triple3(m, lambda));
    if (residual > tol * (1.0 + scale_lin)) return failure(n, m, residual);

    NormalFormResult res;
    res.kind = NormalFormKind::SkewTriple3;
    res.P = P;
    res.R = R;
    res.parameter = lambda;
    res.residual = residual;
    return res;
  }

  // n >= 4: the triple acts on a common 4-dimensional support where it is a
  // quaternionic structure: J_i J_j + J_j J_i = 0, J_i^2 = -I, and
  // J_1 J_2 = -J_3 after a sign fix.
  Matrix support = Matrix::Zero(n, n);
  for (int i = 0; i < 3; ++i)
    support -= rotated.mat(i) * rotated.mat(i);
  Vector sep;
  Matrix U_full;
  sym_eig_desc(support, sep, U_full);
  const double support_level = 3.0 * lambda * lambda;
  const double tol_s = tol * (1.0 + support_level);
  for (int i = 0; i < 4; ++i)
    if (std::abs(sep(i) - support_level) > tol_s) return failure(n, m);
  for (int i = 4; i < n; ++i)
    if (std::abs(sep(i)) > tol_s) return failure(n, m);
  const Matrix U = U_full.leftCols(4);

  std::vector<Matrix> J(3);
  for (int i = 0; i < 3; ++i)
    J[static_cast<size_t>(i)] = (U.transpose() * rotated.mat(i) * U) / lambda;
  const double tol_j = tol * 4.0;
  for (int i = 0; i < 3; ++i) {
    if ((J[static_cast<size_t>(i)] * J[static_cast<size_t>(i)] +
         Matrix::Identity(4, 4))
            .norm() > tol_j)
      return failure(n, m);
    for (int j = i + 1; j < 3; ++j)
      if ((J[static_cast<size_t>(i)] * J[static_cast<size_t>(j)] +
           J[static_cast<size_t>(j)] * J[static_cast<size_t>(i)])
              .norm() > tol_j)
        return failure(n, m);
  }
  if (frob_inner(J[0] * J[1], J[2]) > 0.0) {  // enforce J_1 J_2 = -J_3
    R.col(2) = -R.col(2);
    J[2] = -J[2];
  }

  // Columns (u, -J_1 u, -J_2 u, -J_3 u) conjugate the triple to the d_i.
  Matrix P4(4, 4);
  const Vector u = Vector::Unit(4, 0);
  P4.col(0) = u;
  for (int i = 0; i < 3; ++i) P4.col(i + 1) = -J[static_cast<size_t>(i)] * u;
  P4 = polar_orthogonal(P4);

  Matrix P(n, n);
  P.leftCols(4) = U * P4;
  if (n > 4) P.rightCols(n - 4) = U_full.rightCols(n - 4);

  const GroupElement group(P, R);
  const MatrixTuple canonicalized = act(group, t);
  const double residual =
      tuple_distance(canonicalized, make_skew_quaternionic(n, m, lambda));
  if (residual > tol * (1.0 + scale_lin)) return failure(n, m, residual);

  NormalFormResult res;
  res.kind = NormalFormKind::SkewQuaternionic4;
  res.P = P;
  res.R = R;
  res.parameter = lambda;
  res.residual = residual;
  return res;
}

ShapeEqualityResult detect_shape_equality(const ShapeOperatorSet& s,
                                          double tol) {
  const int n = s.n();
  const int m = s.m();
  const MatrixTuple a = s.as_tuple();
  const MatrixTuple traceless = center(a);
  Vector tau(m);
  for (int r = 0; r < m; ++r) tau(r) = s.op(r).trace() / n;

  ShapeEqualityResult out;
  NormalFormResult base = detect_symmetric(traceless, tol);

  if (base.kind == NormalFormKind::NotEquality) {
    out.form = std::move(base);
    return out;
  }

  const double id_norm = std::sqrt(static_cast<double>(n));

  if (base.kind == NormalFormKind::Zero) {
    // Pure trace: A_r = tau_r I. Rotate the trace vector into the first slot.
    const double tnorm = tau.norm();
    if (tnorm * id_norm <= tol) {
      out.form = std::move(base);  // everything vanishes
      return out;
    }
    Matrix R = Matrix::Identity(m, m);
    if (m > 1) {
      Eigen::HouseholderQR<Matrix> qr(tau);
      R = Matrix(qr.householderQ());
      if ((R.transpose() * tau)(0) < 0.0) R.col(0) = -R.col(0);
    } else if (tau(0) < 0.0) {
      R(0, 0) = -1.0;
    }
    std::vector<Matrix> target(static_cast<size_t>(m), Matrix::Zero(n, n));
    target[0] = tnorm * Matrix::Identity(n, n);
    const GroupElement group(Matrix::Identity(n, n), R);
    const MatrixTuple canonicalized = act(group, a);
    const double residual = tuple_distance(
        canonicalized, MatrixTuple(std::move(target), SymmetryClass::Symmetric));
    out.form.kind = residual <= tol * (1.0 + std::sqrt(norm_sum(a)))
                        ? NormalFormKind::SymmetricPair
                        : NormalFormKind::NotEquality;
    out.form.P = Matrix::Identity(n, n);
    out.form.R = R;
    out.form.parameter = 0.0;
    out.form.residual = residual;
    out.lambda1 = tnorm;
    return out;
  }

  // SymmetricPair on the traceless part: trace components ride along R.
  Vector tau_rot = base.R.transpose() * tau;
  out.lambda1 = tau_rot(0);
  out.lambda2 = tau_rot(1);
  Matrix R = base.R;
  if (m > 2) {
    const Vector rest = tau_rot.tail(m - 2);
    out.lambda3 = rest.norm();
    if (out.lambda3 * id_norm > tol) {
      // Rotate the residual trace vector into slot 3; the traceless parts
      // there vanish, so this touches nothing else.
      Eigen::HouseholderQR<Matrix> qr(rest);
      Matrix Vr = Matrix(qr.householderQ());
      if ((Vr.transpose() * rest)(0) < 0.0) Vr.col(0) = -Vr.col(0);
      Matrix ext = Matrix::Identity(m, m);
      ext.bottomRightCorner(m - 2, m - 2) = Vr;
      R = R * ext;
    }
  }

  std::vector<Matrix> target(static_cast<size_t>(m), Matrix::Zero(n, n));
  target[0] = out.lambda1 * Matrix::Identity(n, n);
  target[0](0, 0) += base.parameter;
  target[0](1, 1) -= base.parameter;
  target[1] = out.lambda2 * Matrix::Identity(n, n);
  target[1](0, 1) += base.parameter;
  target[1](1, 0) += base.parameter;
  if (m > 2) target[2] = out.lambda3 * Matrix::Identity(n, n);

  const GroupElement group(base.P, R);
  const MatrixTuple canonicalized = act(group, a);
  const double residual = tuple_distance(
      canonicalized, MatrixTuple(std::move(target), SymmetryClass::Symmetric));

  out.form.kind = residual <= tol * (1.0 + std::sqrt(norm_sum(a)))
                      ? NormalFormKind::SymmetricPair
                      : NormalFormKind::NotEquality;
  out.form.P = base.P;
  out.form.R = R;
  out.form.parameter = base.parameter;
  out.form.residual = residual;
  return out;
}

}  // namespace ddvv
