#include "ddvv/matrix_core.hpp"

#include <cmath>
#include <stdexcept>

#include "ddvv/rng.hpp"

namespace ddvv {

std::string to_string(SymmetryClass s) {
  return s == SymmetryClass::Symmetric ? "symmetric" : "skew";
}

namespace {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = rng.gaussian();
  return A;
}

void check_square_same(const Matrix& A, const Matrix& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw std::invalid_argument("expected square matrices of equal dimension");
}

bool is_orthogonal(const Matrix& Q, double tol) {
  Matrix G = Q.transpose() * Q;
  G.diagonal().array() -= 1.0;
  return G.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

MatrixTuple::MatrixTuple(std::vector<Matrix> mats, SymmetryClass symmetry)
    : mats_(std::move(mats)), symmetry_(symmetry) {
  if (mats_.empty()) throw std::invalid_argument("empty matrix tuple");
  n_ = static_cast<int>(mats_[0].rows());
  if (n_ < 1) throw std::invalid_argument("matrix dimension must be positive");
  for (const Matrix& A : mats_) {
    if (A.rows() != n_ || A.cols() != n_)
      throw std::invalid_argument("all tuple matrices must be n x n");
    const double scale = 1.0 + A.cwiseAbs().maxCoeff();
    const Matrix D = (symmetry_ == SymmetryClass::Symmetric)
                         ? Matrix(A - A.transpose())
                         : Matrix(A + A.transpose());
    if (D.cwiseAbs().maxCoeff() > kTolSym * scale)
      throw std::invalid_argument("matrix violates declared symmetry class");
  }
}

GroupElement::GroupElement(Matrix P, Matrix R)
    : P_(std::move(P)), R_(std::move(R)) {
  if (P_.rows() != P_.cols() || R_.rows() != R_.cols())
    throw std::invalid_argument("group element factors must be square");
  if (!is_orthogonal(P_, kTolOrth) || !is_orthogonal(R_, kTolOrth))
    throw std::invalid_argument("group element factors must be orthogonal");
}

double frob_inner(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("frob_inner: shape mismatch");
  return (A.array() * B.array()).sum();
}

Matrix commutator(const Matrix& A, const Matrix& B) {
  check_square_same(A, B);
  return A * B - B * A;
}

double comm_norm_sum(const MatrixTuple& t) {
  const int m = t.m();
  double total = 0.0;
  for (int r = 0; r < m; ++r)
    for (int s = r + 1; s < m; ++s)
      total += 2.0 * commutator(t.mat(r), t.mat(s)).squaredNorm();
  return total;
}

double norm_sum(const MatrixTuple& t) {
  double total = 0.0;
  for (const Matrix& A : t.mats()) total += A.squaredNorm();
  return total;
}

MatrixTuple act(const GroupElement& g, const MatrixTuple& t) {
  if (g.P().rows() != t.n() || g.R().rows() != t.m())
    throw std::invalid_argument("act: group element shape mismatch");
  const int m = t.m();
  std::vector<Matrix> conj(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s)
    conj[static_cast<size_t>(s)] = g.P().transpose() * t.mat(s) * g.P();
  std::vector<Matrix> out(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) {
    Matrix acc = Matrix::Zero(t.n(), t.n());
    for (int s = 0; s < m; ++s) acc += g.R()(s, r) * conj[static_cast<size_t>(s)];
    out[static_cast<size_t>(r)] = std::move(acc);
  }
  return MatrixTuple(std::move(out), t.symmetry());
}

MatrixTuple center(const MatrixTuple& t) {
  if (t.symmetry() != SymmetryClass::Symmetric)
    throw std::invalid_argument("center: symmetric tuples only");
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(t.m()));
  for (const Matrix& A : t.mats()) {
    Matrix B = A;
    B.diagonal().array() -= A.trace() / static_cast<double>(t.n());
    out.push_back(std::move(B));
  }
  return MatrixTuple(std::move(out), SymmetryClass::Symmetric);
}

MatrixTuple random_tuple(int n, int m, SymmetryClass symmetry,
                         std::uint64_t seed, bool traceless) {
  if (n < 1 || m < 1) throw std::invalid_argument("random_tuple: n, m >= 1");
  Rng rng(seed);
  std::vector<Matrix> mats;
  mats.reserve(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) {
    Matrix A = gaussian_matrix(n, n, rng);
    Matrix B = (symmetry == SymmetryClass::Symmetric)
                   ? Matrix(0.5 * (A + A.transpose()))
                   : Matrix(0.5 * (A - A.transpose()));
    if (traceless && symmetry == SymmetryClass::Symmetric)
      B.diagonal().array() -= B.trace() / static_cast<double>(n);
    mats.push_back(std::move(B));
  }
  return MatrixTuple(std::move(mats), symmetry);
}

Matrix random_orthogonal(int k, std::uint64_t seed, bool special) {
  if (k < 1) throw std::invalid_argument("random_orthogonal: k >= 1");
  Rng rng(seed);
  Matrix A = gaussian_matrix(k, k, rng);
  Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  Matrix Rfac = qr.matrixQR().triangularView<Eigen::Upper>();
  // Sign-fixing the R diagonal makes the distribution Haar.
  for (int j = 0; j < k; ++j)
    if (Rfac(j, j) < 0.0) Q.col(j) = -Q.col(j);
  if (special && Q.determinant() < 0.0) Q.col(k - 1) = -Q.col(k - 1);
  return Q;
}

GroupElement random_group_element(int n, int m, std::uint64_t seed,
                                  bool special) {
  Rng rng(seed);
  const std::uint64_t seed_p = rng.next_u64();
  const std::uint64_t seed_r = rng.next_u64();
  return GroupElement(random_orthogonal(n, seed_p, special),
                      random_orthogonal(m, seed_r, special));
}

}  // namespace ddvv
