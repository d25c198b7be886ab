#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace ddvv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Input-validation tolerances (symmetry and orthogonality checks). Well
/// above double roundoff, below any meaningful perturbation.
inline constexpr double kTolSym = 1e-9;
inline constexpr double kTolOrth = 1e-9;

enum class SymmetryClass { Symmetric, SkewSymmetric };

std::string to_string(SymmetryClass s);

/// An ordered tuple (B_1, ..., B_m) of real n x n matrices, all symmetric or
/// all skew-symmetric. Immutable after construction; construction validates
/// shape and symmetry class within kTolSym.
class MatrixTuple {
 public:
  MatrixTuple(std::vector<Matrix> mats, SymmetryClass symmetry);

  int n() const { return n_; }
  int m() const { return static_cast<int>(mats_.size()); }
  SymmetryClass symmetry() const { return symmetry_; }
  const Matrix& mat(int r) const { return mats_[static_cast<size_t>(r)]; }
  const std::vector<Matrix>& mats() const { return mats_; }

 private:
  int n_;
  std::vector<Matrix> mats_;
  SymmetryClass symmetry_;
};

/// An element (P, R) of O(n) x O(m). Construction validates orthogonality
/// within kTolOrth.
class GroupElement {
 public:
  GroupElement(Matrix P, Matrix R);

  const Matrix& P() const { return P_; }
  const Matrix& R() const { return R_; }

 private:
  Matrix P_;
  Matrix R_;
};

/// Frobenius inner product trace(A B^t). frob_inner(A, A) = ||A||^2.
double frob_inner(const Matrix& A, const Matrix& B);

/// [A, B] = AB - BA.
Matrix commutator(const Matrix& A, const Matrix& B);

/// Sum over ordered pairs (r, s) of ||[B_r, B_s]||^2; each unordered pair
/// contributes twice.
double comm_norm_sum(const MatrixTuple& t);

/// Sum over r of ||B_r||^2.
double norm_sum(const MatrixTuple& t);

/// (P, R) . (B_1,...,B_m) = (P^t B_1 P, ..., P^t B_m P) R, i.e. the r-th
/// output is sum_s R(s, r) P^t B_s P. Preserves the symmetry class,
/// norm_sum and comm_norm_sum.
MatrixTuple act(const GroupElement& g, const MatrixTuple& t);

/// Subtracts (trace/n) I from each matrix: B_r = A_r - (tr A_r / n) id.
/// Symmetric tuples only; skew matrices are already traceless and rejected.
MatrixTuple center(const MatrixTuple& t);

/// Entries i.i.d. standard normal, then symmetrized (A + A^t)/2 or
/// antisymmetrized (A - A^t)/2; optionally centered. Deterministic per seed.
MatrixTuple random_tuple(int n, int m, SymmetryClass symmetry,
                         std::uint64_t seed, bool traceless = false);

/// Haar-distributed k x k orthogonal matrix: Gaussian matrix, QR, diagonal
/// sign fix. With special = true the determinant is corrected to +1 by
/// flipping one column when needed.
Matrix random_orthogonal(int k, std::uint64_t seed, bool special = false);

/// Seeded random element of O(n) x O(m) (special = SO(n) x SO(m)).
GroupElement random_group_element(int n, int m, std::uint64_t seed,
                                  bool special = false);

}  // namespace ddvv
