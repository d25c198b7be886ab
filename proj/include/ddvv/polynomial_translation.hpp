#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ddvv/matrix_core.hpp"
#include "ddvv/parallel.hpp"

namespace ddvv {

/// Orthonormal basis of the space SM(n) of symmetric n x n matrices,
/// N = n(n+1)/2 elements: E_ii on the diagonal slots and (E_ij + E_ji)/sqrt2
/// for i < j, ordered lexicographically by (i, j).
class SymBasis {
 public:
  explicit SymBasis(int n);

  int n() const { return n_; }
  int N() const { return static_cast<int>(elements_.size()); }
  const Matrix& element(int alpha) const {
    return elements_[static_cast<size_t>(alpha)];
  }
  /// Index pair (i, j), i <= j, of basis slot alpha (0-based everywhere).
  std::pair<int, int> index_pair(int alpha) const {
    return pairs_[static_cast<size_t>(alpha)];
  }
  /// Basis slot of the pair (i, j) with i <= j.
  int slot(int i, int j) const;

 private:
  int n_;
  std::vector<Matrix> elements_;
  std::vector<std::pair<int, int>> pairs_;
};

SymBasis sym_basis(int n);

/// Coefficients of a symmetric tuple over the basis: the unique N x m matrix
/// B with (B_1,...,B_m) = (E^_1,...,E^_N) B.
struct Vectorization {
  SymBasis basis;
  Matrix B;  // N x m
};

Vectorization vectorize(const MatrixTuple& t);

/// Reconstructs the tuple (E^_1,...,E^_N) B.
MatrixTuple devectorize(const Vectorization& v);

/// Spectral decomposition B B^t = Q diag(x) Q^t with Q in SO(N) and x >= 0
/// sorted descending. Eigenvalues above -1e-12 are clamped to zero.
struct SpectralFrame {
  Matrix Q;  // N x N, det +1
  Vector x;  // N, nonnegative, descending
};

SpectralFrame spectral_frame(const Vectorization& v);

/// The rotated orthonormal family (Q^_1,...,Q^_N) = (E^_1,...,E^_N) Q.
std::vector<Matrix> frame_matrices(const Matrix& Q, const SymBasis& basis);

/// Quadratic coefficients C_ab = ||[Q^_a, Q^_b]||^2 of f_Q, computed once
/// per Q and then read-only.
struct CommCoeffs {
  Matrix C;  // N x N symmetric, zero diagonal
};

CommCoeffs comm_coeffs(const Matrix& Q, const SymBasis& basis);

/// f_Q(x) = sum_ab x_a x_b C_ab - (sum_a x_a)^2.
double f_eval(const CommCoeffs& coeffs, const Vector& x);
double f_eval(const Matrix& Q, const Vector& x, const SymBasis& basis);

/// Residuals of the two translation identities on one symmetric tuple:
///   | sum_r ||B_r||^2 - sum_a x_a |
///   | sum_{r,s} ||[B_r,B_s]||^2 - sum_ab x_a x_b C_ab |.
std::pair<double, double> translation_check(const MatrixTuple& t);

/// The truncated simplex D_eps = { x : sum x = 1, x_a >= eps }. Requires
/// eps * N <= 1, else the region is empty.
struct SimplexRegion {
  int N;
  double epsilon;

  SimplexRegion(int N_, double epsilon_);
};

/// Euclidean projection onto D_eps.
Vector project_simplex(const Vector& y, const SimplexRegion& region);

struct SimplexMaxConfig {
  int starts = 64;
  int max_iters = 500;
  double step_init = 0.5;
  double tol = 1e-12;          // accept-step floor on the line search
  double margin = 1e-10;       // strictness margin for membership verdicts
  std::uint64_t seed = 0;      // seeds the random extra starts
  bool face_oracle = true;     // exact face enumeration when N <= 6
};

struct SimplexMaxResult {
  Vector x;            // best maximizer found
  double value = 0.0;  // f_Q at x
  std::string method;  // "gradient", "face_oracle", "both" or "degenerate"
  bool converged = true;
};

/// Best found maximum of f_Q over D_eps: multi-start projected-gradient
/// ascent with an active-face polish, plus an exact face-enumeration oracle
/// (KKT solve per face) when N <= 6. Returns the better of the two.
SimplexMaxResult simplex_max(const CommCoeffs& coeffs,
                             const SimplexRegion& region,
                             const SimplexMaxConfig& cfg = {});

/// Serial reference for simplex_max; identical output, no OpenMP.
SimplexMaxResult simplex_max_serial(const CommCoeffs& coeffs,
                                    const SimplexRegion& region,
                                    const SimplexMaxConfig& cfg = {});

/// The exact face-enumeration oracle alone (one KKT solve per face of the
/// polytope). Exponential in N; refuses N > 20.
SimplexMaxResult face_oracle_max(const CommCoeffs& coeffs,
                                 const SimplexRegion& region);

/// Numerical membership test for G_eps = { Q : f_Q < 0 on D_eps }. A false
/// verdict carries the violating x; sound for exclusion (certificate has
/// f >= 0), heuristic for membership.
struct MembershipResult {
  bool member = false;
  double max_value = 0.0;
  double margin = 0.0;
  Vector certificate;  // maximizer; the violating x when member == false
};

MembershipResult g_epsilon_member(const Matrix& Q, const SymBasis& basis,
                                  double epsilon,
                                  const SimplexMaxConfig& cfg = {});

}  // namespace ddvv
