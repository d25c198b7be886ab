#pragma once

#include <optional>
#include <string>

#include "ddvv/geometry.hpp"
#include "ddvv/matrix_core.hpp"

namespace ddvv {

enum class NormalFormKind {
  SymmetricPair,     // (H_1, H_2, 0, ...): H_1 = diag(mu, -mu, 0...),
                     // H_2 = mu (E_12 + E_21)
  SkewTriple3,       // n = 3 triple C_1, C_2, C_3 spanning so(3)
  SkewQuaternionic4, // n >= 4 anticommuting triple diag(D_i, 0)
  Zero,
  NotEquality
};

std::string to_string(NormalFormKind k);

/// Result of canonicalizing a (near-)equality tuple: a group element (P, R)
/// and parameter with act((P, R), input) within `residual` of the exact
/// canonical tuple. (P, R) is one representative; the stabilizer of the
/// canonical form makes it non-unique.
struct NormalFormResult {
  NormalFormKind kind = NormalFormKind::NotEquality;
  Matrix P;
  Matrix R;
  double parameter = 0.0;  // mu or lambda, >= 0
  double residual = 0.0;
};

/// The symmetric equality tuple (H_1, H_2, 0, ..., 0) at dimension n with m
/// slots. mu = 0 yields the zero tuple.
MatrixTuple make_symmetric_pair(int n, int m, double mu);

/// The skew n = 3 equality triple (C_1, C_2, C_3, 0, ..., 0).
MatrixTuple make_skew_triple3(int m, double lambda);

/// The skew n >= 4 equality triple (diag(D_1,0), diag(D_2,0), diag(D_3,0),
/// 0, ..., 0) with the 4 x 4 anticommuting blocks D_i.
MatrixTuple make_skew_quaternionic(int n, int m, double lambda);

/// Detects whether a symmetric tuple lies (within tol) on the equality orbit
/// and recovers a canonicalizing (P, R, mu). Failures are encoded in kind.
NormalFormResult detect_symmetric(const MatrixTuple& t, double tol);

/// Skew counterpart: SkewTriple3 at n = 3, SkewQuaternionic4 at n >= 4
/// (constructive on the 4-dimensional support, identity on its complement).
NormalFormResult detect_skew(const MatrixTuple& t, double tol);

/// Shape-operator equality detection: splits off trace parts, runs
/// detect_symmetric on the traceless tuple, and reconstitutes the parameters
/// (mu, lambda1, lambda2, lambda3) of the canonical configuration. lambda1,
/// lambda2 are pinned only up to a rotation in the plane they span (the
/// stabilizer of the traceless pair mixes them); mu, lambda3 and
/// lambda1^2 + lambda2^2 are well-defined.
struct ShapeEqualityResult {
  NormalFormResult form;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};

ShapeEqualityResult detect_shape_equality(const ShapeOperatorSet& s,
                                          double tol);

}  // namespace ddvv
