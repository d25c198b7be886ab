#pragma once

#include <vector>

#include "ddvv/matrix_core.hpp"

namespace ddvv {

/// Two sides of the commutator-norm inequality
///   sum_{r,s} ||[B_r, B_s]||^2  <=  K(n, class) (sum_r ||B_r||^2)^2
/// evaluated on one tuple, plus the per-matrix traces.
struct DefectReport {
  double lhs = 0.0;            // sum_{r,s} ||[B_r, B_s]||^2
  double bound = 0.0;          // constant_used * norm_sum^2
  double defect = 0.0;         // bound - lhs
  double ratio = 0.0;          // lhs / bound, 0 when bound == 0
  double constant_used = 0.0;  // K(n, class)
  std::vector<double> traces;  // trace(B_r)
};

/// Sharp constant K(n, class). Symmetric: 1 for every n. Skew-symmetric:
/// 1/3 at n = 3, 2/3 for n >= 4, and 0 for n <= 2 where all such matrices
/// commute (so(1) trivial, so(2) abelian) -- an extension, the n <= 2 skew
/// case carries no sharp bound of its own.
double sharp_constant(int n, SymmetryClass symmetry);

DefectReport defect(const MatrixTuple& t);

/// Threshold test |defect| <= tol * max(1, bound). Structural confirmation
/// of the equality configuration lives in equality_normal_form.
bool is_equality(const MatrixTuple& t, double tol);

}  // namespace ddvv
