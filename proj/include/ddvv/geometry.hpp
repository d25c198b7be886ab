#pragma once

#include <vector>

#include "ddvv/matrix_core.hpp"

namespace ddvv {

/// Pointwise second-fundamental-form data of an n-dimensional submanifold of
/// a space form of curvature c, in orthonormal tangent/normal frames: the m
/// symmetric shape operators A_{xi_r}.
class ShapeOperatorSet {
 public:
  ShapeOperatorSet(std::vector<Matrix> ops, double c);

  int n() const { return n_; }
  int m() const { return static_cast<int>(ops_.size()); }
  double c() const { return c_; }
  const Matrix& op(int r) const { return ops_[static_cast<size_t>(r)]; }
  const std::vector<Matrix>& ops() const { return ops_; }

  /// The shape operators as a symmetric MatrixTuple.
  MatrixTuple as_tuple() const;

 private:
  int n_;
  std::vector<Matrix> ops_;
  double c_;
};

struct CurvatureReport {
  double rho = 0.0;             // normalized scalar curvature
  double rho_perp = 0.0;        // normal scalar curvature, >= 0
  double h_norm_sq = 0.0;       // |H|^2
  double wintgen_defect = 0.0;  // |H|^2 + c - rho - rho_perp
  double chen_defect = 0.0;     // |H|^2 + c - rho
};

/// Components <H, xi_r> = trace(A_r)/n of the mean curvature vector.
Vector mean_curvature(const ShapeOperatorSet& s);

/// |H|^2.
double mean_curvature_norm_sq(const ShapeOperatorSet& s);

/// Gauss equation route:
/// rho = 2/(n(n-1)) sum_{i<j} [ c + sum_r (A_r)_ii (A_r)_jj - (A_r)_ij^2 ].
double rho_direct(const ShapeOperatorSet& s);

/// Traceless-translation route: with B_r = A_r - (tr A_r / n) id,
/// rho = |H|^2 + c - (1/(n(n-1))) sum_r ||B_r||^2. Agrees with rho_direct.
double rho_via_translation(const ShapeOperatorSet& s);

/// Ricci equation route:
/// rho_perp = 2/(n(n-1)) sqrt( sum_{i<j} sum_{r<s} ([A_r, A_s]_ij)^2 ).
double rho_perp(const ShapeOperatorSet& s);

/// Commutator-norm route:
/// rho_perp = 1/(n(n-1)) sqrt( sum_{r,s} ||[B_r, B_s]||^2 ). Agrees with
/// rho_perp.
double rho_perp_via_translation(const ShapeOperatorSet& s);

/// Relative-tolerance scale 1 + |H|^2 + |c| + sum_r ||A_r||^2.
double curvature_scale(const ShapeOperatorSet& s);

CurvatureReport curvature_report(const ShapeOperatorSet& s);

/// Surface case (n = 2): the ellipse of curvature {h(X,X) : |X| = 1} is
/// H + cos(2t) u + sin(2t) v with u_r = ((A_r)_11 - (A_r)_22)/2 and
/// v_r = (A_r)_12. True iff the ellipse is a circle: u orthogonal to v and
/// ||u|| = ||v||, both within tol * (||u||^2 + ||v||^2).
bool ellipse_circle_test(const ShapeOperatorSet& s, double tol);

/// Canonical pointwise equality configuration:
/// A_1 = diag(l1 + mu, l1 - mu, l1, ..., l1), A_2 = l2 I + mu (E_12 + E_21),
/// A_3 = l3 I, remaining operators zero.
ShapeOperatorSet equality_shape_ops(int n, int m, double mu, double lambda1,
                                    double lambda2, double lambda3,
                                    double c = 0.0);

}  // namespace ddvv
