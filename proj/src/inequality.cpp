#include "ddvv/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddvv {

double sharp_constant(int n, SymmetryClass symmetry) {
  if (n < 1) throw std::invalid_argument("sharp_constant: n >= 1");
  if (symmetry == SymmetryClass::Symmetric) return 1.0;
  if (n <= 2) return 0.0;
  return n == 3 ? 1.0 / 3.0 : 2.0 / 3.0;
}

DefectReport defect(const MatrixTuple& t) {
  DefectReport rep;
  rep.constant_used = sharp_constant(t.n(), t.symmetry());
  rep.lhs = comm_norm_sum(t);
  const double s = norm_sum(t);
  rep.bound = rep.constant_used * s * s;
  rep.defect = rep.bound - rep.lhs;
  rep.ratio = rep.bound > 0.0 ? rep.lhs / rep.bound : 0.0;
  rep.traces.reserve(static_cast<size_t>(t.m()));
  for (const Matrix& A : t.mats()) rep.traces.push_back(A.trace());
  return rep;
}

bool is_equality(const MatrixTuple& t, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("is_equality: tol > 0");
  const DefectReport rep = defect(t);
  return std::abs(rep.defect) <= tol * std::max(1.0, rep.bound);
}

}  // namespace ddvv
