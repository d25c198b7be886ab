#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "ddvv/equality_normal_form.hpp"
#include "ddvv/matrix_core.hpp"
#include "ddvv/rng.hpp"

using namespace ddvv;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix M(2, 2);
  M << a, b, c, d;
  return M;
}

}  // namespace

TEST_CASE("frob_inner basics") {
  CHECK(frob_inner(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) ==
        doctest::Approx(2.0));
  Matrix e12 = Matrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  Matrix e21 = Matrix::Zero(2, 2);
  e21(1, 0) = 1.0;
  CHECK(frob_inner(e12, e21) == doctest::Approx(0.0));
  const MatrixTuple pair = make_symmetric_pair(2, 2, 1.0);
  CHECK(frob_inner(pair.mat(0), pair.mat(0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(frob_inner(Matrix::Zero(2, 2), Matrix::Zero(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("frob_inner is bilinear and symmetric") {
  Rng rng(11);
  for (int k = 0; k < 10; ++k) {
    Matrix A(3, 3), B(3, 3), C(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        A(i, j) = rng.gaussian();
        B(i, j) = rng.gaussian();
        C(i, j) = rng.gaussian();
      }
    const double a = rng.gaussian();
    CHECK(frob_inner(A, B) == doctest::Approx(frob_inner(B, A)).epsilon(1e-12));
    CHECK(frob_inner(A + a * B, C) ==
          doctest::Approx(frob_inner(A, C) + a * frob_inner(B, C))
              .epsilon(1e-12));
  }
}

TEST_CASE("commutator basics") {
  const MatrixTuple pair = make_symmetric_pair(2, 2, 1.0);
  CHECK(commutator(pair.mat(0), pair.mat(0)).norm() == doctest::Approx(0.0));
  const Matrix C = commutator(pair.mat(0), pair.mat(1));
  CHECK(C(0, 1) == doctest::Approx(2.0));
  CHECK(C(1, 0) == doctest::Approx(-2.0));
  CHECK(C(0, 0) == doctest::Approx(0.0));
  const Matrix D1 = mat2(1, 0, 0, 2);
  const Matrix D2 = mat2(3, 0, 0, 4);
  CHECK(commutator(D1, D2).norm() == doctest::Approx(0.0));
  // Antisymmetry in the arguments.
  const Matrix C2 = commutator(pair.mat(1), pair.mat(0));
  CHECK((C + C2).norm() == doctest::Approx(0.0));
}

TEST_CASE("commutator symmetry classes close as expected") {
  const MatrixTuple sym = random_tuple(4, 2, SymmetryClass::Symmetric, 5);
  Matrix C = commutator(sym.mat(0), sym.mat(1));
  CHECK((C + C.transpose()).cwiseAbs().maxCoeff() <= 1e-12);  // skew result
  const MatrixTuple skew = random_tuple(4, 2, SymmetryClass::SkewSymmetric, 6);
  C = commutator(skew.mat(0), skew.mat(1));
  CHECK((C + C.transpose()).cwiseAbs().maxCoeff() <= 1e-12);  // stays skew
}

TEST_CASE("comm_norm_sum and norm_sum on the canonical tuples") {
  const MatrixTuple single = random_tuple(3, 1, SymmetryClass::Symmetric, 2);
  CHECK(comm_norm_sum(single) == 0.0);

  const MatrixTuple pair = make_symmetric_pair(2, 2, 1.0);
  CHECK(comm_norm_sum(pair) == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(norm_sum(pair) == doctest::Approx(4.0).epsilon(1e-14));

  const MatrixTuple triple = make_skew_triple3(3, 1.0);
  CHECK(comm_norm_sum(triple) == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(norm_sum(triple) == doctest::Approx(6.0).epsilon(1e-14));

  const MatrixTuple zero = make_symmetric_pair(3, 2, 0.0);
  CHECK(norm_sum(zero) == 0.0);
}

TEST_CASE("act: identity, conjugation invariance and recombination") {
  const MatrixTuple t = random_tuple(3, 3, SymmetryClass::Symmetric, 7);
  const GroupElement id(Matrix::Identity(3, 3), Matrix::Identity(3, 3));
  const MatrixTuple same = act(id, t);
  for (int r = 0; r < 3; ++r)
    CHECK((same.mat(r) - t.mat(r)).norm() == doctest::Approx(0.0));

  const GroupElement conj(random_orthogonal(3, 42), Matrix::Identity(3, 3));
  CHECK(norm_sum(act(conj, t)) ==
        doctest::Approx(norm_sum(t)).epsilon(1e-10));

  // Rotation by pi/2 across two slots maps (B, 0) to (0, -B).
  Matrix R(2, 2);
  R << 0, -1, 1, 0;
  std::vector<Matrix> mats = {t.mat(0), Matrix::Zero(3, 3)};
  const MatrixTuple bt(mats, SymmetryClass::Symmetric);
  const MatrixTuple rt = act(GroupElement(Matrix::Identity(3, 3), R), bt);
  CHECK(rt.mat(0).norm() == doctest::Approx(0.0));
  CHECK((rt.mat(1) + t.mat(0)).norm() == doctest::Approx(0.0));
  CHECK(comm_norm_sum(rt) == doctest::Approx(comm_norm_sum(bt)));
}

TEST_CASE("act rejects non-orthogonal factors") {
  CHECK_THROWS_AS(GroupElement(2.0 * Matrix::Identity(3, 3),
                               Matrix::Identity(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("group action invariance of the two sums") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const SymmetryClass sym = seed % 2 == 0 ? SymmetryClass::Symmetric
                                            : SymmetryClass::SkewSymmetric;
    const MatrixTuple t = random_tuple(4, 3, sym, 100 + seed);
    const GroupElement g = random_group_element(4, 3, 200 + seed);
    const MatrixTuple u = act(g, t);
    CHECK(std::abs(comm_norm_sum(u) - comm_norm_sum(t)) <=
          1e-8 * (1.0 + comm_norm_sum(t)));
    CHECK(std::abs(norm_sum(u) - norm_sum(t)) <= 1e-8 * (1.0 + norm_sum(t)));
  }
}

TEST_CASE("center") {
  const MatrixTuple traceless =
      random_tuple(3, 2, SymmetryClass::Symmetric, 3, true);
  const MatrixTuple same = center(traceless);
  for (int r = 0; r < 2; ++r)
    CHECK((same.mat(r) - traceless.mat(r)).norm() <= 1e-14);

  std::vector<Matrix> mats = {mat2(2, 0, 0, 0)};
  const MatrixTuple t(mats, SymmetryClass::Symmetric);
  const MatrixTuple c = center(t);
  CHECK(c.mat(0)(0, 0) == doctest::Approx(1.0));
  CHECK(c.mat(0)(1, 1) == doctest::Approx(-1.0));

  std::vector<Matrix> eye = {Matrix::Identity(4, 4)};
  CHECK(center(MatrixTuple(eye, SymmetryClass::Symmetric)).mat(0).norm() ==
        doctest::Approx(0.0));

  // Idempotence and commutator invariance.
  const MatrixTuple t2 = random_tuple(4, 3, SymmetryClass::Symmetric, 17);
  const MatrixTuple c1 = center(t2);
  const MatrixTuple c2 = center(c1);
  for (int r = 0; r < 3; ++r) {
    CHECK((c1.mat(r) - c2.mat(r)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(std::abs(c1.mat(r).trace()) <= 1e-12);
  }
  CHECK(comm_norm_sum(c1) ==
        doctest::Approx(comm_norm_sum(t2)).epsilon(1e-10));
  // Norm drop per slot: ||B_r||^2 = ||A_r||^2 - trace^2 / n.
  for (int r = 0; r < 3; ++r) {
    const double tr = t2.mat(r).trace();
    CHECK(c1.mat(r).squaredNorm() ==
          doctest::Approx(t2.mat(r).squaredNorm() - tr * tr / 4.0));
  }

  CHECK_THROWS_AS(center(random_tuple(3, 2, SymmetryClass::SkewSymmetric, 1)),
                  std::invalid_argument);
}

TEST_CASE("random_tuple determinism and structure") {
  const MatrixTuple a = random_tuple(4, 3, SymmetryClass::Symmetric, 99);
  const MatrixTuple b = random_tuple(4, 3, SymmetryClass::Symmetric, 99);
  for (int r = 0; r < 3; ++r) CHECK(a.mat(r) == b.mat(r));

  const MatrixTuple skew = random_tuple(5, 2, SymmetryClass::SkewSymmetric, 4);
  for (int r = 0; r < 2; ++r)
    CHECK(skew.mat(r).diagonal().cwiseAbs().maxCoeff() == 0.0);

  const MatrixTuple tl = random_tuple(5, 2, SymmetryClass::Symmetric, 4, true);
  for (int r = 0; r < 2; ++r) CHECK(std::abs(tl.mat(r).trace()) <= 1e-12);
}

TEST_CASE("random_orthogonal contracts") {
  const Matrix one = random_orthogonal(1, 3, true);
  CHECK(one(0, 0) == doctest::Approx(1.0));
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int k = 2 + static_cast<int>(seed);
    const Matrix Q = random_orthogonal(k, seed);
    Matrix G = Q.transpose() * Q;
    G.diagonal().array() -= 1.0;
    CHECK(G.cwiseAbs().maxCoeff() <= 1e-12);
    const Matrix S = random_orthogonal(k, seed, true);
    CHECK(S.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
}
