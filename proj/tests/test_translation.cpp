#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "ddvv/equality_normal_form.hpp"
#include "ddvv/polynomial_translation.hpp"
#include "ddvv/rng.hpp"

using namespace ddvv;

TEST_CASE("sym_basis letter order and orthonormality") {
  const SymBasis b2 = sym_basis(2);
  CHECK(b2.N() == 3);
  CHECK(b2.index_pair(0) == std::pair<int, int>{0, 0});
  CHECK(b2.index_pair(1) == std::pair<int, int>{0, 1});
  CHECK(b2.index_pair(2) == std::pair<int, int>{1, 1});
  CHECK(b2.element(0)(0, 0) == doctest::Approx(1.0));
  CHECK(b2.element(1)(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(b2.element(1)(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(b2.element(2)(1, 1) == doctest::Approx(1.0));

  const SymBasis b1 = sym_basis(1);
  CHECK(b1.N() == 1);
  CHECK(b1.element(0)(0, 0) == doctest::Approx(1.0));

  for (int n : {2, 3, 5}) {
    const SymBasis b = sym_basis(n);
    CHECK(b.N() == n * (n + 1) / 2);
    for (int a = 0; a < b.N(); ++a) {
      const auto [i, j] = b.index_pair(a);
      CHECK(b.slot(i, j) == a);
      for (int c = 0; c < b.N(); ++c) {
        const double want = a == c ? 1.0 : 0.0;
        CHECK(std::abs(frob_inner(b.element(a), b.element(c)) - want) <=
              1e-14);
      }
    }
  }
}

TEST_CASE("vectorize the equality pair") {
  const MatrixTuple pair = make_symmetric_pair(2, 2, 1.0);
  const Vectorization v = vectorize(pair);
  CHECK(v.B.rows() == 3);
  CHECK(v.B.cols() == 2);
  CHECK(v.B(0, 0) == doctest::Approx(1.0));
  CHECK(v.B(1, 0) == doctest::Approx(0.0));
  CHECK(v.B(2, 0) == doctest::Approx(-1.0));
  CHECK(v.B(0, 1) == doctest::Approx(0.0));
  CHECK(v.B(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(v.B(2, 1) == doctest::Approx(0.0));

  const MatrixTuple zero = make_symmetric_pair(3, 2, 0.0);
  CHECK(vectorize(zero).B.cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(vectorize(random_tuple(3, 2, SymmetryClass::SkewSymmetric, 1)),
                  std::invalid_argument);
}

TEST_CASE("vectorize reconstructs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MatrixTuple t =
        random_tuple(2 + seed % 4, 1 + seed % 3, SymmetryClass::Symmetric, seed);
    const Vectorization v = vectorize(t);
    const MatrixTuple back = devectorize(v);
    double err = 0.0;
    for (int r = 0; r < t.m(); ++r)
      err = std::max(err, (back.mat(r) - t.mat(r)).cwiseAbs().maxCoeff());
    CHECK(err <= 1e-12);
    // Entrywise norm identity ||B||^2 = sum_r ||B_r||^2.
    CHECK(v.B.squaredNorm() == doctest::Approx(norm_sum(t)).epsilon(1e-12));
  }
}

TEST_CASE("spectral_frame of the equality pair") {
  const Vectorization v = vectorize(make_symmetric_pair(2, 2, 1.0));
  const Matrix gram = v.B * v.B.transpose();
  CHECK(gram(0, 0) == doctest::Approx(1.0));
  CHECK(gram(0, 2) == doctest::Approx(-1.0));
  CHECK(gram(1, 1) == doctest::Approx(2.0));

  const SpectralFrame frame = spectral_frame(v);
  CHECK(frame.x(0) == doctest::Approx(2.0));
  CHECK(frame.x(1) == doctest::Approx(2.0));
  CHECK(frame.x(2) == doctest::Approx(0.0));
  CHECK(frame.x.sum() == doctest::Approx(norm_sum(make_symmetric_pair(2, 2, 1.0))));
  CHECK(frame.Q.determinant() == doctest::Approx(1.0));
  const Matrix recon =
      frame.Q * frame.x.asDiagonal() * frame.Q.transpose();
  CHECK((recon - gram).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("spectral_frame of the zero tuple and rank bound") {
  const SpectralFrame frame = spectral_frame(vectorize(make_symmetric_pair(3, 2, 0.0)));
  CHECK(frame.x.cwiseAbs().maxCoeff() == 0.0);
  CHECK(frame.Q.determinant() == doctest::Approx(1.0));

  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 3 + static_cast<int>(seed % 2);
    const int m = 1 + static_cast<int>(seed % 4);
    const MatrixTuple t = random_tuple(n, m, SymmetryClass::Symmetric, seed);
    const Vectorization v = vectorize(t);
    const SpectralFrame frame2 = spectral_frame(v);
    int rank = 0;
    for (int a = 0; a < frame2.x.size(); ++a)
      if (frame2.x(a) > 1e-10) ++rank;
    CHECK(rank <= std::min(v.basis.N(), m));
  }
}

TEST_CASE("frame_matrices") {
  const SymBasis basis = sym_basis(2);
  const std::vector<Matrix> eye = frame_matrices(Matrix::Identity(3, 3), basis);
  for (int a = 0; a < 3; ++a)
    CHECK((eye[static_cast<size_t>(a)] - basis.element(a)).norm() <= 1e-15);

  // Rotation mixing slots 0 and 2 by pi/4 yields (E_11 + E_22)/sqrt2 first.
  Matrix Q = Matrix::Identity(3, 3);
  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  Q(0, 0) = c;
  Q(2, 0) = s;
  Q(0, 2) = -s;
  Q(2, 2) = c;
  const std::vector<Matrix> rot = frame_matrices(Q, basis);
  CHECK(rot[0](0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(rot[0](1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(rot[0](0, 1) == doctest::Approx(0.0));

  const Matrix H = random_orthogonal(6, 9);
  const SymBasis b3 = sym_basis(3);
  const std::vector<Matrix> frame = frame_matrices(H, b3);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const double want = a == b ? 1.0 : 0.0;
      CHECK(std::abs(frob_inner(frame[static_cast<size_t>(a)],
                                frame[static_cast<size_t>(b)]) -
                     want) <= 1e-12);
    }

  CHECK_THROWS_AS(frame_matrices(2.0 * Matrix::Identity(3, 3), basis),
                  std::invalid_argument);
}

TEST_CASE("comm_coeffs at the identity frame, n = 2") {
  const SymBasis basis = sym_basis(2);
  const CommCoeffs coeffs = comm_coeffs(Matrix::Identity(3, 3), basis);
  CHECK(coeffs.C(0, 1) == doctest::Approx(1.0));
  CHECK(coeffs.C(1, 2) == doctest::Approx(1.0));
  CHECK(coeffs.C(0, 2) == doctest::Approx(0.0));
  CHECK(coeffs.C.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK((coeffs.C - coeffs.C.transpose()).norm() == 0.0);
}

TEST_CASE("f_eval closed forms at the identity frame, n = 2") {
  const SymBasis basis = sym_basis(2);
  const CommCoeffs coeffs = comm_coeffs(Matrix::Identity(3, 3), basis);
  // f(x) = 2 x_2 (x_1 + x_3) - 1 on the simplex, slot 2 = off-diagonal.
  Vector x(3);
  x << 0.25, 0.5, 0.25;
  CHECK(f_eval(coeffs, x) == doctest::Approx(-0.5));
  x << 0.25, 0.25, 0.5;
  CHECK(f_eval(coeffs, x) == doctest::Approx(-5.0 / 8.0));
  x << 1.0, 0.0, 0.0;
  CHECK(f_eval(coeffs, x) == doctest::Approx(-1.0));
  // Homogeneity: both terms are quadratic.
  x << 0.2, 0.5, 0.3;
  CHECK(f_eval(coeffs, Vector(2.5 * x)) ==
        doctest::Approx(2.5 * 2.5 * f_eval(coeffs, x)).epsilon(1e-12));
}

TEST_CASE("pipeline identity f(spectrum) = comm - norm^2") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MatrixTuple t =
        random_tuple(2 + seed % 3, 1 + seed % 4, SymmetryClass::Symmetric, seed);
    const Vectorization v = vectorize(t);
    const SpectralFrame frame = spectral_frame(v);
    const double f = f_eval(frame.Q, frame.x, v.basis);
    const double ns = norm_sum(t);
    const double want = comm_norm_sum(t) - ns * ns;
    CHECK(std::abs(f - want) <= 1e-8 * (1.0 + ns * ns));
  }
}

TEST_CASE("translation_check residuals") {
  const auto [r1, r2] = translation_check(make_symmetric_pair(2, 2, 1.0));
  CHECK(r1 <= 1e-10);
  CHECK(r2 <= 1e-10);
  const auto [z1, z2] = translation_check(make_symmetric_pair(3, 2, 0.0));
  CHECK(z1 == 0.0);
  CHECK(z2 == 0.0);
  const MatrixTuple t = random_tuple(4, 3, SymmetryClass::Symmetric, 31);
  const auto [a1, a2] = translation_check(t);
  const double scale = 1.0 + norm_sum(t) * norm_sum(t);
  CHECK(a1 <= 1e-8 * scale);
  CHECK(a2 <= 1e-8 * scale);
}

TEST_CASE("simplex region and projection") {
  CHECK_THROWS_AS(SimplexRegion(3, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(SimplexRegion(3, -0.1), std::invalid_argument);

  const SimplexRegion full(4, 0.0);
  Rng rng(2);
  for (int k = 0; k < 25; ++k) {
    Vector y(4);
    for (int i = 0; i < 4; ++i) y(i) = 2.0 * rng.gaussian();
    const Vector p = project_simplex(y, full);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.minCoeff() >= -1e-15);
    // Projection of a feasible point is itself.
    const Vector q = project_simplex(p, full);
    CHECK((p - q).cwiseAbs().maxCoeff() <= 1e-12);
  }

  const SimplexRegion trunc(4, 0.1);
  for (int k = 0; k < 25; ++k) {
    Vector y(4);
    for (int i = 0; i < 4; ++i) y(i) = 2.0 * rng.gaussian();
    const Vector p = project_simplex(y, trunc);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.minCoeff() >= 0.1 - 1e-14);
  }
}

TEST_CASE("simplex_max closed forms") {
  const SymBasis basis2 = sym_basis(2);
  const CommCoeffs id2 = comm_coeffs(Matrix::Identity(3, 3), basis2);
  const SimplexMaxResult res = simplex_max(id2, SimplexRegion(3, 0.0));
  CHECK(res.value == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(res.x(1) == doctest::Approx(0.5).epsilon(1e-5));

  const SymBasis basis1 = sym_basis(1);
  const CommCoeffs id1 = comm_coeffs(Matrix::Identity(1, 1), basis1);
  const SimplexMaxResult res1 = simplex_max(id1, SimplexRegion(1, 0.0));
  CHECK(res1.value == doctest::Approx(-1.0));
  CHECK(res1.x(0) == doctest::Approx(1.0));

  // eps = 1/N pins the barycenter.
  const SimplexMaxResult bary = simplex_max(id2, SimplexRegion(3, 1.0 / 3.0));
  CHECK(bary.method == "degenerate");
  Vector b3 = Vector::Constant(3, 1.0 / 3.0);
  CHECK(bary.value == doctest::Approx(f_eval(id2, b3)));

  // Region monotonicity.
  const SimplexMaxResult eps0 = simplex_max(id2, SimplexRegion(3, 0.0));
  const SimplexMaxResult eps5 = simplex_max(id2, SimplexRegion(3, 0.05));
  CHECK(eps0.value >= eps5.value - 1e-8);
}

TEST_CASE("theorem-level negativity for Haar frames at n = 2, 3") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const SymBasis basis = sym_basis(n);
    const Matrix Q = random_orthogonal(basis.N(), 500 + seed, true);
    const CommCoeffs coeffs = comm_coeffs(Q, basis);
    const SimplexMaxResult res =
        simplex_max(coeffs, SimplexRegion(basis.N(), 0.0));
    CHECK(res.value <= 1e-7);
  }
}

TEST_CASE("g_epsilon_member verdicts") {
  const SymBasis basis = sym_basis(2);
  const MembershipResult in =
      g_epsilon_member(Matrix::Identity(3, 3), basis, 0.01);
  CHECK(in.member);
  CHECK(in.max_value == doctest::Approx(-0.5).epsilon(1e-6));

  // The spectral frame of the equality pair saturates f = 0 at the
  // normalized spectrum, so it fails strict negativity at eps = 0.
  const Vectorization v = vectorize(make_symmetric_pair(2, 2, 1.0));
  const SpectralFrame frame = spectral_frame(v);
  const MembershipResult out = g_epsilon_member(frame.Q, v.basis, 0.0);
  CHECK_FALSE(out.member);
  CHECK(out.max_value >= -1e-9);
  CHECK(std::abs(f_eval(frame.Q, out.certificate, v.basis) - out.max_value) <=
        1e-12);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix Q = random_orthogonal(3, 900 + seed, true);
    CHECK(g_epsilon_member(Q, basis, 0.05).member);
  }
}
