#include <cmath>
#include <numbers>

#include "doctest.h"

#include "bott/algebra.hpp"
#include "bott/rng.hpp"

using namespace bott;
using std::numbers::pi;

namespace {
const cplx I1(0, 1);

Quaternion random_quat(CounterRng& rng) { return {rng.normal(), rng.normal(), rng.normal(), rng.normal()}; }

QMat random_qmat(CounterRng& rng, int r, int c) {
  QMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = random_quat(rng);
  return m;
}

// 4x4 real matrix of left multiplication by q in the basis (1, i, j, k)
RMat left_mult_table(const Quaternion& q) {
  RMat m(4, 4);
  const Quaternion basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int c = 0; c < 4; ++c) {
    const Quaternion p = q * basis[c];
    m(0, c) = p.a, m(1, c) = p.b, m(2, c) = p.c, m(3, c) = p.d;
  }
  return m;
}

// brute-force Pfaffian by expansion along the first row
double pfaffian_expand(const RMat& A) {
  const auto n = A.rows();
  if (n == 0) return 1.0;
  double s = 0;
  for (Eigen::Index j = 1; j < n; ++j) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index t = 1; t < n; ++t)
      if (t != j) keep.push_back(t);
    RMat minor(n - 2, n - 2);
    for (size_t a = 0; a < keep.size(); ++a)
      for (size_t b = 0; b < keep.size(); ++b) minor(a, b) = A(keep[a], keep[b]);
    s += ((j % 2) ? 1.0 : -1.0) * A(0, j) * pfaffian_expand(minor);
  }
  return s;
}
}  // namespace

TEST_CASE("quaternion units") {
  const auto i = Quaternion::unit_i(), j = Quaternion::unit_j(), k = Quaternion::unit_k();
  CHECK(quat_mul(i, j) == k);
  CHECK(quat_mul(j, i) == -k);
  CHECK(quat_mul(Quaternion{1, 1, 0, 0}, Quaternion{1, -1, 0, 0}) == Quaternion{2, 0, 0, 0});
  CHECK(i * i == Quaternion{-1, 0, 0, 0});
  CHECK(quat_mul(quat_mul(i, j), k) == Quaternion{-1, 0, 0, 0});
}

TEST_CASE("quaternion norm is multiplicative and product associative") {
  CounterRng rng(7, "quat", 0);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_quat(rng), q = random_quat(rng), r = random_quat(rng);
    CHECK(std::abs((p * q).norm() - p.norm() * q.norm()) < 1e-12 * (1 + p.norm() * q.norm()));
    CHECK(((p * q) * r - p * (q * r)).norm() < 1e-12 * (1 + p.norm() * q.norm() * r.norm()));
  }
}

TEST_CASE("quaternion left multiplication agrees with a hand-written table") {
  const RMat Li = left_mult_table(Quaternion::unit_i());
  RMat expect(4, 4);
  expect << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  CHECK((Li - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quat_to_complex examples") {
  QMat j(1, 1);
  j(0, 0) = Quaternion::unit_j();
  CMat expect(2, 2);
  expect << 0, -1, 1, 0;
  CHECK(max_abs(CMat(quat_to_complex(j) - expect)) == 0.0);

  QMat i(1, 1);
  i(0, 0) = Quaternion::unit_i();
  CMat ei(2, 2);
  ei << I1, 0, 0, -I1;
  CHECK(max_abs(CMat(quat_to_complex(i) - ei)) == 0.0);
}

TEST_CASE("quat_to_complex is an algebra homomorphism") {
  CounterRng rng(11, "hom", 0);
  for (int t = 0; t < 20; ++t) {
    const QMat M = random_qmat(rng, 2, 2), N = random_qmat(rng, 2, 2);
    CHECK(max_abs(CMat(quat_to_complex(M * N) - quat_to_complex(M) * quat_to_complex(N))) < 1e-12);
    CHECK(max_abs(CMat(quat_to_complex(M.adjoint()) - quat_to_complex(M).adjoint())) < 1e-14);
    CHECK(complex_to_quat(quat_to_complex(M)).max_abs_diff(M) < 1e-14);
  }
}

TEST_CASE("quat_to_complex commutes with the quaternionic structure") {
  CounterRng rng(12, "jstruct", 0);
  const QMat M = random_qmat(rng, 3, 3);
  const CMat C = quat_to_complex(M);
  CHECK(max_abs(CMat(symplectic_part(C) - C)) < 1e-14);
}

TEST_CASE("adjoint identities") {
  CounterRng rng(13, "adj", 0);
  const QMat M = random_qmat(rng, 2, 3), N = random_qmat(rng, 3, 2);
  CHECK(M.adjoint().adjoint().max_abs_diff(M) == 0.0);
  CHECK((M * N).adjoint().max_abs_diff(N.adjoint() * M.adjoint()) < 1e-12);
}

TEST_CASE("is_in_group") {
  CHECK(is_in_group(Matrix(CMat(CMat::Identity(4, 4))), Group::U));
  CMat a(2, 2);
  a << I1, 0, 0, -I1;
  CHECK(is_in_group(Matrix(a), Group::Sp));
  RMat rot(2, 2);
  rot << 0, 1, -1, 0;
  CHECK(is_in_group(Matrix(rot), Group::SO));
  RMat refl = RMat::Identity(3, 3);
  refl(0, 0) = -1;
  CHECK(is_in_group(Matrix(refl), Group::O));
  CHECK_FALSE(is_in_group(Matrix(refl), Group::SO));
  CHECK_FALSE(is_in_group(Matrix(RMat(-RMat::Identity(3, 3))), Group::SO));
  CMat notsp(2, 2);
  notsp << I1, 0, 0, I1;
  CHECK_FALSE(is_in_group(Matrix(notsp), Group::Sp));
  CHECK_THROWS_AS(is_in_group(Matrix(rot), Group::Sp), std::invalid_argument);
  CHECK_THROWS_AS(is_in_group(Matrix(CMat(CMat::Identity(2, 3))), Group::U), std::invalid_argument);
}

TEST_CASE("complexify and realify") {
  RMat rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK(is_in_group(Matrix(complexify_real(rot)), Group::U));
  CMat i1(1, 1);
  i1(0, 0) = I1;
  CHECK((realify_complex(i1) - rot).cwiseAbs().maxCoeff() == 0.0);
  CHECK((realify_complex(CMat::Identity(3, 3)) - RMat::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);

  // eigenvalues of a complexified rotation are e^{+-i theta}: roots of x^2 - 2cos(theta) x + 1
  const double th = 0.7;
  RMat r(2, 2);
  r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const auto ev = Eigen::ComplexEigenSolver<CMat>(complexify_real(r)).eigenvalues();
  for (int k = 0; k < 2; ++k) {
    const cplx x = ev(k);
    CHECK(std::abs(x * x - 2 * std::cos(th) * x + 1.0) < 1e-12);
  }

  CounterRng rng(3, "realify", 0);
  for (int t = 0; t < 50; ++t) {
    const CMat U = haar_unitary(rng, 5);
    CHECK(std::abs(realify_complex(U).determinant() - 1.0) < 1e-10);
    CHECK(is_in_group(Matrix(realify_complex(U)), Group::SO));
  }
  const RMat M = gaussian_real(rng, 3, 3);
  RMat doubled = RMat::Zero(6, 6);
  doubled.topLeftCorner(3, 3) = M;
  doubled.bottomRightCorner(3, 3) = M;
  CHECK((realify_complex(complexify_real(M)) - doubled).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("left_quat_rep") {
  CMat a(1, 1);
  a(0, 0) = I1;
  const QMat q = left_quat_rep(a);
  // A^h(v + jw) = Av + j(conj(A) w), evaluated on the basis {1, j}
  const Quaternion one{1, 0, 0, 0}, j = Quaternion::unit_j();
  CHECK(q(0, 0) * one == Quaternion::unit_i() * one);
  CHECK(q(0, 0) * j == Quaternion::unit_i() * j);
  CHECK(left_quat_rep(CMat::Identity(3, 3)).max_abs_diff(QMat::identity(3)) == 0.0);
  CounterRng rng(5, "lqr", 0);
  for (int t = 0; t < 20; ++t) {
    const CMat U = haar_unitary(rng, 4);
    const CMat C = quat_to_complex(left_quat_rep(U));
    CHECK(is_in_group(Matrix(C), Group::U));
    CHECK(is_in_group(Matrix(C), Group::Sp));
  }
  CHECK_THROWS_AS(left_quat_rep(CMat(2.0 * CMat::Identity(2, 2))), std::invalid_argument);
}

TEST_CASE("exp_skew") {
  CMat x(2, 2);
  x << I1 * pi / 2.0, 0, 0, -I1 * pi / 2.0;
  CMat e(2, 2);
  e << I1, 0, 0, -I1;
  CHECK(max_abs(CMat(exp_skew(x) - e)) < 1e-15);
  RMat r(2, 2);
  r << 0, -pi, pi, 0;
  CHECK((exp_skew(r) + RMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CounterRng rng(9, "exp", 0);
  for (int t = 0; t < 20; ++t) {
    const CMat X = 3.0 * random_skew_hermitian(rng, 8);
    CHECK(max_abs(CMat(exp_skew(X) * exp_skew(CMat(-X)) - CMat::Identity(8, 8))) < 1e-11);
  }
  CHECK_THROWS_AS(exp_skew(CMat(CMat::Identity(2, 2))), std::invalid_argument);
}

TEST_CASE("exp_skew agrees with a Taylor series oracle") {
  CounterRng rng(10, "taylor", 0);
  const CMat X = 0.8 * random_skew_hermitian(rng, 6);
  CMat term = CMat::Identity(6, 6), sum = CMat::Identity(6, 6);
  for (int k = 1; k < 40; ++k) {
    term = term * X / double(k);
    sum += term;
  }
  CHECK(max_abs(CMat(exp_skew(X) - sum)) < 1e-13);
}

TEST_CASE("log_unitary_principal") {
  CHECK(max_abs(log_unitary_principal(CMat::Identity(3, 3))) < 1e-15);
  CMat d(2, 2);
  d << I1, 0, 0, -I1;
  CMat l(2, 2);
  l << I1 * pi / 2.0, 0, 0, -I1 * pi / 2.0;
  CHECK(max_abs(CMat(log_unitary_principal(d) - l)) < 1e-14);
  // branch: eigenvalue -1 maps to +i pi
  const CMat L = log_unitary_principal(CMat(-CMat::Identity(4, 4)));
  CHECK(max_abs(CMat(L - I1 * pi * CMat::Identity(4, 4))) < 1e-12);
  CounterRng rng(21, "log", 0);
  for (int t = 0; t < 100; ++t) {
    const CMat U = haar_unitary(rng, 6);
    const CMat X = log_unitary_principal(U);
    CHECK(skew_residual(X) < 1e-12);
    CHECK(max_abs(CMat(exp_skew(X) - U)) < 1e-10);
  }
}

TEST_CASE("log of a degenerate unitary keeps accuracy") {
  CounterRng rng(22, "logdeg", 0);
  const CMat V = haar_unitary(rng, 8);
  Eigen::VectorXcd d(8);
  d << std::exp(I1 * 0.3), std::exp(I1 * 0.3), std::exp(-I1 * 0.3), std::exp(-I1 * 0.3), -1.0, -1.0, 1.0, I1;
  const CMat U = V * d.asDiagonal() * V.adjoint();
  CHECK(max_abs(CMat(exp_skew(log_unitary_principal(U)) - U)) < 1e-12);
  const auto e = unitary_eig(U);
  CHECK(e.angles.maxCoeff() == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("geodesic_distance") {
  const CMat I16 = CMat::Identity(16, 16);
  CHECK(geodesic_distance(I16, CMat(-I16), MetricSpec::standard()) == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(geodesic_distance(I16, I16, MetricSpec::standard()) == 0.0);
  CMat r = CMat::Identity(5, 5);
  r(0, 0) = -1;
  CHECK(geodesic_distance(CMat::Identity(5, 5), r, MetricSpec::standard()) == doctest::Approx(pi).epsilon(1e-12));
  // Sp_16 in the complex picture with the halved trace form
  const CMat I32 = CMat::Identity(32, 32);
  CHECK(geodesic_distance(I32, CMat(-I32), MetricSpec::symplectic()) == doctest::Approx(4 * pi).epsilon(1e-12));
  CounterRng rng(31, "bi", 0);
  for (int t = 0; t < 20; ++t) {
    const CMat A = haar_unitary(rng, 6), B = haar_unitary(rng, 6), g = haar_unitary(rng, 6);
    const double d0 = geodesic_distance(A, B, MetricSpec::standard());
    CHECK(std::abs(geodesic_distance(g * A, g * B, MetricSpec::standard()) - d0) < 1e-9);
    CHECK(std::abs(geodesic_distance(A * g, B * g, MetricSpec::standard()) - d0) < 1e-9);
  }
}

TEST_CASE("pfaffian_sign") {
  RMat a(2, 2);
  a << 0, 1, -1, 0;
  CHECK(pfaffian_sign(a) == 1);
  CHECK(pfaffian_sign(RMat(-a)) == -1);
  CounterRng rng(41, "pf", 0);
  for (int t = 0; t < 30; ++t) {
    const RMat G = gaussian_real(rng, 6, 6);
    const RMat A = G - G.transpose();
    const double pf = pfaffian_expand(A);
    CHECK(pfaffian_sign(A) == (pf > 0 ? 1 : -1));
    CHECK(pf * pf == doctest::Approx(A.determinant()).epsilon(1e-9));
    const RMat O = haar_special_orthogonal(rng, 6);
    CHECK(pfaffian_sign(A) * pfaffian_sign(RMat(O * A * O.transpose())) == 1);
    RMat F = O;
    F.col(0) = -F.col(0);
    CHECK(pfaffian_sign(A) * pfaffian_sign(RMat(F * A * F.transpose())) == -1);
  }
  CHECK_THROWS_AS(pfaffian_sign(RMat::Zero(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(pfaffian_sign(RMat::Zero(4, 4)), std::invalid_argument);
  CHECK_THROWS_AS(pfaffian_sign(RMat::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("structure_to_projection") {
  CMat j(2, 2);
  j << I1, 0, 0, -I1;
  CMat p(2, 2);
  p << 1, 0, 0, 0;
  CHECK(max_abs(CMat(structure_to_projection(j) - p)) < 1e-15);
  const int q = 4;
  const CMat P = structure_to_projection(A_const(q));
  CHECK(std::abs(P.trace() - double(q)) < 1e-14);
  CounterRng rng(51, "proj", 0);
  CMat Dq = CMat::Zero(2 * q, 2 * q);
  Dq.topLeftCorner(q, q).setIdentity();
  for (int t = 0; t < 20; ++t) {
    const CMat U = haar_unitary(rng, 2 * q);
    const CMat Pj = structure_to_projection(CMat(U * A_const(q) * U.adjoint()));
    CHECK(max_abs(CMat(Pj - U * Dq * U.adjoint())) < 1e-11);
    CHECK(max_abs(CMat(Pj * Pj - Pj)) < 1e-12);
    CHECK(hermitian_residual(Pj) < 1e-12);
  }
  CHECK_THROWS_AS(structure_to_projection(CMat(CMat::Identity(2, 2))), std::invalid_argument);
}

TEST_CASE("haar samplers land in their groups") {
  CounterRng rng(61, "haar", 0);
  for (int t = 0; t < 10; ++t) {
    CHECK(is_in_group(Matrix(haar_special_orthogonal(rng, 7)), Group::SO));
    CHECK(is_in_group(Matrix(haar_unitary(rng, 7)), Group::U));
    CHECK(is_in_group(Matrix(haar_symplectic(rng, 4)), Group::Sp));
  }
}

TEST_CASE("rng is deterministic per stream") {
  CounterRng a(1, "x", 3), b(1, "x", 3), c(1, "x", 4), d(1, "y", 3);
  const auto va = a(), vb = b(), vc = c(), vd = d();
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
}

TEST_CASE("matrix json round trip") {
  CounterRng rng(71, "json", 0);
  const CMat C = gaussian_complex(rng, 2, 3);
  const Matrix back = matrix_from_json(to_json(Matrix(C)));
  CHECK(back.field() == Field::Complex);
  CHECK(max_abs(CMat(back.complex() - C)) == 0.0);
  QMat q(1, 2);
  q(0, 1) = {1, 2, 3, 4};
  CHECK(matrix_from_json(to_json(Matrix(q))).quaternion().max_abs_diff(q) == 0.0);
}
