#include "bott/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bott {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

void require_square(const CMat& M, const char* what) {
  if (M.rows() != M.cols()) throw std::invalid_argument(std::string(what) + ": matrix not square");
}

double unitary_residual(const CMat& M) {
  return max_abs(M * M.adjoint() - CMat::Identity(M.rows(), M.rows()));
}

double sp_condition(const CMat& M) {
  if (M.rows() % 2) return std::numeric_limits<double>::infinity();
  const CMat K = K_const(static_cast<int>(M.rows() / 2));
  return max_abs(K * M.conjugate() * K.adjoint() - M);
}

}  // namespace

std::string to_string(Group g) {
  switch (g) {
    case Group::O: return "O";
    case Group::SO: return "SO";
    case Group::U: return "U";
    case Group::SU: return "SU";
    case Group::Sp: return "Sp";
  }
  return "?";
}

double MetricSpec::norm_sq(const CMat& X) const { return -scale * (X * X).trace().real(); }

double group_residual(const CMat& M, Group g) {
  require_square(M, "group_residual");
  double r = unitary_residual(M);
  switch (g) {
    case Group::O: r = std::max(r, max_abs(CMat(M.imag().cast<cplx>()))); break;
    case Group::SO:
      r = std::max(r, max_abs(CMat(M.imag().cast<cplx>())));
      r = std::max(r, std::abs(M.determinant() - 1.0));
      break;
    case Group::U: break;
    case Group::SU: r = std::max(r, std::abs(M.determinant() - 1.0)); break;
    case Group::Sp: r = std::max(r, sp_condition(M)); break;
  }
  return r;
}

bool is_in_group(const Matrix& M, Group g, double tol) {
  if (M.rows() != M.cols()) throw std::invalid_argument("is_in_group: dimension mismatch");
  const Field f = M.field();
  const bool ok = (g == Group::O || g == Group::SO) ? f == Field::Real
                  : (g == Group::Sp)                 ? (f == Field::Quaternion || (f == Field::Complex && M.rows() % 2 == 0))
                                                     : f != Field::Quaternion;
  if (!ok) throw std::invalid_argument("is_in_group: field " + to_string(f) + " incompatible with group " + to_string(g));
  return group_residual(M.as_complex(), g) <= tol;
}

CMat quat_to_complex(const QMat& M) {
  const int r = M.rows(), c = M.cols();
  CMat out(2 * r, 2 * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      const cplx A = quat_part_a(M(i, j)), B = quat_part_b(M(i, j));
      out(i, j) = A;
      out(i, c + j) = -std::conj(B);
      out(r + i, j) = B;
      out(r + i, c + j) = std::conj(A);
    }
  return out;
}

QMat complex_to_quat(const CMat& M, double tol) {
  if (M.rows() % 2 || M.cols() % 2) throw std::invalid_argument("complex_to_quat: odd dimension");
  const int r = static_cast<int>(M.rows() / 2), c = static_cast<int>(M.cols() / 2);
  QMat q(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) q(i, j) = quat_from_parts(M(i, j), M(r + i, j));
  if (max_abs(CMat(quat_to_complex(q) - M)) > tol)
    throw std::invalid_argument("complex_to_quat: matrix lacks quaternionic block structure");
  return q;
}

CMat complexify_real(const RMat& M) { return M.cast<cplx>(); }

RMat realify_complex(const CMat& M) {
  const Eigen::Index r = M.rows(), c = M.cols();
  RMat out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = M.real();
  out.topRightCorner(r, c) = -M.imag();
  out.bottomLeftCorner(r, c) = M.imag();
  out.bottomRightCorner(r, c) = M.real();
  return out;
}

QMat left_quat_rep(const CMat& A, double tol) {
  require_square(A, "left_quat_rep");
  if (unitary_residual(A) > tol) throw std::invalid_argument("left_quat_rep: input not unitary");
  const int r = static_cast<int>(A.rows());
  QMat q(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) q(i, j) = Quaternion::from_complex(A(i, j));
  return q;
}

CMat exp_skew(const CMat& X, double tol) {
  require_square(X, "exp_skew");
  if (skew_residual(X) > tol * std::max(1.0, max_abs(X))) throw std::invalid_argument("exp_skew: input not skew");
  CMat H = -kI * X;
  H = (H + H.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  const CMat& V = es.eigenvectors();
  Eigen::VectorXcd d(V.cols());
  for (Eigen::Index j = 0; j < d.size(); ++j) d(j) = std::exp(kI * es.eigenvalues()(j));
  return V * d.asDiagonal() * V.adjoint();
}

RMat exp_skew(const RMat& X, double tol) {
  const CMat E = exp_skew(complexify_real(X), tol);
  return E.real();
}

CMat exp_skew(const QMat& X, double tol) { return exp_skew(quat_to_complex(X), tol); }

UnitaryEig unitary_eig(const CMat& U, double tol) {
  require_square(U, "unitary_eig");
  if (unitary_residual(U) > tol) throw std::invalid_argument("unitary_eig: input not unitary");
  const Eigen::Index N = U.rows();
  UnitaryEig out;
  if (N == 0) return out;

  // candidate eigenangles from cos(theta); -1 is moved into the widest gap
  CMat H0 = (U + U.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMat> es0(H0, Eigen::EigenvaluesOnly);
  std::vector<double> pts;
  for (Eigen::Index j = 0; j < N; ++j) {
    const double a = std::acos(std::clamp(es0.eigenvalues()(j), -1.0, 1.0));
    pts.push_back(a);
    pts.push_back(a > 0 ? 2 * kPi - a : 0.0);
  }
  std::sort(pts.begin(), pts.end());
  double best_gap = -1, mid = 0;
  for (size_t j = 0; j < pts.size(); ++j) {
    const double lo = pts[j], hi = j + 1 < pts.size() ? pts[j + 1] : pts[0] + 2 * kPi;
    if (hi - lo > best_gap) {
      best_gap = hi - lo;
      mid = 0.5 * (lo + hi);
    }
  }
  const double phi = kPi - mid;
  const CMat V = std::exp(kI * phi) * U;
  const CMat Id = CMat::Identity(N, N);

  // Cayley transform: i(I - V)(I + V)^-1 is Hermitian with the eigenvectors of U
  CMat C = kI * (Id + V).transpose().partialPivLu().solve((Id - V).transpose()).transpose();
  C = (C + C.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<CMat> es(C);
  out.vectors = es.eigenvectors();
  out.angles.resize(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const cplx rq = out.vectors.col(j).dot(U * out.vectors.col(j));
    double th = std::arg(rq);
    if (th <= -kPi + 1e-9) th = kPi;
    out.angles(j) = th;
  }
  return out;
}

CMat log_unitary_principal(const CMat& M, double tol) {
  const UnitaryEig e = unitary_eig(M, tol);
  Eigen::VectorXcd d = (kI * e.angles.cast<cplx>());
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

double geodesic_distance(const CMat& A, const CMat& B, MetricSpec metric, double tol) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("geodesic_distance: group mismatch");
  const UnitaryEig e = unitary_eig(A.adjoint() * B, tol);
  return std::sqrt(metric.scale * e.angles.squaredNorm());
}

int pfaffian_sign(const RMat& J, double tol) {
  const Eigen::Index N = J.rows();
  if (J.cols() != N) throw std::invalid_argument("pfaffian_sign: matrix not square");
  if (N % 2) throw std::invalid_argument("pfaffian_sign: odd dimension");
  const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
  if ((J + J.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw std::invalid_argument("pfaffian_sign: input not skew-symmetric");
  RMat A = 0.5 * (J - J.transpose());
  int sign = 1;
  // Householder reduction to skew-tridiagonal form; each reflection has determinant -1
  for (Eigen::Index k = 0; k + 2 < N; ++k) {
    const Eigen::Index m = N - k - 1;
    Eigen::VectorXd v = A.col(k).tail(m);
    const double tail = v.tail(m - 1).norm();
    if (tail == 0.0) continue;
    const double x0 = v(0);
    const double alpha = -std::copysign(std::sqrt(x0 * x0 + tail * tail), x0);
    v(0) -= alpha;
    const double beta = 2.0 / v.squaredNorm();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(N);
    w.tail(m) = v;
    // A <- H A H with H = I - beta w w^T
    const Eigen::VectorXd Aw = A * w;
    A -= beta * Aw * w.transpose();
    const Eigen::RowVectorXd wA = w.transpose() * A;
    A -= beta * w * wA;
    sign = -sign;
  }
  for (Eigen::Index i = 0; i < N; i += 2) {
    const double e = A(i, i + 1);
    if (std::abs(e) <= tol * scale) throw std::invalid_argument("pfaffian_sign: singular input");
    if (e < 0) sign = -sign;
  }
  return sign;
}

CMat structure_to_projection(const CMat& J, double tol) {
  require_square(J, "structure_to_projection");
  if (square_minus_identity(J) > tol || unitary_residual(J) > tol)
    throw std::invalid_argument("structure_to_projection: input is not a unitary complex structure");
  return (CMat::Identity(J.rows(), J.cols()) - kI * J) * 0.5;
}

double skew_residual(const CMat& X) { return max_abs(CMat(X + X.adjoint())); }
double hermitian_residual(const CMat& X) { return max_abs(CMat(X - X.adjoint())); }
double anticommutator(const CMat& A, const CMat& B) { return max_abs(CMat(A * B + B * A)); }
double commutator(const CMat& A, const CMat& B) { return max_abs(CMat(A * B - B * A)); }

double square_minus_identity(const CMat& J) {
  return max_abs(CMat(J * J + CMat::Identity(J.rows(), J.cols())));
}

CMat symplectic_part(const CMat& X) {
  const CMat K = K_const(static_cast<int>(X.rows() / 2));
  return (X + K * X.conjugate() * K.adjoint()) * 0.5;
}

}  // namespace bott
