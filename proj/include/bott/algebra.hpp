#pragma once

#include <vector>

#include "bott/matrix.hpp"
#include "bott/quaternion.hpp"

namespace bott {

enum class Group { O, SO, U, SU, Sp };

std::string to_string(Group g);

// <X, Y> = -scale * tr(XY); quaternionic groups use the complex picture with scale 1/2
struct MetricSpec {
  double scale = 1.0;
  static MetricSpec standard() { return {1.0}; }
  static MetricSpec symplectic() { return {0.5}; }
  double norm_sq(const CMat& X) const;
};

inline constexpr double kPredicateTol = 1e-10;
inline constexpr double kDistanceTol = 1e-9;

// largest violated condition; 0 means exact membership
double group_residual(const CMat& M, Group g);
bool is_in_group(const Matrix& M, Group g, double tol = kPredicateTol);

CMat quat_to_complex(const QMat& M);
QMat complex_to_quat(const CMat& M, double tol = kPredicateTol);
CMat complexify_real(const RMat& M);
RMat realify_complex(const CMat& M);
QMat left_quat_rep(const CMat& A, double tol = kPredicateTol);

// exponential of a skew matrix via a Hermitian eigensolver on X/i
CMat exp_skew(const CMat& X, double tol = kPredicateTol);
RMat exp_skew(const RMat& X, double tol = kPredicateTol);
CMat exp_skew(const QMat& X, double tol = kPredicateTol);

struct UnitaryEig {
  CMat vectors;           // columns are orthonormal eigenvectors
  Eigen::VectorXd angles; // principal angles in (-pi, pi]
};

UnitaryEig unitary_eig(const CMat& U, double tol = kPredicateTol);
CMat log_unitary_principal(const CMat& M, double tol = kPredicateTol);
double geodesic_distance(const CMat& A, const CMat& B, MetricSpec metric, double tol = kPredicateTol);

int pfaffian_sign(const RMat& J, double tol = kPredicateTol);

CMat structure_to_projection(const CMat& J, double tol = kPredicateTol);

// small helpers shared by the other modules
double skew_residual(const CMat& X);
double hermitian_residual(const CMat& X);
double anticommutator(const CMat& A, const CMat& B);
double commutator(const CMat& A, const CMat& B);
double square_minus_identity(const CMat& J);  // ||J^2 + I||
CMat symplectic_part(const CMat& X);          // average of X and K conj(X) K^-1

}  // namespace bott
