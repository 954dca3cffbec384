#pragma once

#include <string>
#include <variant>

#include <Eigen/Dense>
#include "json.hpp"

#include "bott/quaternion.hpp"

namespace bott {

using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

enum class Field { Real, Complex, Quaternion };

std::string to_string(Field f);

// Field-tagged carrier used at module boundaries and in reports.
class Matrix {
 public:
  Matrix(RMat m) : v_(std::move(m)) {}
  Matrix(CMat m) : v_(std::move(m)) {}
  Matrix(QMat m) : v_(std::move(m)) {}

  Field field() const { return static_cast<Field>(v_.index()); }
  int rows() const;
  int cols() const;

  const RMat& real() const { return std::get<RMat>(v_); }
  const CMat& complex() const { return std::get<CMat>(v_); }
  const QMat& quaternion() const { return std::get<QMat>(v_); }

  // complex picture of any field (quaternions via the block embedding)
  CMat as_complex() const;

 private:
  std::variant<RMat, CMat, QMat> v_;
};

// entrywise max norm
template <class D>
double max_abs(const Eigen::MatrixBase<D>& m) {
  return m.size() ? static_cast<double>(m.cwiseAbs().maxCoeff()) : 0.0;
}

CMat identity(int n);

// A_q = diag(iI_q, -iI_q)
CMat A_const(int q);
// K_r = [[0, I_r], [-I_r, 0]]; B_m has the same shape
CMat K_const(int r);
CMat B_const(int m);

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const CMat& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace bott
