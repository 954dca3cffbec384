#include "bott/matrix.hpp"

#include <stdexcept>


#include "bott/algebra.hpp"

namespace bott {

std::string to_string(Field f) {
  switch (f) {
    case Field::Real: return "real";
    case Field::Complex: return "complex";
    case Field::Quaternion: return "quaternion";
  }
  return "?";
}

int Matrix::rows() const {
  return std::visit([](const auto& m) { return static_cast<int>(m.rows()); }, v_);
}

int Matrix::cols() const {
  return std::visit([](const auto& m) { return static_cast<int>(m.cols()); }, v_);
}

CMat Matrix::as_complex() const {
  switch (field()) {
    case Field::Real: return real().cast<cplx>();
    case Field::Complex: return complex();
    case Field::Quaternion: return quat_to_complex(quaternion());
  }
  return {};
}


CMat identity(int n) { return CMat::Identity(n, n); }

CMat A_const(int q) {
  CMat a = CMat::Zero(2 * q, 2 * q);
  for (int i = 0; i < q; ++i) {
    a(i, i) = cplx(0, 1);
    a(q + i, q + i) = cplx(0, -1);
  }
  return a;
}

CMat K_const(int r) {
  CMat k = CMat::Zero(2 * r, 2 * r);
  k.topRightCorner(r, r).setIdentity();
  k.bottomLeftCorner(r, r) = -CMat::Identity(r, r);
  return k;
}

CMat B_const(int m) { return K_const(m); }

nlohmann::json to_json(const CMat& m) { return to_json(Matrix(m)); }

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) {
      switch (m.field()) {
        case Field::Real: row.push_back(m.real()(i, j)); break;
        case Field::Complex: row.push_back({m.complex()(i, j).real(), m.complex()(i, j).imag()}); break;
        case Field::Quaternion: {
          const Quaternion& q = m.quaternion()(i, j);
          row.push_back({q.a, q.b, q.c, q.d});
          break;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"field", to_string(m.field())}, {"rows", std::move(rows)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const std::string f = j.at("field");
  const auto& rows = j.at("rows");
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  if (f == "real") {
    RMat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < c; ++k) m(i, k) = rows[i][k];
    return m;
  }
  if (f == "complex") {
    CMat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < c; ++k) m(i, k) = cplx(rows[i][k][0], rows[i][k][1]);
    return m;
  }
  if (f == "quaternion") {
    QMat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < c; ++k) {
        const auto& q = rows[i][k];
        m(i, k) = {q[0], q[1], q[2], q[3]};
      }
    return m;
  }
  throw std::invalid_argument("unknown field tag: " + f);
}

}  // namespace bott
