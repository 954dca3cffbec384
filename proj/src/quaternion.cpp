#include "bott/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bott {

double Quaternion::norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
  return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
          p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
          p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
          p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

cplx quat_part_a(const Quaternion& q) { return {q.a, q.b}; }
cplx quat_part_b(const Quaternion& q) { return {q.c, -q.d}; }
Quaternion quat_from_parts(cplx A, cplx B) { return {A.real(), A.imag(), B.real(), -B.imag()}; }

QMat QMat::identity(int r) { return scalar(r, {1, 0, 0, 0}); }

QMat QMat::scalar(int r, const Quaternion& q) {
  QMat m(r, r);
  for (int i = 0; i < r; ++i) m(i, i) = q;
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("QMat: dimension mismatch in product");
  QMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Quaternion& x = (*this)(i, k);
      for (int j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + x * o(k, j);
    }
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat: dimension mismatch");
  QMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat: dimension mismatch");
  QMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

QMat QMat::adjoint() const {
  QMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

double QMat::max_abs_diff(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat: dimension mismatch");
  double m = 0;
  for (size_t i = 0; i < e_.size(); ++i) m = std::max(m, (e_[i] - o.e_[i]).norm());
  return m;
}

}  // namespace bott
