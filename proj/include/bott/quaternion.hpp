#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace bott {

using cplx = std::complex<double>;

struct Quaternion {
  double a = 0, b = 0, c = 0, d = 0;  // a + bi + cj + dk

  static Quaternion unit_i() { return {0, 1, 0, 0}; }
  static Quaternion unit_j() { return {0, 0, 1, 0}; }
  static Quaternion unit_k() { return {0, 0, 0, 1}; }
  static Quaternion from_complex(cplx z) { return {z.real(), z.imag(), 0, 0}; }

  Quaternion conj() const { return {a, -b, -c, -d}; }
  double norm() const;
  Quaternion operator+(const Quaternion& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Quaternion operator-(const Quaternion& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Quaternion operator-() const { return {-a, -b, -c, -d}; }
  Quaternion operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
  bool operator==(const Quaternion&) const = default;
};

Quaternion quat_mul(const Quaternion& p, const Quaternion& q);
inline Quaternion operator*(const Quaternion& p, const Quaternion& q) { return quat_mul(p, q); }

// q = A + jB with A = a + bi, B = c - di (cj + dk = j(c - di))
cplx quat_part_a(const Quaternion& q);
cplx quat_part_b(const Quaternion& q);
Quaternion quat_from_parts(cplx A, cplx B);

// Dense quaternion matrix, row-major. Entries act from the left, scalars from the right.
class QMat {
 public:
  QMat() = default;
  QMat(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
  static QMat identity(int r);
  static QMat scalar(int r, const Quaternion& q);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Quaternion& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Quaternion& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat adjoint() const;
  double max_abs_diff(const QMat& o) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Quaternion> e_;
};

}  // namespace bott
