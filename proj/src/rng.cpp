#include "bott/rng.hpp"

#include <cmath>

#include <Eigen/QR>

#include "bott/algebra.hpp"

namespace bott {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

CounterRng::CounterRng(std::uint64_t seed, std::string_view tag, std::uint64_t index)
    : key_(mix64(mix64(seed + kGamma) ^ fnv1a(tag)) ^ mix64(index * kGamma + 1)) {}

CounterRng::result_type CounterRng::operator()() { return mix64(key_ + (++counter_) * kGamma); }

RMat gaussian_real(CounterRng& rng, int rows, int cols) {
  RMat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

CMat gaussian_complex(CounterRng& rng, int rows, int cols) {
  CMat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = rng.normal(), im = rng.normal();
      m(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  return m;
}

RMat random_skew_real(CounterRng& rng, int n) {
  RMat g = gaussian_real(rng, n, n);
  RMat x = g - g.transpose();
  return x / x.norm();
}

CMat random_skew_hermitian(CounterRng& rng, int n) {
  CMat g = gaussian_complex(rng, n, n);
  CMat x = g - g.adjoint();
  return x / x.norm();
}

RMat haar_special_orthogonal(CounterRng& rng, int n) {
  Eigen::HouseholderQR<RMat> qr(gaussian_real(rng, n, n));
  RMat Q = qr.householderQ();
  const RMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  if (Q.determinant() < 0) Q.col(0) = -Q.col(0);
  return Q;
}

CMat haar_unitary(CounterRng& rng, int n) {
  Eigen::HouseholderQR<CMat> qr(gaussian_complex(rng, n, n));
  CMat Q = qr.householderQ();
  const CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(R(j, j));
    if (a > 0) Q.col(j) *= R(j, j) / a;
  }
  return Q;
}

CMat haar_symplectic(CounterRng& rng, int r) {
  // Gram-Schmidt over H: each new column c is orthogonalised against the previous
  // columns and their partners -K conj(c), which span the quaternionic line.
  const CMat K = K_const(r);
  CMat M(2 * r, 2 * r);
  for (int j = 0; j < r; ++j) {
    CVec c = gaussian_complex(rng, 2 * r, 1).col(0);
    for (int pass = 0; pass < 2; ++pass)
      for (int l = 0; l < j; ++l) {
        c -= M.col(l) * M.col(l).dot(c);
        c -= M.col(r + l) * M.col(r + l).dot(c);
      }
    c /= c.norm();
    M.col(j) = c;
    M.col(r + j) = -K * c.conjugate();
  }
  return M;
}

}  // namespace bott
