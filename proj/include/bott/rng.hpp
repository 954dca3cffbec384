#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

#include "bott/matrix.hpp"

namespace bott {

// Counter-based generator: output j of stream (seed, tag, index) is mix(key + j*gamma).
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::string_view tag, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  double normal() { return normal_(*this); }
  double uniform() { return uniform_(*this); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

std::uint64_t mix64(std::uint64_t x);

RMat gaussian_real(CounterRng& rng, int rows, int cols);
CMat gaussian_complex(CounterRng& rng, int rows, int cols);

// skew-symmetric / skew-Hermitian with unit Frobenius norm
RMat random_skew_real(CounterRng& rng, int n);
CMat random_skew_hermitian(CounterRng& rng, int n);

RMat haar_special_orthogonal(CounterRng& rng, int n);
CMat haar_unitary(CounterRng& rng, int n);
// complex picture (2r x 2r) of a Haar-distributed element of Sp_r
CMat haar_symplectic(CounterRng& rng, int r);

}  // namespace bott
