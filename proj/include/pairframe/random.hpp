#pragma once

#include <cstdint>
#include <random>

#include "pairframe/types.hpp"

namespace pairframe {

/// Portable random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the conversions to doubles are done
/// here rather than with <random> distributions, whose algorithms vary
/// between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal (Box-Muller, cached second variate).
  double normal();

  /// Real and imaginary parts i.i.d. N(0, 1/2), so E|z|^2 = 1.
  Complex complex_normal();

  CVector complex_normal_vector(Eigen::Index n);
  CMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols);

  /// Uniformly distributed point on the complex unit sphere in C^n.
  CVector unit_vector(Eigen::Index n);

  /// Index in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace pairframe
