#pragma once

#include <cstdint>
#include <functional>

#include "pairframe/types.hpp"

namespace pairframe::oracle {

struct OracleConfig {
  long sphere_samples = 200000;
  long theta_samples = 4096;
  double tolerance = 1e-3;
  std::uint64_t seed = 0;
  /// best samples (per extreme) handed to compass-search polishing; 0 disables
  int polish_points = 8;
};

/// Throws InvalidArgument unless counts >= 1 and tolerance > 0.
void validate(const OracleConfig& cfg);

struct Extremes {
  double min = 0.0;
  double max = 0.0;
};

using SphereObjective = std::function<double(const CVector&)>;

inline constexpr Eigen::Index kMaxOracleDim = 3;

/// Observed extremes of objective over the complex unit sphere of C^dim.
/// Samples are a randomly shifted Halton sequence in 2*dim real coordinates
/// pushed through Box-Muller and normalized; the best few are then polished
/// by compass search. Every reported value is attained, so min is an upper
/// estimate of the true infimum and max a lower estimate of the supremum.
/// Throws DimensionTooLarge for dim > 3.
Extremes sphere_extremes(const SphereObjective& objective, Eigen::Index dim, const OracleConfig& cfg = {});

/// Extremes of objective over the real circle f = (cos t, sin t) in C^2 on a
/// uniform grid of cfg.theta_samples angles.
Extremes circle_extremes(const SphereObjective& objective, const OracleConfig& cfg = {});

struct BruteRange {
  double distance = 0.0;  // min |<Mf, f>|
  double radius = 0.0;    // max |<Mf, f>|
};

/// Sphere sampling of |<Mf, f>|. Throws NonSquare or DimensionTooLarge.
BruteRange brute_numerical_range(const CMatrix& m, const OracleConfig& cfg = {});

}  // namespace pairframe::oracle
