#pragma once

#include <optional>
#include <utility>

#include "pairframe/types.hpp"

namespace pairframe {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kSingularTol = 1e-12;
inline constexpr int kThetaSteps = 720;
inline constexpr int kRefineIters = 30;

struct HermitianExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Distance from 0 to the numerical range W(M) = {<Mf,f> : |f| = 1}, and the
/// numerical radius max |z| over W(M).
struct NumericalRange {
  double distance = 0.0;
  double radius = 0.0;
};

struct SpectralReport {
  std::optional<double> lambda_min;  // hermitian input only
  std::optional<double> lambda_max;
  double sigma_min = 0.0;
  double op_norm = 0.0;
  double nr_distance = 0.0;
  double nr_radius = 0.0;
};

/// Hermitian deviation |M - M^H|_F / |M|_F (0 for the zero matrix).
double hermitian_deviation(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// Extremal eigenvalues of (M + M^H)/2. Throws NonSquare, or NotHermitian when
/// the relative deviation exceeds tol.
HermitianExtremes hermitian_extremes(const CMatrix& m, double tol = kHermitianTol);

/// All eigenvalues of (M + M^H)/2 in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m);

/// inf over unit f of |Mf|. Zero whenever rows < cols. Throws EmptyMatrix.
double min_singular(const CMatrix& m);

/// Largest singular value; 0 for an empty matrix.
double op_norm(const CMatrix& m);

/// M^{-1}. Throws NonSquare, or Singular when sigma_min <= tol * |M| (or M = 0).
CMatrix invert(const CMatrix& m, double tol = kSingularTol);

/// Support-function sweep over theta in [0, 2pi): lambda_max(Re(e^{i theta} M))
/// gives the numerical radius, and the positive part of the largest
/// lambda_min(Re(e^{i theta} M)) gives the distance from 0 to the (convex)
/// numerical range. The best grid angle of each objective is polished with
/// golden-section search over its neighbouring grid cells. Both results are
/// inner approximations: they never exceed the exact values.
NumericalRange numerical_range_bounds(const CMatrix& m, int theta_steps = kThetaSteps,
                                      int refine_iters = kRefineIters);

SpectralReport spectral_report(const CMatrix& m, int theta_steps = kThetaSteps,
                               int refine_iters = kRefineIters);

}  // namespace pairframe
