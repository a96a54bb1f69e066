#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pairframe/frame.hpp"
#include "pairframe/spectral.hpp"
#include "pairframe/types.hpp"

namespace pairframe {

/// Scalar multiplier sequence m = {m_i}.
struct WeightSequence {
  std::vector<Complex> weights;

  static WeightSequence ones(std::size_t n) { return {std::vector<Complex>(n, Complex(1.0, 0.0))}; }

  std::size_t size() const noexcept { return weights.size(); }
  Complex operator[](std::size_t i) const { return weights[i]; }
  double sup_norm() const;
  WeightSequence conjugated() const;

  bool operator==(const WeightSequence&) const = default;
};

/// The triple (m, Gamma, Lambda) with multiplier operator
/// S = sum_i m_i Gamma_i^H Lambda_i.
class PairSystem {
 public:
  /// Throws DimensionMismatch unless the families share ambient dimension and
  /// member count, member i of each has the same row count, and m has one
  /// weight per member. NonFinite for non-finite weights.
  PairSystem(WeightSequence m, OperatorFamily gamma, OperatorFamily lambda);

  /// (m, Lambda, Lambda).
  static PairSystem symmetric(WeightSequence m, const OperatorFamily& lambda);

  const WeightSequence& weights() const noexcept { return m_; }
  const OperatorFamily& gamma() const noexcept { return gamma_; }
  const OperatorFamily& lambda() const noexcept { return lambda_; }
  Eigen::Index ambient_dim() const noexcept { return lambda_.ambient_dim(); }
  std::size_t size() const noexcept { return lambda_.size(); }

  /// (conj(m), Lambda, Gamma), whose operator is the adjoint of this one's.
  PairSystem adjoint_system() const;

 private:
  WeightSequence m_;
  OperatorFamily gamma_;
  OperatorFamily lambda_;
};

struct PairReport {
  CMatrix S;
  bool is_pair_frame = false;
  std::optional<double> condition_number;
  double sigma_min = 0.0;
  double op_norm = 0.0;
  double framelike_lower = 0.0;  // distance from 0 to the numerical range of S
  double framelike_upper = 0.0;  // numerical radius of S
  double adjoint_residual = 0.0;
};

inline constexpr double kPairTol = 1e-10;
inline constexpr int kRestarts = 32;

/// Summed form sum_i m_i Gamma_i^H Lambda_i.
CMatrix pair_operator(const PairSystem& p);

/// Stacked form Gamma^H diag(m_i I_{d_i}) Lambda; agrees with pair_operator.
CMatrix pair_operator_factorized(const PairSystem& p);

/// |S(m, Gamma, Lambda)^H - S(conj m, Lambda, Gamma)|.
double adjoint_check(const PairSystem& p);

/// Pair-frame verdict is sigma_min(S) > tol * |S|. A positive framelike_lower
/// always implies a pair frame, but a pair frame may have framelike_lower = 0.
PairReport classify_pair(const PairSystem& p, double tol = kPairTol, int theta_steps = kThetaSteps);

/// (m, Gamma V, Lambda W); its operator is V^H S W.
PairSystem compose(const PairSystem& p, const CMatrix& v, const CMatrix& w);

/// Estimate of sup_{|f|=1} sum_i |Lambda_i f|^p by multi-start projected
/// gradient ascent on the unit sphere. Every returned value is attained at
/// some unit vector, so it never exceeds the true supremum. Throws
/// InvalidExponent for p < 1 and InvalidArgument for restarts < 1.
double p_bessel_bound(const OperatorFamily& family, double p, int restarts = kRestarts, std::uint64_t seed = 0);

struct HolderBounds {
  double norm = 0.0;            // |S|
  double gamma_bound = 0.0;     // p-Bessel bound of Gamma
  double lambda_bound = 0.0;    // q-Bessel bound of Lambda
  double holder_bound = 0.0;    // |m|_inf B^{1/p} B'^{1/q}
  double sqrt_form_bound = 0.0; // sqrt(|m|_inf B^{1/p} B'^{1/q})
  bool holder_holds = false;    // norm <= holder_bound + 1e-6
  bool sqrt_form_holds = false; // norm <= sqrt_form_bound + 1e-6
};

/// Throws ExponentMismatch unless p, q >= 1 and |1/p + 1/q - 1| <= 1e-12.
HolderBounds pq_pair_norm_bound(const PairSystem& sys, double p, double q, int restarts = kRestarts,
                                std::uint64_t seed = 0);

}  // namespace pairframe
