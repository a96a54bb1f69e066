#include "pairframe/pair.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pairframe/error.hpp"
#include "pairframe/parallel.hpp"
#include "pairframe/random.hpp"

namespace pairframe {

double WeightSequence::sup_norm() const {
  double s = 0.0;
  for (const Complex& w : weights) s = std::max(s, std::abs(w));
  return s;
}

WeightSequence WeightSequence::conjugated() const {
  WeightSequence out = *this;
  for (Complex& w : out.weights) w = std::conj(w);
  return out;
}

PairSystem::PairSystem(WeightSequence m, OperatorFamily gamma, OperatorFamily lambda)
    : m_(std::move(m)), gamma_(std::move(gamma)), lambda_(std::move(lambda)) {
  if (gamma_.ambient_dim() != lambda_.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "gamma and lambda act on different spaces");
  }
  if (gamma_.size() != lambda_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "gamma has " + std::to_string(gamma_.size()) + " members, lambda has " +
                                                  std::to_string(lambda_.size()));
  }
  if (m_.size() != lambda_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weight sequence has " + std::to_string(m_.size()) +
                                                  " entries for " + std::to_string(lambda_.size()) + " members");
  }
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (gamma_[i].rows() != lambda_[i].rows()) {
      throw Error(ErrorCode::DimensionMismatch, "member " + std::to_string(i) + " has mismatched output dimension");
    }
    if (!std::isfinite(m_[i].real()) || !std::isfinite(m_[i].imag())) {
      throw Error(ErrorCode::NonFinite, "weight " + std::to_string(i) + " is not finite");
    }
  }
}

PairSystem PairSystem::symmetric(WeightSequence m, const OperatorFamily& lambda) {
  return PairSystem(std::move(m), lambda, lambda);
}

PairSystem PairSystem::adjoint_system() const { return PairSystem(m_.conjugated(), lambda_, gamma_); }

CMatrix pair_operator(const PairSystem& p) {
  const Eigen::Index n = p.ambient_dim();
  CMatrix s = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    s.noalias() += p.weights()[i] * (p.gamma()[i].adjoint() * p.lambda()[i]);
  }
  return s;
}

CMatrix pair_operator_factorized(const PairSystem& p) {
  const OperatorFamily& lambda = p.lambda();
  CMatrix weighted = lambda.stacked();
  for (std::size_t i = 0; i < p.size(); ++i) {
    weighted.middleRows(lambda.offsets()[i], lambda[i].rows()) *= p.weights()[i];
  }
  return p.gamma().stacked().adjoint() * weighted;
}

double adjoint_check(const PairSystem& p) {
  return (pair_operator(p).adjoint() - pair_operator(p.adjoint_system())).norm();
}

PairReport classify_pair(const PairSystem& p, double tol, int theta_steps) {
  PairReport r;
  r.S = pair_operator(p);
  r.sigma_min = min_singular(r.S);
  r.op_norm = op_norm(r.S);
  r.is_pair_frame = r.op_norm > 0.0 && r.sigma_min > tol * r.op_norm;
  if (r.is_pair_frame) r.condition_number = r.op_norm / r.sigma_min;

  const NumericalRange nr = numerical_range_bounds(r.S, theta_steps);
  r.framelike_upper = std::min(nr.radius, r.op_norm);
  // below the invertibility threshold the numerical range cannot be told
  // apart from one containing 0
  r.framelike_lower = nr.distance > tol * r.op_norm ? std::min(nr.distance, r.framelike_upper) : 0.0;
  r.adjoint_residual = adjoint_check(p);
  return r;
}

PairSystem compose(const PairSystem& p, const CMatrix& v, const CMatrix& w) {
  const Eigen::Index n = p.ambient_dim();
  if (v.rows() != n || v.cols() != n || w.rows() != n || w.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "V and W must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  return PairSystem(p.weights(), p.gamma().right_multiplied(v), p.lambda().right_multiplied(w));
}

namespace {

struct SphereObjective {
  const OperatorFamily& family;
  double p;

  double value(const CVector& f) const {
    double s = 0.0;
    for (const CMatrix& m : family.members()) s += std::pow((m * f).norm(), p);
    return s;
  }

  // Euclidean gradient of the realified objective, in complex form.
  CVector gradient(const CVector& f) const {
    CVector g = CVector::Zero(f.size());
    for (const CMatrix& m : family.members()) {
      const CVector y = m * f;
      const double ny = y.norm();
      if (ny == 0.0) continue;  // subgradient 0 at a kink (p = 1)
      g.noalias() += (p * std::pow(ny, p - 2.0)) * (m.adjoint() * y);
    }
    return g;
  }
};

double ascend(const SphereObjective& obj, CVector f) {
  constexpr double kInitialStep = 0.1;
  constexpr int kMaxIterations = 500;
  constexpr int kMaxHalvings = 60;
  constexpr double kGradTol = 1e-9;

  double value = obj.value(f);
  double step = kInitialStep;
  for (int it = 0; it < kMaxIterations; ++it) {
    const CVector g = obj.gradient(f);
    const Complex radial = f.dot(g);
    const CVector tangent = g - radial.real() * f;
    if (tangent.norm() < kGradTol * std::max(1.0, value)) break;

    bool improved = false;
    for (int h = 0; h < kMaxHalvings; ++h) {
      CVector candidate = f + step * tangent;
      candidate.normalize();
      const double cv = obj.value(candidate);
      if (cv > value) {
        f = std::move(candidate);
        value = cv;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    step *= 2.0;
  }
  return value;
}

}  // namespace

double p_bessel_bound(const OperatorFamily& family, double p, int restarts, std::uint64_t seed) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidExponent, "p must be at least 1");
  if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");

  const Eigen::Index n = family.ambient_dim();
  std::vector<CVector> starts;
  starts.reserve(static_cast<std::size_t>(restarts) + 1);
  {
    // dominant eigenvector of the frame operator: the exact maximizer at p = 2
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(frame_operator(family));
    starts.emplace_back(eig.eigenvectors().col(n - 1));
  }
  Rng rng(seed);
  for (int r = 0; r < restarts; ++r) starts.push_back(rng.unit_vector(n));

  const SphereObjective obj{family, p};
  std::vector<double> best(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { best[i] = ascend(obj, starts[i]); });
  return *std::max_element(best.begin(), best.end());
}

HolderBounds pq_pair_norm_bound(const PairSystem& sys, double p, double q, int restarts, std::uint64_t seed) {
  if (!(p >= 1.0) || !(q >= 1.0) || !std::isfinite(p) || !std::isfinite(q) ||
      std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw Error(ErrorCode::ExponentMismatch, "need p, q >= 1 with 1/p + 1/q = 1");
  }
  HolderBounds h;
  h.norm = op_norm(pair_operator(sys));
  h.gamma_bound = p_bessel_bound(sys.gamma(), p, restarts, seed);
  h.lambda_bound = p_bessel_bound(sys.lambda(), q, restarts, seed + 1);
  const double product = sys.weights().sup_norm() * std::pow(h.gamma_bound, 1.0 / p) *
                         std::pow(h.lambda_bound, 1.0 / q);
  h.holder_bound = product;
  h.sqrt_form_bound = std::sqrt(product);
  h.holder_holds = h.norm <= h.holder_bound + 1e-6;
  h.sqrt_form_holds = h.norm <= h.sqrt_form_bound + 1e-6;
  return h;
}

}  // namespace pairframe
