#include "pairframe/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pairframe/error.hpp"
#include "pairframe/parallel.hpp"
#include "pairframe/spectral.hpp"

namespace pairframe {
namespace {

double residual_norm(const CMatrix& s, Complex alpha) {
  const Eigen::Index n = s.rows();
  return op_norm(CMatrix::Identity(n, n) - alpha * s);
}

void finish(NearIdentityReport& r, const CMatrix& s) {
  r.is_near_identity = r.residual < 1.0 - kNearIdentityMargin;
  r.is_positive_variant = r.is_near_identity && r.alpha.imag() == 0.0 && r.alpha.real() > 0.0 && is_hermitian(s);
}

}  // namespace

NearIdentityReport find_alpha(const CMatrix& s, int grid, int refine_iters) {
  require_square(s, "operator");
  if (s.size() == 0) throw Error(ErrorCode::EmptyMatrix, "find_alpha of an empty matrix");
  if (grid < 2) throw Error(ErrorCode::InvalidArgument, "grid must be at least 2");
  require_finite(s, "operator");

  NearIdentityReport r;
  const double norm = op_norm(s);
  if (norm == 0.0) {
    r.zero_operator = true;
    r.residual = 1.0;
    return r;
  }

  if (is_hermitian(s)) {
    const HermitianExtremes e = hermitian_extremes(s);
    if (e.lambda_min > kPairTol * e.lambda_max) {
      r.alpha = Complex(2.0 / (e.lambda_min + e.lambda_max), 0.0);
      r.residual = residual_norm(s, r.alpha);
      r.closed_form = true;
      finish(r, s);
      return r;
    }
  }

  // log-polar grid: |alpha| in [1/(10|S|), min(10/sigma_min, 1e8/|S|)]
  const double sigma = min_singular(s);
  const double lo = 1.0 / (10.0 * norm);
  const double hi = sigma > 0.0 ? std::min(10.0 / sigma, 1e8 / norm) : 1e8 / norm;
  const double log_lo = std::log(lo);
  const double log_hi = std::max(std::log(hi), log_lo + 1e-12);
  const int cells = grid * grid;
  const auto magnitude_at = [&](int k) { return std::exp(log_lo + (log_hi - log_lo) * k / (grid - 1)); };
  const double dphi = 2.0 * std::numbers::pi / grid;

  std::vector<double> values(static_cast<std::size_t>(cells));
  parallel_for(values.size(), [&](std::size_t idx) {
    const int k = static_cast<int>(idx) / grid;
    const int j = static_cast<int>(idx) % grid;
    values[idx] = residual_norm(s, std::polar(magnitude_at(k), dphi * j));
  });
  const auto best_idx = std::min_element(values.begin(), values.end()) - values.begin();
  double log_mag = std::log(magnitude_at(static_cast<int>(best_idx) / grid));
  double angle = dphi * static_cast<double>(best_idx % grid);
  double best = values[best_idx];

  // Frobenius-optimal scalar conj(tr S)/|S|_F^2 as an extra candidate
  const Complex frob = std::conj(s.trace()) / s.squaredNorm();
  if (std::abs(frob) > 0.0) {
    const double v = residual_norm(s, frob);
    if (v < best) {
      best = v;
      log_mag = std::log(std::abs(frob));
      angle = std::arg(frob);
    }
  }

  double step_mag = (log_hi - log_lo) / (grid - 1);
  double step_ang = dphi;
  for (int it = 0; it < refine_iters; ++it) {
    bool moved = false;
    const double trial[4][2] = {{step_mag, 0}, {-step_mag, 0}, {0, step_ang}, {0, -step_ang}};
    for (const auto& t : trial) {
      const double v = residual_norm(s, std::polar(std::exp(log_mag + t[0]), angle + t[1]));
      if (v < best) {
        best = v;
        log_mag += t[0];
        angle += t[1];
        moved = true;
      }
    }
    if (!moved) {
      step_mag *= 0.5;
      step_ang *= 0.5;
    }
  }

  r.alpha = std::polar(std::exp(log_mag), angle);
  // snap angles at multiples of pi/2 to exactly real or imaginary alpha
  if (std::abs(r.alpha.imag()) <= 1e-15 * std::abs(r.alpha)) r.alpha = Complex(r.alpha.real(), 0.0);
  if (std::abs(r.alpha.real()) <= 1e-15 * std::abs(r.alpha)) r.alpha = Complex(0.0, r.alpha.imag());
  r.residual = residual_norm(s, r.alpha);
  finish(r, s);
  return r;
}

CMatrix neumann_inverse(const CMatrix& s, Complex alpha, int n_terms) {
  require_square(s, "operator");
  if (n_terms < 0) throw Error(ErrorCode::InvalidArgument, "N must be non-negative");
  const Eigen::Index n = s.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix r = id - alpha * s;
  // X_0 = I, X_{k+1} = I + R X_k, so X_N = sum_{k=0}^{N} R^k
  CMatrix x = id;
  for (int k = 0; k < n_terms; ++k) x = id + r * x;
  return alpha * x;
}

NeumannTrace neumann_trace(const CMatrix& s, Complex alpha, int n_max) {
  require_square(s, "operator");
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "N_max must be non-negative");
  const Eigen::Index n = s.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix r = id - alpha * s;

  NeumannTrace trace;
  trace.alpha = alpha;
  trace.residual = op_norm(r);
  trace.entries.reserve(static_cast<std::size_t>(n_max) + 1);

  CMatrix r_power = r;  // R^{N+1}
  for (int k = 0; k <= n_max; ++k) {
    const CMatrix j = neumann_inverse(s, alpha, k) * s;
    NeumannEntry e;
    e.n = k;
    e.error = op_norm(id - j);
    e.bound = std::pow(trace.residual, k + 1);
    e.telescoping_residual = op_norm(j - (id - r_power));
    trace.entries.push_back(e);
    r_power = r * r_power;
  }
  return trace;
}

Reconstruction reconstruct(const PairSystem& p, Complex alpha, int n_terms, const CVector& f) {
  if (f.size() != p.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "signal has length " + std::to_string(f.size()) + ", expected " +
                                                  std::to_string(p.ambient_dim()));
  }
  const CMatrix s = pair_operator(p);
  Reconstruction out;
  out.approx = neumann_inverse(s, alpha, n_terms) * (s * f);
  const double nf = f.norm();
  out.rel_error = nf == 0.0 ? 0.0 : (out.approx - f).norm() / nf;
  return out;
}

}  // namespace pairframe
