#include "pairframe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pairframe/error.hpp"
#include "pairframe/parallel.hpp"

namespace pairframe {
namespace {

Eigen::VectorXd singular_values(const CMatrix& m) {
  return Eigen::BDCSVD<CMatrix>(m).singularValues();
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

// Re(e^{i theta} M) = (e^{i theta} M + e^{-i theta} M^H) / 2
Eigen::VectorXd rotated_real_part_eigenvalues(const CMatrix& m, double theta) {
  const Complex phase = std::polar(1.0, theta);
  const CMatrix h = (phase * m + std::conj(phase) * m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

template <typename F>
double golden_section_max(F&& g, double lo, double hi, int iters) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  double best = std::max(gc, gd);
  for (int k = 0; k < iters; ++k) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
      best = std::max(best, gc);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
      best = std::max(best, gd);
    }
  }
  return best;
}

}  // namespace

double hermitian_deviation(const CMatrix& m) {
  const double scale = m.norm();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).norm() / scale;
}

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && hermitian_deviation(m) <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
  require_square(m, "matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

HermitianExtremes hermitian_extremes(const CMatrix& m, double tol) {
  require_square(m, "matrix");
  if (m.size() == 0) throw Error(ErrorCode::EmptyMatrix, "hermitian_extremes of an empty matrix");
  require_finite(m, "matrix");
  const double dev = hermitian_deviation(m);
  if (dev > tol) {
    throw Error(ErrorCode::NotHermitian, "relative deviation " + std::to_string(dev) + " exceeds tolerance");
  }
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  return {ev(0), ev(ev.size() - 1)};
}

double min_singular(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorCode::EmptyMatrix, "min_singular of an empty matrix");
  require_finite(m, "matrix");
  if (m.rows() < m.cols()) return 0.0;
  return singular_values(m).minCoeff();
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  require_finite(m, "matrix");
  return singular_values(m).maxCoeff();
}

CMatrix invert(const CMatrix& m, double tol) {
  require_square(m, "matrix");
  if (m.size() == 0) throw Error(ErrorCode::EmptyMatrix, "invert of an empty matrix");
  require_finite(m, "matrix");
  const Eigen::VectorXd sv = singular_values(m);
  const double smax = sv.maxCoeff();
  const double smin = sv.minCoeff();
  if (smax == 0.0 || smin <= tol * smax) {
    throw Error(ErrorCode::Singular, "sigma_min/|M| = " + std::to_string(smax == 0.0 ? 0.0 : smin / smax));
  }
  return m.fullPivLu().inverse();
}

NumericalRange numerical_range_bounds(const CMatrix& m, int theta_steps, int refine_iters) {
  require_square(m, "matrix");
  if (theta_steps < 8) throw Error(ErrorCode::InvalidArgument, "theta_steps must be at least 8");
  if (refine_iters < 0) throw Error(ErrorCode::InvalidArgument, "refine_iters must be non-negative");
  if (m.size() == 0) return {};
  require_finite(m, "matrix");

  const double step = 2.0 * std::numbers::pi / theta_steps;
  std::vector<double> lo(theta_steps), hi(theta_steps);
  parallel_for(static_cast<std::size_t>(theta_steps), [&](std::size_t k) {
    const Eigen::VectorXd ev = rotated_real_part_eigenvalues(m, step * static_cast<double>(k));
    lo[k] = ev(0);
    hi[k] = ev(ev.size() - 1);
  });

  const auto best_lo = std::max_element(lo.begin(), lo.end()) - lo.begin();
  const auto best_hi = std::max_element(hi.begin(), hi.end()) - hi.begin();
  double support_lo = lo[best_lo];
  double radius = hi[best_hi];

  if (refine_iters > 0) {
    const double t_lo = step * static_cast<double>(best_lo);
    const double t_hi = step * static_cast<double>(best_hi);
    support_lo = std::max(support_lo, golden_section_max(
                                          [&](double t) { return rotated_real_part_eigenvalues(m, t)(0); },
                                          t_lo - step, t_lo + step, refine_iters));
    radius = std::max(radius, golden_section_max(
                                  [&](double t) {
                                    const Eigen::VectorXd ev = rotated_real_part_eigenvalues(m, t);
                                    return ev(ev.size() - 1);
                                  },
                                  t_hi - step, t_hi + step, refine_iters));
  }

  NumericalRange out;
  out.radius = std::max(radius, 0.0);
  out.distance = std::clamp(support_lo, 0.0, out.radius);
  return out;
}

SpectralReport spectral_report(const CMatrix& m, int theta_steps, int refine_iters) {
  require_square(m, "matrix");
  SpectralReport r;
  if (is_hermitian(m)) {
    const HermitianExtremes e = hermitian_extremes(m);
    r.lambda_min = e.lambda_min;
    r.lambda_max = e.lambda_max;
  }
  r.sigma_min = min_singular(m);
  r.op_norm = op_norm(m);
  const NumericalRange nr = numerical_range_bounds(m, theta_steps, refine_iters);
  r.nr_radius = std::min(nr.radius, r.op_norm);
  r.nr_distance = std::min(nr.distance, r.nr_radius);
  return r;
}

}  // namespace pairframe
