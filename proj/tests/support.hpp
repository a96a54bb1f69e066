#pragma once

// Fixture builders and brute-force references shared by the test binaries.
// Nothing here calls into the spectral module, so the references stay
// independent of the code they check.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "pairframe/frame.hpp"
#include "pairframe/generators.hpp"
#include "pairframe/pair.hpp"
#include "pairframe/random.hpp"

namespace pairframe::testing {

inline CMatrix diag(std::initializer_list<double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  CMatrix m = CMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

inline CMatrix swap2() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline CVector vec(std::initializer_list<Complex> values) {
  CVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const Complex& z : values) v(i++) = z;
  return v;
}

inline OperatorFamily vectors(Eigen::Index dim, const std::vector<CVector>& vs) {
  return OperatorFamily::from_vectors(dim, vs);
}

inline OperatorFamily orthonormal(Eigen::Index n) {
  std::vector<CVector> vs;
  for (Eigen::Index i = 0; i < n; ++i) vs.push_back(CVector::Unit(n, i));
  return vectors(n, vs);
}

inline OperatorFamily mercedes() {
  const double h = std::sqrt(3.0) / 2.0;
  return vectors(2, {vec({0.0, 1.0}), vec({-h, -0.5}), vec({h, -0.5})});
}

/// Eigenvalues of a 2x2 hermitian matrix by the quadratic formula.
inline std::pair<double, double> hermitian2x2_eigenvalues(const CMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b = std::abs(m(0, 1));
  const double mid = (a + d) / 2.0;
  const double rad = std::sqrt((a - d) * (a - d) / 4.0 + b * b);
  return {mid - rad, mid + rad};
}

/// Unitary from a QR of a complex gaussian matrix.
inline CMatrix random_unitary(Rng& rng, Eigen::Index n) {
  return Eigen::HouseholderQR<CMatrix>(rng.complex_normal_matrix(n, n)).householderQ() * CMatrix::Identity(n, n);
}

/// U diag(values) U^H for a random unitary U.
inline CMatrix hermitian_with_spectrum(Rng& rng, const std::vector<double>& values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  const CMatrix u = random_unitary(rng, n);
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = values[static_cast<std::size_t>(i)];
  return u * d.cast<Complex>().asDiagonal() * u.adjoint();
}

/// Random family: count members with 1..max_rows rows each.
inline OperatorFamily random_family(Rng& rng, Eigen::Index n, std::size_t count, std::uint64_t max_rows = 2) {
  std::vector<CMatrix> members;
  for (std::size_t i = 0; i < count; ++i) {
    const auto d = static_cast<Eigen::Index>(1 + rng.below(max_rows));
    members.push_back(rng.complex_normal_matrix(d, n));
  }
  return OperatorFamily(n, std::move(members));
}

inline WeightSequence random_weights(Rng& rng, std::size_t count) {
  WeightSequence m;
  for (std::size_t i = 0; i < count; ++i) m.weights.push_back(rng.complex_normal() * 2.0);
  return m;
}

/// Random pair system whose gamma member i has the same rows as lambda member i.
inline PairSystem random_pair(Rng& rng, Eigen::Index n, std::size_t count, std::uint64_t max_rows = 2) {
  const OperatorFamily lambda = random_family(rng, n, count, max_rows);
  std::vector<CMatrix> gamma;
  for (const CMatrix& m : lambda.members()) gamma.push_back(rng.complex_normal_matrix(m.rows(), n));
  return PairSystem(random_weights(rng, count), OperatorFamily(n, std::move(gamma)), lambda);
}

/// min / max of |<Mf, f>| over random unit vectors.
// Gamma close to Lambda and weights close to 1, so the pair operator stays
// near a positive definite one and usually admits a real positive alpha.
inline PairSystem nearly_positive_pair(Rng& rng, Eigen::Index n, double noise = 0.05) {
  const OperatorFamily lambda = random_family(rng, n, static_cast<std::size_t>(2 * n), 2);
  std::vector<CMatrix> gamma;
  WeightSequence m;
  for (const CMatrix& l : lambda.members()) {
    gamma.push_back(l + noise * rng.complex_normal_matrix(l.rows(), n));
    m.weights.push_back(1.0 + noise * rng.complex_normal());
  }
  return PairSystem(m, OperatorFamily(n, std::move(gamma)), lambda);
}

inline std::pair<double, double> sampled_numerical_range(const CMatrix& m, Rng& rng, int samples) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CVector f = rng.unit_vector(m.rows());
    const double v = std::abs(f.dot(m * f));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

struct NamedFamily {
  std::string name;
  OperatorFamily family;
};

/// Generated families of every kind, degenerate ones included (54 in all).
inline std::vector<NamedFamily> family_corpus() {
  std::vector<NamedFamily> out;
  auto add = [&](GenKind kind, Eigen::Index dim, Eigen::Index count, std::uint64_t seed, std::vector<double> params) {
    GenSpec spec{kind, dim, count, seed, std::move(params)};
    out.push_back({std::string(to_string(kind)) + "/" + std::to_string(dim) + "x" + std::to_string(count) + "/s" +
                       std::to_string(seed),
                   generate(spec)});
  };
  for (Eigen::Index n = 1; n <= 6; ++n) add(GenKind::Orthonormal, n, n, 0, {});
  add(GenKind::Mercedes, 2, 3, 0, {});
  for (auto [n, c] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 5}, {3, 7}, {4, 8}, {5, 5}, {8, 16}}) {
    add(GenKind::Harmonic, n, c, 0, {});
  }
  for (std::uint64_t s = 0; s < 12; ++s) {
    const auto n = static_cast<Eigen::Index>(2 + s % 7);
    add(GenKind::RandomFrame, n, n + static_cast<Eigen::Index>(s % 5) + 1, s, {});
  }
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto n = static_cast<Eigen::Index>(2 + s % 4);
    add(GenKind::RandomGFrame, n, n + 1, s, {static_cast<double>(1 + s % 3)});
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto n = static_cast<Eigen::Index>(2 + s % 5);
    add(GenKind::RankDeficient, n, 2 * n, s, {static_cast<double>(s % static_cast<std::uint64_t>(n))});
  }
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto n = static_cast<Eigen::Index>(2 + s % 5);
    std::vector<double> spectrum;
    for (Eigen::Index i = 0; i < n; ++i) spectrum.push_back(std::pow(10.0, -3.0 + 4.0 * static_cast<double>(i) / static_cast<double>(n)));
    add(GenKind::PrescribedSpectrum, n, n + static_cast<Eigen::Index>(s % 3), s, std::move(spectrum));
  }
  add(GenKind::SwapFixture, 3, 3, 0, {});
  out.push_back({"repeated e1", vectors(2, {vec({1.0, 0.0}), vec({1.0, 0.0})})});
  return out;
}

}  // namespace pairframe::testing
