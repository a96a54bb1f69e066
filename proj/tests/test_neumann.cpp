#include <doctest.h>

#include "pairframe/frame.hpp"
#include "pairframe/generators.hpp"
#include "pairframe/neumann.hpp"
#include "pairframe/spectral.hpp"
#include "expect_error.hpp"
#include "support.hpp"

using namespace pairframe;
using namespace pairframe::testing;

namespace {

// alpha * sum_n R^n with an explicit power table
CMatrix power_sum(const CMatrix& s, Complex alpha, int n_terms) {
  const auto n = s.rows();
  const CMatrix r = CMatrix::Identity(n, n) - alpha * s;
  CMatrix power = CMatrix::Identity(n, n);
  CMatrix sum = CMatrix::Zero(n, n);
  for (int k = 0; k <= n_terms; ++k) {
    sum += power;
    power = power * r;
  }
  return alpha * sum;
}

PairSystem diagonal_system(std::vector<Complex> m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  return PairSystem::symmetric(WeightSequence{std::move(m)}, orthonormal(n));
}

}  // namespace

TEST_CASE("find_alpha examples") {
  const NearIdentityReport id = find_alpha(CMatrix::Identity(3, 3));
  CHECK(std::abs(id.alpha - 1.0) < 1e-14);
  CHECK(id.residual < 1e-14);
  CHECK(id.is_near_identity);
  CHECK(id.is_positive_variant);

  // oracle: 1D scan of max(|1 - a|, |1 - 3a|) over a in (0, 2)
  double best = 2.0, best_a = 0.0;
  for (int k = 1; k < 20000; ++k) {
    const double a = 2.0 * k / 20000.0;
    const double r = std::max(std::abs(1.0 - a), std::abs(1.0 - 3.0 * a));
    if (r < best) best = r, best_a = a;
  }
  CHECK(best == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(best_a == doctest::Approx(0.5).epsilon(1e-3));
  const NearIdentityReport d = find_alpha(diag({1, 3}));
  CHECK(d.closed_form);
  CHECK(std::abs(d.alpha - 0.5) < 1e-14);
  CHECK(d.residual == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.residual <= best + 1e-12);
}

TEST_CASE("find_alpha with alpha = 1/B on frame operators") {
  for (const auto& [name, family] : family_corpus()) {
    const ClassificationReport c = classify(family);
    if (!c.is_frame) continue;
    CAPTURE(name);
    const CMatrix s = frame_operator(family);
    const double at_inverse_upper = op_norm(CMatrix::Identity(s.rows(), s.cols()) - s / c.bounds.upper);
    CHECK(at_inverse_upper <= 1.0 - c.bounds.lower / c.bounds.upper + 1e-10);
    const NearIdentityReport r = find_alpha(s);
    CHECK(r.is_near_identity);
    CHECK(r.residual <= at_inverse_upper + 1e-12);
  }
}

TEST_CASE("find_alpha on non-hermitian operators") {
  const CMatrix rotated = Complex(0.0, 1.0) * CMatrix::Identity(2, 2);
  const NearIdentityReport a = find_alpha(rotated);
  CHECK_FALSE(a.closed_form);
  CHECK(a.residual < 1e-9);
  CHECK(std::abs(a.alpha - Complex(0.0, -1.0)) < 1e-6);
  CHECK_FALSE(a.is_positive_variant);

  // e^{i pi/3} diag(1, 2): the best alpha is e^{-i pi/3} * 2/3 with residual 1/3
  const Complex phase = std::polar(1.0, std::acos(-1.0) / 3.0);
  const NearIdentityReport b = find_alpha(phase * diag({1, 2}));
  CHECK(b.residual == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(std::abs(b.alpha - std::conj(phase) * (2.0 / 3.0)) < 1e-4);
  CHECK(b.is_near_identity);

  // swap has eigenvalues +1 and -1: no alpha helps
  const NearIdentityReport s = find_alpha(swap2());
  CHECK_FALSE(s.is_near_identity);
  CHECK(s.residual >= 1.0 - 1e-12);
}

TEST_CASE("find_alpha zero operator and errors") {
  const NearIdentityReport z = find_alpha(CMatrix::Zero(2, 2));
  CHECK(z.zero_operator);
  CHECK_FALSE(z.is_near_identity);
  CHECK(z.residual >= 1.0);
  require_code(ErrorCode::NonSquare, [] { find_alpha(CMatrix::Ones(2, 3)); });
}

TEST_CASE("property: positive-variant equivalence on hermitian operators") {
  Rng rng(61);
  int positive = 0, other = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(5));
    std::vector<double> spectrum;
    const int mode = trial % 3;  // 0: definite, 1: indefinite, 2: semidefinite
    for (Eigen::Index i = 0; i < n; ++i) spectrum.push_back(0.2 + 4.0 * rng.uniform());
    if (mode == 1 && n >= 2) spectrum[0] = -spectrum[0];
    if (mode == 2) spectrum[0] = 0.0;
    const CMatrix h = hermitian_with_spectrum(rng, spectrum);
    const NearIdentityReport r = find_alpha(h);
    const bool min_positive = hermitian_extremes(h).lambda_min > 0.0 && (mode == 0 || (mode == 1 && n == 1));
    const bool positive_alpha = std::abs(r.alpha.imag()) == 0.0 && r.alpha.real() > 0.0;
    CAPTURE(trial);
    CHECK((r.is_near_identity && positive_alpha) == min_positive);
    CHECK(r.is_positive_variant == min_positive);
    CHECK(r.is_near_identity == (r.residual < 1.0 - kNearIdentityMargin));
    (min_positive ? positive : other)++;
  }
  CHECK(positive > 10);
  CHECK(other > 10);
}

TEST_CASE("neumann_inverse examples") {
  for (int n : {0, 1, 5, 17}) {
    CHECK(max_abs_diff(neumann_inverse(CMatrix::Identity(3, 3), 1.0, n), CMatrix::Identity(3, 3)) < 1e-15);
  }
  const CMatrix x = neumann_inverse(diag({1, 3}), 0.5, 3);
  CHECK(max_abs_diff(x, diag({0.9375, 0.3125})) < 1e-15);
  const Complex alpha(0.25, -0.5);
  CHECK(max_abs_diff(neumann_inverse(swap2(), alpha, 0), alpha * CMatrix::Identity(2, 2)) < 1e-15);
  require_code(ErrorCode::NonSquare, [] { neumann_inverse(CMatrix::Ones(2, 3), 1.0, 2); });
  require_code(ErrorCode::InvalidArgument, [] { neumann_inverse(CMatrix::Identity(2, 2), 1.0, -1); });
}

TEST_CASE("property: Horner evaluation matches the explicit power sum") {
  Rng rng(62);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(6));
    const CMatrix s = CMatrix::Identity(n, n) + 0.3 * rng.complex_normal_matrix(n, n) / std::sqrt(double(n));
    const Complex alpha = find_alpha(s).alpha;
    const int terms = static_cast<int>(rng.below(31));
    const CMatrix a = neumann_inverse(s, alpha, terms);
    CHECK(max_abs_diff(a, power_sum(s, alpha, terms)) <= 1e-12 * (1.0 + op_norm(a)));
  }
}

TEST_CASE("neumann_trace examples") {
  const NeumannTrace t = neumann_trace(diag({1, 3}), 0.5, 5);
  REQUIRE(t.entries.size() == 6);
  for (std::size_t k = 0; k < t.entries.size(); ++k) CHECK(t.entries[k].n == static_cast<int>(k));
  CHECK(std::abs(t.entries[3].error - 0.0625) <= 1e-12);
  CHECK(std::abs(t.entries[3].bound - 0.0625) <= 1e-12);
  CHECK(t.residual == doctest::Approx(0.5).epsilon(1e-14));

  const NeumannTrace id = neumann_trace(CMatrix::Identity(2, 2), 1.0, 10);
  for (const NeumannEntry& e : id.entries) CHECK(e.error == 0.0);

  // eigenvalues 1..19 with alpha = 0.1 put the residual at exactly 0.9
  std::vector<double> spectrum;
  for (int k = 1; k <= 19; ++k) spectrum.push_back(k);
  const OperatorFamily f = generate({GenKind::PrescribedSpectrum, 19, 38, 3, spectrum});
  const NeumannTrace slow = neumann_trace(frame_operator(f), 0.1, 20);
  CHECK(slow.residual == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(slow.entries.back().error <= std::pow(0.9, 21) + 1e-9);
  CHECK(slow.entries.back().error == doctest::Approx(std::pow(0.9, 21)).epsilon(1e-8));

  require_code(ErrorCode::NonSquare, [] { neumann_trace(CMatrix::Ones(2, 3), 1.0, 2); });
}

TEST_CASE("property: trace bound and telescoping identity") {
  Rng rng(63);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(6));
    CMatrix s = rng.complex_normal_matrix(n, n);
    if (trial % 2 == 0) s = s * s.adjoint() + 0.5 * CMatrix::Identity(n, n);
    const NearIdentityReport a = find_alpha(s);
    const NeumannTrace t = neumann_trace(s, a.alpha, 30);
    double previous = std::numeric_limits<double>::infinity();
    for (const NeumannEntry& e : t.entries) {
      CAPTURE(e.n);
      CHECK(e.telescoping_residual <= 1e-10 * (1.0 + e.bound));
      CHECK(e.error <= e.bound + 1e-9);
      if (t.residual < 1.0 && trial % 2 == 0) {
        // hermitian: the error is exactly residual^{N+1}, so it cannot grow
        CHECK(e.error <= previous + 1e-12);
        previous = e.error;
      }
    }
  }
}

TEST_CASE("property: partial sums converge to the inverse") {
  Rng rng(64);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + rng.below(5));
    std::vector<double> spectrum;
    for (Eigen::Index i = 0; i < n; ++i) spectrum.push_back(1.0 + 3.0 * rng.uniform());
    const CMatrix s = hermitian_with_spectrum(rng, spectrum);
    const NearIdentityReport a = find_alpha(s);
    REQUIRE(a.residual < 1.0);
    const CMatrix inverse = invert(s);
    double previous = std::numeric_limits<double>::infinity();
    int n_terms = 0;
    while (std::pow(a.residual, n_terms + 1) >= 1e-12) {
      const double gap = op_norm(neumann_inverse(s, a.alpha, n_terms) - inverse);
      CHECK(gap <= previous + 1e-14);
      previous = gap;
      ++n_terms;
    }
    CHECK(op_norm(neumann_inverse(s, a.alpha, n_terms) - inverse) <= 1e-10 * op_norm(inverse));
  }
}

TEST_CASE("reconstruct examples") {
  Rng rng(65);
  const PairSystem id = diagonal_system({1.0, 1.0, 1.0});
  const CVector f = rng.complex_normal_vector(3);
  const Reconstruction r = reconstruct(id, 1.0, 4, f);
  CHECK(max_abs_diff(r.approx, f) < 1e-15);
  CHECK(r.rel_error == 0.0);

  const PairSystem d = diagonal_system({1.0, 3.0});
  CHECK(reconstruct(d, 0.5, 3, vec({0.0, 1.0})).rel_error == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(reconstruct(d, 0.5, 3, vec({1.0, 0.0})).rel_error == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(reconstruct(d, 0.5, 3, CVector::Zero(2)).rel_error == 0.0);
  require_code(ErrorCode::DimensionMismatch, [&] { reconstruct(d, 0.5, 3, CVector::Zero(3)); });
}

TEST_CASE("property: reconstruction error obeys the geometric bound") {
  Rng rng(66);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(5));
    const PairSystem p = random_pair(rng, n, n + rng.below(4), 2);
    const NearIdentityReport a = find_alpha(pair_operator(p));
    if (!a.is_near_identity) continue;
    ++checked;
    const int terms = static_cast<int>(rng.below(21));
    const Reconstruction r = reconstruct(p, a.alpha, terms, rng.complex_normal_vector(n));
    CHECK(r.rel_error <= std::pow(a.residual, terms + 1) + 1e-9);
  }
  CHECK(checked > 5);
}
