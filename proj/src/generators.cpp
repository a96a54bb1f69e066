#include "pairframe/generators.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "pairframe/error.hpp"
#include "pairframe/random.hpp"
#include "pairframe/spectral.hpp"

namespace pairframe {
namespace {

constexpr std::array<std::pair<GenKind, std::string_view>, 9> kNames{{
    {GenKind::Orthonormal, "orthonormal"},
    {GenKind::Mercedes, "mercedes"},
    {GenKind::Harmonic, "harmonic"},
    {GenKind::RandomFrame, "random_frame"},
    {GenKind::RandomGFrame, "random_gframe"},
    {GenKind::Weighted, "weighted"},
    {GenKind::SwapFixture, "swap_fixture"},
    {GenKind::RankDeficient, "rank_deficient"},
    {GenKind::PrescribedSpectrum, "prescribed_spectrum"},
}};

constexpr double kRandomFrameRatio = 0.05;
constexpr int kMaxResamples = 10000;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidSpec, msg); }

void require_count(const GenSpec& spec, Eigen::Index expected) {
  if (spec.count != expected) {
    invalid(std::string(to_string(spec.kind)) + " needs count = " + std::to_string(expected));
  }
}

OperatorFamily basis(Eigen::Index dim, bool reversed) {
  std::vector<CMatrix> rows;
  for (Eigen::Index i = 0; i < dim; ++i) {
    CMatrix row = CMatrix::Zero(1, dim);
    row(0, reversed ? dim - 1 - i : i) = 1.0;
    rows.push_back(std::move(row));
  }
  return OperatorFamily(dim, std::move(rows));
}

bool well_conditioned(const OperatorFamily& f) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(frame_operator(f));
  return ev(0) > kRandomFrameRatio * ev(ev.size() - 1);
}

OperatorFamily random_frame(const GenSpec& spec, Rng& rng) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    std::vector<CVector> vs;
    for (Eigen::Index k = 0; k < spec.count; ++k) vs.push_back(rng.unit_vector(spec.dim));
    OperatorFamily f = OperatorFamily::from_vectors(spec.dim, vs);
    if (well_conditioned(f)) return f;
  }
  invalid("random_frame: no well-conditioned draw");
}

OperatorFamily random_gframe(const GenSpec& spec, Rng& rng) {
  double max_rows = 2.0;
  if (spec.params.size() > 1) invalid("random_gframe takes at most one parameter");
  if (spec.params.size() == 1) max_rows = spec.params[0];
  if (!(max_rows >= 1.0) || max_rows != std::floor(max_rows) || max_rows > 64) {
    invalid("random_gframe: max rows must be an integer in [1, 64]");
  }
  const auto rows_cap = static_cast<std::uint64_t>(max_rows);
  if (static_cast<double>(spec.count) * max_rows < static_cast<double>(spec.dim)) {
    invalid("random_gframe: count * max rows must reach dim");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.dim));
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    std::vector<CMatrix> members;
    for (Eigen::Index k = 0; k < spec.count; ++k) {
      const auto d = static_cast<Eigen::Index>(1 + rng.below(rows_cap));
      members.push_back(rng.complex_normal_matrix(d, spec.dim) * scale);
    }
    OperatorFamily f(spec.dim, std::move(members));
    if (well_conditioned(f)) return f;
  }
  invalid("random_gframe: no well-conditioned draw");
}

OperatorFamily rank_deficient(const GenSpec& spec, Rng& rng) {
  double rank = static_cast<double>(spec.dim - 1);
  if (spec.params.size() > 1) invalid("rank_deficient takes at most one parameter");
  if (spec.params.size() == 1) rank = spec.params[0];
  if (!(rank >= 0.0) || rank != std::floor(rank) || rank >= static_cast<double>(spec.dim)) {
    invalid("rank_deficient: rank must be an integer in [0, dim)");
  }
  const auto r = static_cast<Eigen::Index>(rank);
  std::vector<CVector> vs;
  for (Eigen::Index k = 0; k < spec.count; ++k) {
    CVector v = CVector::Zero(spec.dim);
    if (r > 0) v.head(r) = rng.unit_vector(r);
    vs.push_back(std::move(v));
  }
  return OperatorFamily::from_vectors(spec.dim, vs);
}

OperatorFamily prescribed_spectrum(const GenSpec& spec, Rng& rng) {
  if (spec.params.size() != static_cast<std::size_t>(spec.dim)) {
    invalid("prescribed_spectrum needs exactly dim eigenvalues");
  }
  for (double v : spec.params) {
    if (!(v > 0.0) || !std::isfinite(v)) invalid("prescribed_spectrum eigenvalues must be positive and finite");
  }
  if (spec.count < spec.dim) invalid("prescribed_spectrum needs count >= dim");

  // stack = Q diag(sqrt(lambda)) U^H with Q^H Q = I (count x dim) and U unitary,
  // so that stack^H stack = U diag(lambda) U^H
  const CMatrix q = Eigen::HouseholderQR<CMatrix>(rng.complex_normal_matrix(spec.count, spec.dim)).householderQ() *
                    CMatrix::Identity(spec.count, spec.dim);
  const CMatrix u = Eigen::HouseholderQR<CMatrix>(rng.complex_normal_matrix(spec.dim, spec.dim)).householderQ() *
                    CMatrix::Identity(spec.dim, spec.dim);
  Eigen::VectorXd root(spec.dim);
  for (Eigen::Index i = 0; i < spec.dim; ++i) root(i) = std::sqrt(spec.params[static_cast<std::size_t>(i)]);
  const CMatrix stack = q * root.cast<Complex>().asDiagonal() * u.adjoint();

  std::vector<CMatrix> rows;
  for (Eigen::Index k = 0; k < spec.count; ++k) rows.emplace_back(stack.row(k));
  return OperatorFamily(spec.dim, std::move(rows));
}

}  // namespace

std::string_view to_string(GenKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

GenKind parse_gen_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  invalid("unknown generator kind '" + std::string(name) + "'");
}

const std::vector<GenKind>& all_gen_kinds() {
  static const std::vector<GenKind> kinds = [] {
    std::vector<GenKind> out;
    for (const auto& [k, n] : kNames) out.push_back(k);
    return out;
  }();
  return kinds;
}

Eigen::Index default_count(GenKind kind, Eigen::Index dim) {
  switch (kind) {
    case GenKind::Orthonormal:
    case GenKind::Weighted:
    case GenKind::SwapFixture:
      return dim;
    case GenKind::Mercedes:
      return 3;
    default:
      return 2 * dim;
  }
}

OperatorFamily generate(const GenSpec& spec) {
  if (spec.dim < 1) invalid("dim must be at least 1");
  if (spec.count < 1) invalid("count must be at least 1");
  for (double v : spec.params) {
    if (!std::isfinite(v)) invalid("parameters must be finite");
  }
  const bool takes_params = spec.kind == GenKind::Weighted || spec.kind == GenKind::RandomGFrame ||
                            spec.kind == GenKind::RankDeficient || spec.kind == GenKind::PrescribedSpectrum;
  if (!takes_params && !spec.params.empty()) invalid(std::string(to_string(spec.kind)) + " takes no parameters");

  Rng rng(spec.seed);
  switch (spec.kind) {
    case GenKind::Orthonormal:
      require_count(spec, spec.dim);
      return basis(spec.dim, false);
    case GenKind::Mercedes: {
      if (spec.dim != 2) invalid("mercedes needs dim = 2");
      require_count(spec, 3);
      const double h = std::numbers::sqrt3 / 2.0;
      const std::vector<CVector> vs{CVector{{0.0, 1.0}}, CVector{{-h, -0.5}}, CVector{{h, -0.5}}};
      return OperatorFamily::from_vectors(2, vs);
    }
    case GenKind::Harmonic: {
      if (spec.count < spec.dim) invalid("harmonic needs count >= dim");
      std::vector<CVector> vs;
      const double scale = 1.0 / std::sqrt(static_cast<double>(spec.dim));
      for (Eigen::Index k = 0; k < spec.count; ++k) {
        CVector v(spec.dim);
        for (Eigen::Index j = 0; j < spec.dim; ++j) {
          // reduce j*k mod count first so the angle stays exact for large indices
          const auto jk = static_cast<double>((j * k) % spec.count);
          v(j) = std::polar(scale, 2.0 * std::numbers::pi * jk / static_cast<double>(spec.count));
        }
        vs.push_back(std::move(v));
      }
      return OperatorFamily::from_vectors(spec.dim, vs);
    }
    case GenKind::RandomFrame:
      if (spec.count < spec.dim) invalid("random_frame needs count >= dim");
      return random_frame(spec, rng);
    case GenKind::RandomGFrame:
      return random_gframe(spec, rng);
    case GenKind::Weighted:
      require_count(spec, spec.dim);
      if (spec.params.size() != static_cast<std::size_t>(spec.dim)) invalid("weighted needs dim weights");
      return basis(spec.dim, false);
    case GenKind::SwapFixture:
      if (spec.dim < 2) invalid("swap_fixture needs dim >= 2");
      require_count(spec, spec.dim);
      return basis(spec.dim, true);
    case GenKind::RankDeficient:
      if (spec.dim < 2 && spec.params.empty()) invalid("rank_deficient needs dim >= 2");
      return rank_deficient(spec, rng);
    case GenKind::PrescribedSpectrum:
      return prescribed_spectrum(spec, rng);
  }
  invalid("unhandled generator kind");
}

WeightSequence generate_weights(const GenSpec& spec) {
  if (spec.kind == GenKind::Weighted) {
    WeightSequence m;
    for (double v : spec.params) m.weights.emplace_back(v, 0.0);
    return m;
  }
  return WeightSequence::ones(static_cast<std::size_t>(spec.count));
}

PairSystem generate_pair(const GenSpec& spec_gamma, const GenSpec& spec_lambda, const WeightSequence& weights) {
  return PairSystem(weights, generate(spec_gamma), generate(spec_lambda));
}

}  // namespace pairframe
