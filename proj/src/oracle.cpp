#include "pairframe/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pairframe/error.hpp"
#include "pairframe/parallel.hpp"
#include "pairframe/random.hpp"

namespace pairframe::oracle {
namespace {

constexpr std::array<int, 6> kPrimes{2, 3, 5, 7, 11, 13};

double radical_inverse(long index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  for (long i = index; i > 0; i /= base) {
    result += f * static_cast<double>(i % base);
    f /= base;
  }
  return result;
}

class SphereSampler {
 public:
  SphereSampler(Eigen::Index dim, std::uint64_t seed) : dim_(dim) {
    Rng rng(seed);
    for (auto& s : shift_) s = rng.uniform();
  }

  CVector operator()(long index) const {
    CVector f(dim_);
    for (Eigen::Index j = 0; j < dim_; ++j) {
      double u1 = coordinate(index, 2 * j);
      const double u2 = coordinate(index, 2 * j + 1);
      if (u1 <= 0.0) u1 = 0x1.0p-53;
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double t = 2.0 * std::numbers::pi * u2;
      f(j) = Complex(r * std::cos(t), r * std::sin(t));
    }
    const double n = f.norm();
    if (n == 0.0) {
      f.setZero();
      f(0) = 1.0;
      return f;
    }
    return f / n;
  }

 private:
  double coordinate(long index, Eigen::Index axis) const {
    const double v = radical_inverse(index + 1, kPrimes[static_cast<std::size_t>(axis)]) +
                     shift_[static_cast<std::size_t>(axis)];
    return v - std::floor(v);
  }

  Eigen::Index dim_;
  std::array<double, 6> shift_{};
};

struct Sample {
  double value;
  long index;
};

// Compass search on the realified sphere; sign = +1 maximizes, -1 minimizes.
double polish(const SphereObjective& objective, CVector f, double sign) {
  double best = sign * objective(f);
  const Eigen::Index n = f.size();
  const std::array<Complex, 2> units{Complex(1.0, 0.0), Complex(0.0, 1.0)};
  int evaluations = 0;
  for (double h = 0.05; h > 1e-9 && evaluations < 20000; h *= 0.5) {
    bool moved = true;
    while (moved && evaluations < 20000) {
      moved = false;
      for (Eigen::Index j = 0; j < n; ++j) {
        for (const Complex& u : units) {
          for (double dir : {1.0, -1.0}) {
            CVector c = f;
            c(j) += dir * h * u;
            c.normalize();
            const double v = sign * objective(c);
            ++evaluations;
            if (v > best) {
              best = v;
              f = std::move(c);
              moved = true;
            }
          }
        }
      }
    }
  }
  return sign * best;
}

}  // namespace

void validate(const OracleConfig& cfg) {
  if (cfg.sphere_samples < 1 || cfg.theta_samples < 1 || !(cfg.tolerance > 0.0) || cfg.polish_points < 0) {
    throw Error(ErrorCode::InvalidArgument, "oracle configuration needs positive counts and tolerance");
  }
}

Extremes sphere_extremes(const SphereObjective& objective, Eigen::Index dim, const OracleConfig& cfg) {
  validate(cfg);
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be positive");
  if (dim > kMaxOracleDim) {
    throw Error(ErrorCode::DimensionTooLarge, "sphere sampling supports dim <= 3, got " + std::to_string(dim));
  }

  const SphereSampler sampler(dim, cfg.seed);
  const std::size_t keep = static_cast<std::size_t>(cfg.polish_points);
  constexpr long kChunk = 8192;
  const long chunks = (cfg.sphere_samples + kChunk - 1) / kChunk;

  // per chunk: its `keep` lowest and highest samples
  std::vector<std::vector<Sample>> lows(static_cast<std::size_t>(chunks)), highs(static_cast<std::size_t>(chunks));
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const long begin = static_cast<long>(c) * kChunk;
    const long end = std::min(cfg.sphere_samples, begin + kChunk);
    std::vector<Sample> all;
    all.reserve(static_cast<std::size_t>(end - begin));
    for (long i = begin; i < end; ++i) all.push_back({objective(sampler(i)), i});
    const auto by_value = [](const Sample& a, const Sample& b) {
      return a.value < b.value || (a.value == b.value && a.index < b.index);
    };
    std::sort(all.begin(), all.end(), by_value);
    const std::size_t k = std::min(std::max<std::size_t>(keep, 1), all.size());
    lows[c].assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    highs[c].assign(all.end() - static_cast<std::ptrdiff_t>(k), all.end());
  });

  std::vector<Sample> low, high;
  for (long c = 0; c < chunks; ++c) {
    low.insert(low.end(), lows[static_cast<std::size_t>(c)].begin(), lows[static_cast<std::size_t>(c)].end());
    high.insert(high.end(), highs[static_cast<std::size_t>(c)].begin(), highs[static_cast<std::size_t>(c)].end());
  }
  const auto by_value = [](const Sample& a, const Sample& b) {
    return a.value < b.value || (a.value == b.value && a.index < b.index);
  };
  std::sort(low.begin(), low.end(), by_value);
  std::sort(high.begin(), high.end(), by_value);

  Extremes out{low.front().value, high.back().value};
  for (std::size_t i = 0; i < std::min(keep, low.size()); ++i) {
    out.min = std::min(out.min, polish(objective, sampler(low[i].index), -1.0));
  }
  for (std::size_t i = 0; i < std::min(keep, high.size()); ++i) {
    out.max = std::max(out.max, polish(objective, sampler(high[high.size() - 1 - i].index), 1.0));
  }
  return out;
}

Extremes circle_extremes(const SphereObjective& objective, const OracleConfig& cfg) {
  validate(cfg);
  Extremes out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (long k = 0; k < cfg.theta_samples; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cfg.theta_samples);
    const CVector f{{Complex(std::cos(t), 0.0), Complex(std::sin(t), 0.0)}};
    const double v = objective(f);
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
  }
  return out;
}

BruteRange brute_numerical_range(const CMatrix& m, const OracleConfig& cfg) {
  require_square(m, "matrix");
  if (m.rows() > kMaxOracleDim) {
    throw Error(ErrorCode::DimensionTooLarge, "brute numerical range supports dim <= 3");
  }
  const Extremes e = sphere_extremes([&m](const CVector& f) { return std::abs(f.dot(m * f)); }, m.rows(), cfg);
  return {e.min, e.max};
}

}  // namespace pairframe::oracle
