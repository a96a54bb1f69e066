#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pairframe/types.hpp"

namespace pairframe {

/// A finite family of operators Lambda_i : C^n -> C^{d_i}, each stored as a
/// d_i x n matrix. Ordinary frames {f_i} use d_i = 1 with row f_i^H, so that
/// Lambda_i f = <f, f_i>.
///
/// The direct sum of the C^{d_i} is laid out contiguously in member order;
/// offsets()[i] is where block i starts and offsets().back() is the total
/// length D.
class OperatorFamily {
 public:
  /// Throws InvalidArgument for an empty family or a member with no rows,
  /// DimensionMismatch when a member's width differs from ambient_dim, and
  /// NonFinite for NaN/Inf entries.
  OperatorFamily(Eigen::Index ambient_dim, std::vector<CMatrix> members);

  /// Ordinary frame from vectors f_i (each of length ambient_dim).
  static OperatorFamily from_vectors(Eigen::Index ambient_dim, std::span<const CVector> vectors);

  Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<CMatrix>& members() const noexcept { return members_; }
  const CMatrix& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Eigen::Index>& offsets() const noexcept { return offsets_; }
  Eigen::Index total_rows() const noexcept { return offsets_.back(); }

  /// True when every member is a single row (an ordinary frame).
  bool is_vector_family() const noexcept;

  /// The D x n vertical stack of all members.
  CMatrix stacked() const;

  /// Family {Lambda_i T}.
  OperatorFamily right_multiplied(const CMatrix& t) const;

  bool operator==(const OperatorFamily& other) const;

 private:
  Eigen::Index ambient_dim_;
  std::vector<CMatrix> members_;
  std::vector<Eigen::Index> offsets_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Verdicts from the equivalent characterizations of a frame, each computed
/// by its own route so they can be compared.
struct ClassificationReport {
  bool is_bessel = true;
  bool is_frame = false;
  FrameBounds bounds;                 // optimal: extremal eigenvalues of S
  std::optional<Complex> alpha_star;  // 1/B, absent when S = 0
  std::optional<double> residual;     // |I - alpha* S|
  bool residual_below_one = false;    // residual < 1 - tol
  bool cert_invertible = false;
  bool cert_surjective = false;
  double tol = 0.0;

  bool is_tight(double rel = 1e-10) const {
    return is_frame && bounds.upper - bounds.lower <= rel * bounds.upper;
  }
};

inline constexpr double kFrameTol = 1e-10;

/// (Lambda_1 f, ..., Lambda_N f) as one vector of length D.
CVector analysis(const OperatorFamily& family, const CVector& f);

/// sum_i Lambda_i^H h_i for h laid out per family.offsets().
CVector synthesis(const OperatorFamily& family, const CVector& h);

/// S = sum_i Lambda_i^H Lambda_i (hermitian positive semidefinite).
CMatrix frame_operator(const OperatorFamily& family);

/// tol is relative: the family is a frame when lambda_min(S) > tol * lambda_max(S).
ClassificationReport classify(const OperatorFamily& family, double tol = kFrameTol);

/// {Lambda_i S^{-1}}; throws NotAFrame unless classify(family, tol).is_frame.
OperatorFamily canonical_dual(const OperatorFamily& family, double tol = kFrameTol);

}  // namespace pairframe
