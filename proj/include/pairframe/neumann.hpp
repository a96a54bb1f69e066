#pragma once

#include <vector>

#include "pairframe/pair.hpp"
#include "pairframe/types.hpp"

namespace pairframe {

/// Residuals at or above this are treated as "not below 1": an operator with
/// a numerically null direction v has |(I - alpha S) v| = |v| up to rounding.
inline constexpr double kNearIdentityMargin = 1e-12;

struct NearIdentityReport {
  Complex alpha{1.0, 0.0};
  double residual = 1.0;  // |I - alpha S|
  bool is_near_identity = false;
  bool is_positive_variant = false;
  bool zero_operator = false;
  bool closed_form = false;  // alpha from the hermitian positive definite optimum
};

/// Scalar alpha minimizing |I - alpha S|. For hermitian positive definite S
/// the optimum is 2/(lambda_min + lambda_max); otherwise a log-polar grid
/// over alpha (magnitude x angle) is refined by coordinate search. The zero
/// operator is reported, not thrown, with residual 1.
NearIdentityReport find_alpha(const CMatrix& s, int grid = 64, int refine_iters = 40);

/// alpha * sum_{n=0}^{N} (I - alpha S)^n, evaluated Horner-style.
CMatrix neumann_inverse(const CMatrix& s, Complex alpha, int n_terms);

struct NeumannEntry {
  int n = 0;
  double error = 0.0;              // |I - J_N|, J_N = neumann_inverse(S, alpha, N) S
  double bound = 0.0;              // |I - alpha S|^{N+1}
  double telescoping_residual = 0.0;  // |J_N - (I - (I - alpha S)^{N+1})|
};

struct NeumannTrace {
  Complex alpha;
  double residual = 0.0;
  std::vector<NeumannEntry> entries;  // ordered by N = 0..N_max
};

NeumannTrace neumann_trace(const CMatrix& s, Complex alpha, int n_max);

struct Reconstruction {
  CVector approx;
  double rel_error = 0.0;  // 0 for f = 0
};

/// neumann_inverse(S, alpha, N) applied to S f, with S the pair operator.
Reconstruction reconstruct(const PairSystem& p, Complex alpha, int n_terms, const CVector& f);

}  // namespace pairframe
