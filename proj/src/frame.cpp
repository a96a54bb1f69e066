#include "pairframe/frame.hpp"

#include <algorithm>
#include <string>

#include "pairframe/error.hpp"
#include "pairframe/spectral.hpp"

namespace pairframe {

OperatorFamily::OperatorFamily(Eigen::Index ambient_dim, std::vector<CMatrix> members)
    : ambient_dim_(ambient_dim), members_(std::move(members)) {
  if (ambient_dim_ < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
  if (members_.empty()) throw Error(ErrorCode::InvalidArgument, "operator family has no members");
  offsets_.reserve(members_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const CMatrix& m = members_[i];
    if (m.rows() < 1) throw Error(ErrorCode::InvalidArgument, "member " + std::to_string(i) + " has no rows");
    if (m.cols() != ambient_dim_) {
      throw Error(ErrorCode::DimensionMismatch, "member " + std::to_string(i) + " has " + std::to_string(m.cols()) +
                                                    " columns, expected " + std::to_string(ambient_dim_));
    }
    require_finite(m, "family member");
    offsets_.push_back(offsets_.back() + m.rows());
  }
}

OperatorFamily OperatorFamily::from_vectors(Eigen::Index ambient_dim, std::span<const CVector> vectors) {
  std::vector<CMatrix> rows;
  rows.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim) {
      throw Error(ErrorCode::DimensionMismatch, "vector " + std::to_string(i) + " has length " +
                                                    std::to_string(vectors[i].size()) + ", expected " +
                                                    std::to_string(ambient_dim));
    }
    rows.emplace_back(vectors[i].adjoint());
  }
  return OperatorFamily(ambient_dim, std::move(rows));
}

bool OperatorFamily::is_vector_family() const noexcept {
  return std::all_of(members_.begin(), members_.end(), [](const CMatrix& m) { return m.rows() == 1; });
}

CMatrix OperatorFamily::stacked() const {
  CMatrix out(total_rows(), ambient_dim_);
  for (std::size_t i = 0; i < members_.size(); ++i) out.middleRows(offsets_[i], members_[i].rows()) = members_[i];
  return out;
}

OperatorFamily OperatorFamily::right_multiplied(const CMatrix& t) const {
  if (t.rows() != ambient_dim_ || t.cols() != ambient_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "right factor must be n x n");
  }
  std::vector<CMatrix> out;
  out.reserve(members_.size());
  for (const CMatrix& m : members_) out.emplace_back(m * t);
  return OperatorFamily(ambient_dim_, std::move(out));
}

bool OperatorFamily::operator==(const OperatorFamily& other) const {
  if (ambient_dim_ != other.ambient_dim_ || members_.size() != other.members_.size()) return false;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const CMatrix& a = members_[i];
    const CMatrix& b = other.members_[i];
    if (a.rows() != b.rows() || a != b) return false;
  }
  return true;
}

CVector analysis(const OperatorFamily& family, const CVector& f) {
  if (f.size() != family.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "analysis input has length " + std::to_string(f.size()));
  }
  CVector out(family.total_rows());
  for (std::size_t i = 0; i < family.size(); ++i) {
    out.segment(family.offsets()[i], family[i].rows()) = family[i] * f;
  }
  return out;
}

CVector synthesis(const OperatorFamily& family, const CVector& h) {
  if (h.size() != family.total_rows()) {
    throw Error(ErrorCode::DimensionMismatch, "synthesis input has length " + std::to_string(h.size()) +
                                                  ", expected " + std::to_string(family.total_rows()));
  }
  CVector out = CVector::Zero(family.ambient_dim());
  for (std::size_t i = 0; i < family.size(); ++i) {
    out.noalias() += family[i].adjoint() * h.segment(family.offsets()[i], family[i].rows());
  }
  return out;
}

CMatrix frame_operator(const OperatorFamily& family) {
  const Eigen::Index n = family.ambient_dim();
  CMatrix s = CMatrix::Zero(n, n);
  for (const CMatrix& m : family.members()) s.noalias() += m.adjoint() * m;
  return s;
}

ClassificationReport classify(const OperatorFamily& family, double tol) {
  ClassificationReport r;
  r.tol = tol;
  const CMatrix s = frame_operator(family);
  const HermitianExtremes e = hermitian_extremes(s);
  r.bounds = {std::max(e.lambda_min, 0.0), e.lambda_max};
  if (e.lambda_max <= 0.0) return r;

  r.is_frame = e.lambda_min > tol * e.lambda_max;

  const double b = e.lambda_max;
  r.alpha_star = Complex(1.0 / b, 0.0);
  const Eigen::Index n = family.ambient_dim();
  r.residual = op_norm(CMatrix::Identity(n, n) - s / b);
  r.residual_below_one = *r.residual < 1.0 - tol;

  try {
    (void)invert(s, tol);
    r.cert_invertible = true;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::Singular) throw;
  }

  // range(S) = C^n, read off a rank-revealing QR
  Eigen::ColPivHouseholderQR<CMatrix> qr(s);
  qr.setThreshold(tol);
  r.cert_surjective = qr.rank() == n;
  return r;
}

OperatorFamily canonical_dual(const OperatorFamily& family, double tol) {
  const ClassificationReport r = classify(family, tol);
  if (!r.is_frame) throw Error(ErrorCode::NotAFrame, "family has lower frame bound 0");
  return family.right_multiplied(invert(frame_operator(family), tol));
}

}  // namespace pairframe
