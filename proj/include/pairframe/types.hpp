#pragma once

#include <complex>

#include <Eigen/Dense>

namespace pairframe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const CMatrix& m, const char* what);

/// Throws NonSquare unless rows == cols.
void require_square(const CMatrix& m, const char* what);

}  // namespace pairframe
