#include "pairframe/error.hpp"

#include "pairframe/types.hpp"

#include <string>

namespace pairframe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::ExponentMismatch: return "ExponentMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
}

}  // namespace pairframe
