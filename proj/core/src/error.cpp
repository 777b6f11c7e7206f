#include "harmonic/error.hpp"

namespace harmonic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CenterMismatch: return "CenterMismatch";
    case ErrorCode::DivisionByZeroConstantTerm: return "DivisionByZeroConstantTerm";
    case ErrorCode::BranchPointAtCenter: return "BranchPointAtCenter";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::UnknownCatalogName: return "UnknownCatalogName";
    case ErrorCode::ShearSingularity: return "ShearSingularity";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DegenerateJet: return "DegenerateJet";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::CriticalPoint: return "CriticalPoint";
    case ErrorCode::DilatationZeroNeedsQ: return "DilatationZeroNeedsQ";
    case ErrorCode::QMismatch: return "QMismatch";
    case ErrorCode::StencilOutsideDomain: return "StencilOutsideDomain";
    case ErrorCode::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error& Error::prepend_path(std::string_view segment) {
  if (path_.empty()) {
    path_ = std::string(segment);
  } else {
    path_ = std::string(segment) + "/" + path_;
  }
  return *this;
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

void fail_at(ErrorCode code, const std::string& message, Complex z) {
  Error e(code, message);
  e.at(z);
  throw e;
}

}  // namespace harmonic
