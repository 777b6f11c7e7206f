#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace harmonic {

using Complex = std::complex<double>;

enum class ErrorCode {
  // jet-core
  CenterMismatch,
  DivisionByZeroConstantTerm,
  BranchPointAtCenter,
  IllConditioned,
  // analytic-expr
  SyntaxError,
  UnknownIdentifier,
  // harmonic-map
  UnknownCatalogName,
  ShearSingularity,
  ParameterOutOfRange,
  QuadratureFailure,
  DegenerateJet,
  // operators
  DomainError,
  CriticalPoint,
  DilatationZeroNeedsQ,
  QMismatch,
  StencilOutsideDomain,
  // norms-criteria
  NonFinite,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. `code` identifies the failure,
/// `point` the evaluation point when one is involved, `offset` the byte offset
/// for parse failures and `path` the expression-tree path for evaluation
/// failures inside user expressions.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Complex>& point() const noexcept { return point_; }
  const std::optional<std::size_t>& offset() const noexcept { return offset_; }
  const std::string& path() const noexcept { return path_; }

  Error& at(Complex z) {
    if (!point_) point_ = z;
    return *this;
  }
  Error& at_offset(std::size_t offset) {
    offset_ = offset;
    return *this;
  }
  Error& prepend_path(std::string_view segment);

 private:
  ErrorCode code_;
  std::optional<Complex> point_;
  std::optional<std::size_t> offset_;
  std::string path_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);
[[noreturn]] void fail_at(ErrorCode code, const std::string& message, Complex z);

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace harmonic
