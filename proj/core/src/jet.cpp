#include "harmonic/jet.hpp"

#include <cmath>

namespace harmonic {
namespace {

bool same_point(Complex a, Complex b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= 1e-13 * scale;
}

void require_compatible(const Jet& a, const Jet& b) {
  if (a.center() != b.center()) {
    fail(ErrorCode::CenterMismatch, "jets expanded at different centers");
  }
  if (a.order() != b.order()) {
    fail(ErrorCode::CenterMismatch, "jets have different orders");
  }
}

void require_nonzero_constant(const Jet& a, ErrorCode code, const char* what) {
  if (a.value() == Complex{}) fail_at(code, what, a.center());
}

}  // namespace

Jet::Jet(Complex center, std::vector<Complex> coeffs)
    : center_(center), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex{});
}

Jet Jet::constant(Complex value, Complex center, int order) {
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  c[0] = value;
  return {center, std::move(c)};
}

Jet Jet::variable(Complex center, int order) {
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  c[0] = center;
  if (order >= 1) c[1] = 1.0;
  return {center, std::move(c)};
}

Complex Jet::derivative_at(int k) const {
  double factorial = 1.0;
  for (int j = 2; j <= k; ++j) factorial *= j;
  return factorial * (*this)[k];
}

Jet Jet::derivative() const {
  const int n = order();
  if (n == 0) return constant(Complex{}, center_, 0);
  std::vector<Complex> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) c[k] = static_cast<double>(k + 1) * coeffs_[k + 1];
  return {center_, std::move(c)};
}

Jet Jet::truncated(int order) const {
  std::vector<Complex> c(coeffs_.begin(),
                         coeffs_.begin() + std::min<std::ptrdiff_t>(order + 1, coeffs_.size()));
  c.resize(static_cast<std::size_t>(order) + 1);
  return {center_, std::move(c)};
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
  require_compatible(*this, rhs);
  const std::size_t n = coeffs_.size();
  std::vector<Complex> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s{};
    for (std::size_t j = 0; j <= k; ++j) s += coeffs_[j] * rhs.coeffs_[k - j];
    c[k] = s;
  }
  coeffs_ = std::move(c);
  return *this;
}

Jet& Jet::operator/=(const Jet& rhs) {
  require_compatible(*this, rhs);
  require_nonzero_constant(rhs, ErrorCode::DivisionByZeroConstantTerm,
                           "division by a jet with zero constant term");
  const std::size_t n = coeffs_.size();
  std::vector<Complex> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = coeffs_[k];
    for (std::size_t j = 1; j <= k; ++j) s -= rhs.coeffs_[j] * c[k - j];
    c[k] = s / rhs.coeffs_[0];
  }
  coeffs_ = std::move(c);
  return *this;
}

Jet& Jet::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(const Jet& a, const Jet& b) {
  Jet r = a;
  return r *= b;
}
Jet operator/(const Jet& a, const Jet& b) {
  Jet r = a;
  return r /= b;
}
Jet operator*(Complex s, Jet a) { return a *= s; }
Jet operator*(Jet a, Complex s) { return a *= s; }
Jet operator+(Jet a, Complex s) {
  return a += Jet::constant(s, a.center(), a.order());
}
Jet operator+(Complex s, Jet a) { return std::move(a) + s; }
Jet operator-(Jet a, Complex s) {
  return a -= Jet::constant(s, a.center(), a.order());
}
Jet operator-(Complex s, const Jet& a) {
  return Jet::constant(s, a.center(), a.order()) - a;
}

Jet log(const Jet& a) {
  require_nonzero_constant(a, ErrorCode::BranchPointAtCenter, "log of a jet with zero constant term");
  // b' a = a'
  const int n = a.order();
  std::vector<Complex> b(static_cast<std::size_t>(n) + 1);
  b[0] = std::log(a[0]);
  for (int k = 1; k <= n; ++k) {
    Complex s = a[k];
    for (int j = 1; j < k; ++j) s -= (static_cast<double>(j) / k) * b[j] * a[k - j];
    b[k] = s / a[0];
  }
  return {a.center(), std::move(b)};
}

Jet exp(const Jet& a) {
  // b' = a' b
  const int n = a.order();
  std::vector<Complex> b(static_cast<std::size_t>(n) + 1);
  b[0] = std::exp(a[0]);
  for (int k = 1; k <= n; ++k) {
    Complex s{};
    for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * b[k - j];
    b[k] = s / static_cast<double>(k);
  }
  return {a.center(), std::move(b)};
}

namespace {

// a b' = e a' b, seeded with b0.
Jet power_series(const Jet& a, Complex e, Complex b0) {
  const int n = a.order();
  std::vector<Complex> b(static_cast<std::size_t>(n) + 1);
  b[0] = b0;
  for (int k = 1; k <= n; ++k) {
    Complex s{};
    for (int j = 1; j <= k; ++j) {
      s += (e * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * b[k - j];
    }
    b[k] = s / (static_cast<double>(k) * a[0]);
  }
  return {a.center(), std::move(b)};
}

}  // namespace

Jet sqrt(const Jet& a) {
  require_nonzero_constant(a, ErrorCode::BranchPointAtCenter, "sqrt of a jet with zero constant term");
  return power_series(a, 0.5, std::sqrt(a[0]));
}

Jet pow(const Jet& a, Complex exponent) {
  require_nonzero_constant(a, ErrorCode::BranchPointAtCenter, "pow of a jet with zero constant term");
  return power_series(a, exponent, std::exp(exponent * std::log(a[0])));
}

Jet pow(const Jet& a, long exponent) {
  if (exponent < 0) {
    return Jet::constant(1.0, a.center(), a.order()) / pow(a, -exponent);
  }
  Jet result = Jet::constant(1.0, a.center(), a.order());
  Jet base = a;
  auto e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

Jet compose(const Jet& outer, const Jet& inner) {
  if (!same_point(outer.center(), inner.value())) {
    fail(ErrorCode::CenterMismatch, "outer jet is not expanded at the inner value");
  }
  if (outer.order() != inner.order()) {
    fail(ErrorCode::CenterMismatch, "jets have different orders");
  }
  // inner = w0 + u with u(center) = 0; Horner in u, truncated.
  Jet u = inner;
  u = u - inner.value();
  const int n = outer.order();
  Jet result = Jet::constant(outer[n], inner.center(), n);
  for (int k = n - 1; k >= 0; --k) {
    result *= u;
    result = result + outer[k];
  }
  return result;
}

}  // namespace harmonic
