#pragma once

#include <span>
#include <vector>

#include "harmonic/error.hpp"

namespace harmonic {

inline constexpr int kDefaultJetOrder = 4;

/// Truncated Taylor expansion of an analytic function at `center`.
/// coeffs[k] = f^(k)(center) / k!, for k = 0..order.
class Jet {
 public:
  Jet(Complex center, std::vector<Complex> coeffs);

  static Jet constant(Complex value, Complex center, int order);
  /// The identity map z at `center`: [center, 1, 0, ...].
  static Jet variable(Complex center, int order);

  Complex center() const noexcept { return center_; }
  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Complex value() const noexcept { return coeffs_.front(); }

  /// k-th derivative at the center, k! * coeffs[k].
  Complex derivative_at(int k) const;

  /// Jet of f' at the same center; order drops by one (order 0 gives the zero jet).
  Jet derivative() const;
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator*=(Complex s);

 private:
  Complex center_;
  std::vector<Complex> coeffs_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator*(Complex s, Jet a);
Jet operator*(Jet a, Complex s);
Jet operator+(Jet a, Complex s);
Jet operator+(Complex s, Jet a);
Jet operator-(Jet a, Complex s);
Jet operator-(Complex s, const Jet& a);

// Principal branches; a zero constant term raises BranchPointAtCenter.
Jet sqrt(const Jet& a);
Jet log(const Jet& a);
Jet exp(const Jet& a);
Jet pow(const Jet& a, Complex exponent);
/// Exact integer power by repeated squaring; negative exponents divide.
Jet pow(const Jet& a, long exponent);

/// Taylor jet of outer∘inner at inner.center(). Requires outer.center() to be
/// inner's value.
Jet compose(const Jet& outer, const Jet& inner);

}  // namespace harmonic
