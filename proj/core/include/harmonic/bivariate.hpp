#pragma once

#include <functional>
#include <vector>

#include "harmonic/error.hpp"

namespace harmonic {

/// Coefficients c_mn of a smooth map F(center + t) = Σ c_mn t^m conj(t)^n,
/// complete for m + n <= degree.
class BivariateCoeffs {
 public:
  BivariateCoeffs(Complex center, int degree);

  Complex center() const noexcept { return center_; }
  int degree() const noexcept { return degree_; }

  Complex operator()(int m, int n) const;
  Complex& operator()(int m, int n);

 private:
  std::size_t index(int m, int n) const;

  Complex center_;
  int degree_;
  std::vector<Complex> table_;
};

struct BivariateConfig {
  int degree = 3;
  std::vector<double> radii{0.01, 0.02, 0.03};
  int angles = 64;
  double condition_threshold = 1e8;
};

using SmoothMap = std::function<Complex(Complex)>;

/// Samples F on circles center + ρe^{iθ}, takes a DFT in θ (frequency m − n)
/// and fits powers ρ^{m+n} across radii. Each frequency is fitted with one
/// unknown per radius, so degrees above `degree` absorb truncation error.
BivariateCoeffs bivariate_extract(const SmoothMap& f, Complex center,
                                  const BivariateConfig& config = {});

}  // namespace harmonic
