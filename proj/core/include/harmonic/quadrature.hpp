#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>

#include "harmonic/error.hpp"

namespace harmonic {

struct QuadratureConfig {
  int max_depth = 12;
  double abs_tol = 1e-8;
};

/// 16-point Gauss–Legendre rule on [-1, 1].
struct GaussLegendre16 {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;
};
const GaussLegendre16& gauss_legendre_16();

/// ∫ f(ζ) dζ along the segment [a, b] for a pair of integrands, by 16-point
/// Gauss–Legendre with bisection until halves agree to `abs_tol` or to rounding level.
using PairIntegrand = std::function<std::array<Complex, 2>(Complex)>;
std::array<Complex, 2> integrate_segment(const PairIntegrand& f, Complex a, Complex b,
                                         const QuadratureConfig& config = {});

/// Same integral along a polyline through the given vertices.
std::array<Complex, 2> integrate_path(const PairIntegrand& f, std::span<const Complex> vertices,
                                      const QuadratureConfig& config = {});

}  // namespace harmonic
