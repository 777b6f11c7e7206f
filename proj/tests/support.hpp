#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "harmonic/norms.hpp"
#include "oracles.hpp"

namespace harmonic::testing {

inline Complex random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
}

inline Complex random_complex(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline double scaled_diff(Complex a, Complex b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

#define EXPECT_CNEAR(a, b, tol) \
  EXPECT_LE(::harmonic::testing::scaled_diff((a), (b)), (tol)) << (a) << " vs " << (b)

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no harmonic::Error thrown";
  return ErrorCode::NonFinite;
}

}  // namespace harmonic::testing
