#include "harmonic/jet.hpp"

#include "support.hpp"

namespace harmonic {
namespace {

using testing::random_complex;

void expect_coeffs(const Jet& j, std::initializer_list<Complex> want, double tol = 1e-14) {
  ASSERT_EQ(j.order() + 1, static_cast<int>(want.size()));
  int k = 0;
  for (Complex w : want) {
    EXPECT_LE(std::abs(j[k] - w), tol) << "coefficient " << k << ": " << j[k] << " vs " << w;
    ++k;
  }
}

Jet random_jet(std::mt19937_64& rng, Complex center, int order) {
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  for (auto& x : c) x = random_complex(rng, 1.0);
  c[0] += Complex(1.5, 0.0);
  return Jet(center, c);
}

TEST(JetArith, GeometricSeries) {
  const Jet z = Jet::variable(0.0, 3);
  expect_coeffs(Jet::constant(1.0, 0.0, 3) / (1.0 - z), {1, 1, 1, 1});
}

TEST(JetArith, PolynomialSquare) {
  const Jet z = Jet::variable(0.0, 3);
  expect_coeffs((1.0 - z) * (1.0 - z), {1, -2, 1, 0});
}

TEST(JetArith, KoebeDerivativeSeries) {
  // (1+z)·Σ C(n+2,2) zⁿ = 1 + 4z + 9z² + ...
  const Jet z = Jet::variable(0.0, 2);
  const Jet one_minus = 1.0 - z;
  const Jet kp = (1.0 + z) / (one_minus * one_minus * one_minus);
  const double binom[] = {1.0, 3.0, 6.0};
  expect_coeffs(kp, {binom[0], binom[1] + binom[0], binom[2] + binom[1]});
  expect_coeffs(kp, {1, 4, 9});
}

TEST(JetArith, CenterAndOrderMismatch) {
  const Jet a = Jet::variable(0.0, 3);
  const Jet b = Jet::variable(0.5, 3);
  const Jet c = Jet::variable(0.0, 2);
  EXPECT_EQ(testing::error_code_of([&] { (void)(a + b); }), ErrorCode::CenterMismatch);
  EXPECT_EQ(testing::error_code_of([&] { (void)(a * c); }), ErrorCode::CenterMismatch);
}

TEST(JetArith, DivisionByZeroConstant) {
  const Jet z = Jet::variable(0.0, 3);
  EXPECT_EQ(testing::error_code_of([&] { (void)(Jet::constant(1.0, 0.0, 3) / z); }),
            ErrorCode::DivisionByZeroConstantTerm);
}

TEST(JetArith, DerivativeShiftsCoefficients) {
  const Jet j(0.0, {1.0, 2.0, 3.0, 4.0});
  expect_coeffs(j.derivative(), {2, 6, 12});
  EXPECT_EQ(j.derivative_at(3), Complex(24.0));
  expect_coeffs(j.truncated(1), {1, 2});
}

TEST(JetTranscend, MercatorSeries) {
  const Jet z = Jet::variable(0.0, 3);
  expect_coeffs(log(1.0 - z), {0, -1, -0.5, -1.0 / 3.0});
}

TEST(JetTranscend, SqrtOfConstant) {
  expect_coeffs(sqrt(Jet(0.0, {4.0, 0.0, 0.0})), {2, 0, 0});
}

TEST(JetTranscend, ExpLogInverse) {
  const Jet z = Jet::variable(0.0, 4);
  expect_coeffs(exp(log(1.0 - z)), {1, -1, 0, 0, 0});
}

TEST(JetTranscend, ExpSeries) {
  const Jet e = exp(Jet::variable(0.0, 5));
  double fact = 1.0;
  for (int k = 0; k <= 5; ++k) {
    if (k > 0) fact *= k;
    EXPECT_NEAR(std::abs(e[k] - 1.0 / fact), 0.0, 1e-15);
  }
}

TEST(JetTranscend, BranchPointAtCenter) {
  const Jet z = Jet::variable(0.0, 3);
  EXPECT_EQ(testing::error_code_of([&] { (void)log(z); }), ErrorCode::BranchPointAtCenter);
  EXPECT_EQ(testing::error_code_of([&] { (void)sqrt(z); }), ErrorCode::BranchPointAtCenter);
  EXPECT_EQ(testing::error_code_of([&] { (void)pow(z, Complex(0.5)); }),
            ErrorCode::BranchPointAtCenter);
}

TEST(JetTranscend, PrincipalBranch) {
  const Jet j = sqrt(Jet::constant(-4.0, 0.0, 2));
  EXPECT_LE(std::abs(j.value() - Complex(0.0, 2.0)), 1e-15);
}

TEST(JetCompose, SquareOfShift) {
  const Jet outer(1.0, {1.0, 2.0, 1.0, 0.0, 0.0});  // w² at 1
  const Jet inner(0.0, {1.0, 1.0, 0.0, 0.0, 0.0});  // 1 + z at 0
  expect_coeffs(compose(outer, inner), {1, 2, 1, 0, 0});
}

TEST(JetCompose, IdentityOuter) {
  std::mt19937_64 rng(1);
  const Jet inner = random_jet(rng, 0.2, 4);
  const Jet outer = Jet::variable(inner.value(), 4);
  const Jet c = compose(outer, inner);
  for (int k = 0; k <= 4; ++k) EXPECT_LE(std::abs(c[k] - inner[k]), 1e-15);
}

TEST(JetCompose, KoebeOfHalf) {
  // k(z/2) = Σ n (z/2)ⁿ
  const int order = 4;
  std::vector<Complex> kc(order + 1);
  for (int n = 0; n <= order; ++n) kc[static_cast<std::size_t>(n)] = n;
  const Jet k(0.0, kc);
  const Jet half = 0.5 * Jet::variable(0.0, order);
  const Jet c = compose(k, half);
  for (int n = 0; n <= order; ++n) EXPECT_NEAR(std::abs(c[n] - n * std::pow(0.5, n)), 0.0, 1e-15);
}

TEST(JetCompose, CenterMismatch) {
  const Jet outer = Jet::variable(0.3, 3);
  const Jet inner = Jet::variable(0.0, 3);
  EXPECT_EQ(testing::error_code_of([&] { (void)compose(outer, inner); }),
            ErrorCode::CenterMismatch);
}

TEST(JetProperty, DivMulRoundTrip) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex c = random_complex(rng, 0.5);
    const Jet a = random_jet(rng, c, 4);
    Jet b = random_jet(rng, c, 4);
    if (std::abs(b.value()) < 1e-3) continue;
    const Jet r = (a / b) * b;
    double scale = 0.0;
    for (int k = 0; k <= 4; ++k) scale = std::max(scale, std::abs(a[k]));
    for (int k = 0; k <= 4; ++k) EXPECT_LE(std::abs(r[k] - a[k]), 1e-12 * scale);
  }
}

TEST(JetProperty, SqrtSquaredAndIntegerPower) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Jet a = random_jet(rng, 0.1, 4);
    const Jet s = sqrt(a);
    const Jet sq = s * s;
    for (int k = 0; k <= 4; ++k) EXPECT_LE(std::abs(sq[k] - a[k]), 1e-12 * (1.0 + std::abs(a[k])));
    if (a.value().real() <= 0.0) continue;
    const Jet p1 = pow(a, 3L);
    const Jet p2 = pow(a, Complex(3.0));
    for (int k = 0; k <= 4; ++k) {
      EXPECT_LE(std::abs(p1[k] - p2[k]), 1e-12 * (1.0 + std::abs(p1[k])));
    }
    const Jet inv = pow(a, -2L) * a * a;
    EXPECT_LE(std::abs(inv[0] - 1.0), 1e-13);
  }
}

// Derivatives carried by jets agree with central differences of the value map.
TEST(JetProperty, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(4);
  const std::function<Jet(const Jet&)> programs[] = {
      [](const Jet& z) { return exp(z) / (2.0 - z); },
      [](const Jet& z) { return log(1.0 + z * z) * sqrt(3.0 + z); },
      [](const Jet& z) { return pow(1.5 - z, Complex(0.3, 0.2)) + z * z * z; },
      [](const Jet& z) { return compose(exp(Jet::variable(z.value() * z.value(), z.order())), z * z); },
  };
  for (const auto& program : programs) {
    for (int trial = 0; trial < 10; ++trial) {
      const Complex z0 = testing::random_point(rng, 0.5);
      const Jet j = program(Jet::variable(z0, 4));
      auto value = [&](Complex z) { return program(Jet::variable(z, 0)).value(); };
      const double h = 1e-5;
      const Complex fd = (value(z0 + h) - value(z0 - h)) / (2.0 * h);
      EXPECT_LE(std::abs(fd - j.derivative_at(1)), 1e-6 * std::max(1.0, std::abs(fd)));
      // The same derivative along the imaginary axis confirms analyticity.
      const Complex fdi = (value(z0 + Complex(0, h)) - value(z0 - Complex(0, h))) / Complex(0, 2.0 * h);
      EXPECT_LE(std::abs(fdi - j.derivative_at(1)), 1e-6 * std::max(1.0, std::abs(fdi)));
    }
  }
}

}  // namespace
}  // namespace harmonic
