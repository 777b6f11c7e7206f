#include "harmonic/quadrature.hpp"

#include <limits>
#include <numbers>

namespace harmonic {
namespace {

GaussLegendre16 make_rule() {
  GaussLegendre16 rule{};
  constexpr int n = 16;
  for (int i = 0; i < n / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

std::array<Complex, 2> rule_on(const PairIntegrand& f, Complex a, Complex b) {
  const auto& rule = gauss_legendre_16();
  const Complex mid = 0.5 * (a + b);
  const Complex half = 0.5 * (b - a);
  std::array<Complex, 2> sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const auto v = f(mid + half * rule.nodes[i]);
    sum[0] += rule.weights[i] * v[0];
    sum[1] += rule.weights[i] * v[1];
  }
  sum[0] *= half;
  sum[1] *= half;
  return sum;
}

std::array<Complex, 2> adapt(const PairIntegrand& f, Complex a, Complex b,
                             const std::array<Complex, 2>& whole, double tol, int depth,
                             const QuadratureConfig& config) {
  const Complex m = 0.5 * (a + b);
  const auto left = rule_on(f, a, m);
  const auto right = rule_on(f, m, b);
  const std::array<Complex, 2> halves{left[0] + right[0], left[1] + right[1]};
  const double err = std::max(std::abs(halves[0] - whole[0]), std::abs(halves[1] - whole[1]));
  const double scale = std::max(std::abs(halves[0]), std::abs(halves[1]));
  if (err <= tol || err <= 64.0 * std::numeric_limits<double>::epsilon() * scale) return halves;
  if (depth >= config.max_depth) {
    fail_at(ErrorCode::QuadratureFailure, "quadrature tolerance not reached at maximum depth", b);
  }
  const auto l = adapt(f, a, m, left, 0.5 * tol, depth + 1, config);
  const auto r = adapt(f, m, b, right, 0.5 * tol, depth + 1, config);
  return {l[0] + r[0], l[1] + r[1]};
}

}  // namespace

const GaussLegendre16& gauss_legendre_16() {
  static const GaussLegendre16 rule = make_rule();
  return rule;
}

std::array<Complex, 2> integrate_segment(const PairIntegrand& f, Complex a, Complex b,
                                         const QuadratureConfig& config) {
  if (a == b) return {};
  const auto whole = rule_on(f, a, b);
  return adapt(f, a, b, whole, config.abs_tol, 1, config);
}

std::array<Complex, 2> integrate_path(const PairIntegrand& f, std::span<const Complex> vertices,
                                      const QuadratureConfig& config) {
  std::array<Complex, 2> total{};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const auto part = integrate_segment(f, vertices[i - 1], vertices[i], config);
    total[0] += part[0];
    total[1] += part[1];
  }
  return total;
}

}  // namespace harmonic
