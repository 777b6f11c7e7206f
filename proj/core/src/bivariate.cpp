#include "harmonic/bivariate.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace harmonic {

BivariateCoeffs::BivariateCoeffs(Complex center, int degree)
    : center_(center),
      degree_(degree),
      table_(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2)) {}

std::size_t BivariateCoeffs::index(int m, int n) const {
  if (m < 0 || n < 0 || m + n > degree_) {
    fail(ErrorCode::ParameterOutOfRange, "bivariate coefficient index outside the table");
  }
  const int d = m + n;
  return static_cast<std::size_t>(d * (d + 1) / 2 + n);
}

Complex BivariateCoeffs::operator()(int m, int n) const { return table_[index(m, n)]; }
Complex& BivariateCoeffs::operator()(int m, int n) { return table_[index(m, n)]; }

BivariateCoeffs bivariate_extract(const SmoothMap& f, Complex center,
                                  const BivariateConfig& config) {
  const int degree = config.degree;
  const auto& radii = config.radii;
  const int num_radii = static_cast<int>(radii.size());
  const int angles = config.angles;
  if (degree < 0) fail(ErrorCode::ParameterOutOfRange, "negative degree");
  if (num_radii < (degree + 2) / 2) {
    fail(ErrorCode::ParameterOutOfRange, "need at least ceil((degree+1)/2) radii");
  }
  if (angles < 2 * degree + 1) {
    fail(ErrorCode::ParameterOutOfRange, "need at least 2*degree+1 angles");
  }
  double rho_max = 0.0;
  for (double r : radii) {
    if (!(r > 0.0)) fail(ErrorCode::ParameterOutOfRange, "radii must be positive");
    rho_max = std::max(rho_max, r);
  }

  // spectrum(i, k + degree) = (1/N) Σ_j F(center + ρ_i e^{iθ_j}) e^{-ikθ_j}
  Eigen::MatrixXcd spectrum(num_radii, 2 * degree + 1);
  std::vector<Complex> samples(static_cast<std::size_t>(angles));
  for (int i = 0; i < num_radii; ++i) {
    for (int j = 0; j < angles; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / angles;
      const Complex z = center + std::polar(radii[i], theta);
      samples[j] = f(z);
      if (!is_finite(samples[j])) fail_at(ErrorCode::NonFinite, "non-finite sample", z);
    }
    for (int k = -degree; k <= degree; ++k) {
      Complex s{};
      for (int j = 0; j < angles; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / angles;
        s += samples[j] * std::polar(1.0, -k * theta);
      }
      spectrum(i, k + degree) = s / static_cast<double>(angles);
    }
  }

  BivariateCoeffs out(center, degree);
  for (int k = -degree; k <= degree; ++k) {
    const int lowest = std::abs(k);
    // Unknown degrees lowest, lowest+2, ..., one per radius.
    Eigen::MatrixXd basis(num_radii, num_radii);
    for (int i = 0; i < num_radii; ++i) {
      for (int u = 0; u < num_radii; ++u) {
        basis(i, u) = std::pow(radii[i] / rho_max, lowest + 2 * u);
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (!(cond <= config.condition_threshold)) {
      fail_at(ErrorCode::IllConditioned, "radial fit is ill-conditioned", center);
    }
    const Eigen::MatrixXcd lhs = basis.cast<Complex>();
    const Eigen::VectorXcd rhs = spectrum.col(k + degree);
    const Eigen::VectorXcd scaled = lhs.colPivHouseholderQr().solve(rhs);
    for (int u = 0; u < num_radii; ++u) {
      const int d = lowest + 2 * u;
      if (d > degree) break;
      const int m = (d + k) / 2;
      const int n = (d - k) / 2;
      out(m, n) = scaled(u) / std::pow(rho_max, d);
    }
  }
  return out;
}

}  // namespace harmonic
