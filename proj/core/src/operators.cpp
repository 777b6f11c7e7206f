#include "harmonic/operators.hpp"

#include <array>
#include <cmath>

namespace harmonic {

namespace {

constexpr std::array<std::string_view, 6> kTags{"pre", "schw", "cdo", "jac", "dbarpre", "lap"};

// 1 − |w|² without the cancellation of 1 − w·conj(w).
double one_minus_norm(Complex w) {
  const double r = std::abs(w);
  return (1.0 - r) * (1.0 + r);
}

// Point data of a sense-preserving map: h′, h″, h‴ and ω, ω′, ω″, ω‴.
struct Local {
  Complex hp, hpp, hppp;
  Complex w, w1, w2, w3;
  double d;  // 1 − |ω|²

  Complex h2() const { return hpp / hp; }
  Complex h3() const { return hppp / hp; }
  Complex sh() const { return h3() - 1.5 * h2() * h2(); }
};

Local local(const HarmonicMap& f, Complex z) {
  const HarmonicMap& g = f.sense() == Sense::Preserving ? f : conjugate(f);
  const LocalJets jets = g.local_jets(z, 3);
  Local p{jets.hp.derivative_at(0),    jets.hp.derivative_at(1),    jets.hp.derivative_at(2),
          jets.omega.derivative_at(0), jets.omega.derivative_at(1), jets.omega.derivative_at(2),
          jets.omega.derivative_at(3), 0.0};
  if (p.hp == Complex{}) fail_at(ErrorCode::DomainError, "h' vanishes", z);
  if (!(std::abs(p.w) < 1.0)) fail_at(ErrorCode::DomainError, "|omega| >= 1", z);
  p.d = one_minus_norm(p.w);
  return p;
}

Complex schwarzian_of_derivative_jet(const Jet& d) {
  const Complex a = d.derivative_at(0);
  const Complex r1 = d.derivative_at(1) / a;
  return d.derivative_at(2) / a - 1.5 * r1 * r1;
}

}  // namespace

std::string_view operator_tag(Operator op) { return kTags[static_cast<std::size_t>(op)]; }

Operator operator_from_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kTags.size(); ++i) {
    if (kTags[i] == tag) return static_cast<Operator>(i);
  }
  fail(ErrorCode::ParameterOutOfRange, "unknown operator '" + std::string(tag) + "'");
}

Complex classical_pre_schwarzian(const AnalyticFunction& phi, Complex z) {
  const Jet j = phi.jet(z, 2);
  if (j[1] == Complex{}) fail_at(ErrorCode::CriticalPoint, "phi' vanishes", z);
  return j.derivative_at(2) / j[1];
}

Complex classical_schwarzian(const AnalyticFunction& phi, Complex z) {
  const Jet j = phi.jet(z, 3);
  if (j[1] == Complex{}) fail_at(ErrorCode::CriticalPoint, "phi' vanishes", z);
  return schwarzian_of_derivative_jet(j.derivative());
}

Complex pre_schwarzian(const HarmonicMap& f, Complex z) {
  const Local p = local(f, z);
  return p.h2() - std::conj(p.w) * p.w1 / p.d;
}

Complex schwarzian(const HarmonicMap& f, Complex z) {
  const Local p = local(f, z);
  const Complex t = p.w1 * std::conj(p.w) / p.d;
  return p.sh() + std::conj(p.w) / p.d * (p.h2() * p.w1 - p.w2) - 1.5 * t * t;
}

Complex cdo_schwarzian(const HarmonicMap& f, Complex z, const std::optional<AnalyticFunction>& q) {
  const HarmonicMap& g = f.sense() == Sense::Preserving ? f : conjugate(f);
  const LocalJets jets = g.local_jets(z, 3);
  const Complex hp = jets.hp.derivative_at(0);
  if (hp == Complex{}) fail_at(ErrorCode::DomainError, "h' vanishes", z);
  const Jet omega = jets.omega.truncated(2);
  Jet qj = Jet::constant(0.0, z, 2);
  if (q) {
    qj = q->jet(z, 2);
    const Jet sq = qj * qj;
    for (int k = 0; k <= 2; ++k) {
      if (std::abs(sq[k] - omega[k]) > 1e-10 * (1.0 + std::abs(omega[k]))) {
        fail_at(ErrorCode::QMismatch, "q^2 does not match the dilatation", z);
      }
    }
  } else if (omega.value() != Complex{}) {
    qj = sqrt(omega);
  } else {
    for (int k = 1; k <= 2; ++k) {
      if (omega[k] != Complex{}) {
        fail_at(ErrorCode::DilatationZeroNeedsQ, "omega vanishes here; supply q", z);
      }
    }
  }
  const Complex h2 = jets.hp.derivative_at(1) / hp;
  const Complex h3 = jets.hp.derivative_at(2) / hp;
  const Complex q0 = qj[0], q1 = qj.derivative_at(1), q2 = qj.derivative_at(2);
  const double den = 1.0 + std::norm(q0);
  const Complex t = q1 * std::conj(q0) / den;
  return h3 - 1.5 * h2 * h2 + 2.0 * std::conj(q0) / den * (q2 - q1 * h2) - 4.0 * t * t;
}

double jacobian(const HarmonicMap& f, Complex z) {
  const LocalJets jets = f.local_jets(z, 0);
  const Complex hp = jets.hp.value();
  const Complex gp = jets.gp.value();
  if (hp == Complex{}) return -std::norm(gp);
  const double r = std::abs(jets.omega.value());
  if (r <= 1.0) return std::norm(hp) * (1.0 - r) * (1.0 + r);
  const double s = 1.0 / r;
  return -std::norm(gp) * (1.0 - s) * (1.0 + s);
}

double dbar_pre_schwarzian(const HarmonicMap& f, Complex z) {
  const Local p = local(f, z);
  return std::norm(p.w1) / (p.d * p.d);
}

Complex mixed_laplacian_schwarzian(const HarmonicMap& f, Complex z) {
  const Local p = local(f, z);
  const Complex h2 = p.h2();
  const Complex phi1 = p.w1 * h2 - p.w2;
  const Complex phi1p = p.w2 * h2 + p.w1 * (p.h3() - h2 * h2) - p.w3;
  const Complex phi2 = phi1 * p.w1 - 3.0 * p.w1 * p.w2;
  const Complex wb = std::conj(p.w);
  const Complex w1b = std::conj(p.w1);
  const double d = p.d;
  return phi2 * 2.0 * wb * w1b / (d * d * d) + phi1p * w1b / (d * d) -
         9.0 * p.w1 * p.w1 * p.w1 * wb * wb * w1b / (d * d * d * d);
}

OperatorValue evaluate_operator(const HarmonicMap& f, Operator op, Complex z) {
  Complex v;
  switch (op) {
    case Operator::Pre: v = pre_schwarzian(f, z); break;
    case Operator::Schwarzian: v = schwarzian(f, z); break;
    case Operator::Cdo: v = cdo_schwarzian(f, z); break;
    case Operator::Jacobian: v = jacobian(f, z); break;
    case Operator::DbarPre: v = dbar_pre_schwarzian(f, z); break;
    case Operator::Laplacian: v = mixed_laplacian_schwarzian(f, z); break;
  }
  if (!is_finite(v)) fail_at(ErrorCode::NonFinite, "operator value is not finite", z);
  return {v, z, op};
}

Complex schwarzian_via_jacobian_fd(const HarmonicMap& f, Complex z, double step) {
  if (!(step > 0.0)) fail(ErrorCode::ParameterOutOfRange, "step must be positive");
  if (std::abs(z) + 2.0 * std::sqrt(2.0) * step >= 1.0) {
    fail_at(ErrorCode::StencilOutsideDomain, "stencil leaves the unit disk", z);
  }
  const HarmonicMap& g = f.sense() == Sense::Preserving ? f : conjugate(f);
  double delta[5][5];
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const Complex zeta = z + Complex((i - 2) * step, (j - 2) * step);
      double jac = 0.0;
      try {
        jac = jacobian(g, zeta);
      } catch (const Error&) {
        fail_at(ErrorCode::StencilOutsideDomain, "stencil meets a singular point", z);
      }
      if (!(jac > 0.0)) fail_at(ErrorCode::StencilOutsideDomain, "J_f <= 0 on the stencil", z);
      delta[i][j] = std::log(jac);
    }
  }
  static constexpr double d1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  static constexpr double d2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  double dx = 0.0, dy = 0.0, dxx = 0.0, dyy = 0.0, dxy = 0.0;
  for (int k = 0; k < 5; ++k) {
    dx += d1[k] * delta[k][2];
    dy += d1[k] * delta[2][k];
    dxx += d2[k] * delta[k][2];
    dyy += d2[k] * delta[2][k];
    for (int l = 0; l < 5; ++l) dxy += d1[k] * d1[l] * delta[k][l];
  }
  const double h = step;
  dx /= 12.0 * h;
  dy /= 12.0 * h;
  dxx /= 12.0 * h * h;
  dyy /= 12.0 * h * h;
  dxy /= 144.0 * h * h;
  const Complex dz = Complex(dx, -dy) / 2.0;
  const Complex dzz = Complex(dxx - dyy, -2.0 * dxy) / 4.0;
  return dzz - 0.5 * dz * dz;
}

Complex lemma1_schwarzian(const HarmonicMap& f, Complex z0) {
  const HarmonicMap& g = f.sense() == Sense::Preserving ? f : conjugate(f);
  const LocalJets jets = g.local_jets(z0, 2);
  const Complex w0 = jets.omega.value();
  if (!(std::abs(w0) < 1.0)) fail_at(ErrorCode::DomainError, "|omega| >= 1", z0);
  const Jet d = jets.hp - std::conj(w0) * jets.gp;
  if (d.value() == Complex{}) fail_at(ErrorCode::DomainError, "h' - conj(omega) g' vanishes", z0);
  return schwarzian_of_derivative_jet(d);
}

TamanoiResult tamanoi_expansion(const HarmonicMap& f, Complex z0, const BivariateConfig& config) {
  const HarmonicMap g = oriented(f);
  const BestMobius best = best_harmonic_mobius(g, z0);
  const SmoothMap deviation = [&](Complex z) { return best.deviation(g.increment(z0, z - z0)); };
  const BivariateCoeffs c = bivariate_extract(deviation, z0, config);
  const Complex c20 = c(2, 0);
  const Complex c30 = c(3, 0);
  return {6.0 * (c30 - c20 * c20), c20, c30};
}

Complex tamanoi_schwarzian(const HarmonicMap& f, Complex z0, const BivariateConfig& config) {
  return tamanoi_expansion(f, z0, config).value;
}

}  // namespace harmonic
