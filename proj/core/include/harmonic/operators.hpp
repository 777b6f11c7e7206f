#pragma once

#include <optional>
#include <string_view>

#include "harmonic/bivariate.hpp"
#include "harmonic/harmonic_map.hpp"

namespace harmonic {

enum class Operator { Pre, Schwarzian, Cdo, Jacobian, DbarPre, Laplacian };

/// "pre", "schw", "cdo", "jac", "dbarpre", "lap".
std::string_view operator_tag(Operator op);
/// Inverse of operator_tag; ParameterOutOfRange for an unknown tag.
Operator operator_from_tag(std::string_view tag);

struct OperatorValue {
  Complex value;
  Complex at;
  Operator op;
};

/// φ″/φ′.
Complex classical_pre_schwarzian(const AnalyticFunction& phi, Complex z);
/// φ‴/φ′ − (3/2)(φ″/φ′)².
Complex classical_schwarzian(const AnalyticFunction& phi, Complex z);

/// P_f = h″/h′ − conj(ω)ω′/(1 − |ω|²). Reversing maps are evaluated through conj(f).
Complex pre_schwarzian(const HarmonicMap& f, Complex z);
/// S_f = Sh + conj(ω)/(1 − |ω|²)·(h″/h′·ω′ − ω″) − 3/2·(ω′conj(ω)/(1 − |ω|²))².
Complex schwarzian(const HarmonicMap& f, Complex z);
/// Schwarzian built from a square root q of ω. Without q the principal √ω is
/// used, which needs ω(z) != 0 unless ω vanishes identically near z.
Complex cdo_schwarzian(const HarmonicMap& f, Complex z,
                       const std::optional<AnalyticFunction>& q = std::nullopt);

/// |h′|² − |g′|², negative for sense-reversing points.
double jacobian(const HarmonicMap& f, Complex z);
/// |ω′|²/(1 − |ω|²)², the modulus of ∂P_f/∂z̄ = −|ω′|²/(1 − |ω|²)².
double dbar_pre_schwarzian(const HarmonicMap& f, Complex z);
/// ∂²S_f/∂z∂z̄; the Laplacian is four times this.
Complex mixed_laplacian_schwarzian(const HarmonicMap& f, Complex z);

OperatorValue evaluate_operator(const HarmonicMap& f, Operator op, Complex z);

// ------------------------------------------------------------- oracles

/// δ_zz − ½δ_z² with δ = log J_f, from central differences on a 5×5 stencil.
Complex schwarzian_via_jacobian_fd(const HarmonicMap& f, Complex z, double step = 1e-3);
/// Classical Schwarzian of h − conj(ω(z0))·g at z0.
Complex lemma1_schwarzian(const HarmonicMap& f, Complex z0);

struct TamanoiResult {
  Complex value;
  Complex c20;
  Complex c30;
};
/// 6(c30 − c20²) for the deviation of f from its best harmonic Möbius map.
TamanoiResult tamanoi_expansion(const HarmonicMap& f, Complex z0,
                                const BivariateConfig& config = {});
Complex tamanoi_schwarzian(const HarmonicMap& f, Complex z0, const BivariateConfig& config = {});

}  // namespace harmonic
