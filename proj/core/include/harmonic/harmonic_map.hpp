#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "harmonic/expr.hpp"
#include "harmonic/quadrature.hpp"

namespace harmonic {

enum class Sense { Preserving, Reversing };

inline Sense flipped(Sense s) {
  return s == Sense::Preserving ? Sense::Reversing : Sense::Preserving;
}

/// A(w) = a·w + b·conj(w) + c with |a| != |b|.
class AffineMap {
 public:
  AffineMap(Complex a, Complex b, Complex c = {});

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  bool sense_preserving() const noexcept { return std::abs(a_) > std::abs(b_); }
  Complex operator()(Complex w) const { return a_ * w + b_ * std::conj(w) + c_; }

 private:
  Complex a_, b_, c_;
};

/// w ↦ (a·w + b) / (c·w + d) with ad − bc != 0.
class MobiusMap {
 public:
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }
  Complex determinant() const noexcept { return a_ * d_ - b_ * c_; }

  Complex operator()(Complex w) const { return (a_ * w + b_) / (c_ * w + d_); }
  Complex derivative(Complex w) const;
  Complex second_derivative(Complex w) const;
  MobiusMap inverse() const { return {d_, -b_, -c_, a_}; }

  /// Same transformation (coefficients agree up to a common factor).
  bool equivalent(const MobiusMap& other, double tol = 1e-12) const;
  AnalyticFunction as_function() const;

 private:
  Complex a_, b_, c_, d_;
};

/// M = T + α·conj(T) with |α| < 1.
class HarmonicMobius {
 public:
  HarmonicMobius(MobiusMap t, Complex alpha);

  const MobiusMap& transform() const noexcept { return t_; }
  Complex alpha() const noexcept { return alpha_; }

  Complex operator()(Complex w) const {
    const Complex v = t_(w);
    return v + alpha_ * std::conj(v);
  }
  /// Undoes the α-part by u = (w − α·conj(w)) / (1 − |α|²), then applies T⁻¹.
  Complex inverse(Complex w) const;

 private:
  MobiusMap t_;
  Complex alpha_;
};

class HarmonicMap;

/// Derivative jets at a point: h′, g′ and ω = g′/h′, all of the same order.
struct LocalJets {
  Jet hp;
  Jet gp;
  Jet omega;
};

/// f = h + conj(g). Stored either by its parts (h, g) or in dilatation form
/// (h′, ω, h(0)) with g′ = ω·h′ and g(0) = 0. The sense flag is recorded,
/// not inferred; |ω| < 1 is checked where operators evaluate.
class HarmonicMap {
 public:
  enum class Form { Parts, Dilatation };

  static HarmonicMap from_parts(AnalyticFunction h, AnalyticFunction g,
                                Sense sense = Sense::Preserving, std::string label = {});
  static HarmonicMap analytic(AnalyticFunction h, std::string label = {});
  static HarmonicMap from_dilatation(AnalyticFunction hprime, AnalyticFunction omega,
                                     Complex h0 = {}, Sense sense = Sense::Preserving,
                                     std::string label = {});

  Form form() const noexcept { return form_; }
  Sense sense() const noexcept { return sense_; }
  const std::string& label() const noexcept { return label_; }

  // Parts form: h and g. Dilatation form: h′ and ω, plus h(0).
  const AnalyticFunction& first() const noexcept { return first_; }
  const AnalyticFunction& second() const noexcept { return second_; }
  Complex h0() const noexcept { return h0_; }

  /// Derivative jets of order `order` at z.
  LocalJets local_jets(Complex z, int order = kDefaultJetOrder) const;

  /// h′ as an analytic function (symbolic derivative in parts form).
  AnalyticFunction hprime() const;
  /// ω as an analytic function (g′/h′ in parts form).
  AnalyticFunction dilatation() const;

  /// f(z) = h(z) + conj(g(z)); dilatation form integrates along [0, z].
  Complex value(Complex z, const QuadratureConfig& config = {}) const;
  /// Dilatation form integrated along a polyline starting at 0.
  Complex value_along(std::span<const Complex> path, const QuadratureConfig& config = {}) const;
  /// f(z0 + t) − f(z0), accurate for small t.
  Complex increment(Complex z0, Complex t) const;

  /// Parts form only: closed forms of h′ and g′ used for derivative jets in
  /// place of differentiating h and g. They must be the derivatives of h and g.
  HarmonicMap with_derivatives(AnalyticFunction hprime, AnalyticFunction gprime) const;
  bool has_derivatives() const noexcept { return derivatives_.has_value(); }
  /// g′ as an analytic function (ω·h′ in dilatation form).
  AnalyticFunction gprime() const;

  HarmonicMap with_label(std::string label) const;
  HarmonicMap with_sense(Sense sense) const;

  /// e^{2iθ} of the shear that produced this map, when applicable.
  const std::optional<Complex>& shear_rotation() const noexcept { return shear_rotation_; }
  HarmonicMap with_shear_rotation(Complex rotation) const;

 private:
  HarmonicMap(Form form, AnalyticFunction first, AnalyticFunction second, Complex h0, Sense sense,
              std::string label);

  Form form_;
  AnalyticFunction first_;
  AnalyticFunction second_;
  Complex h0_;
  Sense sense_;
  std::string label_;
  std::optional<Complex> shear_rotation_;
  std::optional<std::pair<AnalyticFunction, AnalyticFunction>> derivatives_;
};

// ---------------------------------------------------------------- catalog

/// Analytic primitives: k, l, s, q2.
AnalyticFunction catalog_function(std::string_view name);
/// Harmonic maps: K, L, S1, S2, K2 (parts form, sense-preserving).
HarmonicMap catalog_map(std::string_view name);
/// Either kind by name; throws UnknownCatalogName.
std::variant<HarmonicMap, AnalyticFunction> catalog(std::string_view name);
std::span<const std::string_view> catalog_names();

/// φ_a(z) = (a + z) / (1 + conj(a)·z).
AnalyticFunction disk_automorphism(Complex a);

// ---------------------------------------------------------- constructions

/// h − e^{2iθ}g = φ, g′ = ω·h′, g(0) = 0.
HarmonicMap shear(const AnalyticFunction& phi, const AnalyticFunction& omega, double theta);

/// A∘f.
HarmonicMap affine_compose(const AffineMap& a, const HarmonicMap& f);

/// f∘φ.
HarmonicMap precompose(const HarmonicMap& f, const AnalyticFunction& phi);

/// conj(f) = g + conj(h); conjugate(conjugate(f)) returns the same trees.
HarmonicMap conjugate(const HarmonicMap& f);

/// The sense-preserving member of {f, conj(f)}.
HarmonicMap oriented(const HarmonicMap& f);

struct GroupElement {
  enum class Kind { Rp, Rq, I };
  Kind kind;
  Complex parameter;

  static GroupElement rp(Complex lambda) { return {Kind::Rp, lambda}; }
  static GroupElement rq(Complex mu) { return {Kind::Rq, mu}; }
  static GroupElement inversion(Complex a) { return {Kind::I, a}; }
};

/// Rp(λ): (λh, λg); Rq(μ): (h, μg); I(a): f + conj(a·f).
HarmonicMap group_apply(const HarmonicMap& f, const GroupElement& element);

/// F with ω_F = μ·(φ_a∘ω_f) and H′ = λ·h′/√(φ_a′∘ω_f), which has P_F = P_f.
HarmonicMap partner_map(const HarmonicMap& f, Complex a, Complex mu, Complex lambda);

Complex evaluate(const HarmonicMap& f, Complex z, const QuadratureConfig& config = {});

/// Harmonic Möbius M with M(z0) = f(z0), M_z = h′(z0), M_z̄ = conj(g′(z0)),
/// M_zz = h″(z0). T is built from the local normal form
/// a0 + a1·t/(1 − (a2/a1)·t), t = w − z0.
struct BestMobius {
  HarmonicMobius mobius;
  Complex center;
  Complex a0, a1, a2;

  /// Local deviation (M⁻¹∘f)(z0 + t) − z0 from an increment Δ = f(z0 + t) − f(z0).
  Complex deviation(Complex increment) const;
};
BestMobius best_harmonic_mobius(const HarmonicMap& f, Complex z0);

// --------------------------------------------------------- serialization

/// {label, form: "parts", h, g, [hprime, gprime,] sense} or
/// {label, form: "dilatation", hprime, omega, h0: [re, im], sense}.
std::string to_json(const HarmonicMap& f);
HarmonicMap map_from_json(std::string_view json);

}  // namespace harmonic
