#include "harmonic/harmonic_map.hpp"

#include <array>
#include <cmath>
#include <json.hpp>

namespace harmonic {

using namespace expr;

// ------------------------------------------------------------ value types

AffineMap::AffineMap(Complex a, Complex b, Complex c) : a_(a), b_(b), c_(c) {
  if (std::abs(a) == std::abs(b)) {
    fail(ErrorCode::ParameterOutOfRange, "degenerate affine map: |a| = |b|");
  }
}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  if (determinant() == Complex{}) {
    fail(ErrorCode::ParameterOutOfRange, "degenerate Mobius map: ad - bc = 0");
  }
}

Complex MobiusMap::derivative(Complex w) const {
  const Complex den = c_ * w + d_;
  return determinant() / (den * den);
}

Complex MobiusMap::second_derivative(Complex w) const {
  const Complex den = c_ * w + d_;
  return -2.0 * c_ * determinant() / (den * den * den);
}

bool MobiusMap::equivalent(const MobiusMap& other, double tol) const {
  const std::array<Complex, 4> x{a_, b_, c_, d_};
  const std::array<Complex, 4> y{other.a_, other.b_, other.c_, other.d_};
  double nx = 0.0, ny = 0.0;
  for (int i = 0; i < 4; ++i) {
    nx = std::max(nx, std::abs(x[i]));
    ny = std::max(ny, std::abs(y[i]));
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(x[i] * y[j] - x[j] * y[i]) > tol * nx * ny) return false;
    }
  }
  return true;
}

AnalyticFunction MobiusMap::as_function() const {
  return AnalyticFunction(div(add(mul(constant(a_), var()), constant(b_)),
                              add(mul(constant(c_), var()), constant(d_))));
}

HarmonicMobius::HarmonicMobius(MobiusMap t, Complex alpha) : t_(t), alpha_(alpha) {
  if (!(std::abs(alpha) < 1.0)) {
    fail(ErrorCode::ParameterOutOfRange, "harmonic Mobius map needs |alpha| < 1");
  }
}

Complex HarmonicMobius::inverse(Complex w) const {
  const Complex u = (w - alpha_ * std::conj(w)) / (1.0 - std::norm(alpha_));
  return t_.inverse()(u);
}

// ----------------------------------------------------------- HarmonicMap

HarmonicMap::HarmonicMap(Form form, AnalyticFunction first, AnalyticFunction second, Complex h0,
                         Sense sense, std::string label)
    : form_(form),
      first_(std::move(first)),
      second_(std::move(second)),
      h0_(h0),
      sense_(sense),
      label_(std::move(label)) {}

HarmonicMap HarmonicMap::from_parts(AnalyticFunction h, AnalyticFunction g, Sense sense,
                                    std::string label) {
  return HarmonicMap(Form::Parts, std::move(h), std::move(g), {}, sense, std::move(label));
}

HarmonicMap HarmonicMap::analytic(AnalyticFunction h, std::string label) {
  return from_parts(std::move(h), AnalyticFunction::constant(0.0), Sense::Preserving,
                    std::move(label));
}

HarmonicMap HarmonicMap::from_dilatation(AnalyticFunction hprime, AnalyticFunction omega,
                                         Complex h0, Sense sense, std::string label) {
  return HarmonicMap(Form::Dilatation, std::move(hprime), std::move(omega), h0, sense,
                     std::move(label));
}

LocalJets HarmonicMap::local_jets(Complex z, int order) const {
  if (form_ == Form::Parts) {
    Jet hp = derivatives_ ? derivatives_->first.jet(z, order) : first_.jet(z, order + 1).derivative();
    Jet gp =
        derivatives_ ? derivatives_->second.jet(z, order) : second_.jet(z, order + 1).derivative();
    if (hp.value() == Complex{}) fail_at(ErrorCode::DomainError, "h' vanishes", z);
    Jet omega = gp / hp;
    return {std::move(hp), std::move(gp), std::move(omega)};
  }
  Jet omega = second_.jet(z, order);
  if (shear_rotation_ && std::abs(1.0 - *shear_rotation_ * omega.value()) < 1e-14) {
    fail_at(ErrorCode::ShearSingularity, "1 - e^{2i theta} omega vanishes", z);
  }
  Jet hp = first_.jet(z, order);
  Jet gp = omega * hp;
  return {std::move(hp), std::move(gp), std::move(omega)};
}

AnalyticFunction HarmonicMap::hprime() const {
  if (form_ == Form::Dilatation) return first_;
  return derivatives_ ? derivatives_->first : first_.derivative();
}

AnalyticFunction HarmonicMap::gprime() const {
  if (form_ == Form::Dilatation) return AnalyticFunction(mul(second_.tree(), first_.tree()));
  return derivatives_ ? derivatives_->second : second_.derivative();
}

AnalyticFunction HarmonicMap::dilatation() const {
  if (form_ == Form::Dilatation) return second_;
  return AnalyticFunction(div(gprime().tree(), hprime().tree()));
}

HarmonicMap HarmonicMap::with_derivatives(AnalyticFunction hprime, AnalyticFunction gprime) const {
  if (form_ != Form::Parts) {
    fail(ErrorCode::ParameterOutOfRange, "explicit derivatives need a parts-form map");
  }
  HarmonicMap f = *this;
  f.derivatives_.emplace(std::move(hprime), std::move(gprime));
  return f;
}

namespace {

PairIntegrand dilatation_integrand(const HarmonicMap& f) {
  return [&f](Complex zeta) -> std::array<Complex, 2> {
    const Complex hp = f.first()(zeta);
    return {hp, f.second()(zeta) * hp};
  };
}

}  // namespace

Complex HarmonicMap::value(Complex z, const QuadratureConfig& config) const {
  if (form_ == Form::Parts) return first_(z) + std::conj(second_(z));
  const auto integral = integrate_segment(dilatation_integrand(*this), 0.0, z, config);
  return h0_ + integral[0] + std::conj(integral[1]);
}

Complex HarmonicMap::value_along(std::span<const Complex> path,
                                 const QuadratureConfig& config) const {
  if (path.empty()) fail(ErrorCode::ParameterOutOfRange, "empty path");
  if (form_ == Form::Parts) return value(path.back(), config);
  const auto integral = integrate_path(dilatation_integrand(*this), path, config);
  return h0_ + integral[0] + std::conj(integral[1]);
}

Complex HarmonicMap::increment(Complex z0, Complex t) const {
  if (form_ == Form::Parts) {
    return (first_(z0 + t) - first_(z0)) + std::conj(second_(z0 + t) - second_(z0));
  }
  const QuadratureConfig tight{12, 1e-13 * std::max(1.0, std::abs(t))};
  const auto integral = integrate_segment(dilatation_integrand(*this), z0, z0 + t, tight);
  return integral[0] + std::conj(integral[1]);
}

HarmonicMap HarmonicMap::with_label(std::string label) const {
  HarmonicMap f = *this;
  f.label_ = std::move(label);
  return f;
}

HarmonicMap HarmonicMap::with_sense(Sense sense) const {
  HarmonicMap f = *this;
  f.sense_ = sense;
  return f;
}

HarmonicMap HarmonicMap::with_shear_rotation(Complex rotation) const {
  HarmonicMap f = *this;
  f.shear_rotation_ = rotation;
  return f;
}

// ---------------------------------------------------------------- catalog

namespace {

constexpr std::array<std::string_view, 9> kCatalogNames{"k", "l", "s", "q2", "K",
                                                        "L", "S1", "S2", "K2"};

HarmonicMap parts_map(std::string_view h, std::string_view g, std::string_view hp,
                      std::string_view gp, std::string label) {
  return HarmonicMap::from_parts(AnalyticFunction::parse(h), AnalyticFunction::parse(g),
                                 Sense::Preserving, std::move(label))
      .with_derivatives(AnalyticFunction::parse(hp), AnalyticFunction::parse(gp));
}

}  // namespace

std::span<const std::string_view> catalog_names() { return kCatalogNames; }

AnalyticFunction catalog_function(std::string_view name) {
  if (name == "k") return AnalyticFunction(call(Function::Koebe, var()), "pole at z = 1");
  if (name == "l") return AnalyticFunction(call(Function::HalfPlane, var()), "pole at z = 1");
  if (name == "s") return AnalyticFunction(call(Function::Strip, var()), "branch points at z = ±1");
  if (name == "q2") return AnalyticFunction(call(Function::Q2, var()), "poles at z = ±1");
  fail(ErrorCode::UnknownCatalogName, "unknown analytic catalog name '" + std::string(name) + "'");
}

HarmonicMap catalog_map(std::string_view name) {
  // Derivatives in factored form; differentiating h near a zero of h′ cancels badly.
  if (name == "K") {
    return parts_map("(z - z^2/2 + z^3/6)/(1 - z)^3", "(z^2/2 + z^3/6)/(1 - z)^3",
                     "(1 + z)/(1 - z)^4", "z*(1 + z)/(1 - z)^4", "K");
  }
  if (name == "L") {
    return parts_map("(2*z - z^2)/(2*(1 - z)^2)", "-z^2/(2*(1 - z)^2)", "1/(1 - z)^3",
                     "-z/(1 - z)^3", "L");
  }
  if (name == "S1") {
    return parts_map("(l(z) + s(z))/2", "(l(z) - s(z))/2", "1/((1 - z)^2*(1 + z))",
                     "z/((1 - z)^2*(1 + z))", "S1");
  }
  if (name == "S2") {
    return parts_map("(q2(z) + s(z))/2", "(q2(z) - s(z))/2", "1/((1 - z)^2*(1 + z)^2)",
                     "z^2/((1 - z)^2*(1 + z)^2)", "S2");
  }
  if (name == "K2") {
    return parts_map("(1/(1 - z)^3 - 1)/3", "(z^2 - z + 1/3)/(1 - z)^3 - 1/3", "1/(1 - z)^4",
                     "z^2/(1 - z)^4", "K2");
  }
  fail(ErrorCode::UnknownCatalogName, "unknown harmonic catalog name '" + std::string(name) + "'");
}

std::variant<HarmonicMap, AnalyticFunction> catalog(std::string_view name) {
  if (name == "K" || name == "L" || name == "S1" || name == "S2" || name == "K2") {
    return catalog_map(name);
  }
  return catalog_function(name);
}

AnalyticFunction disk_automorphism(Complex a) {
  return AnalyticFunction(
      div(add(constant(a), var()), add(constant(1.0), mul(constant(std::conj(a)), var()))));
}

// ---------------------------------------------------------- constructions

HarmonicMap shear(const AnalyticFunction& phi, const AnalyticFunction& omega, double theta) {
  if (!std::isfinite(theta)) fail(ErrorCode::ParameterOutOfRange, "shear angle must be finite");
  // Rounded so that multiples of π/2 give exactly ±1.
  Complex rotation = std::polar(1.0, 2.0 * theta);
  if (std::abs(rotation.real()) < 1e-15) rotation.real(0.0);
  if (std::abs(rotation.imag()) < 1e-15) rotation.imag(0.0);
  const ExprPtr hprime =
      div(derivative(phi.tree()), sub(constant(1.0), mul(constant(rotation), omega.tree())));
  return HarmonicMap::from_dilatation(AnalyticFunction(hprime), omega, phi(0.0),
                                      Sense::Preserving, "shear")
      .with_shear_rotation(rotation);
}

HarmonicMap affine_compose(const AffineMap& a, const HarmonicMap& f) {
  const Sense sense = a.sense_preserving() ? f.sense() : flipped(f.sense());
  const std::string label = "A(" + f.label() + ")";
  if (f.form() == HarmonicMap::Form::Parts) {
    const ExprPtr& h = f.first().tree();
    const ExprPtr& g = f.second().tree();
    ExprPtr big_h = add(add(mul(constant(a.a()), h), mul(constant(a.b()), g)), constant(a.c()));
    ExprPtr big_g = add(mul(constant(std::conj(a.b())), h), mul(constant(std::conj(a.a())), g));
    HarmonicMap out =
        HarmonicMap::from_parts(AnalyticFunction(big_h), AnalyticFunction(big_g), sense, label);
    if (!f.has_derivatives()) return out;
    const ExprPtr hp = f.hprime().tree();
    const ExprPtr gp = f.gprime().tree();
    return out.with_derivatives(
        AnalyticFunction(add(mul(constant(a.a()), hp), mul(constant(a.b()), gp))),
        AnalyticFunction(
            add(mul(constant(std::conj(a.b())), hp), mul(constant(std::conj(a.a())), gp))));
  }
  const ExprPtr& hp = f.first().tree();
  const ExprPtr& w = f.second().tree();
  const ExprPtr den = add(constant(a.a()), mul(constant(a.b()), w));
  ExprPtr new_hp = mul(hp, den);
  ExprPtr new_w = div(add(constant(std::conj(a.b())), mul(constant(std::conj(a.a())), w)), den);
  return HarmonicMap::from_dilatation(AnalyticFunction(new_hp), AnalyticFunction(new_w),
                                      a(f.h0()), sense, label);
}

HarmonicMap precompose(const HarmonicMap& f, const AnalyticFunction& phi) {
  const std::string label = f.label() + "(phi)";
  if (f.form() == HarmonicMap::Form::Parts) {
    HarmonicMap out = HarmonicMap::from_parts(f.first().compose(phi), f.second().compose(phi),
                                              f.sense(), label);
    if (!f.has_derivatives()) return out;
    const ExprPtr dphi = derivative(phi.tree());
    return out.with_derivatives(
        AnalyticFunction(mul(substitute(f.hprime().tree(), phi.tree()), dphi)),
        AnalyticFunction(mul(substitute(f.gprime().tree(), phi.tree()), dphi)));
  }
  // (h∘φ)′ = (h′∘φ)·φ′; H(0) = f(φ(0)) keeps g(0) = 0.
  const ExprPtr hp = mul(substitute(f.first().tree(), phi.tree()), derivative(phi.tree()));
  return HarmonicMap::from_dilatation(AnalyticFunction(hp), f.second().compose(phi),
                                      f.value(phi(0.0)), f.sense(), label);
}

HarmonicMap conjugate(const HarmonicMap& f) {
  const Sense sense = flipped(f.sense());
  const std::string label = f.label().starts_with("conj(") && f.label().ends_with(")")
                                ? f.label().substr(5, f.label().size() - 6)
                                : "conj(" + f.label() + ")";
  if (f.form() == HarmonicMap::Form::Parts) {
    HarmonicMap out = HarmonicMap::from_parts(f.second(), f.first(), sense, label);
    return f.has_derivatives() ? out.with_derivatives(f.gprime(), f.hprime()) : out;
  }
  // conj(f) = g + conj(h): H′ = ω·h′, Ω = 1/ω, H(0) = conj(h(0)).
  const ExprPtr& hp = f.first().tree();
  const ExprPtr& w = f.second().tree();
  ExprPtr new_hp, new_w;
  if (w->kind == NodeKind::Div && w->args[0]->kind == NodeKind::Const &&
      w->args[0]->value == 1.0 && hp->kind == NodeKind::Mul && equal(hp->args[0], w->args[1])) {
    new_hp = hp->args[1];
    new_w = w->args[1];
  } else {
    new_hp = make_node(NodeKind::Mul, {w, hp});
    new_w = make_node(NodeKind::Div, {constant(1.0), w});
  }
  HarmonicMap out = HarmonicMap::from_dilatation(AnalyticFunction(new_hp), AnalyticFunction(new_w),
                                                 std::conj(f.h0()), sense, label);
  return out;
}

HarmonicMap oriented(const HarmonicMap& f) {
  return f.sense() == Sense::Preserving ? f : conjugate(f);
}

HarmonicMap group_apply(const HarmonicMap& f, const GroupElement& element) {
  const Complex p = element.parameter;
  const bool parts = f.form() == HarmonicMap::Form::Parts;
  switch (element.kind) {
    case GroupElement::Kind::Rp: {
      if (p == Complex{}) fail(ErrorCode::ParameterOutOfRange, "Rp needs lambda != 0");
      const ExprPtr first = mul(constant(p), f.first().tree());
      if (parts) {
        HarmonicMap out = HarmonicMap::from_parts(
            AnalyticFunction(first), AnalyticFunction(mul(constant(p), f.second().tree())),
            f.sense(), "Rp(" + f.label() + ")");
        if (!f.has_derivatives()) return out;
        return out.with_derivatives(AnalyticFunction(mul(constant(p), f.hprime().tree())),
                                    AnalyticFunction(mul(constant(p), f.gprime().tree())));
      }
      return HarmonicMap::from_dilatation(AnalyticFunction(first), f.second(), p * f.h0(),
                                          f.sense(), "Rp(" + f.label() + ")");
    }
    case GroupElement::Kind::Rq: {
      if (std::abs(std::abs(p) - 1.0) > 1e-12) {
        fail(ErrorCode::ParameterOutOfRange, "Rq needs |mu| = 1");
      }
      const ExprPtr second = mul(constant(p), f.second().tree());
      if (parts) {
        HarmonicMap out = HarmonicMap::from_parts(f.first(), AnalyticFunction(second), f.sense(),
                                                  "Rq(" + f.label() + ")");
        if (!f.has_derivatives()) return out;
        return out.with_derivatives(f.hprime(),
                                    AnalyticFunction(mul(constant(p), f.gprime().tree())));
      }
      return HarmonicMap::from_dilatation(f.first(), AnalyticFunction(second), f.h0(), f.sense(),
                                          "Rq(" + f.label() + ")");
    }
    case GroupElement::Kind::I: {
      if (!(std::abs(p) < 1.0)) fail(ErrorCode::ParameterOutOfRange, "I(a) needs |a| < 1");
      // f + conj(a·f) = f + conj(a)·conj(f)
      return affine_compose(AffineMap(1.0, std::conj(p), 0.0), f)
          .with_label("I(" + f.label() + ")");
    }
  }
  return f;
}

HarmonicMap partner_map(const HarmonicMap& f, Complex a, Complex mu, Complex lambda) {
  if (!(std::abs(a) < 1.0)) fail(ErrorCode::ParameterOutOfRange, "partner map needs |a| < 1");
  if (std::abs(std::abs(mu) - 1.0) > 1e-12) {
    fail(ErrorCode::ParameterOutOfRange, "partner map needs |mu| = 1");
  }
  if (lambda == Complex{}) fail(ErrorCode::ParameterOutOfRange, "partner map needs lambda != 0");
  const HarmonicMap base = oriented(f);
  const ExprPtr w = base.dilatation().tree();
  const ExprPtr one_plus = add(constant(1.0), mul(constant(std::conj(a)), w));
  // φ_a′∘ω = (1 − |a|²)/(1 + conj(a)·ω)²
  const ExprPtr automorphism_derivative =
      div(constant(1.0 - std::norm(a)), pow(one_plus, constant(2.0)));
  const ExprPtr hp = div(mul(constant(lambda), base.hprime().tree()),
                         call(Function::Sqrt, automorphism_derivative));
  const ExprPtr omega = mul(constant(mu), div(add(constant(a), w), one_plus));
  return HarmonicMap::from_dilatation(AnalyticFunction(hp), AnalyticFunction(omega), 0.0,
                                      Sense::Preserving, "partner(" + f.label() + ")");
}

Complex evaluate(const HarmonicMap& f, Complex z, const QuadratureConfig& config) {
  return f.value(z, config);
}

// ------------------------------------------------ best harmonic Möbius

Complex BestMobius::deviation(Complex increment) const {
  const Complex alpha = mobius.alpha();
  const Complex u = (increment - alpha * std::conj(increment)) / (1.0 - std::norm(alpha));
  return u / (a1 + (a2 / a1) * u);
}

BestMobius best_harmonic_mobius(const HarmonicMap& f, Complex z0) {
  if (f.sense() != Sense::Preserving) {
    fail_at(ErrorCode::DomainError, "best harmonic Mobius map needs a sense-preserving map", z0);
  }
  const Jet hp = f.hprime().jet(z0, 1);
  const Complex a1 = hp[0];
  if (a1 == Complex{}) fail_at(ErrorCode::DegenerateJet, "h' vanishes", z0);
  const Complex w0 = f.form() == HarmonicMap::Form::Parts ? f.gprime()(z0) / a1 : f.second()(z0);
  if (!(std::abs(w0) < 1.0)) fail_at(ErrorCode::DomainError, "|omega| >= 1", z0);
  const Complex a2 = 0.5 * hp[1];
  const Complex alpha = std::conj(w0);
  const Complex fz = f.value(z0);
  const Complex a0 = (fz - alpha * std::conj(fz)) / (1.0 - std::norm(alpha));
  // a0 + a1 t/(1 − c t) with t = w − z0, as (A w + B)/(C w + D).
  const Complex c = a2 / a1;
  const Complex big_a = a1 - a0 * c;
  const MobiusMap t(big_a, a0 - big_a * z0, -c, 1.0 + c * z0);
  return BestMobius{HarmonicMobius(t, alpha), z0, a0, a1, a2};
}

// --------------------------------------------------------- serialization

std::string to_json(const HarmonicMap& f) {
  nlohmann::ordered_json j;
  j["label"] = f.label();
  if (f.form() == HarmonicMap::Form::Parts) {
    j["form"] = "parts";
    j["h"] = f.first().to_string();
    j["g"] = f.second().to_string();
    if (f.has_derivatives()) {
      j["hprime"] = f.hprime().to_string();
      j["gprime"] = f.gprime().to_string();
    }
  } else {
    j["form"] = "dilatation";
    j["hprime"] = f.first().to_string();
    j["omega"] = f.second().to_string();
    j["h0"] = {f.h0().real(), f.h0().imag()};
  }
  j["sense"] = f.sense() == Sense::Preserving ? "preserving" : "reversing";
  return j.dump();
}

HarmonicMap map_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::SyntaxError, std::string("invalid map JSON: ") + e.what());
  }
  auto field = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string()) {
      fail(ErrorCode::SyntaxError, std::string("map JSON lacks string field '") + key + "'");
    }
    return j[key].get<std::string>();
  };
  const std::string label = j.value("label", std::string{});
  Sense sense = Sense::Preserving;
  if (j.contains("sense")) {
    const std::string s = field("sense");
    if (s == "reversing") {
      sense = Sense::Reversing;
    } else if (s != "preserving") {
      fail(ErrorCode::SyntaxError, "sense must be 'preserving' or 'reversing'");
    }
  }
  const std::string form = field("form");
  if (form == "parts") {
    HarmonicMap f = HarmonicMap::from_parts(AnalyticFunction::parse(field("h")),
                                            AnalyticFunction::parse(field("g")), sense, label);
    if (!j.contains("hprime") && !j.contains("gprime")) return f;
    return f.with_derivatives(AnalyticFunction::parse(field("hprime")),
                              AnalyticFunction::parse(field("gprime")));
  }
  if (form == "dilatation") {
    Complex h0{};
    if (j.contains("h0")) {
      const auto& v = j["h0"];
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(ErrorCode::SyntaxError, "h0 must be [re, im]");
      }
      h0 = {v[0].get<double>(), v[1].get<double>()};
    }
    return HarmonicMap::from_dilatation(AnalyticFunction::parse(field("hprime")),
                                        AnalyticFunction::parse(field("omega")), h0, sense, label);
  }
  fail(ErrorCode::SyntaxError, "form must be 'parts' or 'dilatation'");
}

}  // namespace harmonic
