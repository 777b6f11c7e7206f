#include "harmonic/harmonic_map.hpp"

#include "harmonic/operators.hpp"
#include "support.hpp"

namespace harmonic {
namespace {

using testing::random_point;

const Complex I(0.0, 1.0);

void expect_same_jets(const Jet& a, const Jet& b, double tol) {
  ASSERT_EQ(a.order(), b.order());
  for (int k = 0; k <= a.order(); ++k) EXPECT_CNEAR(a[k], b[k], tol) << "coefficient " << k;
}

TEST(Catalog, HarmonicKoebeNormalization) {
  const HarmonicMap K = catalog_map("K");
  const LocalJets j = K.local_jets(0.0);
  EXPECT_EQ(j.hp.value(), Complex(1.0));
  EXPECT_EQ(j.gp.value(), Complex(0.0));
  std::mt19937_64 rng(20);
  for (int t = 0; t < 10; ++t) {
    const Complex z = random_point(rng, 0.9);
    EXPECT_CNEAR(K.local_jets(z).omega.value(), z, 1e-13);
  }
}

TEST(Catalog, HalfPlaneAtOneHalf) {
  const HarmonicMap L = catalog_map("L");
  EXPECT_CNEAR(L.first()(0.5), Complex(1.5), 1e-15);
  EXPECT_CNEAR(L.second()(0.5), Complex(-0.5), 1e-15);
  EXPECT_CNEAR(L.value(0.5), Complex(1.0), 1e-15);
}

TEST(Catalog, StripDilatation) {
  const HarmonicMap S2 = catalog_map("S2");
  const AnalyticFunction want = AnalyticFunction::parse("(z/(1-z^2) + 0.5*log((1+z)/(1-z)))/2");
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const Complex z = random_point(rng, 0.9);
    EXPECT_CNEAR(S2.local_jets(z).omega.value(), z * z, 1e-13);
    EXPECT_CNEAR(S2.first()(z), want(z), 1e-13);
  }
}

TEST(Catalog, FactoredDerivativesMatchClosedForms) {
  std::mt19937_64 rng(22);
  for (std::string_view name : {"K", "L", "S1", "S2", "K2"}) {
    const HarmonicMap f = catalog_map(name);
    ASSERT_TRUE(f.has_derivatives());
    const AnalyticFunction dh = f.first().derivative(), dg = f.second().derivative();
    for (int t = 0; t < 10; ++t) {
      const Complex z = random_point(rng, 0.8);
      EXPECT_CNEAR(f.hprime()(z), dh(z), 1e-12) << name;
      EXPECT_CNEAR(f.gprime()(z), dg(z), 1e-12) << name;
    }
    EXPECT_EQ(f.second()(0.0), Complex(0.0)) << name;
    EXPECT_EQ(f.first()(0.0), Complex(0.0)) << name;
  }
}

TEST(Catalog, UnknownName) {
  EXPECT_EQ(testing::error_code_of([] { (void)catalog("Q"); }), ErrorCode::UnknownCatalogName);
  EXPECT_EQ(catalog_names().size(), 9u);
  EXPECT_TRUE(std::holds_alternative<AnalyticFunction>(catalog("q2")));
  EXPECT_TRUE(std::holds_alternative<HarmonicMap>(catalog("K2")));
}

TEST(Shear, HorizontalShearOfKoebeIsK) {
  const HarmonicMap s = shear(catalog_function("k"), AnalyticFunction::identity(), 0.0);
  const AnalyticFunction hk = AnalyticFunction::parse("(z - z^2/2 + z^3/6)/(1 - z)^3");
  EXPECT_EQ(s.form(), HarmonicMap::Form::Dilatation);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    const Complex z = random_point(rng, 0.8);
    expect_same_jets(s.local_jets(z).hp, hk.jet(z, 5).derivative(), 1e-11);
  }
}

TEST(Shear, VerticalShearOfHalfPlaneIsL) {
  const HarmonicMap s = shear(catalog_function("l"), AnalyticFunction::parse("-z"), M_PI / 2);
  const AnalyticFunction want = AnalyticFunction::parse("1/(1-z)^3");
  std::mt19937_64 rng(24);
  for (int t = 0; t < 10; ++t) {
    const Complex z = random_point(rng, 0.8);
    expect_same_jets(s.local_jets(z).hp, want.jet(z, 4), 1e-11);
    EXPECT_CNEAR(s.value(z), catalog_map("L").value(z), 1e-9);
  }
}

TEST(Shear, StripShearIsS1) {
  const HarmonicMap s = shear(catalog_function("s"), AnalyticFunction::identity(), 0.0);
  const HarmonicMap S1 = catalog_map("S1");
  std::mt19937_64 rng(25);
  for (int t = 0; t < 10; ++t) {
    const Complex z = random_point(rng, 0.8);
    const LocalJets a = s.local_jets(z), b = S1.local_jets(z);
    expect_same_jets(a.hp, b.hp, 1e-11);
    expect_same_jets(a.gp, b.gp, 1e-11);
    EXPECT_CNEAR(s.value(z), S1.value(z), 1e-9);
  }
}

TEST(Shear, HorizontalShearDifferenceIsPhi) {
  std::mt19937_64 rng(26);
  const char* phis[] = {"z/(1-z)^2", "z + 0.2*z^2", "0.5*log((1+z)/(1-z))"};
  const char* omegas[] = {"z", "0.5*z^2", "-0.3 + 0.2*z"};
  for (int i = 0; i < 3; ++i) {
    const AnalyticFunction phi = AnalyticFunction::parse(phis[i]);
    const HarmonicMap s = shear(phi, AnalyticFunction::parse(omegas[i]), 0.0);
    EXPECT_EQ(s.h0(), phi(0.0));
    for (int t = 0; t < 10; ++t) {
      const Complex z = random_point(rng, 0.7);
      const LocalJets j = s.local_jets(z);
      expect_same_jets(j.hp - j.gp, phi.jet(z, 5).derivative(), 1e-10);
    }
  }
}

TEST(Shear, IdentityWithDilatationZ) {
  const HarmonicMap s = shear(AnalyticFunction::identity(), AnalyticFunction::identity(), 0.0);
  EXPECT_EQ(s.first().to_string(), "1/(1 - z)");
  EXPECT_GT(jacobian(s, Complex(0.3, 0.2)), 0.0);
}

TEST(Shear, Singularity) {
  const HarmonicMap s = shear(AnalyticFunction::identity(), AnalyticFunction::parse("2*z"), 0.0);
  EXPECT_EQ(testing::error_code_of([&] { (void)s.local_jets(0.5); }), ErrorCode::ShearSingularity);
}

TEST(Affine, DilatationFormula) {
  const HarmonicMap K = catalog_map("K");
  std::mt19937_64 rng(27);
  for (int t = 0; t < 10; ++t) {
    const Complex alpha = random_point(rng, 0.9);
    const HarmonicMap F = affine_compose(AffineMap(1.0, alpha, 0.0), K);
    const Complex z = random_point(rng, 0.8);
    const Complex w = K.local_jets(z).omega.value();
    EXPECT_CNEAR(F.local_jets(z).omega.value(), (w + std::conj(alpha)) / (1.0 + alpha * w), 1e-12);
  }
}

TEST(Affine, IdentityLeavesTreesUnchanged) {
  for (std::string_view name : {"K", "S2"}) {
    const HarmonicMap f = catalog_map(name);
    const HarmonicMap F = affine_compose(AffineMap(1.0, 0.0, 0.0), f);
    EXPECT_TRUE(F.first() == f.first());
    EXPECT_TRUE(F.second() == f.second());
  }
  const HarmonicMap d = shear(catalog_function("k"), AnalyticFunction::identity(), 0.0);
  const HarmonicMap D = affine_compose(AffineMap(1.0, 0.0, 0.0), d);
  EXPECT_TRUE(D.first() == d.first());
  EXPECT_TRUE(D.second() == d.second());
}

TEST(Affine, KoebeDilatationAtOrigin) {
  const HarmonicMap F = affine_compose(AffineMap(1.0, 0.5, Complex(1.0, 1.0)), catalog_map("K"));
  EXPECT_CNEAR(F.local_jets(0.0).omega.value(), Complex(0.5), 1e-15);
  EXPECT_CNEAR(F.value(0.0), Complex(1.0, 1.0), 1e-15);
}

TEST(Affine, SenseFlag) {
  std::mt19937_64 rng(28);
  const HarmonicMap K = catalog_map("K");
  for (int t = 0; t < 50; ++t) {
    const Complex a = testing::random_complex(rng, 2.0), b = testing::random_complex(rng, 2.0);
    if (std::abs(a) == std::abs(b)) continue;
    const HarmonicMap F = affine_compose(AffineMap(a, b), K);
    EXPECT_EQ(F.sense() == Sense::Preserving, std::abs(a) > std::abs(b));
    EXPECT_EQ(jacobian(F, Complex(0.1, 0.2)) > 0.0, std::abs(a) > std::abs(b));
  }
  EXPECT_EQ(testing::error_code_of([] { AffineMap(1.0, -1.0); }), ErrorCode::ParameterOutOfRange);
}

TEST(Affine, ValuesCommute) {
  std::mt19937_64 rng(29);
  const AffineMap A(Complex(1.2, 0.3), Complex(-0.4, 0.5), Complex(0.1, -2.0));
  for (std::string_view name : {"L", "S1"}) {
    const HarmonicMap f = catalog_map(name);
    const HarmonicMap F = affine_compose(A, f);
    const HarmonicMap D = affine_compose(A, shear(catalog_function(name == "L" ? "l" : "s"),
                                                  AnalyticFunction::parse(name == "L" ? "-z" : "z"),
                                                  name == "L" ? M_PI / 2 : 0.0));
    for (int t = 0; t < 5; ++t) {
      const Complex z = random_point(rng, 0.8);
      EXPECT_CNEAR(F.value(z), A(f.value(z)), 1e-12);
      EXPECT_CNEAR(D.value(z), A(f.value(z)), 1e-8);
    }
  }
}

TEST(Precompose, IdentityAndZeroAutomorphism) {
  const HarmonicMap K = catalog_map("K");
  for (const AnalyticFunction& phi : {AnalyticFunction::identity(), disk_automorphism(0.0)}) {
    const HarmonicMap F = precompose(K, phi);
    EXPECT_TRUE(F.first() == K.first());
    EXPECT_TRUE(F.second() == K.second());
  }
}

TEST(Precompose, HalfScaling) {
  const HarmonicMap F = precompose(catalog_map("K"), AnalyticFunction::parse("z/2"));
  EXPECT_CNEAR(F.local_jets(0.0).omega.value(), Complex(0.0), 1e-15);
  EXPECT_CNEAR(F.value(Complex(0.4, 0.2)), catalog_map("K").value(Complex(0.2, 0.1)), 1e-14);
}

TEST(Precompose, DilatationFormValues) {
  const HarmonicMap s = shear(catalog_function("k"), AnalyticFunction::identity(), 0.0);
  const AnalyticFunction phi = disk_automorphism(Complex(0.2, -0.1));
  const HarmonicMap F = precompose(s, phi);
  const HarmonicMap G = precompose(catalog_map("K"), phi);
  std::mt19937_64 rng(30);
  for (int t = 0; t < 5; ++t) {
    const Complex z = random_point(rng, 0.6);
    EXPECT_CNEAR(F.value(z), G.value(z), 1e-8);
    expect_same_jets(F.local_jets(z).omega, G.local_jets(z).omega, 1e-12);
  }
}

TEST(Conjugate, RoundTripIsStructural) {
  for (std::string_view name : {"K", "L", "S1", "S2", "K2"}) {
    const HarmonicMap f = catalog_map(name);
    const HarmonicMap cc = conjugate(conjugate(f));
    EXPECT_TRUE(cc.first() == f.first());
    EXPECT_TRUE(cc.second() == f.second());
    EXPECT_EQ(cc.sense(), f.sense());
    EXPECT_EQ(cc.label(), f.label());
  }
  const HarmonicMap d = shear(catalog_function("s"), AnalyticFunction::parse("z/2"), 0.3);
  const HarmonicMap dd = conjugate(conjugate(d));
  EXPECT_TRUE(dd.first() == d.first());
  EXPECT_TRUE(dd.second() == d.second());
  EXPECT_EQ(dd.h0(), d.h0());
}

TEST(Conjugate, KoebeIsReversing) {
  const HarmonicMap k = conjugate(HarmonicMap::analytic(catalog_function("k")));
  EXPECT_EQ(k.sense(), Sense::Reversing);
  EXPECT_CNEAR(k.value(Complex(0.3, 0.1)), std::conj(catalog_function("k")(Complex(0.3, 0.1))), 1e-15);
}

TEST(Conjugate, PreSchwarzianOfConjugateKoebe) {
  const HarmonicMap K = catalog_map("K");
  EXPECT_CNEAR(pre_schwarzian(conjugate(K), 0.3), pre_schwarzian(K, 0.3), 1e-14);
}

TEST(Group, IdentityElements) {
  const HarmonicMap K = catalog_map("K");
  const HarmonicMap a = group_apply(K, GroupElement::rp(1.0));
  EXPECT_TRUE(a.first() == K.first());
  EXPECT_TRUE(a.second() == K.second());
  const HarmonicMap b = group_apply(K, GroupElement::inversion(0.0));
  EXPECT_TRUE(b.first() == K.first());
  EXPECT_TRUE(b.second() == K.second());
}

TEST(Group, InversionMovesDilatation) {
  const HarmonicMap F = group_apply(catalog_map("K"), GroupElement::inversion(0.3));
  EXPECT_CNEAR(F.local_jets(0.0).omega.value(), Complex(0.3), 1e-15);
  const Complex a(0.2, 0.4);
  const HarmonicMap G = group_apply(catalog_map("K"), GroupElement::inversion(a));
  const Complex z(0.3, -0.2);
  EXPECT_CNEAR(G.local_jets(z).omega.value(), (a + z) / (1.0 + std::conj(a) * z), 1e-13);
  EXPECT_CNEAR(G.value(z), catalog_map("K").value(z) + std::conj(a * catalog_map("K").value(z)), 1e-14);
}

TEST(Group, RotationOfDilatation) {
  std::mt19937_64 rng(31);
  for (std::string_view name : {"K", "S2"}) {
    const HarmonicMap f = catalog_map(name);
    const Complex mu = std::polar(1.0, 1.234);
    const HarmonicMap F = group_apply(f, GroupElement::rq(mu));
    for (int t = 0; t < 5; ++t) {
      const Complex z = random_point(rng, 0.8);
      expect_same_jets(F.local_jets(z).omega, mu * f.local_jets(z).omega, 1e-12);
    }
  }
}

TEST(Group, ParameterChecks) {
  const HarmonicMap K = catalog_map("K");
  EXPECT_EQ(testing::error_code_of([&] { group_apply(K, GroupElement::rp(0.0)); }),
            ErrorCode::ParameterOutOfRange);
  EXPECT_EQ(testing::error_code_of([&] { group_apply(K, GroupElement::rq(2.0)); }),
            ErrorCode::ParameterOutOfRange);
  EXPECT_EQ(testing::error_code_of([&] { group_apply(K, GroupElement::inversion(1.0)); }),
            ErrorCode::ParameterOutOfRange);
}

TEST(Partner, EvaluableAtOriginForStrip) {
  const HarmonicMap F = partner_map(catalog_map("S2"), 0.5, 1.0, 1.0);
  EXPECT_CNEAR(F.local_jets(0.0).omega.value(), Complex(0.5), 1e-15);
  EXPECT_TRUE(std::isfinite(jacobian(F, 0.0)));
}

TEST(Partner, PreSchwarzianAtSamplePoint) {
  const HarmonicMap S2 = catalog_map("S2");
  const HarmonicMap F = partner_map(S2, 0.5, 1.0, 2.0);
  const Complex z(0.1, 0.2);
  EXPECT_CNEAR(pre_schwarzian(F, z), pre_schwarzian(S2, z), 1e-12);
}

TEST(Partner, ParameterChecks) {
  const HarmonicMap S2 = catalog_map("S2");
  EXPECT_EQ(testing::error_code_of([&] { partner_map(S2, 1.5, 1.0, 1.0); }), ErrorCode::ParameterOutOfRange);
  EXPECT_EQ(testing::error_code_of([&] { partner_map(S2, 0.1, 0.5, 1.0); }), ErrorCode::ParameterOutOfRange);
  EXPECT_EQ(testing::error_code_of([&] { partner_map(S2, 0.1, 1.0, 0.0); }), ErrorCode::ParameterOutOfRange);
}

TEST(Evaluate, Anchors) {
  EXPECT_CNEAR(evaluate(catalog_map("L"), 0.5), Complex(1.0), 1e-15);
  EXPECT_EQ(evaluate(catalog_map("K"), 0.0), Complex(0.0));
  const HarmonicMap s = shear(catalog_function("k"), AnalyticFunction::identity(), 0.0);
  EXPECT_CNEAR(evaluate(s, 0.3), evaluate(catalog_map("K"), 0.3), 1e-8);
}

TEST(Evaluate, PathIndependence) {
  const HarmonicMap s = shear(catalog_function("s"), AnalyticFunction::parse("z^2/2"), 0.4);
  std::mt19937_64 rng(32);
  for (int t = 0; t < 10; ++t) {
    const Complex z = random_point(rng, 0.8);
    const Complex corner(z.real(), 0.0);
    const std::vector<Complex> path{0.0, corner, z};
    EXPECT_CNEAR(s.value(z), s.value_along(path), 1e-7);
  }
}

TEST(Evaluate, QuadratureFailure) {
  const HarmonicMap s = HarmonicMap::from_dilatation(AnalyticFunction::parse("1/(1-z)^20"),
                                                     AnalyticFunction::constant(0.0));
  QuadratureConfig tight{2, 1e-15};
  EXPECT_EQ(testing::error_code_of([&] { (void)s.value(0.99, tight); }), ErrorCode::QuadratureFailure);
}

TEST(BestMobius, MobiusInput) {
  const MobiusMap T(Complex(2.0, 1.0), 0.5, Complex(0.3, -0.2), 1.0);
  const HarmonicMap f = HarmonicMap::analytic(T.as_function());
  for (Complex z0 : {Complex(0.0), Complex(0.2, 0.3)}) {
    const BestMobius m = best_harmonic_mobius(f, z0);
    EXPECT_TRUE(m.mobius.transform().equivalent(T, 1e-12));
    EXPECT_EQ(m.mobius.alpha(), Complex(0.0));
  }
}

TEST(BestMobius, HarmonicMobiusInput) {
  const MobiusMap T(1.0, Complex(0.1, 0.2), Complex(-0.4, 0.1), 2.0);
  const Complex alpha(0.3, -0.5);
  const AnalyticFunction t = T.as_function();
  const HarmonicMap f =
      HarmonicMap::from_parts(t, AnalyticFunction(expr::mul(expr::constant(std::conj(alpha)), t.tree())));
  const BestMobius m = best_harmonic_mobius(f, Complex(0.1, 0.1));
  EXPECT_TRUE(m.mobius.transform().equivalent(T, 1e-12));
  EXPECT_CNEAR(m.mobius.alpha(), alpha, 1e-14);
}

TEST(BestMobius, KoebeAtOrigin) {
  const BestMobius m = best_harmonic_mobius(catalog_map("K"), 0.0);
  EXPECT_EQ(m.mobius.alpha(), Complex(0.0));
  EXPECT_TRUE(m.mobius.transform().equivalent(MobiusMap(1.0, 0.0, -2.5, 1.0), 1e-14));
}

TEST(BestMobius, MatchingConditions) {
  std::mt19937_64 rng(33);
  for (std::string_view name : {"K", "L", "S1", "S2", "K2"}) {
    const HarmonicMap f = catalog_map(name);
    for (int t = 0; t < 5; ++t) {
      const Complex z0 = random_point(rng, 0.7);
      const BestMobius m = best_harmonic_mobius(f, z0);
      const MobiusMap& T = m.mobius.transform();
      const Complex alpha = m.mobius.alpha();
      const LocalJets j = f.local_jets(z0, 2);
      EXPECT_CNEAR(m.mobius(z0), f.value(z0), 1e-9) << name;
      EXPECT_CNEAR(T.derivative(z0), j.hp[0], 1e-9) << name;
      EXPECT_CNEAR(alpha * std::conj(T.derivative(z0)), std::conj(j.gp[0]), 1e-9) << name;
      EXPECT_CNEAR(T.second_derivative(z0), j.hp.derivative_at(1), 1e-9) << name;
      const Complex w = m.mobius(Complex(0.05, 0.02) + z0);
      EXPECT_CNEAR(m.mobius.inverse(w), Complex(0.05, 0.02) + z0, 1e-12) << name;
    }
  }
}

TEST(BestMobius, Degenerate) {
  const HarmonicMap f = HarmonicMap::analytic(AnalyticFunction::parse("z^2"));
  EXPECT_EQ(testing::error_code_of([&] { best_harmonic_mobius(f, 0.0); }), ErrorCode::DegenerateJet);
  EXPECT_EQ(testing::error_code_of([] { HarmonicMobius(MobiusMap(1, 0, 0, 1), 1.0); }),
            ErrorCode::ParameterOutOfRange);
  EXPECT_EQ(testing::error_code_of([] { MobiusMap(1, 2, 2, 4); }), ErrorCode::ParameterOutOfRange);
}

TEST(Serialization, RoundTrip) {
  for (std::string_view name : {"K", "L", "S1", "S2", "K2"}) {
    const HarmonicMap f = catalog_map(name);
    const HarmonicMap g = map_from_json(to_json(f));
    EXPECT_TRUE(g.first() == f.first());
    EXPECT_TRUE(g.second() == f.second());
    EXPECT_TRUE(g.hprime() == f.hprime());
    EXPECT_EQ(g.label(), f.label());
    EXPECT_EQ(to_json(g), to_json(f));
  }
  const HarmonicMap s = conjugate(shear(catalog_function("l"), AnalyticFunction::parse("-z"), M_PI / 2));
  const HarmonicMap t = map_from_json(to_json(s));
  EXPECT_EQ(t.form(), HarmonicMap::Form::Dilatation);
  EXPECT_EQ(t.sense(), Sense::Reversing);
  EXPECT_CNEAR(t.value(Complex(0.2, 0.4)), s.value(Complex(0.2, 0.4)), 1e-14);
}

TEST(Serialization, Errors) {
  EXPECT_EQ(testing::error_code_of([] { map_from_json("{"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(testing::error_code_of([] { map_from_json(R"({"form":"parts","h":"z"})"); }),
            ErrorCode::SyntaxError);
  EXPECT_EQ(testing::error_code_of([] { map_from_json(R"({"form":"x"})"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(testing::error_code_of([] { map_from_json(R"({"form":"parts","h":"z+","g":"0"})"); }),
            ErrorCode::SyntaxError);
}

}  // namespace
}  // namespace harmonic
