#include "verify.hpp"

#include <cmath>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>

#include "harmonic/norms.hpp"

namespace harmonic::verify {

namespace {

constexpr std::string_view kMaps[] = {"K", "L", "S1", "S2", "K2"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Worst scaled difference |a − b| / max(1, |a|) over the sample.
struct Worst {
  double value = 0.0;
  void add(Complex a, Complex b) {
    value = std::max(value, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
};

Complex random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * M_PI * u(rng));
}

Complex random_complex(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

void bound(SuiteResult& out, std::string name, double worst, double tol) {
  out.checks.push_back({std::move(name), worst <= tol, "worst " + fmt(worst) + " <= " + fmt(tol)});
}

void guarded(SuiteResult& out, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    out.checks.push_back({name, false, e.what()});
  }
}

void oracles(SuiteResult& out) {
  std::mt19937_64 rng(7);
  for (std::string_view name : kMaps) {
    const HarmonicMap f = catalog_map(name);
    guarded(out, std::string(name) + " oracles", [&] {
      Worst lemma, fd, tamanoi;
      for (int i = 0; i < 10; ++i) {
        const Complex z = random_point(rng, 0.5);
        const Complex s = schwarzian(f, z);
        lemma.add(s, lemma1_schwarzian(f, z));
        fd.add(s, schwarzian_via_jacobian_fd(f, z));
        tamanoi.add(s, tamanoi_schwarzian(f, z));
      }
      const std::string n(name);
      bound(out, n + " schwarzian vs lemma", lemma.value, 1e-10);
      bound(out, n + " schwarzian vs jacobian fd", fd.value, 1e-5);
      bound(out, n + " schwarzian vs tamanoi", tamanoi.value, 1e-6);
    });
  }
}

void invariance(SuiteResult& out) {
  std::mt19937_64 rng(11);
  for (std::string_view name : kMaps) {
    const HarmonicMap f = catalog_map(name);
    const std::string n(name);
    guarded(out, n + " invariance", [&] {
      Worst affine, conj, chain;
      for (int i = 0; i < 10; ++i) {
        const Complex z = random_point(rng, 0.6);
        Complex a = random_complex(rng, 2.0), b = random_complex(rng, 2.0);
        if (std::abs(std::abs(a) - std::abs(b)) < 0.1) a += 1.0;
        const HarmonicMap af = affine_compose(AffineMap(a, b, random_complex(rng, 1.0)), f);
        affine.add(schwarzian(f, z), schwarzian(af, z));
        affine.add(pre_schwarzian(f, z), pre_schwarzian(af, z));
        const HarmonicMap cf = conjugate(f);
        conj.add(schwarzian(f, z), schwarzian(cf, z));
        conj.add(pre_schwarzian(f, z), pre_schwarzian(cf, z));
        const AnalyticFunction phi = disk_automorphism(random_point(rng, 0.3));
        const HarmonicMap fp = precompose(f, phi);
        const Complex w = phi(z);
        const Jet pj = phi.jet(z, 1);
        chain.add(schwarzian(fp, z),
                  schwarzian(f, w) * pj[1] * pj[1] + classical_schwarzian(phi, z));
      }
      bound(out, n + " affine invariance", affine.value, 1e-10);
      bound(out, n + " conjugation invariance", conj.value, 1e-12);
      bound(out, n + " chain rule", chain.value, 1e-9);
    });
  }
  guarded(out, "harmonic Mobius kernel", [&] {
    Worst kernel;
    for (int i = 0; i < 10; ++i) {
      const Complex alpha = random_point(rng, 0.9);
      const MobiusMap t(random_complex(rng, 1.0) + 2.0, random_complex(rng, 1.0),
                        random_complex(rng, 0.3), 1.0);
      const AnalyticFunction tf = t.as_function();
      const HarmonicMap m = HarmonicMap::from_parts(
          tf, AnalyticFunction(expr::mul(expr::constant(std::conj(alpha)), tf.tree())));
      kernel.add(0.0, schwarzian(m, random_point(rng, 0.5)));
    }
    bound(out, "harmonic Mobius kernel", kernel.value, 1e-10);
  });
}

void norms(SuiteResult& out) {
  struct Expect {
    std::string_view map;
    double value;
    double tol;
    bool boundary;
  };
  const Expect expects[] = {{"L", 1.5, 1e-6, false},
                            {"S1", 2.5, 1e-6, false},
                            {"S2", 4.0, 1e-6, false},
                            {"K", 9.5, 1e-6, false},
                            {"K2", 9.5, 0.05, true}};
  for (const Expect& e : expects) {
    const std::string name = "norm S " + std::string(e.map);
    guarded(out, name, [&] {
      const NormReport r = hyperbolic_sup(catalog_map(e.map), NormOp::S);
      const bool ok = std::abs(r.value - e.value) <= e.tol && r.boundary_flag == e.boundary;
      out.checks.push_back({name, ok, "value " + fmt(r.value) + ", expected " + fmt(e.value)});
    });
  }
}

void becker(SuiteResult& out) {
  guarded(out, "becker affine", [&] {
    const HarmonicMap f =
        HarmonicMap::from_parts(AnalyticFunction::identity(), AnalyticFunction::parse("0.5*z"));
    const BeckerReport r = becker_check(f);
    out.checks.push_back(
        {"becker affine", r.holds && r.worst_margin == 1.0, "margin " + fmt(r.worst_margin)});
  });
  guarded(out, "becker koebe", [&] {
    const BeckerReport r = becker_check(HarmonicMap::analytic(catalog_function("k")));
    const double x = r.witness.real();
    const bool ok = !r.holds && std::abs(r.witness.imag()) < 1e-12 && 2.0 * x * (2.0 + x) > 1.0;
    out.checks.push_back({"becker koebe", ok, "margin " + fmt(r.worst_margin)});
  });
  guarded(out, "becker constant dilatation", [&] {
    const AnalyticFunction k = catalog_function("k");
    const HarmonicMap f = HarmonicMap::from_parts(
        k, AnalyticFunction(expr::mul(expr::constant(Complex(0.3, -0.2)), k.tree())));
    const HarmonicMap a = HarmonicMap::analytic(k);
    Worst w;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      const Complex z = random_point(rng, 0.9);
      w.add(becker_lhs(a, z), becker_lhs(f, z));
    }
    bound(out, "becker constant dilatation", w.value, 1e-12);
  });
}

}  // namespace

int SuiteResult::passed() const {
  int n = 0;
  for (const Check& c : checks) n += c.passed ? 1 : 0;
  return n;
}

int SuiteResult::failed() const { return static_cast<int>(checks.size()) - passed(); }

std::string SuiteResult::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["failed"] = failed();
  j["details"] = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json d;
    d["name"] = c.name;
    d["passed"] = c.passed;
    d["detail"] = c.detail;
    j["details"].push_back(d);
  }
  return j.dump();
}

bool is_suite(std::string_view name) {
  return name == "oracles" || name == "invariance" || name == "norms" || name == "becker" ||
         name == "all";
}

SuiteResult run_suite(std::string_view name) {
  SuiteResult out{std::string(name), {}};
  const bool all = name == "all";
  if (all || name == "oracles") oracles(out);
  if (all || name == "invariance") invariance(out);
  if (all || name == "norms") norms(out);
  if (all || name == "becker") becker(out);
  return out;
}

}  // namespace harmonic::verify
