#include "cli_app.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "harmonic/norms.hpp"
#include "verify.hpp"

namespace harmonic::cli {

namespace {

using json = nlohmann::ordered_json;

std::string number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

json pair(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_point(const std::string& text) {
  const auto comma = text.find(',');
  double re = 0.0, im = 0.0;
  auto read = [&](std::string_view s, double& v) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  const std::string_view sv(text);
  if (comma == std::string::npos || !read(sv.substr(0, comma), re) ||
      !read(sv.substr(comma + 1), im)) {
    fail(ErrorCode::SyntaxError, "point '" + text + "' is not of the form re,im");
  }
  return {re, im};
}

struct MapOptions {
  std::string name, file, h, g, hprime, omega, h0;
  std::string sense = "preserving";

  void attach(CLI::App* app) {
    app->add_option("--map", name, "catalog map name");
    app->add_option("--map-file", file, "map JSON file");
    app->add_option("--h", h, "analytic part h");
    app->add_option("--g", g, "co-analytic part g");
    app->add_option("--hprime", hprime, "h' for dilatation form");
    app->add_option("--omega", omega, "dilatation omega");
    app->add_option("--h0", h0, "h(0) as re,im for dilatation form");
    app->add_option("--sense", sense, "preserving or reversing")
        ->check(CLI::IsMember({"preserving", "reversing"}));
  }

  HarmonicMap build() const {
    const int styles = !name.empty() + !file.empty() + (!h.empty() && !g.empty()) +
                       (!hprime.empty() && !omega.empty()) + (!h.empty() && !omega.empty());
    const bool stray = (!g.empty() && h.empty()) || (!h.empty() && g.empty() && omega.empty()) || (!hprime.empty() && omega.empty()) ||
                       (!omega.empty() && h.empty() && hprime.empty()) ||
                       (!h0.empty() && hprime.empty());
    if (styles != 1 || stray) throw CLI::ValidationError("exactly one map specification is required");
    const Sense s = sense == "reversing" ? Sense::Reversing : Sense::Preserving;
    if (!name.empty()) {
      auto entry = catalog(name);
      if (auto* f = std::get_if<HarmonicMap>(&entry)) return f->with_sense(s);
      return HarmonicMap::analytic(std::get<AnalyticFunction>(entry), name).with_sense(s);
    }
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw CLI::ValidationError("cannot read " + file);
      std::stringstream ss;
      ss << in.rdbuf();
      return map_from_json(ss.str());
    }
    if (!g.empty()) {
      return HarmonicMap::from_parts(AnalyticFunction::parse(h), AnalyticFunction::parse(g), s);
    }
    if (!hprime.empty()) {
      return HarmonicMap::from_dilatation(AnalyticFunction::parse(hprime),
                                          AnalyticFunction::parse(omega),
                                          h0.empty() ? Complex{} : parse_point(h0), s);
    }
    const AnalyticFunction hf = AnalyticFunction::parse(h);
    return HarmonicMap::from_dilatation(hf.derivative(), AnalyticFunction::parse(omega), hf(0.0),
                                        s);
  }
};

struct SearchOptions {
  SearchConfig cfg;
  bool no_refine = false;

  void attach(CLI::App* app) {
    app->add_option("--rays", cfg.rays, "rays of the polar grid");
    app->add_option("--radial", cfg.radial_samples, "radial samples per ray");
    app->add_option("--rmax", cfg.rmax, "outermost radius");
    app->add_option("--iterations", cfg.refinement_iterations, "simplex iterations per seed");
    app->add_flag("--no-refine", no_refine, "grid only");
  }
  SearchConfig build() const {
    SearchConfig c = cfg;
    c.refine = !no_refine;
    return c;
  }
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownIdentifier:
      return kParse;
    case ErrorCode::UnknownCatalogName:
    case ErrorCode::ParameterOutOfRange:
      return kUsage;
    case ErrorCode::DomainError:
    case ErrorCode::CriticalPoint:
    case ErrorCode::BranchPointAtCenter:
    case ErrorCode::DivisionByZeroConstantTerm:
    case ErrorCode::ShearSingularity:
    case ErrorCode::DilatationZeroNeedsQ:
    case ErrorCode::QMismatch:
    case ErrorCode::StencilOutsideDomain:
      return kDomain;
    case ErrorCode::IllConditioned:
    case ErrorCode::QuadratureFailure:
    case ErrorCode::NonFinite:
    case ErrorCode::DegenerateJet:
    case ErrorCode::CenterMismatch:
      return kNumerical;
  }
  return kNumerical;
}

void report(std::ostream& err, std::string_view code, const std::string& message,
            std::optional<Complex> at = std::nullopt) {
  json j;
  j["code"] = code;
  j["message"] = message;
  if (at) j["at"] = pair(*at);
  err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schwarzian derivatives of planar harmonic maps"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  auto* catalog_cmd = app.add_subcommand("catalog", "list catalog entries");
  std::string catalog_name;
  catalog_cmd->add_option("name", catalog_name, "print a single entry");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate an operator at points");
  MapOptions eval_map;
  eval_map.attach(eval_cmd);
  std::string op_tag;
  std::vector<std::string> points;
  std::string q_text, format = "json";
  eval_cmd->add_option("--op", op_tag, "pre, schw, cdo, jac, dbarpre or lap")
      ->required()
      ->check(CLI::IsMember({"pre", "schw", "cdo", "jac", "dbarpre", "lap"}));
  eval_cmd->add_option("--at", points, "point re,im (repeatable)")->required();
  eval_cmd->add_option("--q", q_text, "square root of omega for cdo");
  eval_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* norm_cmd = app.add_subcommand("norm", "hyperbolic sup-norm estimate");
  MapOptions norm_map;
  norm_map.attach(norm_cmd);
  SearchOptions norm_search;
  norm_search.attach(norm_cmd);
  std::string norm_op = "S";
  norm_cmd->add_option("--op", norm_op, "P or S")->check(CLI::IsMember({"P", "S"}));

  auto* becker_cmd = app.add_subcommand("becker", "Becker-type univalence check");
  MapOptions becker_map;
  becker_map.attach(becker_cmd);
  SearchOptions becker_search;
  becker_search.attach(becker_cmd);

  auto* shear_cmd = app.add_subcommand("shear", "shear construction");
  std::string phi_text, omega_text;
  double theta = 0.0;
  shear_cmd->add_option("--phi", phi_text, "analytic phi = h - e^{2i theta} g")->required();
  shear_cmd->add_option("--omega", omega_text, "dilatation")->required();
  shear_cmd->add_option("--theta", theta, "angle in radians")->required();

  auto* render_cmd = app.add_subcommand("render", "sample f on a polar grid as CSV");
  MapOptions render_map;
  render_map.attach(render_cmd);
  int render_rays = 64, circles = 64;
  double render_rmax = 0.99;
  render_cmd->add_option("--rays", render_rays)->check(CLI::PositiveNumber);
  render_cmd->add_option("--circles", circles)->check(CLI::PositiveNumber);
  render_cmd->add_option("--rmax", render_rmax)->check(CLI::Range(0.0, 1.0));

  auto* verify_cmd = app.add_subcommand("verify", "run a built-in property suite");
  std::string suite;
  verify_cmd->add_option("suite", suite, "oracles, invariance, norms, becker or all")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report(err, "UsageError", e.what());
    return kUsage;
  }

  try {
    if (*catalog_cmd) {
      auto entry_json = [](std::string_view name) {
        json e;
        e["name"] = name;
        auto entry = catalog(name);
        if (auto* f = std::get_if<HarmonicMap>(&entry)) {
          e["kind"] = "harmonic";
          e["map"] = json::parse(to_json(*f));
        } else {
          e["kind"] = "analytic";
          e["expr"] = std::get<AnalyticFunction>(entry).to_string();
        }
        return e;
      };
      if (!catalog_name.empty()) {
        out << entry_json(catalog_name).dump() << '\n';
      } else {
        for (std::string_view name : catalog_names()) out << entry_json(name).dump() << '\n';
      }
    } else if (*eval_cmd) {
      const HarmonicMap f = eval_map.build();
      const Operator op = operator_from_tag(op_tag);
      std::optional<AnalyticFunction> q;
      if (!q_text.empty()) q = AnalyticFunction::parse(q_text);
      std::vector<Complex> zs;
      for (const std::string& p : points) zs.push_back(parse_point(p));
      if (format == "csv") out << "re_z,im_z,op,re_value,im_value\n";
      for (Complex z : zs) {
        if (!(std::abs(z) < 1.0)) fail_at(ErrorCode::DomainError, "point outside the unit disk", z);
        const Complex v = op == Operator::Cdo ? cdo_schwarzian(f, z, q)
                                              : evaluate_operator(f, op, z).value;
        if (!is_finite(v)) fail_at(ErrorCode::NonFinite, "operator value is not finite", z);
        if (format == "csv") {
          out << number(z.real()) << ',' << number(z.imag()) << ',' << op_tag << ','
              << number(v.real()) << ',' << number(v.imag()) << '\n';
        } else {
          json j;
          j["z"] = pair(z);
          j["op"] = op_tag;
          j["value"] = pair(v);
          out << j.dump() << '\n';
        }
      }
    } else if (*norm_cmd) {
      const HarmonicMap f = norm_map.build();
      out << to_json(hyperbolic_sup(f, norm_op_from_tag(norm_op), norm_search.build())) << '\n';
    } else if (*becker_cmd) {
      out << to_json(becker_check(becker_map.build(), becker_search.build())) << '\n';
    } else if (*shear_cmd) {
      const HarmonicMap f =
          shear(AnalyticFunction::parse(phi_text), AnalyticFunction::parse(omega_text), theta);
      out << to_json(f) << '\n';
    } else if (*render_cmd) {
      const HarmonicMap f = render_map.build();
      out << "re_z,im_z,re_f,im_f\n";
      auto row = [&](Complex z) {
        const Complex w = evaluate(f, z);
        out << number(z.real()) << ',' << number(z.imag()) << ',' << number(w.real()) << ','
            << number(w.imag()) << '\n';
      };
      row(0.0);
      for (int j = 1; j <= circles; ++j) {
        const double r = render_rmax * j / circles;
        for (int k = 0; k < render_rays; ++k) row(std::polar(r, 2.0 * M_PI * k / render_rays));
      }
    } else if (*verify_cmd) {
      if (!verify::is_suite(suite)) {
        report(err, "UsageError", "unknown suite '" + suite + "'");
        return kUsage;
      }
      const verify::SuiteResult result = verify::run_suite(suite);
      out << result.to_json() << '\n';
      return result.failed() == 0 ? kOk : kNumerical;
    }
  } catch (const CLI::ValidationError& e) {
    report(err, "UsageError", e.what());
    return kUsage;
  } catch (const Error& e) {
    report(err, to_string(e.code()), e.what(), e.point());
    return exit_code(e.code());
  }
  return kOk;
}

}  // namespace harmonic::cli
