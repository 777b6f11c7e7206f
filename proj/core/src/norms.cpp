#include "harmonic/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <json.hpp>
#include <limits>
#include <thread>
#include <vector>

namespace harmonic {

namespace {

// Relative tolerance for treating grid values as tied; above the evaluation
// error near |z| = rmax.
constexpr double kTieTolerance = 1e-8;

double disk_weight(Complex z) {
  const double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

using Objective = std::function<double(Complex)>;

// Samples in a fixed order: the origin, then ray-major within each radius.
struct Grid {
  int rays;
  std::vector<double> radii;  // radii[0] = 0

  std::size_t size() const { return 1 + static_cast<std::size_t>(rays) * (radii.size() - 1); }
  Complex point(std::size_t i) const {
    if (i == 0) return 0.0;
    const std::size_t j = 1 + (i - 1) / static_cast<std::size_t>(rays);
    const std::size_t k = (i - 1) % static_cast<std::size_t>(rays);
    return std::polar(radii[j], 2.0 * M_PI * static_cast<double>(k) / rays);
  }
  std::size_t radial_index(std::size_t i) const {
    return i == 0 ? 0 : 1 + (i - 1) / static_cast<std::size_t>(rays);
  }
};

Grid make_grid(const SearchConfig& cfg) {
  Grid g{cfg.rays, {}};
  const double t_max = std::atanh(cfg.rmax);
  g.radii.resize(static_cast<std::size_t>(cfg.radial_samples) + 1);
  for (int j = 0; j <= cfg.radial_samples; ++j) {
    g.radii[static_cast<std::size_t>(j)] = std::tanh(t_max * j / cfg.radial_samples);
  }
  g.radii.back() = cfg.rmax;
  return g;
}

// Evaluates the objective on every grid point. The lowest-index failure wins.
std::vector<double> evaluate_grid(const Grid& grid, const Objective& objective) {
  const std::size_t n = grid.size();
  std::vector<double> values(n);
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(n)));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> error_index(workers, n);
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        values[i] = objective(grid.point(i));
      } catch (...) {
        errors[w] = std::current_exception();
        error_index[w] = i;
        return;
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  std::size_t first = n;
  unsigned which = 0;
  for (unsigned w = 0; w < workers; ++w) {
    if (error_index[w] < first) {
      first = error_index[w];
      which = w;
    }
  }
  if (first < n) std::rethrow_exception(errors[which]);
  return values;
}

// Candidates in tie-break order: larger value first, then grid order, which is
// smaller |z| and then smaller arg.
std::vector<std::size_t> ranked(const std::vector<double>& values, std::size_t count) {
  std::vector<std::size_t> idx(values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  count = std::min(count, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] > values[b];
                      return a < b;
                    });
  idx.resize(count);
  return idx;
}

std::size_t best_index(const std::vector<double>& values) {
  const double vmax = *std::max_element(values.begin(), values.end());
  const double floor = vmax - kTieTolerance * std::abs(vmax);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= floor) return i;
  }
  return 0;
}

struct Vertex {
  Complex z;
  double v;
};

// Downhill simplex maximizing the objective inside |z| <= rmax.
Vertex nelder_mead(const Objective& objective, Complex start, double size, double rmax,
                   int iterations, long& evaluations) {
  auto eval = [&](Complex z) {
    if (std::abs(z) > rmax) return -std::numeric_limits<double>::infinity();
    ++evaluations;
    const double v = objective(z);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };
  std::array<Vertex, 3> s{Vertex{start, eval(start)}, Vertex{start + size, eval(start + size)},
                          Vertex{start + Complex(0.0, size), eval(start + Complex(0.0, size))}};
  for (int it = 0; it < iterations; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
    const Complex centroid = 0.5 * (s[0].z + s[1].z);
    const Complex zr = centroid + (centroid - s[2].z);
    const double vr = eval(zr);
    if (vr > s[0].v) {
      const Complex ze = centroid + 2.0 * (centroid - s[2].z);
      const double ve = eval(ze);
      s[2] = ve > vr ? Vertex{ze, ve} : Vertex{zr, vr};
    } else if (vr > s[1].v) {
      s[2] = {zr, vr};
    } else {
      const Complex zc = centroid + 0.5 * (s[2].z - centroid);
      const double vc = eval(zc);
      if (vc > s[2].v) {
        s[2] = {zc, vc};
      } else {
        for (int k = 1; k < 3; ++k) {
          s[k].z = s[0].z + 0.5 * (s[k].z - s[0].z);
          s[k].v = eval(s[k].z);
        }
      }
    }
  }
  return *std::max_element(s.begin(), s.end(),
                           [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
}

NormReport search(const Objective& objective, NormOp op, const SearchConfig& cfg) {
  cfg.validate();
  const Grid grid = make_grid(cfg);
  const std::vector<double> values = evaluate_grid(grid, objective);
  NormReport report;
  report.op = op;
  report.samples_evaluated = static_cast<long>(values.size());
  const std::size_t best = best_index(values);
  report.value = values[best];
  report.argmax = grid.point(best);
  if (cfg.refine) {
    for (std::size_t i : ranked(values, 5)) {
      const std::size_t j = grid.radial_index(i);
      const double dr = grid.radii[std::min(j + 1, grid.radii.size() - 1)] -
                        grid.radii[j == 0 ? 0 : j - 1];
      const double da = grid.radii[j] * M_PI / cfg.rays;
      const double size = 0.5 * std::max(dr, da);
      const Vertex v = nelder_mead(objective, grid.point(i), size, cfg.rmax,
                                   cfg.refinement_iterations, report.samples_evaluated);
      if (v.v > report.value + kTieTolerance * std::abs(report.value)) {
        report.value = v.v;
        report.argmax = v.z;
      }
    }
  }
  report.boundary_flag = std::abs(report.argmax) > 0.99 * cfg.rmax;
  return report;
}

}  // namespace

void SearchConfig::validate() const {
  if (rays < 8) fail(ErrorCode::ParameterOutOfRange, "rays must be >= 8");
  if (radial_samples < 8) fail(ErrorCode::ParameterOutOfRange, "radial samples must be >= 8");
  if (!(rmax > 0.0 && rmax < 1.0)) fail(ErrorCode::ParameterOutOfRange, "rmax must lie in (0, 1)");
  if (refinement_iterations < 0) {
    fail(ErrorCode::ParameterOutOfRange, "refinement iterations must be >= 0");
  }
}

std::string_view norm_op_tag(NormOp op) { return op == NormOp::P ? "P" : "S"; }

NormOp norm_op_from_tag(std::string_view tag) {
  if (tag == "P") return NormOp::P;
  if (tag == "S") return NormOp::S;
  fail(ErrorCode::ParameterOutOfRange, "norm operator must be P or S");
}

double weighted_modulus(const HarmonicMap& f, NormOp op, Complex z) {
  const double w = disk_weight(z);
  const double v = op == NormOp::P ? std::abs(pre_schwarzian(f, z)) * w
                                   : std::abs(schwarzian(f, z)) * w * w;
  if (!std::isfinite(v)) fail_at(ErrorCode::NonFinite, "weighted modulus is not finite", z);
  return v;
}

NormReport hyperbolic_sup(const HarmonicMap& f, NormOp op, const SearchConfig& cfg) {
  const HarmonicMap g = oriented(f);
  return search([&](Complex z) { return weighted_modulus(g, op, z); }, op, cfg);
}

double becker_lhs(const HarmonicMap& f, Complex z) {
  const HarmonicMap& g = f.sense() == Sense::Preserving ? f : conjugate(f);
  const LocalJets jets = g.local_jets(z, 1);
  const Complex w = jets.omega.value();
  const double r = std::abs(w);
  if (!(r < 1.0)) fail_at(ErrorCode::DomainError, "|omega| >= 1", z);
  const double lhs = (std::abs(z * pre_schwarzian(g, z)) +
                      std::abs(z * jets.omega[1]) / ((1.0 - r) * (1.0 + r))) *
                     disk_weight(z);
  if (!std::isfinite(lhs)) fail_at(ErrorCode::NonFinite, "Becker quantity is not finite", z);
  return lhs;
}

BeckerReport becker_check(const HarmonicMap& f, const SearchConfig& cfg) {
  cfg.validate();
  const HarmonicMap g = oriented(f);
  const Grid grid = make_grid(cfg);
  const std::vector<double> lhs = evaluate_grid(grid, [&](Complex z) { return becker_lhs(g, z); });
  const std::size_t worst = best_index(lhs);
  return {lhs[worst] <= 1.0, 1.0 - lhs[worst], grid.point(worst)};
}

std::pair<NormReport, NormReport> finite_norm_compare(const HarmonicMap& f,
                                                      const SearchConfig& cfg) {
  const HarmonicMap g = oriented(f);
  const AnalyticFunction h = g.hprime();
  // Sh from the jet of h′.
  auto sh = [&](Complex z) {
    const Jet d = h.jet(z, 2);
    if (d.value() == Complex{}) fail_at(ErrorCode::DomainError, "h' vanishes", z);
    const Complex r1 = d.derivative_at(1) / d.value();
    const Complex s = d.derivative_at(2) / d.value() - 1.5 * r1 * r1;
    const double w = disk_weight(z);
    return std::abs(s) * w * w;
  };
  return {hyperbolic_sup(g, NormOp::S, cfg), search(sh, NormOp::S, cfg)};
}

NormReport omega_second_derivative_probe(const HarmonicMap& f, const SearchConfig& cfg) {
  const HarmonicMap g = oriented(f);
  SearchConfig grid_only = cfg;
  grid_only.refine = false;
  auto probe = [&](Complex z) {
    const Jet w = g.local_jets(z, 2).omega;
    const double r = std::abs(w.value());
    if (!(r < 1.0)) fail_at(ErrorCode::DomainError, "|omega| >= 1", z);
    const double d = disk_weight(z);
    return std::abs(w.derivative_at(2) * w.value()) * d * d / ((1.0 - r) * (1.0 + r));
  };
  return search(probe, NormOp::S, grid_only);
}

std::string to_json(const NormReport& report) {
  nlohmann::ordered_json j;
  j["value"] = report.value;
  j["argmax"] = {report.argmax.real(), report.argmax.imag()};
  j["boundary"] = report.boundary_flag;
  j["samples"] = report.samples_evaluated;
  j["op"] = std::string(norm_op_tag(report.op));
  return j.dump();
}

std::string to_json(const BeckerReport& report) {
  nlohmann::ordered_json j;
  j["holds"] = report.holds;
  j["worst_margin"] = report.worst_margin;
  j["witness"] = {report.witness.real(), report.witness.imag()};
  return j.dump();
}

}  // namespace harmonic
