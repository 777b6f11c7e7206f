#pragma once

#include <string>
#include <utility>

#include "harmonic/operators.hpp"

namespace harmonic {

struct SearchConfig {
  int rays = 256;
  int radial_samples = 128;
  double rmax = 1.0 - 1e-6;
  bool refine = true;
  int refinement_iterations = 60;

  /// Throws ParameterOutOfRange unless rays >= 8, radial_samples >= 8, 0 < rmax < 1.
  void validate() const;
};

enum class NormOp { P, S };

std::string_view norm_op_tag(NormOp op);
NormOp norm_op_from_tag(std::string_view tag);

struct NormReport {
  double value = 0.0;
  Complex argmax;
  bool boundary_flag = false;
  long samples_evaluated = 0;
  NormOp op = NormOp::S;
};

struct BeckerReport {
  bool holds = true;
  double worst_margin = 0.0;
  Complex witness;
};

/// |P_f|(1 − |z|²) or |S_f|(1 − |z|²)².
double weighted_modulus(const HarmonicMap& f, NormOp op, Complex z);

/// Lower estimate of sup |op f|·weight over the disk: polar grid with radii
/// tanh(t_j), t_j uniform on [0, atanh(rmax)], then downhill-simplex refinement.
NormReport hyperbolic_sup(const HarmonicMap& f, NormOp op, const SearchConfig& cfg = {});

/// (|z·P_f| + |z·ω′|/(1 − |ω|²))·(1 − |z|²), which must stay <= 1.
double becker_lhs(const HarmonicMap& f, Complex z);
/// Worst margin 1 − becker_lhs over the polar grid.
BeckerReport becker_check(const HarmonicMap& f, const SearchConfig& cfg = {});

/// (‖S_f‖, ‖Sh‖) from identical grids.
std::pair<NormReport, NormReport> finite_norm_compare(const HarmonicMap& f,
                                                      const SearchConfig& cfg = {});

/// max of |ω″ω|(1 − |z|²)²/(1 − |ω|²) over the grid.
NormReport omega_second_derivative_probe(const HarmonicMap& f, const SearchConfig& cfg = {});

std::string to_json(const NormReport& report);
std::string to_json(const BeckerReport& report);

}  // namespace harmonic
