#pragma once

#include <vector>

#include "models.hpp"

namespace luwave {

struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;        // integral of eta
  double momentum = 0.0;    // integral of h u
  double energy_sw = 0.0;   // (eps^2/2) int h u^2 + (1/2) int h^2
  double energy_sgn = 0.0;  // energy_sw + (eps^3 beta^2/6) int h^3 (d_x u)^2
};

double mass(const State& s, const ModelParams& p, const Grid& grid);
double momentum(const State& s, const ModelParams& p, const Grid& grid);
double energy_sw(const State& s, const ModelParams& p, const Grid& grid);
double energy_sgn(const State& s, const ModelParams& p, const Grid& grid);
DiagnosticsRow diagnostics_row(const State& s, const ModelParams& p,
                               const Grid& grid);

struct EnsembleStats {
  Field mean_eta;
  Field std_eta;  // unbiased (n-1) estimator
  int n_paths = 0;
};

/// Pointwise mean and standard deviation across paths; needs n >= 2.
EnsembleStats ensemble_stats(const std::vector<Field>& paths);

/// Max-norm of f(x_c + y) - f(x_c - y) over resolvable offsets. The center
/// is snapped to the nearest grid node so the reflection is pure index
/// arithmetic, no interpolation.
double symmetry_metric(const Field& f, double center);

}  // namespace luwave
