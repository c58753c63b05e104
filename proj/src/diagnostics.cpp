#include "diagnostics.hpp"

#include <cmath>

#include "errors.hpp"

namespace luwave {

namespace {

// Depth-averaged velocity regardless of the variable form.
Field velocity_of(const State& s, const ModelParams& p, const Field& h) {
  if (p.form == VariableForm::conservative) {
    Field u(s.eta.grid());
    for (int j = 0; j < u.size(); ++j) u[j] = s.vel[j] / h[j];
    return u;
  }
  return s.vel;
}

}  // namespace

double mass(const State& s, const ModelParams&, const Grid& grid) {
  return grid.integrate(s.eta);
}

double momentum(const State& s, const ModelParams& p, const Grid& grid) {
  if (p.form == VariableForm::conservative) return grid.integrate(s.vel);
  Field h = water_height(s, p);
  Field q(grid);
  for (int j = 0; j < grid.size(); ++j) q[j] = h[j] * s.vel[j];
  return grid.integrate(q);
}

double energy_sw(const State& s, const ModelParams& p, const Grid& grid) {
  Field h = water_height(s, p);
  Field u = velocity_of(s, p, h);
  double kin = 0.0, pot = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    kin += h[j] * u[j] * u[j];
    pot += h[j] * h[j];
  }
  const double dx = grid.spacing();
  return 0.5 * p.epsilon * p.epsilon * kin * dx + 0.5 * pot * dx;
}

double energy_sgn(const State& s, const ModelParams& p, const Grid& grid) {
  Field h = water_height(s, p);
  Field u = velocity_of(s, p, h);
  Field du = grid.deriv(u, 1);
  double extra = 0.0;
  for (int j = 0; j < grid.size(); ++j)
    extra += h[j] * h[j] * h[j] * du[j] * du[j];
  const double eps3b2 = p.epsilon * p.epsilon * p.epsilon * p.beta * p.beta;
  return energy_sw(s, p, grid) + eps3b2 / 6.0 * extra * grid.spacing();
}

DiagnosticsRow diagnostics_row(const State& s, const ModelParams& p,
                               const Grid& grid) {
  return {s.t, mass(s, p, grid), momentum(s, p, grid), energy_sw(s, p, grid),
          energy_sgn(s, p, grid)};
}

EnsembleStats ensemble_stats(const std::vector<Field>& paths) {
  const int n = static_cast<int>(paths.size());
  if (n < 2) throw config_error("ensemble_stats: need at least 2 paths");
  const Grid& g = paths.front().grid();
  EnsembleStats st{Field(g), Field(g), n};
  for (const Field& f : paths)
    for (int j = 0; j < g.size(); ++j) st.mean_eta[j] += f[j];
  for (int j = 0; j < g.size(); ++j) st.mean_eta[j] /= n;
  for (const Field& f : paths)
    for (int j = 0; j < g.size(); ++j) {
      const double d = f[j] - st.mean_eta[j];
      st.std_eta[j] += d * d;
    }
  for (int j = 0; j < g.size(); ++j)
    st.std_eta[j] = std::sqrt(st.std_eta[j] / (n - 1));
  return st;
}

double symmetry_metric(const Field& f, double center) {
  const Grid& g = f.grid();
  const int n = g.size();
  const long c =
      std::lround((center + g.half_length()) / g.spacing());
  double m = 0.0;
  for (int i = 1; i < n / 2; ++i) {
    const int jp = static_cast<int>(((c + i) % n + n) % n);
    const int jm = static_cast<int>(((c - i) % n + n) % n);
    m = std::max(m, std::abs(f[jp] - f[jm]));
  }
  return m;
}

}  // namespace luwave
