#include "models.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace luwave {

namespace {
constexpr double kMinDepth = 1e-6;  // breaking guard; no wetting/drying
}

double ModelParams::stokes_number() const {
  if (!(beta > 0.0))
    throw config_error("stokes_number: undefined for beta = 0");
  return epsilon / (beta * beta);
}

Field water_height(const State& s, const ModelParams& p) {
  const Grid& g = s.eta.grid();
  Field h(g);
  for (int j = 0; j < g.size(); ++j) {
    h[j] = 1.0 + p.epsilon * s.eta[j];
    if (!(h[j] > kMinDepth))
      throw simulation_error(
          "water column vanished (h = " + std::to_string(h[j]) + ") at x = " +
              std::to_string(g.node(j)) + ", t = " + std::to_string(s.t),
          s.t, g.node(j));
  }
  return h;
}

WaveModel::WaveModel(const Grid& grid, ModelParams params, NoiseModel noise)
    : grid_(&grid), params_(params), noise_(noise), isd_(grid) {
  if (params_.form == VariableForm::conservative &&
      params_.kind != ModelKind::saint_venant)
    throw config_error(
        "conservative form is only available for the Saint-Venant model");
  if (params_.stochastic) isd_ = ito_stokes_drift(noise_, grid);
}

void WaveModel::apply_output_filter(Field& f) const {
  if (params_.dealias) f = grid_->two_thirds_filter(f);
}

void WaveModel::drift(const State& s, Field& d_eta, Field& d_vel) const {
  if (params_.form == VariableForm::conservative) {
    drift_conservative(s, d_eta, d_vel);
  } else {
    drift_primitive(s, d_eta, d_vel);
  }
  apply_output_filter(d_eta);
  apply_output_filter(d_vel);
}

void WaveModel::martingale(const State& s, const Field& dB, Field& m_eta,
                           Field& m_vel) const {
  if (!params_.stochastic) {
    m_eta = Field(*grid_);
    m_vel = Field(*grid_);
    return;
  }
  if (params_.form == VariableForm::conservative) {
    mart_conservative(s, dB, m_eta, m_vel);
  } else {
    mart_primitive(s, dB, m_eta, m_vel);
  }
  apply_output_filter(m_eta);
  apply_output_filter(m_vel);
}

Tendency WaveModel::tendency(const State& s, const Field& noise) const {
  Tendency t{Field(*grid_), Field(*grid_), Field(*grid_), Field(*grid_)};
  drift(s, t.drift_eta, t.drift_vel);
  martingale(s, noise, t.mart_eta, t.mart_vel);
  return t;
}

void WaveModel::drift_primitive(const State& s, Field& d_eta,
                                Field& d_vel) const {
  const Grid& g = *grid_;
  const int n = g.size();
  const double eps = params_.epsilon;
  const double ups = params_.upsilon;

  Field h = water_height(s, params_);
  Field deta = g.deriv(s.eta, 1);
  Field du = g.deriv(s.vel, 1);

  // u* = u - (1/2) Upsilon eps u_s; the ISD is time-independent.
  Field ustar(g), dustar(g);
  if (params_.stochastic) {
    Field disd = g.deriv(isd_, 1);
    for (int j = 0; j < n; ++j) {
      ustar[j] = s.vel[j] - 0.5 * ups * eps * isd_[j];
      dustar[j] = du[j] - 0.5 * ups * eps * disd[j];
    }
  } else {
    ustar = s.vel;
    dustar = du;
  }

  d_eta = Field(g);
  d_vel = Field(g);
  for (int j = 0; j < n; ++j) {
    d_eta[j] = -eps * ustar[j] * deta[j] - h[j] * dustar[j];
    d_vel[j] = -eps * ustar[j] * du[j] - deta[j];
  }

  if (params_.kind == ModelKind::boussinesq && params_.beta > 0.0) {
    // (I - (eps beta^2/3) d_xx) d_t u = rhs, depth frozen to 1 in the
    // dispersive coefficient.
    d_vel = g.invert_helmholtz(d_vel, eps * params_.beta * params_.beta / 3.0);
  } else if (params_.kind == ModelKind::serre_green_naghdi &&
             params_.beta > 0.0) {
    const double c = eps * params_.beta * params_.beta / 3.0;
    Field d2u = g.deriv(s.vel, 2);
    // Explicit part of dG; the d_t(d_x u) part stays inside the operator.
    Field flux(g);
    for (int j = 0; j < n; ++j) {
      const double dg = eps * (ustar[j] * d2u[j] - dustar[j] * du[j]);
      flux[j] = h[j] * h[j] * h[j] * dg;
    }
    Field dflux = g.deriv(flux, 1);
    for (int j = 0; j < n; ++j) d_vel[j] += (c / h[j]) * dflux[j];
    d_vel = solve_sgn_operator(h, d_vel, c, params_.sgn_tol,
                               params_.sgn_max_iter)
                .solution;
  }
}

void WaveModel::mart_primitive(const State& s, const Field& dB, Field& m_eta,
                               Field& m_vel) const {
  const Grid& g = *grid_;
  const int n = g.size();
  const double eps = params_.epsilon;
  const double sq_ups = std::sqrt(params_.upsilon);

  Field h = water_height(s, params_);
  Field deta = g.deriv(s.eta, 1);
  Field du = g.deriv(s.vel, 1);
  Field ddB = g.deriv(dB, 1);
  Field div_part = split_additive(ddB, s.eta, noise_, eps);

  m_eta = Field(g);
  m_vel = Field(g);
  for (int j = 0; j < n; ++j) {
    m_eta[j] = -sq_ups * (eps * dB[j] * deta[j] + div_part[j]);
    m_vel[j] = -sq_ups * eps * dB[j] * du[j];
  }

  if (params_.kind == ModelKind::boussinesq && params_.beta > 0.0) {
    m_vel = g.invert_helmholtz(m_vel, eps * params_.beta * params_.beta / 3.0);
  } else if (params_.kind == ModelKind::serre_green_naghdi &&
             params_.beta > 0.0) {
    const double c = eps * params_.beta * params_.beta / 3.0;
    Field d2u = g.deriv(s.vel, 2);
    Field flux(g);
    for (int j = 0; j < n; ++j) {
      const double dg = sq_ups * eps * (dB[j] * d2u[j] - ddB[j] * du[j]);
      flux[j] = h[j] * h[j] * h[j] * dg;
    }
    Field dflux = g.deriv(flux, 1);
    for (int j = 0; j < n; ++j) m_vel[j] += (c / h[j]) * dflux[j];
    m_vel = solve_sgn_operator(h, m_vel, c, params_.sgn_tol,
                               params_.sgn_max_iter)
                .solution;
  }
}

void WaveModel::drift_conservative(const State& s, Field& d_eta,
                                   Field& d_q) const {
  const Grid& g = *grid_;
  const int n = g.size();
  const double eps = params_.epsilon;
  const double ups = params_.upsilon;

  Field h = water_height(s, params_);
  Field ustar(g), flux_eta(g), flux_q(g), pressure(g);
  for (int j = 0; j < n; ++j) {
    const double u = s.vel[j] / h[j];
    ustar[j] = u - (params_.stochastic ? 0.5 * ups * eps * isd_[j] : 0.0);
    flux_eta[j] = ustar[j] * h[j];
    flux_q[j] = h[j] * u * ustar[j];
    pressure[j] = s.eta[j] + eps * s.eta[j] * s.eta[j] / 2.0;
  }
  Field dflux_eta = g.deriv(flux_eta, 1);
  Field dflux_q = g.deriv(flux_q, 1);
  Field dpressure = g.deriv(pressure, 1);

  d_eta = Field(g);
  d_q = Field(g);
  for (int j = 0; j < n; ++j) {
    d_eta[j] = -dflux_eta[j];
    d_q[j] = -eps * dflux_q[j] - dpressure[j];
  }
}

void WaveModel::mart_conservative(const State& s, const Field& dB,
                                  Field& m_eta, Field& m_q) const {
  const Grid& g = *grid_;
  const int n = g.size();
  const double eps = params_.epsilon;
  const double sq_ups = std::sqrt(params_.upsilon);

  Field h = water_height(s, params_);
  Field flux_eta(g), flux_q(g);
  for (int j = 0; j < n; ++j) {
    // Additive split in flux form: d_x(h sigma dB) less d_x(sigma dB).
    flux_eta[j] = noise_.filter_additive ? eps * s.eta[j] * dB[j]
                                         : h[j] * dB[j];
    flux_q[j] = s.vel[j] * dB[j];  // h u sigma dB, with q = h u
  }
  Field dflux_eta = g.deriv(flux_eta, 1);
  Field dflux_q = g.deriv(flux_q, 1);

  m_eta = Field(g);
  m_q = Field(g);
  for (int j = 0; j < n; ++j) {
    m_eta[j] = -sq_ups * dflux_eta[j];
    m_q[j] = -eps * sq_ups * dflux_q[j];
  }
}

}  // namespace luwave
