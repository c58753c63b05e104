#include "kdv.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace luwave {

double soliton_value(double amp, double x, double t) {
  const double arg = std::sqrt(3.0 * amp / 4.0) * (x - (1.0 + amp / 2.0) * t);
  const double c = std::cosh(arg);
  return amp / (c * c);
}

Field soliton(double amp, const Grid& grid, double t) {
  if (!(amp > 0.0)) throw config_error("soliton: amplitude must be > 0");
  Field out(grid);
  for (int j = 0; j < grid.size(); ++j)
    out[j] = soliton_value(amp, grid.node(j), t);
  return out;
}

KdvTendency rhs_kdv(const Field& eta, const KdvParams& params,
                    const Field& dB) {
  const Grid& g = eta.grid();
  Field deta = g.deriv(eta, 1);
  Field d3 = g.deriv(eta, 3);

  KdvTendency t{Field(g), Field(g)};
  for (int j = 0; j < g.size(); ++j)
    t.drift[j] = -(1.0 + 1.5 * eta[j]) * deta[j] - d3[j] / 6.0;

  if (params.variant == KdvVariant::dissipative && params.a_h != 0.0) {
    Field d2 = g.deriv(eta, 2);
    for (int j = 0; j < g.size(); ++j) t.drift[j] += 0.5 * params.a_h * d2[j];
  }
  if (params.variant == KdvVariant::transport) {
    const double sq_ups = std::sqrt(params.upsilon);
    for (int j = 0; j < g.size(); ++j) t.mart[j] = -sq_ups * dB[j] * deta[j];
  }
  return t;
}

KdvStepper::KdvStepper(const Grid& grid, KdvParams params, double dt)
    : grid_(&grid), params_(params), dt_(dt) {
  if (!(dt > 0.0)) throw config_error("KdvStepper: dt must be > 0");
  const int nm = grid.n_modes();
  half_exp_.resize(nm);
  full_exp_.resize(nm);
  for (int m = 0; m < nm; ++m) {
    const double k = grid.wavenumber(m);
    // Linear symbol of -d_x - (1/6) d_xxx (+ dissipative Laplacian).
    std::complex<double> lam(0.0, -k + k * k * k / 6.0);
    if (m == grid.size() / 2) lam = 0.0;  // odd derivatives drop the Nyquist
    if (params_.variant == KdvVariant::dissipative)
      lam -= 0.5 * params_.a_h * k * k;
    half_exp_[m] = std::exp(lam * (dt / 2.0));
    full_exp_[m] = half_exp_[m] * half_exp_[m];
  }
}

Field KdvStepper::noise_realization(double d_beta) const {
  Field dB(*grid_);
  for (int j = 0; j < grid_->size(); ++j)
    dB[j] = params_.sigma_const * d_beta;
  return dB;
}

Field KdvStepper::step(const Field& eta, double d_beta) const {
  return params_.integrating_factor ? step_integrating_factor(eta, d_beta)
                                    : step_explicit(eta, d_beta);
}

Field KdvStepper::step_integrating_factor(const Field& eta,
                                          double d_beta) const {
  const Grid& g = *grid_;
  const int n = g.size();
  const int nm = g.n_modes();
  using cvec = std::vector<std::complex<double>>;

  // Nonlinear tendency -(3/2) eta d_x eta in spectral space.
  auto nonlin = [&](const cvec& w) {
    cvec tmp = w;
    Field f(g);
    g.inverse(tmp.data(), f.data());
    Field df = g.deriv(f, 1);
    Field prod(g);
    for (int j = 0; j < n; ++j) prod[j] = -1.5 * f[j] * df[j];
    cvec out(nm);
    g.forward(prod.data(), out.data());
    return out;
  };

  cvec v(nm);
  g.forward(eta.data(), v.data());

  cvec a = nonlin(v);
  cvec stage(nm);
  for (int m = 0; m < nm; ++m)
    stage[m] = half_exp_[m] * (v[m] + dt_ / 2.0 * a[m]);
  cvec b = nonlin(stage);
  for (int m = 0; m < nm; ++m)
    stage[m] = half_exp_[m] * v[m] + dt_ / 2.0 * b[m];
  cvec c = nonlin(stage);
  for (int m = 0; m < nm; ++m)
    stage[m] = full_exp_[m] * v[m] + half_exp_[m] * dt_ * c[m];
  cvec d = nonlin(stage);

  cvec vnew(nm);
  for (int m = 0; m < nm; ++m)
    vnew[m] = full_exp_[m] * (v[m] + dt_ / 6.0 * a[m]) +
              half_exp_[m] * (dt_ / 3.0) * (b[m] + c[m]) + dt_ / 6.0 * d[m];

  Field out(g);
  g.inverse(vnew.data(), out.data());

  if (params_.variant == KdvVariant::transport) {
    Field dB = noise_realization(d_beta);
    KdvTendency t1 = rhs_kdv(eta, params_, dB);
    Field pred(g);
    for (int j = 0; j < n; ++j) pred[j] = eta[j] + t1.mart[j];
    KdvTendency t2 = rhs_kdv(pred, params_, dB);
    for (int j = 0; j < n; ++j)
      out[j] += 0.5 * (t1.mart[j] + t2.mart[j]);
  }
  return out;
}

Field KdvStepper::step_explicit(const Field& eta, double d_beta) const {
  const Grid& g = *grid_;
  const int n = g.size();
  Field zero(g);
  auto drift = [&](const Field& f) { return rhs_kdv(f, params_, zero).drift; };

  Field k1 = drift(eta);
  Field s(g);
  for (int j = 0; j < n; ++j) s[j] = eta[j] + dt_ / 2 * k1[j];
  Field k2 = drift(s);
  for (int j = 0; j < n; ++j) s[j] = eta[j] + dt_ / 2 * k2[j];
  Field k3 = drift(s);
  for (int j = 0; j < n; ++j) s[j] = eta[j] + dt_ * k3[j];
  Field k4 = drift(s);

  Field out(g);
  for (int j = 0; j < n; ++j)
    out[j] = eta[j] + dt_ / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);

  if (params_.variant == KdvVariant::transport) {
    Field dB = noise_realization(d_beta);
    KdvTendency t1 = rhs_kdv(eta, params_, dB);
    Field pred(g);
    for (int j = 0; j < n; ++j) pred[j] = eta[j] + t1.mart[j];
    KdvTendency t2 = rhs_kdv(pred, params_, dB);
    for (int j = 0; j < n; ++j) out[j] += 0.5 * (t1.mart[j] + t2.mart[j]);
  }
  return out;
}

KdvTrajectory kdv_simulate(const Field& initial, const KdvStepper& stepper,
                           const StepConfig& cfg, RngStream& rng) {
  const long steps = std::lround(cfg.t_end / cfg.dt);
  KdvTrajectory traj;
  Field eta = initial;
  double brownian = 0.0;
  traj.times.push_back(0.0);
  traj.etas.push_back(eta);
  traj.brownian.push_back(0.0);

  const bool noisy = stepper.params().variant == KdvVariant::transport;
  for (long step = 1; step <= steps; ++step) {
    double d_beta = 0.0;
    if (noisy) d_beta = rng.sample_increment(cfg.dt).d_beta1;
    eta = stepper.step(eta, d_beta);
    brownian += d_beta;
    if (!all_finite(eta))
      throw simulation_error("kdv state became non-finite",
                             static_cast<double>(step) * cfg.dt, 0.0);
    const bool last = step == steps;
    if ((cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0 && !last) ||
        last) {
      traj.times.push_back(static_cast<double>(step) * cfg.dt);
      traj.etas.push_back(eta);
      traj.brownian.push_back(brownian);
    }
  }
  return traj;
}

WadatiResult wadati_shift_check(const KdvTrajectory& stoch,
                                const KdvTrajectory& det, double sigma_const,
                                double upsilon,
                                const std::vector<double>& brownian) {
  if (stoch.times.size() != det.times.size() ||
      stoch.times.size() != brownian.size())
    throw config_error("wadati_shift_check: mismatched snapshot cadence");
  if (!stoch.etas.empty() && !det.etas.empty() &&
      stoch.etas.front().size() != det.etas.front().size())
    throw config_error("wadati_shift_check: mismatched grids");

  const double sq_ups = std::sqrt(upsilon);
  WadatiResult res;
  for (std::size_t i = 0; i < stoch.times.size(); ++i) {
    const Grid& g = det.etas[i].grid();
    for (double kappa : {1.0, 2.0 / 3.0}) {
      const double shift = kappa * sq_ups * sigma_const * brownian[i];
      Field ref = g.translate(det.etas[i], shift);
      double err = 0.0;
      for (int j = 0; j < g.size(); ++j)
        err = std::max(err, std::abs(stoch.etas[i][j] - ref[j]));
      if (kappa == 1.0)
        res.err_kappa1 = std::max(res.err_kappa1, err);
      else
        res.err_kappa23 = std::max(res.err_kappa23, err);
    }
  }
  if (res.err_kappa1 <= res.err_kappa23) {
    res.best_kappa = 1.0;
    res.best_err = res.err_kappa1;
  } else {
    res.best_kappa = 2.0 / 3.0;
    res.best_err = res.err_kappa23;
  }
  return res;
}

}  // namespace luwave
