#include <doctest.h>

#include <cmath>
#include <numbers>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "kdv.hpp"

using namespace luwave;

namespace {
double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}
}  // namespace

TEST_SUITE("kdv") {

TEST_CASE("soliton: peak value, speed readout, evenness") {
  Grid g(1024, 50.0);
  Field s0 = soliton(0.1, g, 0.0);
  CHECK(s0[g.size() / 2] == doctest::Approx(0.1).epsilon(1e-14));  // x = 0
  CHECK(symmetry_metric(s0, 0.0) < 1e-12);

  // Peak sits at (1 + A/2) t.
  const double t = 4.0;
  Field st = soliton(0.1, g, t);
  int jmax = 0;
  for (int j = 0; j < g.size(); ++j)
    if (st[j] > st[jmax]) jmax = j;
  CHECK(std::abs(g.node(jmax) - 1.05 * t) <= g.spacing());

  CHECK_THROWS_AS(soliton(0.0, g, 0.0), config_error);
}

TEST_CASE("rhs_kdv: constant state, traveling-wave identity, variants") {
  Grid g(1024, 50.0);
  KdvParams kp;
  Field zero(g);

  Field constant(g, 0.7);
  KdvTendency tc = rhs_kdv(constant, kp, zero);
  CHECK(max_abs(tc.drift) < 1e-12);
  CHECK(max_abs(tc.mart) == 0.0);

  // The soliton profile turns the drift into a pure translation.
  const double amp = 0.1;
  Field s0 = soliton(amp, g, 0.0);
  KdvTendency ts = rhs_kdv(s0, kp, zero);
  Field ds = g.deriv(s0, 1);
  double worst = 0.0;
  for (int j = 0; j < g.size(); ++j)
    worst = std::max(worst, std::abs(ts.drift[j] + (1.0 + amp / 2) * ds[j]));
  CHECK(worst < 1e-6);

  // Transport with sigma = 0 degenerates to the deterministic variant.
  KdvParams tp = kp;
  tp.variant = KdvVariant::transport;
  tp.sigma_const = 0.0;
  KdvTendency tt = rhs_kdv(s0, tp, zero);
  CHECK(max_diff(tt.drift, ts.drift) == 0.0);
  CHECK(max_abs(tt.mart) == 0.0);
}

TEST_CASE("dissipative term alone shrinks the L2 norm monotonically") {
  Grid g(256, 50.0);
  KdvParams det;
  KdvParams dis = det;
  dis.variant = KdvVariant::dissipative;
  dis.a_h = 0.05;
  Field zero(g);

  // Isolate the heat term as the difference of the two variants' drifts,
  // then march it explicitly.
  Field eta = soliton(0.1, g, 0.0);
  auto l2 = [&](const Field& f) {
    double s = 0.0;
    for (int j = 0; j < g.size(); ++j) s += f[j] * f[j];
    return s * g.spacing();
  };
  double prev = l2(eta);
  const double dt = 0.001;
  for (int step = 0; step < 200; ++step) {
    Field d_dis = rhs_kdv(eta, dis, zero).drift;
    Field d_det = rhs_kdv(eta, det, zero).drift;
    for (int j = 0; j < g.size(); ++j)
      eta[j] += dt * (d_dis[j] - d_det[j]);
    const double now = l2(eta);
    CHECK(now <= prev + 1e-14);
    prev = now;
  }
}

TEST_CASE("integrating-factor and explicit stepping agree at stable dt") {
  Grid g(256, 50.0);
  KdvParams kp;
  kp.integrating_factor = true;
  KdvParams ke = kp;
  ke.integrating_factor = false;
  const double dt = 0.005;
  KdvStepper sif(g, kp, dt);
  KdvStepper sex(g, ke, dt);
  Field a = soliton(0.1, g, 0.0), b = a;
  for (int step = 0; step < 200; ++step) {
    a = sif.step(a, 0.0);
    b = sex.step(b, 0.0);
  }
  CHECK(max_diff(a, b) < 1e-6);
}

TEST_CASE("mass is conserved pathwise in every variant") {
  Grid g(512, 50.0);
  StepConfig cfg{0.001, 1.0, 0};
  for (KdvVariant variant : {KdvVariant::deterministic, KdvVariant::transport,
                             KdvVariant::dissipative}) {
    KdvParams kp;
    kp.variant = variant;
    kp.sigma_const = 0.01;
    kp.a_h = 0.02;
    KdvStepper stepper(g, kp, cfg.dt);
    RngStream rng(11);
    KdvTrajectory traj = kdv_simulate(soliton(0.1, g, 0.0), stepper, cfg, rng);
    const double m0 = g.integrate(traj.etas.front());
    const double m1 = g.integrate(traj.etas.back());
    CHECK(std::abs(m1 - m0) / std::abs(m0) < 1e-10);
  }
}

TEST_CASE("soliton travels at (1 + A/2) with its shape intact") {
  Grid g(1024, 50.0);
  KdvParams kp;
  const double amp = 0.1, t_end = 2.0, dt = 1e-3;
  KdvStepper stepper(g, kp, dt);
  RngStream rng(0);
  StepConfig cfg{dt, t_end, 0};
  KdvTrajectory traj = kdv_simulate(soliton(amp, g, 0.0), stepper, cfg, rng);
  const Field& eta = traj.etas.back();
  CHECK(max_diff(eta, soliton(amp, g, t_end)) < 1e-4);

  int jmax = 0;
  for (int j = 0; j < g.size(); ++j)
    if (eta[j] > eta[jmax]) jmax = j;
  // Sub-grid peak via parabolic interpolation.
  const double y0 = eta[jmax - 1], y1 = eta[jmax], y2 = eta[jmax + 1];
  const double xp =
      g.node(jmax) + 0.5 * g.spacing() * (y0 - y2) / (y0 - 2 * y1 + y2);
  const double speed = xp / t_end;
  CHECK(std::abs(speed - (1.0 + amp / 2)) / (1.0 + amp / 2) < 0.005);
}

TEST_CASE("wadati shift: stochastic run is a translated deterministic run") {
  Grid g(1024, 50.0);
  const double sigma = 0.01, dt = 1e-3, t_end = 1.0;
  StepConfig cfg{dt, t_end, 200};

  KdvParams det;
  KdvStepper s_det(g, det, dt);
  RngStream rng_det(5);
  KdvTrajectory traj_det =
      kdv_simulate(soliton(0.1, g, 0.0), s_det, cfg, rng_det);

  KdvParams sto = det;
  sto.variant = KdvVariant::transport;
  sto.sigma_const = sigma;
  KdvStepper s_sto(g, sto, dt);
  RngStream rng_sto(5);
  KdvTrajectory traj_sto =
      kdv_simulate(soliton(0.1, g, 0.0), s_sto, cfg, rng_sto);

  WadatiResult res = wadati_shift_check(traj_sto, traj_det, sigma, sto.upsilon,
                                        traj_sto.brownian);
  CHECK(res.best_err < 1e-4);
  CHECK(res.best_kappa == 1.0);          // chain-rule coefficient wins
  CHECK(res.err_kappa1 < res.err_kappa23);

  // Zero-noise degenerate case: both runs coincide, zero shift, zero error.
  KdvParams null_noise = sto;
  null_noise.sigma_const = 0.0;
  KdvStepper s_null(g, null_noise, dt);
  RngStream rng_null(5);
  KdvTrajectory traj_null =
      kdv_simulate(soliton(0.1, g, 0.0), s_null, cfg, rng_null);
  WadatiResult null_res = wadati_shift_check(traj_null, traj_det, 0.0, 1.0,
                                             traj_null.brownian);
  CHECK(null_res.best_err < 1e-13);

  // Halving dt halves (or better) the best-kappa error, measured on one
  // Brownian path refined across the two resolutions.
  const long steps_fine = std::lround(t_end / (dt / 2));
  std::vector<double> dw(steps_fine);
  RngStream rng_ref(5);
  for (long i = 0; i < steps_fine; ++i)
    dw[i] = rng_ref.sample_increment(dt / 2).d_beta1;

  auto run_level = [&](double level_dt, auto supply) {
    KdvStepper stoch(g, sto, level_dt);
    KdvStepper deter(g, det, level_dt);
    Field es = soliton(0.1, g, 0.0), ed = es;
    KdvTrajectory ts{{0.0}, {es}, {0.0}};
    KdvTrajectory td{{0.0}, {ed}, {0.0}};
    double b = 0.0;
    const long steps = std::lround(t_end / level_dt);
    for (long i = 0; i < steps; ++i) {
      const double incr = supply(i);
      es = stoch.step(es, incr);
      ed = deter.step(ed, 0.0);
      b += incr;
    }
    ts.times.push_back(t_end), ts.etas.push_back(es), ts.brownian.push_back(b);
    td.times.push_back(t_end), td.etas.push_back(ed), td.brownian.push_back(0);
    return wadati_shift_check(ts, td, sigma, sto.upsilon, ts.brownian);
  };
  WadatiResult coarse =
      run_level(dt, [&](long i) { return dw[2 * i] + dw[2 * i + 1]; });
  WadatiResult fine = run_level(dt / 2, [&](long i) { return dw[i]; });
  CHECK(fine.best_err <= 0.6 * coarse.best_err);

  // Mismatched cadences are rejected.
  KdvTrajectory truncated = traj_det;
  truncated.times.pop_back();
  truncated.etas.pop_back();
  truncated.brownian.pop_back();
  CHECK_THROWS_AS(
      wadati_shift_check(traj_sto, truncated, sigma, 1.0, traj_sto.brownian),
      config_error);
}

}  // TEST_SUITE
