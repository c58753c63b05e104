#include "integrator.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace luwave {

namespace {

State shifted(const State& s, const Field& de, const Field& dv, double w,
              double dt_frac) {
  State out{s.eta, s.vel, s.t + dt_frac};
  for (int j = 0; j < out.eta.size(); ++j) {
    out.eta[j] += w * de[j];
    out.vel[j] += w * dv[j];
  }
  return out;
}

}  // namespace

State rk4_step(const State& s, const ModelRhs& rhs, double dt) {
  const Grid& g = s.eta.grid();
  Field k1e(g), k1v(g), k2e(g), k2v(g), k3e(g), k3v(g), k4e(g), k4v(g);
  rhs.drift(s, k1e, k1v);
  rhs.drift(shifted(s, k1e, k1v, dt / 2, dt / 2), k2e, k2v);
  rhs.drift(shifted(s, k2e, k2v, dt / 2, dt / 2), k3e, k3v);
  rhs.drift(shifted(s, k3e, k3v, dt, dt), k4e, k4v);

  State out{s.eta, s.vel, s.t + dt};
  for (int j = 0; j < g.size(); ++j) {
    out.eta[j] += dt / 6 * (k1e[j] + 2 * k2e[j] + 2 * k3e[j] + k4e[j]);
    out.vel[j] += dt / 6 * (k1v[j] + 2 * k2v[j] + 2 * k3v[j] + k4v[j]);
  }
  return out;
}

State hybrid_step(const State& s, const ModelRhs& rhs, const Field& noise,
                  double dt) {
  State out = rk4_step(s, rhs, dt);

  const Grid& g = s.eta.grid();
  Field m1e(g), m1v(g), m2e(g), m2v(g);
  rhs.martingale(s, noise, m1e, m1v);
  // Predictor sees the martingale update only, with the same noise field.
  State pred = shifted(s, m1e, m1v, 1.0, 0.0);
  rhs.martingale(pred, noise, m2e, m2v);
  for (int j = 0; j < g.size(); ++j) {
    out.eta[j] += 0.5 * (m1e[j] + m2e[j]);
    out.vel[j] += 0.5 * (m1v[j] + m2v[j]);
  }
  return out;
}

State hybrid_step(const State& s, const WaveModel& model, RngStream& rng,
                  double dt) {
  if (!model.params().stochastic) return rk4_step(s, model, dt);
  Field noise =
      noise_field(model.noise_model(), rng.sample_increment(dt), s.eta.grid());
  return hybrid_step(s, model, noise, dt);
}

Trajectory simulate(const State& initial, const ModelRhs& rhs,
                    NoiseSource& noise, const StepConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw config_error("simulate: dt must be > 0");
  if (cfg.t_end < 0.0) throw config_error("simulate: t_end must be >= 0");

  const long steps = std::lround(cfg.t_end / cfg.dt);
  Trajectory traj;
  State s = initial;
  s.t = 0.0;
  traj.snapshots.push_back(s);

  for (long step = 1; step <= steps; ++step) {
    try {
      if (noise.active()) {
        Field dB = noise.sample(cfg.dt);
        s = hybrid_step(s, rhs, dB, cfg.dt);
      } else {
        s = rk4_step(s, rhs, cfg.dt);
      }
      s.t = static_cast<double>(step) * cfg.dt;
      if (!all_finite(s.eta) || !all_finite(s.vel))
        throw simulation_error("state became non-finite", s.t, 0.0);
    } catch (const simulation_error& e) {
      throw simulation_error(std::string(e.what()) + " [step " +
                                 std::to_string(step) + "]",
                             e.time(), e.position());
    } catch (const solver_error& e) {
      throw solver_error(std::string(e.what()) + " [step " +
                         std::to_string(step) + ", t = " +
                         std::to_string(static_cast<double>(step) * cfg.dt) +
                         "]");
    }
    if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0 &&
        step != steps)
      traj.snapshots.push_back(s);
  }
  if (steps > 0) traj.snapshots.push_back(s);
  return traj;
}

}  // namespace luwave
