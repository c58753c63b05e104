#pragma once

#include <vector>

#include "models.hpp"

namespace luwave {

struct StepConfig {
  double dt = 0.005;
  double t_end = 5.0;
  int snapshot_every = 200;  // <= 0 keeps only initial and final states
};

/// Supplies one realized noise field per step. A source owns its stream and
/// must not be shared between concurrently running paths.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual bool active() const = 0;
  virtual Field sample(double dt) = 0;
};

/// The structured wave noise of NoiseModel, driven by a seeded stream.
class WaveNoiseSource : public NoiseSource {
 public:
  WaveNoiseSource(const Grid& grid, NoiseModel model, RngStream rng)
      : grid_(&grid), model_(model), rng_(rng) {}
  bool active() const override { return true; }
  Field sample(double dt) override {
    return noise_field(model_, rng_.sample_increment(dt), *grid_);
  }

 private:
  const Grid* grid_;
  NoiseModel model_;
  RngStream rng_;
};

/// Source for deterministic runs: never consumes randomness.
class NullNoiseSource : public NoiseSource {
 public:
  bool active() const override { return false; }
  Field sample(double) override { return Field(); }
};

/// Drift-only step: classical RK4 on the finite-variation tendencies.
State rk4_step(const State& s, const ModelRhs& rhs, double dt);

/// One hybrid step: RK4 for the drift (noise absent in all four stages),
/// stochastic Euler-Heun for the martingale part with one shared noise field
/// for predictor and corrector. Both updates compose additively.
State hybrid_step(const State& s, const ModelRhs& rhs, const Field& noise,
                  double dt);

/// Convenience overload drawing the step's Wiener pair from the stream.
State hybrid_step(const State& s, const WaveModel& model, RngStream& rng,
                  double dt);

struct Trajectory {
  std::vector<State> snapshots;
  const State& final_state() const { return snapshots.back(); }
};

/// Fixed-step pathwise driver. Snapshots at the requested cadence plus the
/// initial and final states. Step failures are rethrown annotated with the
/// failing step index and time.
Trajectory simulate(const State& initial, const ModelRhs& rhs,
                    NoiseSource& noise, const StepConfig& cfg);

}  // namespace luwave
