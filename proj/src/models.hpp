#pragma once

#include "grid.hpp"
#include "noise.hpp"

namespace luwave {

enum class ModelKind { saint_venant, boussinesq, serre_green_naghdi };
enum class VariableForm { primitive, conservative };

struct ModelParams {
  double epsilon = 0.1;  // amplitude ratio A/h0
  double beta = 0.01;    // dispersion ratio k*h0
  double upsilon = 1.0;  // noise strength scaling
  ModelKind kind = ModelKind::saint_venant;
  VariableForm form = VariableForm::primitive;
  bool stochastic = false;
  bool dealias = false;       // 2/3-rule filter on the tendencies
  double sgn_tol = 1e-10;     // implicit dispersive solve
  int sgn_max_iter = 200;

  /// Stokes (Ursell) number eps/beta^2; requires beta > 0.
  double stokes_number() const;
};

/// Surface elevation plus velocity variable: depth-averaged u-bar in
/// primitive form, momentum q = h*u-bar in conservative form.
struct State {
  Field eta;
  Field vel;
  double t = 0.0;
};

/// One right-hand-side evaluation, split into the finite-variation part
/// (per unit time) and the martingale part (per noise draw, the Wiener
/// increment already folded into the noise field).
struct Tendency {
  Field drift_eta;
  Field drift_vel;
  Field mart_eta;
  Field mart_vel;
};

/// h = 1 + eps*eta. Throws simulation_error (with location and time) when
/// the water column drops below the breaking guard.
Field water_height(const State& s, const ModelParams& p);

/// Interface the time stepper drives. Drift and martingale parts are
/// evaluated separately: RK4 stages see only the drift, the Euler-Heun
/// predictor/corrector only the martingale.
class ModelRhs {
 public:
  virtual ~ModelRhs() = default;
  virtual void drift(const State& s, Field& d_eta, Field& d_vel) const = 0;
  virtual void martingale(const State& s, const Field& noise, Field& m_eta,
                          Field& m_vel) const = 0;
};

/// The three shallow-water wave systems under location uncertainty, in
/// primitive (eta, u) or conservative (eta, q) variables. Pure function of
/// the state given fixed parameters; safe to share across ensemble paths.
class WaveModel : public ModelRhs {
 public:
  WaveModel(const Grid& grid, ModelParams params, NoiseModel noise);

  void drift(const State& s, Field& d_eta, Field& d_vel) const override;
  void martingale(const State& s, const Field& noise, Field& m_eta,
                  Field& m_vel) const override;

  /// Full drift + martingale split for one noise realization.
  Tendency tendency(const State& s, const Field& noise) const;

  const ModelParams& params() const { return params_; }
  const NoiseModel& noise_model() const { return noise_; }
  const Grid& grid() const { return *grid_; }
  /// Cached Ito-Stokes drift entering u* = u - (1/2) Upsilon eps u_s.
  const Field& isd() const { return isd_; }

 private:
  void drift_primitive(const State& s, Field& d_eta, Field& d_vel) const;
  void drift_conservative(const State& s, Field& d_eta, Field& d_q) const;
  void mart_primitive(const State& s, const Field& dB, Field& m_eta,
                      Field& m_vel) const;
  void mart_conservative(const State& s, const Field& dB, Field& m_eta,
                         Field& m_q) const;
  void apply_output_filter(Field& f) const;

  const Grid* grid_;
  ModelParams params_;
  NoiseModel noise_;
  Field isd_;
};

}  // namespace luwave
