#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "integrator.hpp"
#include "oracles.hpp"

using namespace luwave;

namespace {
constexpr double pi = std::numbers::pi;

Field from_fn(const Grid& g, const oracle::Fn& f) {
  Field out(g);
  for (int j = 0; j < g.size(); ++j) out[j] = f(g.node(j));
  return out;
}
}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("mass: zero, heap quadrature oracle, odd mode") {
  Grid g(2048, 50.0);
  ModelParams p;
  p.epsilon = 0.1;

  State zero{Field(g), Field(g), 0.0};
  CHECK(mass(zero, p, g) == 0.0);

  auto heap = [](double x) { return std::exp(-x * x * x * x); };
  State s{from_fn(g, heap), Field(g), 0.0};
  // Independent quadrature oracle at 2^20 intervals; the analytic value is
  // 2*Gamma(5/4) = 1.8128049541109542.
  const double ref = oracle::simpson(heap, -50.0, 50.0, 1 << 20);
  CHECK(ref == doctest::Approx(1.8128049541109542).epsilon(1e-13));
  CHECK(mass(s, p, g) == doctest::Approx(ref).epsilon(1e-13));

  State odd{from_fn(g, [](double x) { return std::sin(pi * x / 50); }),
            Field(g), 0.0};
  CHECK(std::abs(mass(odd, p, g)) < 1e-14);
}

TEST_CASE("momentum: rest, uniform flow, parity") {
  Grid g(1024, 50.0);
  ModelParams p;
  p.epsilon = 0.1;
  State rest{Field(g), Field(g), 0.0};
  CHECK(momentum(rest, p, g) == 0.0);

  State uniform{Field(g), Field(g, 0.25), 0.0};
  CHECK(momentum(uniform, p, g) == doctest::Approx(100.0 * 0.25).epsilon(1e-14));

  State parity{from_fn(g, [](double x) { return std::exp(-x * x * x * x); }),
               from_fn(g, [](double x) { return std::sin(pi * x / 50); }),
               0.0};
  CHECK(std::abs(momentum(parity, p, g)) < 1e-14);
}

TEST_CASE("energy_sw: rest value, quadrature oracle, kinetic scaling") {
  Grid g(2048, 50.0);
  ModelParams p;
  p.epsilon = 0.1;
  State rest{Field(g), Field(g), 0.0};
  CHECK(energy_sw(rest, p, g) == doctest::Approx(50.0).epsilon(1e-15));

  auto heap = [](double x) { return std::exp(-x * x * x * x); };
  State s{from_fn(g, heap), Field(g), 0.0};
  const double ref = oracle::simpson(
      [&](double x) {
        const double h = 1.0 + 0.1 * heap(x);
        return 0.5 * h * h;
      },
      -50.0, 50.0, 1 << 20);
  CHECK(ref == doctest::Approx(50.188902401348426).epsilon(1e-13));
  CHECK(energy_sw(s, p, g) == doctest::Approx(ref).epsilon(1e-13));

  State flow = s;
  flow.vel = from_fn(g, [](double x) { return 0.1 * std::cos(pi * x / 25); });
  State flow2 = flow;
  for (int j = 0; j < g.size(); ++j) flow2.vel[j] *= 2.0;
  const double pot = energy_sw(s, p, g);
  CHECK(energy_sw(flow2, p, g) - pot ==
        doctest::Approx(4.0 * (energy_sw(flow, p, g) - pot)).epsilon(1e-12));
}

TEST_CASE("energy_sgn: reductions and closed-form dispersive part") {
  Grid g(1024, 50.0);
  ModelParams p;
  p.epsilon = 0.1;
  p.beta = 0.1;

  State uniform{from_fn(g, [](double x) { return 0.2 * std::cos(pi * x / 50); }),
                Field(g, 0.3), 0.0};
  CHECK(energy_sgn(uniform, p, g) ==
        doctest::Approx(energy_sw(uniform, p, g)).epsilon(1e-14));

  State wavy{Field(g),
             from_fn(g, [](double x) { return std::sin(pi * x / 50); }), 0.0};
  ModelParams nodisp = p;
  nodisp.beta = 0.0;
  CHECK(energy_sgn(wavy, nodisp, g) ==
        doctest::Approx(energy_sw(wavy, nodisp, g)).epsilon(1e-14));

  // h = 1, so the extra term is (eps^3 beta^2/6) (pi/L)^2 int cos^2 = ... * L.
  const double k1 = pi / 50.0;
  const double extra = std::pow(p.epsilon, 3) * p.beta * p.beta / 6.0 * k1 *
                       k1 * 50.0;
  CHECK(energy_sgn(wavy, p, g) - energy_sw(wavy, p, g) ==
        doctest::Approx(extra).epsilon(1e-12));
}

TEST_CASE("ensemble_stats: degenerate and closed-form cases") {
  Grid g(128, 50.0);
  Field f = from_fn(g, [](double x) { return std::sin(pi * x / 25); });

  std::vector<Field> same(5, f);
  EnsembleStats st = ensemble_stats(same);
  CHECK(max_abs(st.std_eta) < 1e-15);
  for (int j = 0; j < g.size(); ++j)
    CHECK(std::abs(st.mean_eta[j] - f[j]) < 1e-15);

  Field neg(g);
  for (int j = 0; j < g.size(); ++j) neg[j] = -f[j];
  EnsembleStats two = ensemble_stats({f, neg});
  CHECK(two.n_paths == 2);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(std::abs(two.mean_eta[j]) < 1e-16);
    CHECK(two.std_eta[j] ==
          doctest::Approx(std::abs(f[j]) * std::sqrt(2.0)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(ensemble_stats({f}), config_error);
}

TEST_CASE("ensemble_stats: chi-square interval for 130 iid paths") {
  Grid g(512, 50.0);
  const int n_paths = 130;
  RngStream rng(314159);
  std::vector<Field> paths;
  for (int p = 0; p < n_paths; ++p) {
    Field f(g);
    for (int j = 0; j < g.size(); ++j)
      f[j] = rng.sample_increment(1.0).d_beta1;  // unit normals
    paths.push_back(f);
  }
  EnsembleStats st = ensemble_stats(paths);
  // 99.9% chi-square interval for the sample std with n = 130 is about
  // [0.80, 1.21] (Wilson-Hilferty); far over 99% of nodes must land inside.
  int inside = 0;
  for (int j = 0; j < g.size(); ++j)
    if (st.std_eta[j] > 0.80 && st.std_eta[j] < 1.21) ++inside;
  CHECK(static_cast<double>(inside) / g.size() > 0.99);
  for (int j = 0; j < g.size(); ++j) CHECK(st.std_eta[j] >= 0.0);
}

TEST_CASE("symmetry_metric: even field, sine, off-node center") {
  Grid g(256, 50.0);
  Field even = from_fn(g, [](double x) { return std::cos(pi * x / 25); });
  CHECK(symmetry_metric(even, 0.0) < 1e-15);

  Field sine = from_fn(g, [](double x) { return std::sin(pi * x / 50); });
  CHECK(symmetry_metric(sine, 0.0) ==
        doctest::Approx(2.0 * max_abs(sine)).epsilon(1e-12));

  // Center snaps to the nearest node.
  CHECK(symmetry_metric(even, 1e-12) == symmetry_metric(even, 0.0));
}

TEST_CASE("short LU run conserves mass and momentum pathwise") {
  Grid g(1024, 50.0);
  ModelParams p;
  p.epsilon = 0.1;
  p.form = VariableForm::conservative;
  p.stochastic = true;
  NoiseModel nm;
  nm.amplitude = 0.005;
  nm.wavenumber = 2 * pi / 100;
  nm.taper_alpha = 10.0;
  WaveModel model(g, p, nm);
  State init{from_fn(g, [](double x) { return std::exp(-x * x * x * x); }),
             Field(g), 0.0};
  WaveNoiseSource src(g, nm, RngStream(2));
  StepConfig cfg{0.005, 0.5, 20};
  Trajectory traj = simulate(init, model, src, cfg);

  const DiagnosticsRow first = diagnostics_row(traj.snapshots.front(), p, g);
  for (const State& s : traj.snapshots) {
    const DiagnosticsRow r = diagnostics_row(s, p, g);
    CHECK(std::abs(r.mass - first.mass) / std::abs(first.mass) < 1e-10);
    CHECK(std::abs(r.momentum - first.momentum) < 1e-12);
  }
}

}  // TEST_SUITE
