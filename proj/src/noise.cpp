#include "noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace luwave {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed)
    : engine_(splitmix64(splitmix64(seed))) {}

RngStream RngStream::for_path(std::uint64_t base_seed,
                              std::uint64_t path_index) {
  return RngStream(base_seed ^ (path_index * kPathStride));
}

double RngStream::uniform01() {
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

WienerIncrement RngStream::sample_increment(double dt) {
  if (!(dt > 0.0)) throw config_error("sample_increment: dt must be > 0");
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  const double sdt = std::sqrt(dt);
  return {r * std::cos(phi) * sdt, r * std::sin(phi) * sdt, dt};
}

double taper(double x, double alpha, double L) {
  if (std::abs(x) > L)
    throw config_error("taper: position outside the tank, |x| > L");
  if (!std::isfinite(alpha)) return 1.0;
  const double r2 = (x / L) * (x / L);
  if (r2 >= 1.0) return 0.0;
  return std::exp((1.0 - 1.0 / (1.0 - r2)) / (alpha * alpha));
}

double taper_deriv(double x, double alpha, double L) {
  if (std::abs(x) > L)
    throw config_error("taper_deriv: position outside the tank, |x| > L");
  if (!std::isfinite(alpha)) return 0.0;
  const double r2 = (x / L) * (x / L);
  if (r2 >= 1.0) return 0.0;
  const double den = 1.0 - r2;
  const double s = std::exp((1.0 - 1.0 / den) / (alpha * alpha));
  if (s == 0.0) return 0.0;  // underflowed before the pole can overflow
  return s * (-2.0 * x / (L * L)) / (alpha * alpha * den * den);
}

Field noise_field(const NoiseModel& model, const WienerIncrement& inc,
                  const Grid& grid) {
  Field out(grid);
  if (model.amplitude == 0.0) return out;
  const double L = grid.half_length();
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    const double s = taper(x, model.taper_alpha, L);
    out[j] = s * model.amplitude *
             (std::cos(model.wavenumber * x) * inc.d_beta1 +
              std::sin(model.wavenumber * x) * inc.d_beta2);
  }
  return out;
}

Field variance_tensor(const NoiseModel& model, const Grid& grid) {
  Field out(grid);
  const double a2 = model.amplitude * model.amplitude;
  for (int j = 0; j < grid.size(); ++j) {
    const double s = taper(grid.node(j), model.taper_alpha, grid.half_length());
    out[j] = a2 * s * s;
  }
  return out;
}

Field ito_stokes_drift(const NoiseModel& model, const Grid& grid) {
  Field out(grid);
  const double a2 = model.amplitude * model.amplitude;
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    out[j] = a2 * taper(x, model.taper_alpha, grid.half_length()) *
             taper_deriv(x, model.taper_alpha, grid.half_length());
  }
  return out;
}

Field split_additive(const Field& noise_div_term, const Field& eta,
                     const NoiseModel& model, double epsilon) {
  const Grid& g = noise_div_term.grid();
  Field out(g);
  if (model.filter_additive) {
    for (int j = 0; j < g.size(); ++j)
      out[j] = epsilon * eta[j] * noise_div_term[j];
  } else {
    for (int j = 0; j < g.size(); ++j)
      out[j] = (1.0 + epsilon * eta[j]) * noise_div_term[j];
  }
  return out;
}

}  // namespace luwave
