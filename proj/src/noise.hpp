#pragma once

#include <cstdint>
#include <random>

#include "grid.hpp"

namespace luwave {

/// Structured wave noise: sigma(x) dW = A cos(kx) dbeta1 + A sin(kx) dbeta2,
/// multiplied by the boundary taper s_alpha. upsilon scales the noise
/// strength in the model equations (the fields here are unscaled).
struct NoiseModel {
  double amplitude = 0.005;            // A
  double wavenumber = 0.06283185307179586;  // k = 2*pi/100
  double taper_alpha = 10.0;           // +inf disables the taper
  bool filter_additive = true;         // drop the eta-independent noise part
  double upsilon = 1.0;                // Upsilon
};

/// One pair of Brownian increments over a step, Normal(0, dt) each.
struct WienerIncrement {
  double d_beta1 = 0.0;
  double d_beta2 = 0.0;
  double dt = 0.0;
};

/// Seeded stream of Wiener increments. Same seed, same call sequence ->
/// bit-identical draws. Streams for distinct ensemble paths are derived as
///   path_seed = base_seed XOR (path_index * 0x9E3779B97F4A7C15)
/// and scrambled through splitmix64 before seeding the engine, so nearby
/// path indices give decorrelated streams. Single owner per path.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  static constexpr std::uint64_t kPathStride = 0x9E3779B97F4A7C15ull;
  static RngStream for_path(std::uint64_t base_seed, std::uint64_t path_index);

  /// Two independent Normal(0, dt) draws via one Box-Muller pair.
  WienerIncrement sample_increment(double dt);

 private:
  double uniform01();  // (0, 1]
  std::mt19937_64 engine_;
};

/// Boundary taper s_alpha(x) = exp((1/alpha^2)(1 - 1/(1 - (x/L)^2))).
/// Equals 1 at x = 0, 0 at |x| = L (continuous extension); throws on |x| > L.
/// Non-finite alpha means "taper off" and returns 1 everywhere.
double taper(double x, double alpha, double L);

/// d/dx of the taper, with the same conventions and boundary extension.
double taper_deriv(double x, double alpha, double L);

/// Realized Stratonovich increment field sigma o dB over one step.
Field noise_field(const NoiseModel& model, const WienerIncrement& inc,
                  const Grid& grid);

/// Variance tensor a(x) = A^2 s_alpha(x)^2 (cos^2 + sin^2 collapses the
/// two basis functions). Analytic.
Field variance_tensor(const NoiseModel& model, const Grid& grid);

/// Ito-Stokes drift u_s = (1/2) d_x a = A^2 s_alpha s_alpha'. Analytic;
/// identically zero for homogeneous (untapered) noise.
Field ito_stokes_drift(const NoiseModel& model, const Grid& grid);

/// The surface-elevation noise divergence term h d_x(sigma o dB) splits as
/// d_x(sigma o dB) + eps*eta*d_x(sigma o dB); with model.filter_additive only
/// the eta-dependent (multiplicative) part is kept.
Field split_additive(const Field& noise_div_term, const Field& eta,
                     const NoiseModel& model, double epsilon);

}  // namespace luwave
