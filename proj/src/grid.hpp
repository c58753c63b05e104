#pragma once

#include <complex>
#include <vector>

#include <fftw3.h>

namespace luwave {

class Grid;

/// Real-valued grid function. Always attached to a Grid of matching size.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g);
  Field(const Grid& g, double fill);

  double& operator[](int j) { return v_[j]; }
  double operator[](int j) const { return v_[j]; }
  int size() const { return static_cast<int>(v_.size()); }
  const Grid& grid() const { return *grid_; }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  const std::vector<double>& values() const { return v_; }

 private:
  const Grid* grid_ = nullptr;
  std::vector<double> v_;
};

double max_abs(const Field& f);
bool all_finite(const Field& f);

/// Uniform periodic 1D mesh on [-L, L) with spectral transforms.
///
/// Nodes x_j = -L + j*(2L/n), wavenumbers k_m = pi*m/L for the half spectrum
/// m = 0..n/2. Immutable after construction; transform plans use the FFTW
/// new-array interface, so a Grid is safely shared across concurrent paths
/// (each call works on caller-owned buffers).
class Grid {
 public:
  /// n must be a power of two >= 8, L > 0; throws config_error otherwise.
  Grid(int n_points, double half_length);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int size() const { return n_; }
  double half_length() const { return half_; }
  double spacing() const { return 2.0 * half_ / n_; }
  double node(int j) const { return nodes_[j]; }
  const std::vector<double>& nodes() const { return nodes_; }

  int n_modes() const { return n_ / 2 + 1; }
  double wavenumber(int m) const { return k_[m]; }

  /// Unnormalized real-to-complex transform (half spectrum, n/2+1 modes).
  void forward(const double* in, std::complex<double>* out) const;
  /// Inverse transform, normalized by 1/n. Destroys the spectral input.
  void inverse(std::complex<double>* in, double* out) const;

  /// Spectral derivative of order 1, 2 or 3. Odd orders zero the Nyquist
  /// mode so the result stays real-consistent.
  Field deriv(const Field& f, int order) const;

  /// Solves (I - c*d_xx) v = f exactly, mode by mode. c >= 0.
  Field invert_helmholtz(const Field& f, double c) const;

  /// 2/3-rule dealiasing: zeroes modes with index m > n/3.
  Field two_thirds_filter(const Field& f) const;

  /// f(x - shift) via spectral phase shift (exact for band-limited f).
  Field translate(const Field& f, double shift) const;

  /// Rectangle-rule integral over the tank; exact for the zero mode.
  double integrate(const Field& f) const;

  static bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

 private:
  int n_ = 0;
  double half_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> k_;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

/// T[h] v = v - (c/h) d_x(h^3 d_x v), the implicit operator of the fully
/// nonlinear dispersive momentum update.
Field apply_sgn_operator(const Field& h, const Field& v, double c);

struct SgnSolveResult {
  Field solution;
  int iterations = 0;
};

/// Solves T[h] v = rhs to ||T v - rhs||_inf <= tol by Richardson iteration
/// preconditioned with the constant-coefficient inverse (h frozen to 1).
/// Requires h > 0 everywhere. Throws solver_error after max_iter sweeps.
SgnSolveResult solve_sgn_operator(const Field& h, const Field& rhs, double c,
                                  double tol = 1e-10, int max_iter = 200);

}  // namespace luwave
