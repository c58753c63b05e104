#include "grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace luwave {

Field::Field(const Grid& g) : grid_(&g), v_(g.size(), 0.0) {}
Field::Field(const Grid& g, double fill) : grid_(&g), v_(g.size(), fill) {}

double max_abs(const Field& f) {
  double m = 0.0;
  for (int j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j]));
  return m;
}

bool all_finite(const Field& f) {
  for (int j = 0; j < f.size(); ++j)
    if (!std::isfinite(f[j])) return false;
  return true;
}

Grid::Grid(int n_points, double half_length) : n_(n_points), half_(half_length) {
  if (!is_power_of_two(n_) || n_ < 8)
    throw config_error("grid: n_points must be a power of two >= 8, got " +
                       std::to_string(n_points));
  if (!(half_ > 0.0))
    throw config_error("grid: half_length must be positive");

  const double dx = 2.0 * half_ / n_;
  nodes_.resize(n_);
  for (int j = 0; j < n_; ++j) nodes_[j] = -half_ + j * dx;

  k_.resize(n_ / 2 + 1);
  for (int m = 0; m <= n_ / 2; ++m) k_[m] = std::numbers::pi * m / half_;

  // Plan creation is the only non-reentrant FFTW entry point.
  static std::once_flag planner_flag;
  std::call_once(planner_flag, [] { fftw_make_planner_thread_safe(); });

  std::vector<double> rbuf(n_);
  std::vector<std::complex<double>> cbuf(n_ / 2 + 1);
  fwd_ = fftw_plan_dft_r2c_1d(n_, rbuf.data(),
                              reinterpret_cast<fftw_complex*>(cbuf.data()),
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_c2r_1d(n_, reinterpret_cast<fftw_complex*>(cbuf.data()),
                              rbuf.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Grid::~Grid() {
  if (fwd_) fftw_destroy_plan(fwd_);
  if (bwd_) fftw_destroy_plan(bwd_);
}

void Grid::forward(const double* in, std::complex<double>* out) const {
  // r2c preserves its input; FFTW's signature is just not const-qualified.
  fftw_execute_dft_r2c(fwd_, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void Grid::inverse(std::complex<double>* in, double* out) const {
  fftw_execute_dft_c2r(bwd_, reinterpret_cast<fftw_complex*>(in), out);
  const double inv_n = 1.0 / n_;
  for (int j = 0; j < n_; ++j) out[j] *= inv_n;
}

Field Grid::deriv(const Field& f, int order) const {
  if (order < 1 || order > 3)
    throw config_error("deriv: order must be 1, 2 or 3");
  std::vector<std::complex<double>> spec(n_modes());
  forward(f.data(), spec.data());
  for (int m = 0; m < n_modes(); ++m) {
    std::complex<double> fac(0.0, k_[m]);
    std::complex<double> p = fac;
    for (int o = 1; o < order; ++o) p *= fac;
    spec[m] *= p;
  }
  if (order % 2 == 1) spec[n_ / 2] = 0.0;
  Field out(*this);
  inverse(spec.data(), out.data());
  return out;
}

Field Grid::invert_helmholtz(const Field& f, double c) const {
  if (c < 0.0) throw config_error("invert_helmholtz: c must be >= 0");
  std::vector<std::complex<double>> spec(n_modes());
  forward(f.data(), spec.data());
  for (int m = 0; m < n_modes(); ++m) spec[m] /= 1.0 + c * k_[m] * k_[m];
  Field out(*this);
  inverse(spec.data(), out.data());
  return out;
}

Field Grid::two_thirds_filter(const Field& f) const {
  std::vector<std::complex<double>> spec(n_modes());
  forward(f.data(), spec.data());
  for (int m = n_ / 3 + 1; m < n_modes(); ++m) spec[m] = 0.0;
  Field out(*this);
  inverse(spec.data(), out.data());
  return out;
}

Field Grid::translate(const Field& f, double shift) const {
  std::vector<std::complex<double>> spec(n_modes());
  forward(f.data(), spec.data());
  for (int m = 0; m < n_ / 2; ++m) {
    const double phase = -k_[m] * shift;
    spec[m] *= std::complex<double>(std::cos(phase), std::sin(phase));
  }
  // The lone Nyquist cosine only admits a real shift factor.
  spec[n_ / 2] = std::complex<double>(
      spec[n_ / 2].real() * std::cos(k_[n_ / 2] * shift), 0.0);
  Field out(*this);
  inverse(spec.data(), out.data());
  return out;
}

double Grid::integrate(const Field& f) const {
  double s = 0.0;
  for (int j = 0; j < n_; ++j) s += f[j];
  return s * spacing();
}

Field apply_sgn_operator(const Field& h, const Field& v, double c) {
  const Grid& g = h.grid();
  Field dv = g.deriv(v, 1);
  Field flux(g);
  for (int j = 0; j < g.size(); ++j) flux[j] = h[j] * h[j] * h[j] * dv[j];
  Field dflux = g.deriv(flux, 1);
  Field out(g);
  for (int j = 0; j < g.size(); ++j) out[j] = v[j] - (c / h[j]) * dflux[j];
  return out;
}

SgnSolveResult solve_sgn_operator(const Field& h, const Field& rhs, double c,
                                  double tol, int max_iter) {
  if (!(tol > 0.0)) throw config_error("solve_sgn_operator: tol must be > 0");
  const Grid& g = h.grid();
  for (int j = 0; j < g.size(); ++j)
    if (!(h[j] > 0.0))
      throw solver_error("solve_sgn_operator: non-positive depth at x = " +
                         std::to_string(g.node(j)));

  SgnSolveResult res{Field(g), 0};
  Field& v = res.solution;
  for (int it = 0; it < max_iter; ++it) {
    Field tv = apply_sgn_operator(h, v, c);
    Field r(g);
    double rmax = 0.0;
    for (int j = 0; j < g.size(); ++j) {
      r[j] = rhs[j] - tv[j];
      rmax = std::max(rmax, std::abs(r[j]));
    }
    if (rmax <= tol) {
      res.iterations = it;
      return res;
    }
    Field corr = g.invert_helmholtz(r, c);
    for (int j = 0; j < g.size(); ++j) v[j] += corr[j];
  }
  throw solver_error("solve_sgn_operator: no convergence after " +
                     std::to_string(max_iter) + " iterations (tol " +
                     std::to_string(tol) + ")");
}

}  // namespace luwave
