#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace luwave {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v) {
  if (v == "inf" || v == "infinity")
    return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double d = std::stod(v, &pos);
  if (pos != v.size()) throw std::invalid_argument(v);
  return d;
}

long long parse_int(const std::string& v) {
  std::size_t pos = 0;
  long long i = std::stoll(v, &pos);
  if (pos != v.size()) throw std::invalid_argument(v);
  return i;
}

std::uint64_t parse_u64(const std::string& v) {
  std::size_t pos = 0;
  std::uint64_t u = std::stoull(v, &pos);
  if (pos != v.size()) throw std::invalid_argument(v);
  return u;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "off" || v == "0" || v == "no") return false;
  throw std::invalid_argument(v);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw config_error(msg);
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::saint_venant: return "saint_venant";
    case ModelKind::boussinesq: return "boussinesq";
    case ModelKind::serre_green_naghdi: return "serre_green_naghdi";
  }
  return "?";
}

std::string to_string(VariableForm form) {
  return form == VariableForm::primitive ? "primitive" : "conservative";
}

std::string to_string(KdvVariant variant) {
  switch (variant) {
    case KdvVariant::deterministic: return "deterministic";
    case KdvVariant::transport: return "transport";
    case KdvVariant::dissipative: return "dissipative";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "saint_venant" || s == "sv") return ModelKind::saint_venant;
  if (s == "boussinesq" || s == "b") return ModelKind::boussinesq;
  if (s == "serre_green_naghdi" || s == "sgn")
    return ModelKind::serre_green_naghdi;
  throw config_error("unknown model kind '" + s +
                     "' (saint_venant | boussinesq | serre_green_naghdi)");
}

bool RunConfig::noise_basis_periodic() const {
  const double cycles =
      noise.wavenumber * grid_half_length / std::numbers::pi;
  return std::abs(cycles - std::round(cycles)) < 1e-9;
}

namespace {

// Applies one key; throws config_error without line context (added by the
// caller, which knows the line number).
void set_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "grid.n_points") {
    long long n = parse_int(value);
    require(n >= 8 && Grid::is_power_of_two(static_cast<int>(n)),
            "grid.n_points must be a power of two >= 8");
    c.grid_n = static_cast<int>(n);
  } else if (key == "grid.half_length") {
    c.grid_half_length = parse_double(value);
    require(c.grid_half_length > 0 && std::isfinite(c.grid_half_length),
            "grid.half_length must be positive");
  } else if (key == "grid.dealias") {
    c.dealias = parse_bool(value);
  } else if (key == "model.kind") {
    c.model.kind = model_kind_from_string(value);
  } else if (key == "model.form") {
    if (value == "primitive") c.model.form = VariableForm::primitive;
    else if (value == "conservative") c.model.form = VariableForm::conservative;
    else throw config_error("model.form must be primitive or conservative");
  } else if (key == "model.stochastic") {
    c.model.stochastic = parse_bool(value);
  } else if (key == "model.epsilon") {
    c.model.epsilon = parse_double(value);
    require(c.model.epsilon > 0 && std::isfinite(c.model.epsilon),
            "model.epsilon must be positive");
  } else if (key == "model.beta") {
    c.model.beta = parse_double(value);
    require(c.model.beta >= 0 && std::isfinite(c.model.beta),
            "model.beta must be >= 0");
  } else if (key == "noise.amplitude") {
    c.noise.amplitude = parse_double(value);
    require(c.noise.amplitude >= 0 && std::isfinite(c.noise.amplitude),
            "noise.amplitude must be >= 0");
  } else if (key == "noise.wavenumber") {
    c.noise.wavenumber = parse_double(value);
    require(c.noise.wavenumber >= 0 && std::isfinite(c.noise.wavenumber),
            "noise.wavenumber must be >= 0");
  } else if (key == "noise.taper_alpha") {
    c.noise.taper_alpha = parse_double(value);
    require(c.noise.taper_alpha > 0, "noise.taper_alpha must be positive");
  } else if (key == "noise.filter_additive") {
    c.noise.filter_additive = parse_bool(value);
  } else if (key == "noise.upsilon") {
    double u = parse_double(value);
    require(u >= 0 && std::isfinite(u), "noise.upsilon must be >= 0");
    c.noise.upsilon = u;
    c.model.upsilon = u;
    c.kdv.upsilon = u;
  } else if (key == "time.dt") {
    c.time.dt = parse_double(value);
    require(c.time.dt > 0 && std::isfinite(c.time.dt),
            "time.dt must be positive");
  } else if (key == "time.t_end") {
    c.time.t_end = parse_double(value);
    require(c.time.t_end >= 0 && std::isfinite(c.time.t_end),
            "time.t_end must be >= 0");
  } else if (key == "time.snapshot_every") {
    long long n = parse_int(value);
    require(n >= 0, "time.snapshot_every must be >= 0");
    c.time.snapshot_every = static_cast<int>(n);
  } else if (key == "seed") {
    c.seed = parse_u64(value);
  } else if (key == "paths") {
    long long n = parse_int(value);
    require(n >= 1, "paths must be >= 1");
    c.paths = static_cast<int>(n);
  } else if (key == "workers") {
    long long n = parse_int(value);
    require(n >= 0, "workers must be >= 0");
    c.workers = static_cast<int>(n);
  } else if (key == "keep_path_snapshots") {
    c.keep_path_snapshots = parse_bool(value);
  } else if (key == "out_dir") {
    require(!value.empty(), "out_dir must not be empty");
    c.out_dir = value;
  } else if (key == "initial") {
    require(value == "heap" || value == "soliton" ||
                value.rfind("file:", 0) == 0,
            "initial must be heap, soliton or file:<path>");
    c.initial = value;
  } else if (key == "kdv.variant") {
    if (value == "deterministic") c.kdv.variant = KdvVariant::deterministic;
    else if (value == "transport") c.kdv.variant = KdvVariant::transport;
    else if (value == "dissipative") c.kdv.variant = KdvVariant::dissipative;
    else
      throw config_error(
          "kdv.variant must be deterministic, transport or dissipative");
  } else if (key == "kdv.soliton_amp") {
    c.kdv.soliton_amp = parse_double(value);
    require(c.kdv.soliton_amp > 0 && std::isfinite(c.kdv.soliton_amp),
            "kdv.soliton_amp must be positive");
  } else if (key == "kdv.sigma_const") {
    c.kdv.sigma_const = parse_double(value);
    require(std::isfinite(c.kdv.sigma_const),
            "kdv.sigma_const must be finite");
  } else if (key == "kdv.a_h") {
    c.kdv.a_h = parse_double(value);
    require(c.kdv.a_h >= 0 && std::isfinite(c.kdv.a_h),
            "kdv.a_h must be >= 0");
  } else if (key == "kdv.integrating_factor") {
    c.kdv.integrating_factor = parse_bool(value);
  } else {
    throw config_error("unknown key '" + key + "'");
  }
}

void validate_cross(const RunConfig& c) {
  if (c.model.form == VariableForm::conservative &&
      c.model.kind != ModelKind::saint_venant)
    throw config_error(
        "model.form = conservative requires model.kind = saint_venant");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.model.dealias = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line;
    std::size_t hash = stripped.find('#');
    if (hash != std::string::npos) stripped = stripped.substr(0, hash);
    stripped = trim(stripped);
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) +
                         ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error("line " + std::to_string(lineno) +
                         ": expected 'key = value'");
    try {
      set_key(cfg, key, value);
    } catch (const config_error& e) {
      throw config_error("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception&) {
      throw config_error("line " + std::to_string(lineno) +
                         ": bad value '" + value + "' for key '" + key + "'");
    }
  }
  cfg.model.dealias = cfg.dealias;
  validate_cross(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  try {
    set_key(cfg, key, value);
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("bad value '" + value + "' for key '" + key + "'");
  }
  cfg.model.dealias = cfg.dealias;
  validate_cross(cfg);
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  out << "grid.n_points = " << c.grid_n << "\n";
  out << "grid.half_length = " << fmt(c.grid_half_length) << "\n";
  out << "grid.dealias = " << (c.dealias ? "true" : "false") << "\n";
  out << "model.kind = " << to_string(c.model.kind) << "\n";
  out << "model.form = " << to_string(c.model.form) << "\n";
  out << "model.stochastic = " << (c.model.stochastic ? "true" : "false")
      << "\n";
  out << "model.epsilon = " << fmt(c.model.epsilon) << "\n";
  out << "model.beta = " << fmt(c.model.beta) << "\n";
  out << "noise.amplitude = " << fmt(c.noise.amplitude) << "\n";
  out << "noise.wavenumber = " << fmt(c.noise.wavenumber) << "\n";
  out << "noise.taper_alpha = " << fmt(c.noise.taper_alpha) << "\n";
  out << "noise.filter_additive = "
      << (c.noise.filter_additive ? "true" : "false") << "\n";
  out << "noise.upsilon = " << fmt(c.noise.upsilon) << "\n";
  out << "time.dt = " << fmt(c.time.dt) << "\n";
  out << "time.t_end = " << fmt(c.time.t_end) << "\n";
  out << "time.snapshot_every = " << c.time.snapshot_every << "\n";
  out << "seed = " << c.seed << "\n";
  out << "paths = " << c.paths << "\n";
  out << "workers = " << c.workers << "\n";
  out << "keep_path_snapshots = "
      << (c.keep_path_snapshots ? "true" : "false") << "\n";
  out << "out_dir = " << c.out_dir << "\n";
  out << "initial = " << c.initial << "\n";
  out << "kdv.variant = " << to_string(c.kdv.variant) << "\n";
  out << "kdv.soliton_amp = " << fmt(c.kdv.soliton_amp) << "\n";
  out << "kdv.sigma_const = " << fmt(c.kdv.sigma_const) << "\n";
  out << "kdv.a_h = " << fmt(c.kdv.a_h) << "\n";
  out << "kdv.integrating_factor = "
      << (c.kdv.integrating_factor ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace luwave
