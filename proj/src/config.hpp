#pragma once

#include <cstdint>
#include <string>

#include "integrator.hpp"
#include "kdv.hpp"
#include "models.hpp"
#include "noise.hpp"

namespace luwave {

/// Fully resolved run configuration. Defaults reproduce the reference wave
/// tank: N = 2048 points on [-50, 50], dt = 0.005, heap initial condition,
/// wave noise with k = 2*pi/100 and taper alpha = 10.
struct RunConfig {
  int grid_n = 2048;
  double grid_half_length = 50.0;
  bool dealias = false;

  ModelParams model;  // saint_venant, primitive, deterministic by default
  NoiseModel noise;
  StepConfig time;
  KdvParams kdv;

  std::uint64_t seed = 12345;
  int paths = 130;
  int workers = 0;  // 0 = hardware concurrency
  bool keep_path_snapshots = false;
  std::string out_dir = "out";
  std::string initial = "heap";  // heap | soliton | file:<path>

  /// True when the noise basis closes periodically on the tank
  /// (k*L/pi integral); recorded in run.meta.
  bool noise_basis_periodic() const;
};

/// Parses `key = value` lines with '#' comments. Unknown keys, type errors
/// and constraint violations throw config_error with the line number.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Applies one `key = value` override on top of an existing config
/// (revalidates). Same keys as the file format.
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

/// The full resolved configuration in file format (round-trips through
/// parse_config); used for run.meta.
std::string render_config(const RunConfig& cfg);

std::string to_string(ModelKind kind);
std::string to_string(VariableForm form);
std::string to_string(KdvVariant variant);
ModelKind model_kind_from_string(const std::string& s);

}  // namespace luwave
