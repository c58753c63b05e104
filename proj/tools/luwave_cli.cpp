// Command-line front end for the luwave shared library. Talks to the core
// exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "luwave/luwave.h"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string seed;
  std::string paths;
  bool force = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "key = value configuration file");
  sub->add_option("--out", o.out_dir, "output directory (must not exist)");
  sub->add_option("--seed", o.seed, "base seed (overrides config)");
  sub->add_option("--paths", o.paths, "ensemble size (overrides config)");
  sub->add_flag("--force", o.force, "overwrite an existing output directory");
}

luwave_config* load_config(const CommonOpts& o, char* err, size_t errlen) {
  luwave_config* cfg = o.config_path.empty()
                           ? luwave_config_default()
                           : luwave_config_parse_file(o.config_path.c_str(),
                                                      err, errlen);
  if (!cfg) return nullptr;
  if (!o.seed.empty() &&
      luwave_config_set(cfg, "seed", o.seed.c_str(), err, errlen) != LUWAVE_OK) {
    luwave_config_free(cfg);
    return nullptr;
  }
  if (!o.paths.empty() && luwave_config_set(cfg, "paths", o.paths.c_str(), err,
                                            errlen) != LUWAVE_OK) {
    luwave_config_free(cfg);
    return nullptr;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"luwave — shallow-water wave models under transport noise"};
  app.set_version_flag("--version", std::string(luwave_version()));
  app.require_subcommand(1);

  CommonOpts run_o, ens_o, cmp_o, kdv_o;
  std::string kinds = "sv,boussinesq,sgn";

  CLI::App* run = app.add_subcommand("run", "single-path simulation");
  add_common(run, run_o);
  CLI::App* ens = app.add_subcommand("ensemble", "seeded multi-path ensemble");
  add_common(ens, ens_o);
  CLI::App* cmp = app.add_subcommand(
      "compare", "run several model kinds on the same config/seed");
  add_common(cmp, cmp_o);
  cmp->add_option("--kinds", kinds,
                  "comma-separated model kinds (sv, boussinesq, sgn)");
  CLI::App* kdv = app.add_subcommand("kdv", "KdV family simulation");
  add_common(kdv, kdv_o);

  CLI11_PARSE(app, argc, argv);

  char err[1024] = {0};
  luwave_status status = LUWAVE_OK;

  auto dispatch = [&](const CommonOpts& o, auto&& fn) {
    luwave_config* cfg = load_config(o, err, sizeof err);
    if (!cfg) {
      status = LUWAVE_ERR_CONFIG;
      return;
    }
    const char* out = o.out_dir.empty() ? nullptr : o.out_dir.c_str();
    status = fn(cfg, out, o.force ? 1 : 0);
    luwave_config_free(cfg);
  };

  if (run->parsed()) {
    dispatch(run_o, [&](luwave_config* c, const char* out, int force) {
      return luwave_run_single(c, out, force, err, sizeof err);
    });
  } else if (ens->parsed()) {
    dispatch(ens_o, [&](luwave_config* c, const char* out, int force) {
      return luwave_run_ensemble(c, out, force, err, sizeof err);
    });
  } else if (cmp->parsed()) {
    dispatch(cmp_o, [&](luwave_config* c, const char* out, int force) {
      return luwave_run_compare(c, kinds.c_str(), out, force, err, sizeof err);
    });
  } else if (kdv->parsed()) {
    dispatch(kdv_o, [&](luwave_config* c, const char* out, int force) {
      return luwave_run_kdv(c, out, force, err, sizeof err);
    });
  }

  if (status != LUWAVE_OK) {
    std::fprintf(stderr, "error: %s\n", err[0] ? err : "unknown failure");
    return static_cast<int>(status);
  }
  return 0;
}
