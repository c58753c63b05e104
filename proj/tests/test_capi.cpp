// Exercises the shared-library surface only: no internal headers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "luwave/luwave.h"

namespace fs = std::filesystem;

namespace {
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("luwave_capi_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string sub(const std::string& name) const {
    return (path / name).string();
  }
};
}  // namespace

TEST_CASE("version and default config") {
  CHECK(std::strlen(luwave_version()) > 0);
  luwave_config* cfg = luwave_config_default();
  REQUIRE(cfg != nullptr);
  char buf[4096];
  const size_t n = luwave_config_render(cfg, buf, sizeof buf);
  CHECK(n > 0);
  CHECK(std::string(buf).find("grid.n_points = 2048") != std::string::npos);
  luwave_config_free(cfg);
}

TEST_CASE("parse text, overrides, error reporting") {
  char err[512] = {0};
  luwave_config* cfg = luwave_config_parse_text(
      "model.kind = boussinesq\nmodel.beta = 0.1\n", err, sizeof err);
  REQUIRE(cfg != nullptr);
  CHECK(luwave_config_set(cfg, "seed", "99", err, sizeof err) == LUWAVE_OK);
  CHECK(luwave_config_set(cfg, "bogus.key", "1", err, sizeof err) ==
        LUWAVE_ERR_CONFIG);
  CHECK(std::string(err).find("bogus.key") != std::string::npos);
  luwave_config_free(cfg);

  err[0] = '\0';
  luwave_config* bad =
      luwave_config_parse_text("noise.amplitude = -2\n", err, sizeof err);
  CHECK(bad == nullptr);
  CHECK(std::string(err).find("line 1") != std::string::npos);

  err[0] = '\0';
  CHECK(luwave_config_parse_file("/nonexistent/path.cfg", err, sizeof err) ==
        nullptr);
  CHECK(err[0] != '\0');
}

TEST_CASE("run modes through the C interface") {
  TempDir tmp("runs");
  char err[512] = {0};
  luwave_config* cfg = luwave_config_parse_text(
      "grid.n_points = 256\n"
      "time.t_end = 0.02\n"
      "time.snapshot_every = 2\n"
      "model.stochastic = true\n"
      "noise.amplitude = 0.005\n"
      "paths = 2\n",
      err, sizeof err);
  REQUIRE(cfg != nullptr);

  const std::string single = tmp.sub("single");
  CHECK(luwave_run_single(cfg, single.c_str(), 0, err, sizeof err) ==
        LUWAVE_OK);
  CHECK(fs::exists(single + "/snapshots.tsv"));
  // Refused without force, accepted with it.
  CHECK(luwave_run_single(cfg, single.c_str(), 0, err, sizeof err) ==
        LUWAVE_ERR_CONFIG);
  CHECK(luwave_run_single(cfg, single.c_str(), 1, err, sizeof err) ==
        LUWAVE_OK);

  const std::string ens = tmp.sub("ens");
  CHECK(luwave_run_ensemble(cfg, ens.c_str(), 0, err, sizeof err) == LUWAVE_OK);
  CHECK(fs::exists(ens + "/path_summaries.tsv"));

  const std::string cmp = tmp.sub("cmp");
  CHECK(luwave_run_compare(cfg, "sv,sgn", cmp.c_str(), 0, err, sizeof err) ==
        LUWAVE_OK);
  CHECK(fs::exists(cmp + "/compare_t0.tsv"));
  CHECK(luwave_run_compare(cfg, "sv,airy", tmp.sub("cmp2").c_str(), 0, err,
                           sizeof err) == LUWAVE_ERR_CONFIG);

  const std::string kdv = tmp.sub("kdv");
  CHECK(luwave_config_set(cfg, "initial", "soliton", err, sizeof err) ==
        LUWAVE_OK);
  CHECK(luwave_run_kdv(cfg, kdv.c_str(), 0, err, sizeof err) == LUWAVE_OK);
  CHECK(fs::exists(kdv + "/diagnostics.tsv"));

  luwave_config_free(cfg);
}

TEST_CASE("numerical failures surface as the numerical status") {
  TempDir tmp("blowup");
  char err[512] = {0};
  luwave_config* cfg = luwave_config_parse_text(
      "grid.n_points = 256\n"
      "time.dt = 1\n"
      "time.t_end = 20\n",
      err, sizeof err);
  REQUIRE(cfg != nullptr);
  const std::string out = tmp.sub("out");
  CHECK(luwave_run_single(cfg, out.c_str(), 0, err, sizeof err) ==
        LUWAVE_ERR_NUMERICAL);
  CHECK(fs::exists(out + "/FAILED"));
  luwave_config_free(cfg);
}
