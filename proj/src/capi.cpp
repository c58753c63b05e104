#include "luwave/luwave.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "runner.hpp"

struct luwave_config {
  luwave::RunConfig cfg;
};

namespace {

void put_error(char* errbuf, size_t errlen, const char* msg) {
  if (!errbuf || errlen == 0) return;
  std::strncpy(errbuf, msg, errlen - 1);
  errbuf[errlen - 1] = '\0';
}

// Runs fn, translating exceptions into status codes + message.
template <typename Fn>
luwave_status guarded(Fn&& fn, char* errbuf, size_t errlen) {
  try {
    fn();
    return LUWAVE_OK;
  } catch (const luwave::config_error& e) {
    put_error(errbuf, errlen, e.what());
    return LUWAVE_ERR_CONFIG;
  } catch (const std::exception& e) {
    put_error(errbuf, errlen, e.what());
    return LUWAVE_ERR_NUMERICAL;
  }
}

luwave::RunConfig with_out_dir(const luwave_config* cfg, const char* out_dir) {
  luwave::RunConfig c = cfg->cfg;
  if (out_dir && *out_dir) c.out_dir = out_dir;
  return c;
}

}  // namespace

extern "C" {

const char* luwave_version(void) { return luwave::kVersion; }

luwave_config* luwave_config_default(void) {
  return new luwave_config{luwave::RunConfig{}};
}

luwave_config* luwave_config_parse_text(const char* text, char* errbuf,
                                        size_t errlen) {
  try {
    return new luwave_config{luwave::parse_config(text ? text : "")};
  } catch (const std::exception& e) {
    put_error(errbuf, errlen, e.what());
    return nullptr;
  }
}

luwave_config* luwave_config_parse_file(const char* path, char* errbuf,
                                        size_t errlen) {
  try {
    return new luwave_config{luwave::parse_config_file(path ? path : "")};
  } catch (const std::exception& e) {
    put_error(errbuf, errlen, e.what());
    return nullptr;
  }
}

void luwave_config_free(luwave_config* cfg) { delete cfg; }

luwave_status luwave_config_set(luwave_config* cfg, const char* key,
                                const char* value, char* errbuf,
                                size_t errlen) {
  if (!cfg || !key || !value) {
    put_error(errbuf, errlen, "null argument");
    return LUWAVE_ERR_CONFIG;
  }
  return guarded([&] { luwave::apply_override(cfg->cfg, key, value); }, errbuf,
                 errlen);
}

size_t luwave_config_render(const luwave_config* cfg, char* buf, size_t len) {
  const std::string text = luwave::render_config(cfg->cfg);
  if (buf && len > 0) {
    const size_t n = std::min(len - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return text.size();
}

luwave_status luwave_run_single(const luwave_config* cfg, const char* out_dir,
                                int force, char* errbuf, size_t errlen) {
  return guarded(
      [&] { luwave::run_single(with_out_dir(cfg, out_dir), force != 0); },
      errbuf, errlen);
}

luwave_status luwave_run_ensemble(const luwave_config* cfg,
                                  const char* out_dir, int force, char* errbuf,
                                  size_t errlen) {
  return guarded(
      [&] { luwave::run_ensemble(with_out_dir(cfg, out_dir), force != 0); },
      errbuf, errlen);
}

luwave_status luwave_run_compare(const luwave_config* cfg,
                                 const char* kinds_csv, const char* out_dir,
                                 int force, char* errbuf, size_t errlen) {
  return guarded(
      [&] {
        std::vector<luwave::ModelKind> kinds;
        std::string csv = kinds_csv ? kinds_csv : "";
        std::size_t start = 0;
        while (start <= csv.size()) {
          std::size_t comma = csv.find(',', start);
          std::string item = csv.substr(
              start, comma == std::string::npos ? csv.size() - start
                                                : comma - start);
          if (!item.empty())
            kinds.push_back(luwave::model_kind_from_string(item));
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
        luwave::run_compare(with_out_dir(cfg, out_dir), kinds, force != 0);
      },
      errbuf, errlen);
}

luwave_status luwave_run_kdv(const luwave_config* cfg, const char* out_dir,
                             int force, char* errbuf, size_t errlen) {
  return guarded(
      [&] { luwave::run_kdv(with_out_dir(cfg, out_dir), force != 0); }, errbuf,
      errlen);
}

}  // extern "C"
