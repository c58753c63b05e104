#include "runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "kdv.hpp"

namespace fs = std::filesystem;

namespace luwave {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void prepare_out_dir(const std::string& dir, bool force) {
  if (fs::exists(dir) && !force)
    throw config_error("output directory '" + dir +
                       "' already exists (use --force to overwrite)");
  fs::create_directories(dir);
}

// All outputs are written to a temp name and renamed once complete.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot write '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, path);
}

std::string snapshots_text(const Trajectory& traj, const ModelParams& p) {
  std::ostringstream out;
  out << "x\teta\tu\n";
  for (const State& s : traj.snapshots) {
    const Grid& g = s.eta.grid();
    out << "# t=" << g17(s.t) << "\n";
    for (int j = 0; j < g.size(); ++j) {
      double u = s.vel[j];
      if (p.form == VariableForm::conservative)
        u /= 1.0 + p.epsilon * s.eta[j];
      out << g17(g.node(j)) << '\t' << g17(s.eta[j]) << '\t' << g17(u) << "\n";
    }
  }
  return out.str();
}

std::string diagnostics_text(const std::vector<DiagnosticsRow>& rows) {
  std::ostringstream out;
  out << "t\tmass\tmomentum\tenergy_sw\tenergy_sgn\n";
  for (const DiagnosticsRow& r : rows)
    out << g17(r.t) << '\t' << g17(r.mass) << '\t' << g17(r.momentum) << '\t'
        << g17(r.energy_sw) << '\t' << g17(r.energy_sgn) << "\n";
  return out.str();
}

std::string meta_text(const RunConfig& cfg, const std::string& command) {
  std::ostringstream out;
  out << "# luwave run metadata (resolved configuration)\n";
  out << "version = " << kVersion << "\n";
  out << "command = " << command << "\n";
  out << render_config(cfg);
  if (cfg.model.beta > 0)
    out << "# stokes_number = " << g17(cfg.model.stokes_number()) << "\n";
  out << "# noise_basis_periodic = "
      << (cfg.noise_basis_periodic() ? "true" : "false") << "\n";
  return out.str();
}

void write_failure_marker(const std::string& dir, const std::string& msg) {
  write_atomic(fs::path(dir) / "FAILED",
               "partial output: run aborted\n" + msg + "\n");
}

struct PathResult {
  std::vector<Field> etas;             // per snapshot time
  std::vector<DiagnosticsRow> rows;
  Trajectory traj;                     // kept only when snapshots retained
  std::string error;                   // empty = success
};

double rel_drift(double v, double v0) {
  const double den = std::abs(v0) > 1e-300 ? std::abs(v0) : 1.0;
  return std::abs(v - v0) / den;
}

}  // namespace

State make_initial_state(const RunConfig& cfg, const Grid& grid) {
  State s{Field(grid), Field(grid), 0.0};
  if (cfg.initial == "heap") {
    for (int j = 0; j < grid.size(); ++j) {
      const double x = grid.node(j);
      s.eta[j] = std::exp(-x * x * x * x);
    }
  } else if (cfg.initial == "soliton") {
    s.eta = soliton(cfg.kdv.soliton_amp, grid, 0.0);
  } else if (cfg.initial.rfind("file:", 0) == 0) {
    const std::string path = cfg.initial.substr(5);
    std::ifstream in(path);
    if (!in) throw config_error("cannot open initial state file '" + path + "'");
    std::string line;
    int j = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("x\t", 0) == 0) continue;
      if (j >= grid.size())
        throw config_error("initial state file has more rows than grid points");
      std::istringstream row(line);
      double x, eta, u = 0.0;
      if (!(row >> x >> eta))
        throw config_error("initial state file: bad row '" + line + "'");
      row >> u;
      if (std::abs(x - grid.node(j)) > 1e-9 * std::max(1.0, grid.half_length()))
        throw config_error("initial state file: node mismatch at row " +
                           std::to_string(j));
      if (!std::isfinite(eta) || !std::isfinite(u))
        throw config_error("initial state file: non-finite value at row " +
                           std::to_string(j));
      s.eta[j] = eta;
      s.vel[j] = u;
      ++j;
    }
    if (j != grid.size())
      throw config_error("initial state file has " + std::to_string(j) +
                         " rows, grid has " + std::to_string(grid.size()));
  } else {
    throw config_error("unknown initial condition '" + cfg.initial + "'");
  }
  if (cfg.model.form == VariableForm::conservative) {
    // File inputs specify u; the conservative state carries q = h u.
    for (int j = 0; j < grid.size(); ++j)
      s.vel[j] *= 1.0 + cfg.model.epsilon * s.eta[j];
  }
  // Fails loudly on a dry initial column.
  water_height(s, cfg.model);
  return s;
}

void run_single(const RunConfig& cfg, bool force) {
  prepare_out_dir(cfg.out_dir, force);
  Grid grid(cfg.grid_n, cfg.grid_half_length);
  WaveModel model(grid, cfg.model, cfg.noise);
  State initial = make_initial_state(cfg, grid);
  write_atomic(fs::path(cfg.out_dir) / "run.meta", meta_text(cfg, "run"));

  Trajectory traj;
  try {
    if (cfg.model.stochastic) {
      WaveNoiseSource noise(grid, cfg.noise, RngStream(cfg.seed));
      traj = simulate(initial, model, noise, cfg.time);
    } else {
      NullNoiseSource none;
      traj = simulate(initial, model, none, cfg.time);
    }
  } catch (const std::exception& e) {
    Trajectory partial;
    partial.snapshots.push_back(initial);
    write_atomic(fs::path(cfg.out_dir) / "snapshots.tsv",
                 snapshots_text(partial, cfg.model));
    write_failure_marker(cfg.out_dir, e.what());
    throw;
  }

  std::vector<DiagnosticsRow> rows;
  for (const State& s : traj.snapshots)
    rows.push_back(diagnostics_row(s, cfg.model, grid));
  write_atomic(fs::path(cfg.out_dir) / "snapshots.tsv",
               snapshots_text(traj, cfg.model));
  write_atomic(fs::path(cfg.out_dir) / "diagnostics.tsv",
               diagnostics_text(rows));
}

void run_ensemble(const RunConfig& cfg, bool force) {
  if (cfg.paths < 2)
    throw config_error("run_ensemble: paths must be >= 2");
  prepare_out_dir(cfg.out_dir, force);
  Grid grid(cfg.grid_n, cfg.grid_half_length);
  WaveModel model(grid, cfg.model, cfg.noise);
  State initial = make_initial_state(cfg, grid);
  write_atomic(fs::path(cfg.out_dir) / "run.meta", meta_text(cfg, "ensemble"));

  std::vector<PathResult> results(cfg.paths);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < cfg.paths; i = next.fetch_add(1)) {
      PathResult& r = results[i];
      try {
        WaveNoiseSource noise(
            grid, cfg.noise,
            RngStream::for_path(cfg.seed, static_cast<std::uint64_t>(i)));
        Trajectory traj = simulate(initial, model, noise, cfg.time);
        for (const State& s : traj.snapshots) {
          r.etas.push_back(s.eta);
          r.rows.push_back(diagnostics_row(s, cfg.model, grid));
        }
        if (cfg.keep_path_snapshots) r.traj = std::move(traj);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  int nworkers = cfg.workers > 0
                     ? cfg.workers
                     : static_cast<int>(std::thread::hardware_concurrency());
  if (nworkers < 1) nworkers = 1;
  nworkers = std::min(nworkers, cfg.paths);
  std::vector<std::thread> pool;
  for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  // Aggregation is path-index ordered, independent of completion order.
  std::vector<int> ok;
  for (int i = 0; i < cfg.paths; ++i)
    if (results[i].error.empty()) ok.push_back(i);

  std::size_t n_snaps = ok.empty() ? 0 : results[ok.front()].etas.size();
  for (std::size_t sn = 0; sn < n_snaps; ++sn) {
    std::vector<Field> etas;
    etas.reserve(ok.size());
    for (int i : ok) etas.push_back(results[i].etas[sn]);
    if (etas.size() < 2) break;
    EnsembleStats st = ensemble_stats(etas);
    const double t = results[ok.front()].rows[sn].t;
    std::ostringstream out;
    out << "x\tmean_eta\tstd_eta\n";
    for (int j = 0; j < grid.size(); ++j)
      out << g17(grid.node(j)) << '\t' << g17(st.mean_eta[j]) << '\t'
          << g17(st.std_eta[j]) << "\n";
    write_atomic(fs::path(cfg.out_dir) / ("stats_t" + g6(t) + ".tsv"),
                 out.str());
  }

  std::ostringstream sum;
  sum << "path\tseed\tstatus\tmass_drift_rel\tmomentum_drift\tenergy_sw_drift_"
         "rel\tenergy_sgn_drift_rel\n";
  for (int i = 0; i < cfg.paths; ++i) {
    const std::uint64_t pseed =
        cfg.seed ^ (static_cast<std::uint64_t>(i) * RngStream::kPathStride);
    sum << i << '\t' << pseed << '\t';
    if (!results[i].error.empty()) {
      std::string msg = results[i].error;
      for (char& ch : msg)
        if (ch == '\t' || ch == '\n') ch = ' ';
      sum << "failed: " << msg << "\t-\t-\t-\t-\n";
      continue;
    }
    const auto& rows = results[i].rows;
    double md = 0, pd = 0, ed = 0, egd = 0;
    for (const DiagnosticsRow& r : rows) {
      md = std::max(md, rel_drift(r.mass, rows.front().mass));
      pd = std::max(pd, std::abs(r.momentum - rows.front().momentum));
      ed = std::max(ed, rel_drift(r.energy_sw, rows.front().energy_sw));
      egd = std::max(egd, rel_drift(r.energy_sgn, rows.front().energy_sgn));
    }
    sum << "ok\t" << g17(md) << '\t' << g17(pd) << '\t' << g17(ed) << '\t'
        << g17(egd) << "\n";
    if (cfg.keep_path_snapshots)
      write_atomic(fs::path(cfg.out_dir) /
                       ("path_" + std::to_string(i) + "_snapshots.tsv"),
                   snapshots_text(results[i].traj, cfg.model));
  }
  write_atomic(fs::path(cfg.out_dir) / "path_summaries.tsv", sum.str());

  if (ok.size() != static_cast<std::size_t>(cfg.paths)) {
    write_failure_marker(cfg.out_dir,
                         std::to_string(cfg.paths - ok.size()) +
                             " path(s) failed; see path_summaries.tsv");
    throw solver_error(std::to_string(cfg.paths - ok.size()) +
                       " ensemble path(s) failed");
  }
}

void run_compare(const RunConfig& cfg, const std::vector<ModelKind>& kinds,
                 bool force) {
  if (kinds.empty()) throw config_error("run_compare: no model kinds given");
  prepare_out_dir(cfg.out_dir, force);
  Grid grid(cfg.grid_n, cfg.grid_half_length);
  State initial = make_initial_state(cfg, grid);
  std::string meta = meta_text(cfg, "compare");
  meta += "# compare.kinds =";
  for (ModelKind k : kinds) meta += " " + to_string(k);
  meta += "\n";
  write_atomic(fs::path(cfg.out_dir) / "run.meta", meta);

  std::vector<Trajectory> trajs;
  for (ModelKind kind : kinds) {
    ModelParams p = cfg.model;
    p.kind = kind;
    WaveModel model(grid, p, cfg.noise);
    if (cfg.model.stochastic) {
      WaveNoiseSource noise(grid, cfg.noise, RngStream(cfg.seed));
      trajs.push_back(simulate(initial, model, noise, cfg.time));
    } else {
      NullNoiseSource none;
      trajs.push_back(simulate(initial, model, none, cfg.time));
    }
  }

  auto short_name = [](ModelKind k) {
    switch (k) {
      case ModelKind::saint_venant: return "sv";
      case ModelKind::boussinesq: return "boussinesq";
      case ModelKind::serre_green_naghdi: return "sgn";
    }
    return "?";
  };

  const std::size_t n_snaps = trajs.front().snapshots.size();
  for (std::size_t sn = 0; sn < n_snaps; ++sn) {
    const double t = trajs.front().snapshots[sn].t;
    std::ostringstream out;
    out << "x";
    for (ModelKind k : kinds) out << "\teta_" << short_name(k);
    out << "\n";
    for (int j = 0; j < grid.size(); ++j) {
      out << g17(grid.node(j));
      for (const Trajectory& tr : trajs) out << '\t' << g17(tr.snapshots[sn].eta[j]);
      out << "\n";
    }
    write_atomic(fs::path(cfg.out_dir) / ("compare_t" + g6(t) + ".tsv"),
                 out.str());
  }
}

void run_kdv(const RunConfig& cfg, bool force) {
  prepare_out_dir(cfg.out_dir, force);
  Grid grid(cfg.grid_n, cfg.grid_half_length);
  State initial = make_initial_state(cfg, grid);
  write_atomic(fs::path(cfg.out_dir) / "run.meta", meta_text(cfg, "kdv"));

  KdvStepper stepper(grid, cfg.kdv, cfg.time.dt);
  RngStream rng(cfg.seed);
  KdvTrajectory traj;
  try {
    traj = kdv_simulate(initial.eta, stepper, cfg.time, rng);
  } catch (const std::exception& e) {
    write_failure_marker(cfg.out_dir, e.what());
    throw;
  }

  std::ostringstream snaps, diag;
  snaps << "x\teta\tu\n";
  diag << "t\tmass\tl2\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    snaps << "# t=" << g17(traj.times[i]) << "\n";
    const Field& eta = traj.etas[i];
    double l2 = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      snaps << g17(grid.node(j)) << '\t' << g17(eta[j]) << '\t' << g17(0.0)
            << "\n";
      l2 += eta[j] * eta[j];
    }
    diag << g17(traj.times[i]) << '\t' << g17(grid.integrate(eta)) << '\t'
         << g17(l2 * grid.spacing()) << "\n";
  }
  write_atomic(fs::path(cfg.out_dir) / "snapshots.tsv", snaps.str());
  write_atomic(fs::path(cfg.out_dir) / "diagnostics.tsv", diag.str());
}

}  // namespace luwave
