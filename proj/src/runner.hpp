#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace luwave {

inline constexpr const char* kVersion = "0.1.0";

/// Single-path run: writes snapshots.tsv, diagnostics.tsv and run.meta into
/// cfg.out_dir. On numerical failure writes a FAILED marker file plus the
/// outputs gathered so far and rethrows.
void run_single(const RunConfig& cfg, bool force);

/// Ensemble run with derived per-path seeds, executed concurrently. Writes
/// stats_t<t>.tsv per snapshot time, path_summaries.tsv, run.meta, and
/// (optionally) per-path snapshot files. Path failures are recorded in
/// path_summaries.tsv; surviving paths are aggregated. Throws solver_error
/// if any path failed (after completing the rest).
void run_ensemble(const RunConfig& cfg, bool force);

/// Runs the listed model kinds on an identical config and seed and writes
/// one aligned compare_t<t>.tsv per snapshot time for overlay plotting.
void run_compare(const RunConfig& cfg, const std::vector<ModelKind>& kinds,
                 bool force);

/// KdV family run (deterministic, transport or dissipative variant).
void run_kdv(const RunConfig& cfg, bool force);

/// Initial state factory: heap (exp(-x^4) at rest), soliton, or file:<path>
/// with rows `x eta [u]` matching the grid.
State make_initial_state(const RunConfig& cfg, const Grid& grid);

}  // namespace luwave
