#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "fhnvem/experiments.hpp"

namespace fhnvem {

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Legacy ASCII VTK unstructured grid: polygon cells, point scalars v and w.
// Coordinates and values are written as shortest round-trip decimals, so a
// file is a deterministic function of the data.
void write_vtk_snapshot(const PolygonalMesh& mesh, const FieldState& state,
                        const std::string& path);

// Per-step scalar log, one row per step.
void write_energy_csv(const std::vector<EnergySample>& log, const std::string& path);

// errors_v.csv / errors_w.csv: rows are mesh levels, columns time-step
// counts, 15 significant digits. rates.csv holds pairwise refinement rates
// and the least-squares observed orders.
void write_error_tables(const ConvergenceStudy& study, const std::string& dir);

// Snapshot summary statistics, one row per captured snapshot.
void write_snapshot_stats_csv(const std::vector<SnapshotStats>& stats, const std::string& path);

// Sorted `key = value` lines.
void write_manifest(const std::map<std::string, std::string>& entries, const std::string& path);

}  // namespace fhnvem
