#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hreg/analysis.hpp"
#include "hreg/rbe_solver.hpp"

namespace hreg {

// 17 significant digits, lossless for doubles
std::string fmt17(double v);

// header x,rho,u,m,R (R omitted when the snapshot has none)
void write_snapshot_csv(std::ostream& out, const Snapshot& s);
void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticRecord> series);

struct SnapshotData {
    std::vector<double> x, rho, u;
};
SnapshotData read_snapshot_csv(const std::filesystem::path& path);

std::string fit_json(const SingularityFit& fit);

}  // namespace hreg
