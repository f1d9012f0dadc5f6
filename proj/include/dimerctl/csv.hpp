#pragma once

#include <filesystem>
#include <vector>

#include "dimerctl/moments.hpp"
#include "dimerctl/ssa.hpp"

namespace dimerctl {

// All writers emit a header row plus one record per sample, comma separated,
// newline delimited. Reals are printed with 17 significant digits so a parsed
// value reproduces the original double bit for bit. Failures throw IoError
// with the path; writing an empty table throws std::invalid_argument.

/// Columns: t,mean_x1,mean_x2,var_x1,var_x2,u,I
void write_trace_csv(const EnsembleTrace& trace, const std::filesystem::path& path);
EnsembleTrace read_trace_csv(const std::filesystem::path& path);

/// Columns: t,x1,x2 (sampled trajectory of the tracked cell)
void write_cell_path_csv(const EnsembleTrace& trace, const std::filesystem::path& path);

/// Columns: k1,mean_x1,mean_x2,var_x1
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

/// Columns: t,x1,x2[,I,u] (controller columns present for closed-loop runs)
void write_moments_csv(const MomentTrajectory& traj, const std::filesystem::path& path);

}  // namespace dimerctl
