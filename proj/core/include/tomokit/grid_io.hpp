#pragma once

// Shared grid file format: a JSON manifest
//   {"kind": "optical", "x_min", "x_max", "n_x", "n_theta", "data": "<csv>"}
//   {"kind": "wigner", "q_min", "q_max", "n_q", "p_min", "p_max", "n_p", "data": "<csv>"}
// plus a CSV payload with one theta-row (or q-row) per line, '.' decimal
// separator and no digit grouping. The data path is relative to the manifest.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tomokit/grid.hpp"

namespace tomokit {

enum class GridKind { optical, wigner };

/// Writes `manifest` and a sibling CSV named after its stem.
void write_grid(const OpticalTomogramGrid& grid, const std::filesystem::path& manifest);
void write_grid(const WignerGrid& grid, const std::filesystem::path& manifest);

GridKind read_grid_kind(const std::filesystem::path& manifest);
OpticalTomogramGrid read_optical_grid(const std::filesystem::path& manifest);
WignerGrid read_wigner_grid(const std::filesystem::path& manifest);

/// Shortest round-trip decimal form, independent of the C++ locale.
std::string format_double(double v);

/// Writes a CSV with a header line and one row per record.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace tomokit
