#pragma once

#include "voxcurv/features.hpp"
#include "voxcurv/multiscale.hpp"
#include "voxcurv/voxel_grid.hpp"

#include <string>
#include <vector>

namespace voxcurv {

/// Everything the CLI prints or writes is produced here so the same bytes can
/// be exercised in-process by tests. All outputs are deterministic: fixed key
/// order, no timestamps, thread count never changes a byte.

/// JSON analysis report (trailing newline included). `source` labels the
/// input in the report. Raises InputError("empty object") when the grid has
/// no occupied cell.
std::string analysis_report(const VoxelGrid& grid, const std::string& source,
                            const std::string& format_name, int threads);

enum class MapFileFormat { csv, pgm };

struct CurvmapResult {
    std::string bytes;   ///< map file content
    bool clamped = false; ///< level request exceeded the pyramid top
    int level = 0;        ///< level actually emitted
};

/// Level-`level` projection map (gauss or meanabs) for the CLI. Levels above
/// the pyramid top clamp to the top.
CurvmapResult curvmap_file(const VoxelGrid& grid, MapKind kind, int axis, int level,
                           MapFileFormat format, int threads);

struct PyramidFiles {
    std::vector<std::string> file_names; ///< "level_<k>.<ext>"
    std::vector<std::string> files;      ///< file contents, one per level
    std::string summary_json;            ///< per-level totals and argmax cells
};

/// Full pyramid of `levels` maps plus a JSON summary. Gauss totals are
/// reported in exact pi/2 units; every level's total equals the base total.
PyramidFiles pyramid_files(const VoxelGrid& grid, MapKind kind, int axis, int levels,
                           MapFileFormat format, int threads);

/// Feature vector of a grid (shared by compare/matrix paths).
FeatureVector grid_features(const VoxelGrid& grid, int threads);

struct MatrixOutputs {
    std::string csv;
    std::string summary_json; ///< nearest-neighbor summary
};

MatrixOutputs matrix_outputs(const std::vector<std::vector<double>>& vectors,
                             const std::vector<std::string>& labels, const Metric& metric,
                             int knn);

} // namespace voxcurv
