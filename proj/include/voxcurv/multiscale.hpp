#pragma once

#include "voxcurv/curvature.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace voxcurv {

/// Axis-aligned box in vertex (corner-lattice) coordinates, half-open on the
/// upper bounds. May extend beyond the lattice; evaluation clips.
struct RegionSpec {
    int x0, y0, z0;
    int x1, y1, z1;
};

/// Per-region counts of surface point types; m4 and m6 combine their
/// sub-shapes. Non-manifold vertices are never counted.
struct CurvatureVector {
    std::int64_t m3 = 0, m4 = 0, m5 = 0, m6 = 0;

    bool operator==(const CurvatureVector&) const = default;
};

enum class MapKind : std::uint8_t { gauss_sum, mean_abs_sum };
enum class MapPlane : std::uint8_t { xy, yz, zx, volume };

const char* to_string(MapKind k);
const char* to_string(MapPlane p);

/// Grid of aggregated curvature values at dyadic scale `level` (cell side
/// 2^level). gauss_sum cells hold exact integer pi/2 units (stored as
/// integral doubles so the pyramid identities stay exact); mean_abs_sum
/// cells hold plain sums of |H|.
struct ScaleMap {
    MapKind kind = MapKind::gauss_sum;
    MapPlane plane = MapPlane::xy;
    int level = 0;
    int width = 0, height = 0, depth = 1; ///< depth > 1 only for volume maps
    std::vector<double> cells;            ///< indexed [w][v][u], u fastest

    double at(int u, int v, int w = 0) const {
        return cells[static_cast<std::size_t>((static_cast<std::int64_t>(w) * height + v) * width + u)];
    }
    double& at(int u, int v, int w = 0) {
        return cells[static_cast<std::size_t>((static_cast<std::int64_t>(w) * height + v) * width + u)];
    }
    std::int64_t cell_count() const {
        return static_cast<std::int64_t>(width) * height * depth;
    }
    /// Sum over all cells in storage order.
    double total() const;
    /// Cell value scaled for output: gauss_sum units become radians,
    /// mean_abs_sum values pass through.
    double output_value(std::int64_t i) const;
};

/// Counts vertices of each type whose position lies in the clipped region.
CurvatureVector region_vector(const CurvatureField& field, const RegionSpec& region);

/// Gaussian total of a region vector: m3 - m5 - 2*m6 in pi/2 units.
GaussQ region_total(const CurvatureVector& v);

/// Level-0 map over the plane orthogonal to `axis` (0=x, 1=y, 2=z); each
/// cell sums Gaussian units over every surface vertex projecting to it --
/// front and back alike, which keeps the map total equal to the field total.
ScaleMap gauss_projection_map(const CurvatureField& field, int axis);

/// Level-0 projection of |mean curvature| per vertex along `axis`.
ScaleMap meanabs_projection_map(const CurvatureField& field, int axis);

/// |mean| projection aggregated over block*block cells, block in {2, 4}
/// (level = log2(block)).
ScaleMap mean_abs_map(const CurvatureField& field, int axis, int block);

/// One dyadic step: ceil-halves each retained axis; each coarse cell sums
/// its <=2x2 (or <=2x2x2) children, boundary cells summing what exists.
ScaleMap coarsen(const ScaleMap& map);

struct Pyramid {
    std::vector<ScaleMap> levels; ///< levels[0] is the base
    bool clamped = false;         ///< true when the request exceeded the 1x1 top
};

/// Levels 0..L-1 built by repeated coarsening, all retained. Once a level is
/// a single cell further levels would repeat it; the pyramid stops there and
/// reports clamping. L must be >= 1.
Pyramid build_pyramid(const ScaleMap& base, int levels);

/// Connected component of above-threshold cells.
struct InterestRegion {
    int u0, v0, w0; ///< bounding box, half-open upper bounds
    int u1, v1, w1;
    double total = 0.0;
    std::int64_t cell_count = 0;
};

/// Components of cells with |value| >= threshold under axis adjacency
/// (4-neighborhood on plane maps, 6 on volume maps), sorted by descending
/// |total|, ties by bounding-box origin. threshold must be >= 0.
std::vector<InterestRegion> interest_regions(const ScaleMap& map, double threshold);

/// CSV: "# vox3-map kind=<kind> level=<k> plane=<plane> nx=<w> ny=<h>"
/// then height rows of width comma-separated values (gauss maps in radians).
/// Volume maps append nz=<d> and emit depth row blocks in w order.
void write_map_csv(const ScaleMap& map, std::ostream& out);
std::string map_to_csv(const ScaleMap& map);

/// 16-bit binary PGM, values affinely rescaled to [0, 65535]; the applied
/// mapping is recorded in a comment line "# scale=<s> offset=<o>"
/// (pixel = round((value - offset) * scale)). Plane maps only.
void write_map_pgm(const ScaleMap& map, std::ostream& out);
std::string map_to_pgm(const ScaleMap& map);

} // namespace voxcurv
