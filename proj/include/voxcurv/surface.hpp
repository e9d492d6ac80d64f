#pragma once

#include "voxcurv/voxel_grid.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace voxcurv {

/// Classification of a grid corner by the boundary faces incident to it.
/// A corner of a valid closed digital surface carries 3, 4, 5 or 6 incident
/// unit squares forming a single closed fan; the 4- and 6-face cases split
/// into two sub-shapes each.
enum class VertexType : std::uint8_t {
    NotOnSurface, ///< no incident boundary face
    M3,           ///< 3 faces (convex or concave corner)
    M4Flat,       ///< 4 faces, all sharing one normal axis
    M4Bent,       ///< 4 faces, 2+2 across two normal axes
    M5,           ///< 5 faces (saddle)
    M6a,          ///< 6 faces, pattern contains a cell with 3 occupied neighbors
    M6b,          ///< 6 faces, staircase pattern
    NonManifold,  ///< faces present but not a single closed fan
};

const char* to_string(VertexType t);

/// Unit square between an occupied cell and its empty 6-neighbor across
/// (axis, side); the outward normal points from occupied to empty.
struct BoundaryFace {
    std::array<int, 3> cell;
    std::uint8_t axis; // 0 = x, 1 = y, 2 = z
    std::uint8_t side; // 0 = negative, 1 = positive

    bool operator==(const BoundaryFace&) const = default;
};

/// Grid corner with at least one incident boundary face. `pattern` is the
/// occupancy of the 8 cells around corner (x, y, z): bit (dx + 2*dy + 4*dz)
/// is cell (x-1+dx, y-1+dy, z-1+dz) for dx, dy, dz in {0, 1}.
struct SurfaceVertex {
    std::array<int, 3> pos;
    std::uint8_t pattern;
    VertexType type;

    bool operator==(const SurfaceVertex&) const = default;
};

struct TypeCounts {
    std::int64_t m3 = 0;
    std::int64_t m4_flat = 0;
    std::int64_t m4_bent = 0;
    std::int64_t m5 = 0;
    std::int64_t m6a = 0;
    std::int64_t m6b = 0;
    std::int64_t nonmanifold = 0;

    std::int64_t m4() const { return m4_flat + m4_bent; }
    std::int64_t m6() const { return m6a + m6b; }
    std::int64_t manifold_total() const { return m3 + m4() + m5 + m6(); }
    std::int64_t total() const { return manifold_total() + nonmanifold; }

    bool operator==(const TypeCounts&) const = default;
};

/// Lattice edge from `corner` one step along `axis`.
struct GridEdge {
    std::array<int, 3> corner;
    std::uint8_t axis;

    bool operator==(const GridEdge&) const = default;
};

/// Boundary quad surface of a voxel object with classified vertices.
/// Immutable once extracted.
struct SurfaceMesh {
    int nx = 0, ny = 0, nz = 0;
    std::vector<BoundaryFace> faces;
    std::vector<SurfaceVertex> vertices;
    TypeCounts counts;
    /// Edges whose boundary-face incidence is 4 (a checkerboard of cells
    /// around the edge); on a manifold surface every edge has 0 or 2.
    std::vector<GridEdge> edge_defects;
    /// Number of edges with exactly 2 incident boundary faces.
    std::int64_t two_face_edge_count = 0;

    bool manifold() const { return edge_defects.empty() && counts.nonmanifold == 0; }
    bool empty() const { return faces.empty(); }
};

/// Classifies the 8-cell occupancy pattern around a corner. Pure table
/// lookup; the table is generated once from first principles (face
/// enumeration plus the single-fan test), not hand-written.
VertexType classify_vertex(std::uint8_t occupancy8);

/// Number of boundary faces incident to the corner for this pattern (0..12).
int pattern_face_count(std::uint8_t occupancy8);

/// The incident faces as a 12-bit mask, bit (axis*4 + sub) with
/// sub = low-cell's off-axis bits; exposed for property tests.
std::uint16_t pattern_face_mask(std::uint8_t occupancy8);

/// Occupancy pattern around corner (cx, cy, cz); out-of-bounds cells read
/// as empty background.
std::uint8_t corner_pattern(const VoxelGrid& grid, int cx, int cy, int cz);

/// Extracts all boundary faces and classified surface vertices.
/// `threads` <= 0 resolves via resolve_thread_count; results are identical
/// for every thread count.
SurfaceMesh extract_surface(const VoxelGrid& grid, int threads = 0);

/// V - E + F over distinct corners, edges with exactly two incident faces,
/// and boundary faces. Requires a manifold mesh (no edge defects, no
/// non-manifold vertices); otherwise raises InputError listing the defects.
int euler_characteristic(const SurfaceMesh& mesh);

/// Number of connected components of the face graph (faces adjacent when
/// they share an edge). Requires a manifold mesh.
int surface_component_count(const SurfaceMesh& mesh);

/// The boundary faces among the 12 candidate squares at a corner,
/// enumerated from the grid. Used by validation tests.
std::vector<BoundaryFace> incident_faces(const VoxelGrid& grid, int cx, int cy, int cz);

} // namespace voxcurv
