#pragma once

#include "voxcurv/voxel_grid.hpp"

#include <cstdint>
#include <string>

namespace voxcurv {

/// Deterministic fixture generators: identical parameters yield bit-identical
/// grids on every platform.

/// a*a*a fully occupied grid, a >= 1.
VoxelGrid make_cube(int a);

/// a*b*c fully occupied grid.
VoxelGrid make_box(int a, int b, int c);

/// (2r+1)^3 grid; cell occupied iff its center lies within Euclidean distance
/// r of the grid center. Symmetric under all 48 axis-aligned grid symmetries.
VoxelGrid make_sphere(int r);

/// Digitized solid torus around a z-axis-aligned circle of radius
/// ring_radius with tube radius tube_radius; requires ring > tube >= 1.
VoxelGrid make_torus(int ring_radius, int tube_radius);

/// Seeded random union of overlapping boxes on a fixed 48^3 canvas. Each box
/// is anchored inside an earlier one, so the result is always 6-connected.
VoxelGrid make_blob(std::uint32_t seed, int steps);

/// Flat 2-cell-thick w*h slab with one hemispherical bump of radius bump_r
/// centered on its top face.
VoxelGrid make_bump_plate(int w, int h, int bump_r);

/// Center (x, y) of the bump footprint of make_bump_plate(w, h, *).
struct BumpCenter {
    int x, y;
};
BumpCenter bump_plate_center(int w, int h);

/// Parses a generator spec of the form "name:arg1,arg2,...", e.g. "cube:3",
/// "box:2,3,4", "sphere:5", "torus:4,1", "blob:7,20", "bump_plate:24,24,5".
/// Raises InputError on unknown names, wrong arity, or invalid parameters.
VoxelGrid generate_shape(const std::string& spec);

} // namespace voxcurv
