#pragma once

#include "voxcurv/surface.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace voxcurv {

/// Gaussian curvature as an exact integer multiple of pi/2. Keeping the
/// topological bookkeeping in integers makes the closure identities exact;
/// radians are materialized only at output boundaries.
struct GaussQ {
    std::int64_t units = 0;

    double radians() const;

    friend GaussQ operator+(GaussQ a, GaussQ b) { return GaussQ{a.units + b.units}; }
    GaussQ& operator+=(GaussQ o) {
        units += o.units;
        return *this;
    }
    bool operator==(const GaussQ&) const = default;
};

/// Closed-form curvature constants for one manifold vertex type.
struct TypeCurvature {
    int gauss_units; ///< Gaussian curvature in pi/2 units
    double mean;
    double k1;
    double k2;
};

/// Constants for M3..M6b. The Gaussian value is the angular defect
/// 2*pi - faces*(pi/2); mean values are the digital closed forms
/// (4/sqrt(3), 0, sqrt(2), 4/5, 0) and the principal values follow from
/// k = H +- sqrt(H^2 - K). Raises InternalError for non-manifold types.
const TypeCurvature& type_curvature(VertexType type);

struct VertexCurvature {
    std::array<int, 3> pos;
    VertexType type;
    int gauss_units;
    double mean;
    double k1;
    double k2;
};

/// Per-vertex curvatures over the manifold vertices of a mesh. Non-manifold
/// vertices carry no curvature; only their count is kept.
struct CurvatureField {
    int ex = 0, ey = 0, ez = 0; ///< corner-lattice extents (grid dims + 1)
    std::vector<VertexCurvature> vertices;
    TypeCounts counts;
    std::int64_t excluded_nonmanifold = 0;
};

CurvatureField assign_curvatures(const SurfaceMesh& mesh);

/// Sum of Gaussian curvature over the field: m3 - m5 - 2*m6 in pi/2 units.
GaussQ total_gaussian(const CurvatureField& field);

/// Genus from type counts: 1 + (m5 + 2*m6 - m3)/8. Requires a manifold,
/// single-component mesh (InputError otherwise). The count combination must
/// be divisible by 8 and agree with (2 - V + E - F)/2; a violation can only
/// come from an extraction bug and raises InternalError.
int genus(const SurfaceMesh& mesh);

/// Total geodesic curvature of the boundary of a simply connected surface
/// region with interior Gaussian total `region_total`: 2*pi minus the total
/// in radians. Whether the region is simply connected is the caller's
/// responsibility; nothing here can check it.
double region_boundary_geodesic(GaussQ region_total);

} // namespace voxcurv
