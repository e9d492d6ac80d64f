#include "voxcurv/curvature.hpp"

#include "voxcurv/errors.hpp"

#include <cmath>
#include <numbers>

namespace voxcurv {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct ConstantTable {
    TypeCurvature m3, m4_flat, m4_bent, m5, m6;
};

const ConstantTable& constants() {
    static const ConstantTable t = [] {
        ConstantTable c{};
        const double h3 = 4.0 / std::sqrt(3.0);
        const double s3 = std::sqrt(h3 * h3 - kHalfPi);
        c.m3 = {+1, h3, h3 + s3, h3 - s3};
        c.m4_flat = {0, 0.0, 0.0, 0.0};
        const double h4 = std::sqrt(2.0);
        c.m4_bent = {0, h4, 2.0 * h4, 0.0};
        const double h5 = 4.0 / 5.0;
        const double s5 = std::sqrt(h5 * h5 + kHalfPi);
        c.m5 = {-1, h5, h5 + s5, h5 - s5};
        const double s6 = std::sqrt(std::numbers::pi);
        c.m6 = {-2, 0.0, s6, -s6};
        return c;
    }();
    return t;
}

} // namespace

double GaussQ::radians() const {
    return static_cast<double>(units) * kHalfPi;
}

const TypeCurvature& type_curvature(VertexType type) {
    switch (type) {
    case VertexType::M3: return constants().m3;
    case VertexType::M4Flat: return constants().m4_flat;
    case VertexType::M4Bent: return constants().m4_bent;
    case VertexType::M5: return constants().m5;
    case VertexType::M6a:
    case VertexType::M6b: return constants().m6;
    default:
        throw InternalError("type_curvature: no curvature constants for type " +
                            std::string(to_string(type)));
    }
}

CurvatureField assign_curvatures(const SurfaceMesh& mesh) {
    CurvatureField field;
    field.ex = mesh.nx + 1;
    field.ey = mesh.ny + 1;
    field.ez = mesh.nz + 1;
    field.counts = mesh.counts;
    field.excluded_nonmanifold = mesh.counts.nonmanifold;
    field.vertices.reserve(mesh.vertices.size());
    for (const SurfaceVertex& v : mesh.vertices) {
        if (v.type == VertexType::NonManifold)
            continue;
        const TypeCurvature& c = type_curvature(v.type);
        field.vertices.push_back(
            VertexCurvature{v.pos, v.type, c.gauss_units, c.mean, c.k1, c.k2});
    }
    return field;
}

GaussQ total_gaussian(const CurvatureField& field) {
    const TypeCounts& c = field.counts;
    return GaussQ{c.m3 - c.m5 - 2 * c.m6()};
}

int genus(const SurfaceMesh& mesh) {
    if (!mesh.manifold())
        throw InputError("genus requires a manifold surface: " +
                         std::to_string(mesh.counts.nonmanifold) + " non-manifold vertices, " +
                         std::to_string(mesh.edge_defects.size()) + " edge defects");
    const int components = surface_component_count(mesh);
    if (components != 1)
        throw InputError("genus requires a single closed surface, found " +
                         std::to_string(components) + " components");
    const TypeCounts& c = mesh.counts;
    const std::int64_t num = c.m5 + 2 * c.m6() - c.m3;
    if (num % 8 != 0)
        throw InternalError("type counts violate the genus formula: m5 + 2*m6 - m3 = " +
                            std::to_string(num) + " is not divisible by 8");
    const std::int64_t g = 1 + num / 8;
    const int chi = euler_characteristic(mesh);
    if (2 * g != 2 - chi)
        throw InternalError("genus mismatch: counts give " + std::to_string(g) +
                            ", Euler characteristic " + std::to_string(chi) + " gives " +
                            std::to_string((2 - chi) / 2.0));
    return static_cast<int>(g);
}

double region_boundary_geodesic(GaussQ region_total) {
    return 2.0 * std::numbers::pi - region_total.radians();
}

} // namespace voxcurv
