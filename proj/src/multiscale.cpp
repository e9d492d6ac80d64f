#include "voxcurv/multiscale.hpp"

#include "voxcurv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <tuple>

namespace voxcurv {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Retained axes (u, v) for a projection dropping `axis`, and the plane tag.
struct Projection {
    int u_axis, v_axis;
    MapPlane plane;
};

Projection projection_for(int axis) {
    switch (axis) {
    case 0: return {1, 2, MapPlane::yz}; // drop x: u = y, v = z
    case 1: return {2, 0, MapPlane::zx}; // drop y: u = z, v = x
    case 2: return {0, 1, MapPlane::xy}; // drop z: u = x, v = y
    default: throw InputError("projection axis must be 0, 1 or 2");
    }
}

int lattice_extent(const CurvatureField& field, int axis) {
    return axis == 0 ? field.ex : axis == 1 ? field.ey : field.ez;
}

ScaleMap projection_base(const CurvatureField& field, int axis, MapKind kind) {
    const Projection proj = projection_for(axis);
    ScaleMap map;
    map.kind = kind;
    map.plane = proj.plane;
    map.level = 0;
    map.width = lattice_extent(field, proj.u_axis);
    map.height = lattice_extent(field, proj.v_axis);
    map.depth = 1;
    map.cells.assign(static_cast<std::size_t>(map.cell_count()), 0.0);
    // Serial accumulation in vertex order keeps the floating-point sums
    // identical across thread counts.
    for (const VertexCurvature& v : field.vertices) {
        const int u = v.pos[static_cast<std::size_t>(proj.u_axis)];
        const int w = v.pos[static_cast<std::size_t>(proj.v_axis)];
        if (kind == MapKind::gauss_sum)
            map.at(u, w) += static_cast<double>(v.gauss_units);
        else
            map.at(u, w) += std::abs(v.mean);
    }
    return map;
}

char* fmt_value(char* buf, std::size_t n, double v) {
    std::snprintf(buf, n, "%.9g", v);
    return buf;
}

} // namespace

const char* to_string(MapKind k) {
    return k == MapKind::gauss_sum ? "gauss_sum" : "mean_abs_sum";
}

const char* to_string(MapPlane p) {
    switch (p) {
    case MapPlane::xy: return "xy";
    case MapPlane::yz: return "yz";
    case MapPlane::zx: return "zx";
    case MapPlane::volume: return "volume";
    }
    return "?";
}

double ScaleMap::total() const {
    double t = 0.0;
    for (const double c : cells)
        t += c;
    return t;
}

double ScaleMap::output_value(std::int64_t i) const {
    const double v = cells[static_cast<std::size_t>(i)];
    return kind == MapKind::gauss_sum ? v * kHalfPi : v;
}

CurvatureVector region_vector(const CurvatureField& field, const RegionSpec& region) {
    CurvatureVector out;
    for (const VertexCurvature& v : field.vertices) {
        if (v.pos[0] < region.x0 || v.pos[0] >= region.x1 || v.pos[1] < region.y0 ||
            v.pos[1] >= region.y1 || v.pos[2] < region.z0 || v.pos[2] >= region.z1)
            continue;
        switch (v.type) {
        case VertexType::M3: ++out.m3; break;
        case VertexType::M4Flat:
        case VertexType::M4Bent: ++out.m4; break;
        case VertexType::M5: ++out.m5; break;
        case VertexType::M6a:
        case VertexType::M6b: ++out.m6; break;
        default: break;
        }
    }
    return out;
}

GaussQ region_total(const CurvatureVector& v) {
    return GaussQ{v.m3 - v.m5 - 2 * v.m6};
}

ScaleMap gauss_projection_map(const CurvatureField& field, int axis) {
    return projection_base(field, axis, MapKind::gauss_sum);
}

ScaleMap meanabs_projection_map(const CurvatureField& field, int axis) {
    return projection_base(field, axis, MapKind::mean_abs_sum);
}

ScaleMap coarsen(const ScaleMap& map) {
    ScaleMap out;
    out.kind = map.kind;
    out.plane = map.plane;
    out.level = map.level + 1;
    out.width = (map.width + 1) / 2;
    out.height = (map.height + 1) / 2;
    out.depth = (map.plane == MapPlane::volume) ? (map.depth + 1) / 2 : map.depth;
    out.cells.assign(static_cast<std::size_t>(out.cell_count()), 0.0);
    const int wf = (map.plane == MapPlane::volume) ? 2 : 1;
    for (int w = 0; w < out.depth; ++w)
        for (int v = 0; v < out.height; ++v)
            for (int u = 0; u < out.width; ++u) {
                double sum = 0.0;
                for (int dw = 0; dw < wf; ++dw)
                    for (int dv = 0; dv < 2; ++dv)
                        for (int du = 0; du < 2; ++du) {
                            const int su = 2 * u + du, sv = 2 * v + dv, sw = wf * w + dw;
                            if (su < map.width && sv < map.height && sw < map.depth)
                                sum += map.at(su, sv, sw);
                        }
                out.at(u, v, w) = sum;
            }
    return out;
}

ScaleMap mean_abs_map(const CurvatureField& field, int axis, int block) {
    if (block != 2 && block != 4)
        throw InputError("mean_abs_map block must be 2 or 4");
    ScaleMap map = meanabs_projection_map(field, axis);
    for (int b = block; b > 1; b /= 2)
        map = coarsen(map);
    return map;
}

Pyramid build_pyramid(const ScaleMap& base, int levels) {
    if (levels < 1)
        throw InputError("pyramid needs at least one level");
    Pyramid p;
    p.levels.push_back(base);
    for (int k = 1; k < levels; ++k) {
        const ScaleMap& prev = p.levels.back();
        if (prev.width <= 1 && prev.height <= 1 && prev.depth <= 1) {
            p.clamped = true;
            break;
        }
        p.levels.push_back(coarsen(prev));
    }
    return p;
}

std::vector<InterestRegion> interest_regions(const ScaleMap& map, double threshold) {
    if (threshold < 0.0)
        throw InputError("interest_regions threshold must be >= 0");
    std::vector<InterestRegion> out;
    std::vector<std::uint8_t> seen(map.cells.size(), 0);
    std::vector<std::array<int, 3>> stack;
    for (int w0 = 0; w0 < map.depth; ++w0)
        for (int v0 = 0; v0 < map.height; ++v0)
            for (int u0 = 0; u0 < map.width; ++u0) {
                const std::size_t start =
                    static_cast<std::size_t>((static_cast<std::int64_t>(w0) * map.height + v0) * map.width + u0);
                if (seen[start] || std::abs(map.cells[start]) < threshold)
                    continue;
                InterestRegion region{u0, v0, w0, u0 + 1, v0 + 1, w0 + 1, 0.0, 0};
                seen[start] = 1;
                stack.push_back({u0, v0, w0});
                while (!stack.empty()) {
                    const auto [u, v, w] = stack.back();
                    stack.pop_back();
                    region.total += map.at(u, v, w);
                    ++region.cell_count;
                    region.u0 = std::min(region.u0, u);
                    region.v0 = std::min(region.v0, v);
                    region.w0 = std::min(region.w0, w);
                    region.u1 = std::max(region.u1, u + 1);
                    region.v1 = std::max(region.v1, v + 1);
                    region.w1 = std::max(region.w1, w + 1);
                    const int neighbors[6][3] = {{u - 1, v, w}, {u + 1, v, w}, {u, v - 1, w},
                                                 {u, v + 1, w}, {u, v, w - 1}, {u, v, w + 1}};
                    for (const auto& nb : neighbors) {
                        if (nb[0] < 0 || nb[1] < 0 || nb[2] < 0 || nb[0] >= map.width ||
                            nb[1] >= map.height || nb[2] >= map.depth)
                            continue;
                        const std::size_t idx = static_cast<std::size_t>(
                            (static_cast<std::int64_t>(nb[2]) * map.height + nb[1]) * map.width +
                            nb[0]);
                        if (!seen[idx] && std::abs(map.cells[idx]) >= threshold) {
                            seen[idx] = 1;
                            stack.push_back({nb[0], nb[1], nb[2]});
                        }
                    }
                }
                out.push_back(region);
            }
    std::sort(out.begin(), out.end(), [](const InterestRegion& a, const InterestRegion& b) {
        const double ta = std::abs(a.total), tb = std::abs(b.total);
        if (ta != tb)
            return ta > tb;
        return std::tie(a.u0, a.v0, a.w0, a.u1, a.v1, a.w1) <
               std::tie(b.u0, b.v0, b.w0, b.u1, b.v1, b.w1);
    });
    return out;
}

std::string map_to_csv(const ScaleMap& map) {
    std::string out = "# vox3-map kind=" + std::string(to_string(map.kind)) +
                      " level=" + std::to_string(map.level) +
                      " plane=" + std::string(to_string(map.plane)) +
                      " nx=" + std::to_string(map.width) + " ny=" + std::to_string(map.height);
    if (map.plane == MapPlane::volume)
        out += " nz=" + std::to_string(map.depth);
    out += "\n";
    char buf[40];
    std::int64_t i = 0;
    for (int w = 0; w < map.depth; ++w)
        for (int v = 0; v < map.height; ++v) {
            for (int u = 0; u < map.width; ++u, ++i) {
                if (u)
                    out += ',';
                out += fmt_value(buf, sizeof buf, map.output_value(i));
            }
            out += '\n';
        }
    return out;
}

void write_map_csv(const ScaleMap& map, std::ostream& out) {
    const std::string s = map_to_csv(map);
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string map_to_pgm(const ScaleMap& map) {
    if (map.plane == MapPlane::volume)
        throw InputError("PGM output supports plane maps only");
    double lo = 0.0, hi = 0.0;
    if (!map.cells.empty()) {
        lo = map.output_value(0);
        hi = lo;
        for (std::int64_t i = 1; i < map.cell_count(); ++i) {
            const double v = map.output_value(i);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double scale = hi > lo ? 65535.0 / (hi - lo) : 1.0;
    char sbuf[40], obuf[40];
    std::string out = "P5\n# vox3-map kind=" + std::string(to_string(map.kind)) +
                      " level=" + std::to_string(map.level) +
                      " plane=" + std::string(to_string(map.plane)) + "\n# scale=" +
                      fmt_value(sbuf, sizeof sbuf, scale) + " offset=" +
                      fmt_value(obuf, sizeof obuf, lo) + "\n" + std::to_string(map.width) + " " +
                      std::to_string(map.height) + "\n65535\n";
    out.reserve(out.size() + static_cast<std::size_t>(map.cell_count()) * 2);
    for (std::int64_t i = 0; i < map.cell_count(); ++i) {
        const double v = (map.output_value(i) - lo) * scale;
        const auto pixel = static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 65535.0)));
        out.push_back(static_cast<char>(pixel >> 8)); // big-endian per the format
        out.push_back(static_cast<char>(pixel & 0xff));
    }
    return out;
}

void write_map_pgm(const ScaleMap& map, std::ostream& out) {
    const std::string s = map_to_pgm(map);
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

} // namespace voxcurv
