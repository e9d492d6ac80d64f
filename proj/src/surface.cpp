#include "voxcurv/surface.hpp"

#include "voxcurv/errors.hpp"
#include "voxcurv/parallel.hpp"

#include <cassert>
#include <unordered_map>

namespace voxcurv {

namespace {

// A candidate face at a corner separates two of the 8 surrounding cells that
// are 6-adjacent (differ in exactly one index bit). Face id = axis*4 + sub
// where sub packs the two off-axis bits of the pair (low axis first).
struct FaceInfo {
    std::uint8_t axis;
    std::uint8_t cell_lo, cell_hi; // pattern bit indices of the separated cells
    std::uint8_t edge_a, edge_b;   // corner-edge ids: axis*2 + (positive ? 1 : 0)
};

constexpr std::array<FaceInfo, 12> make_face_infos() {
    std::array<FaceInfo, 12> infos{};
    for (int axis = 0; axis < 3; ++axis) {
        const int b = (axis == 0) ? 1 : 0; // off-axes, ascending
        const int c = (axis == 2) ? 1 : 2;
        for (int sub = 0; sub < 4; ++sub) {
            const int bit_b = sub & 1;
            const int bit_c = (sub >> 1) & 1;
            const int lo = (bit_b << b) | (bit_c << c);
            FaceInfo& f = infos[static_cast<std::size_t>(axis * 4 + sub)];
            f.axis = static_cast<std::uint8_t>(axis);
            f.cell_lo = static_cast<std::uint8_t>(lo);
            f.cell_hi = static_cast<std::uint8_t>(lo | (1 << axis));
            f.edge_a = static_cast<std::uint8_t>(b * 2 + bit_b);
            f.edge_b = static_cast<std::uint8_t>(c * 2 + bit_c);
        }
    }
    return infos;
}

constexpr std::array<FaceInfo, 12> kFaceInfos = make_face_infos();

std::uint16_t face_mask_for(std::uint8_t pattern) {
    std::uint16_t mask = 0;
    for (int f = 0; f < 12; ++f) {
        const FaceInfo& info = kFaceInfos[static_cast<std::size_t>(f)];
        const bool lo = (pattern >> info.cell_lo) & 1;
        const bool hi = (pattern >> info.cell_hi) & 1;
        if (lo != hi)
            mask = static_cast<std::uint16_t>(mask | (1u << f));
    }
    return mask;
}

// True when the faces form one closed fan around the corner: every corner
// edge carries 0 or 2 of them and the shared-edge graph is connected.
bool single_umbrella(std::uint16_t mask, int face_count) {
    if (face_count < 3)
        return false;
    int edge_faces[6][2];
    int edge_count[6] = {0, 0, 0, 0, 0, 0};
    for (int f = 0; f < 12; ++f) {
        if (!((mask >> f) & 1))
            continue;
        const FaceInfo& info = kFaceInfos[static_cast<std::size_t>(f)];
        for (const std::uint8_t e : {info.edge_a, info.edge_b}) {
            if (edge_count[e] < 2)
                edge_faces[e][edge_count[e]] = f;
            ++edge_count[e];
        }
    }
    for (const int c : edge_count)
        if (c != 0 && c != 2)
            return false;
    // Walk the fan from any face; a single cycle visits every face.
    int start = -1;
    for (int f = 0; f < 12 && start < 0; ++f)
        if ((mask >> f) & 1)
            start = f;
    int visited = 0;
    int prev_edge = -1;
    int cur = start;
    do {
        ++visited;
        const FaceInfo& info = kFaceInfos[static_cast<std::size_t>(cur)];
        const int next_edge = (info.edge_a == prev_edge) ? info.edge_b : info.edge_a;
        cur = (edge_faces[next_edge][0] == cur) ? edge_faces[next_edge][1]
                                                : edge_faces[next_edge][0];
        prev_edge = next_edge;
        if (visited > face_count)
            return false;
    } while (cur != start);
    return visited == face_count;
}

VertexType classify_pattern(std::uint8_t pattern) {
    const std::uint16_t mask = face_mask_for(pattern);
    if (mask == 0)
        return VertexType::NotOnSurface;
    const int count = __builtin_popcount(mask);
    if (!single_umbrella(mask, count))
        return VertexType::NonManifold;
    switch (count) {
    case 3:
        return VertexType::M3;
    case 4: {
        int per_axis[3] = {0, 0, 0};
        for (int f = 0; f < 12; ++f)
            if ((mask >> f) & 1)
                ++per_axis[kFaceInfos[static_cast<std::size_t>(f)].axis];
        return (per_axis[0] == 4 || per_axis[1] == 4 || per_axis[2] == 4) ? VertexType::M4Flat
                                                                          : VertexType::M4Bent;
    }
    case 5:
        return VertexType::M5;
    case 6: {
        // The two 6-face fans: a cell with all three of its block neighbors
        // occupied (and its complement, which has the same shape), versus the
        // 4-cell staircase.
        for (int i = 0; i < 8; ++i) {
            if (!((pattern >> i) & 1))
                continue;
            if (((pattern >> (i ^ 1)) & 1) && ((pattern >> (i ^ 2)) & 1) &&
                ((pattern >> (i ^ 4)) & 1))
                return VertexType::M6a;
        }
        return VertexType::M6b;
    }
    default:
        return VertexType::NonManifold;
    }
}

struct TableEntry {
    VertexType type;
    std::uint16_t mask;
    std::uint8_t face_count;
};

const std::array<TableEntry, 256>& table() {
    static const std::array<TableEntry, 256> t = [] {
        std::array<TableEntry, 256> e{};
        for (int p = 0; p < 256; ++p) {
            const std::uint16_t mask = face_mask_for(static_cast<std::uint8_t>(p));
            e[static_cast<std::size_t>(p)] = {classify_pattern(static_cast<std::uint8_t>(p)),
                                              mask,
                                              static_cast<std::uint8_t>(__builtin_popcount(mask))};
        }
        return e;
    }();
    return t;
}

void bump_count(TypeCounts& counts, VertexType t) {
    switch (t) {
    case VertexType::M3: ++counts.m3; break;
    case VertexType::M4Flat: ++counts.m4_flat; break;
    case VertexType::M4Bent: ++counts.m4_bent; break;
    case VertexType::M5: ++counts.m5; break;
    case VertexType::M6a: ++counts.m6a; break;
    case VertexType::M6b: ++counts.m6b; break;
    case VertexType::NonManifold: ++counts.nonmanifold; break;
    case VertexType::NotOnSurface: break;
    }
}

std::uint64_t edge_key(const SurfaceMesh& mesh, int x, int y, int z, int axis) {
    const std::uint64_t ex = static_cast<std::uint64_t>(mesh.nx) + 2;
    const std::uint64_t ey = static_cast<std::uint64_t>(mesh.ny) + 2;
    return ((static_cast<std::uint64_t>(z) * ey + static_cast<std::uint64_t>(y)) * ex +
            static_cast<std::uint64_t>(x)) *
               3 +
           static_cast<std::uint64_t>(axis);
}

// The four corner-lattice edges of a face.
std::array<std::array<int, 4>, 4> face_edges(const BoundaryFace& f) {
    const int a = f.axis;
    const int b = (a == 0) ? 1 : 0;
    const int c = (a == 2) ? 1 : 2;
    std::array<int, 3> base = f.cell;
    base[a] += f.side; // plane coordinate of the square
    std::array<std::array<int, 4>, 4> edges{};
    int n = 0;
    for (int db = 0; db < 2; ++db) { // edges along c at b-offset db
        std::array<int, 3> corner = base;
        corner[b] += db;
        edges[n++] = {corner[0], corner[1], corner[2], c};
    }
    for (int dc = 0; dc < 2; ++dc) { // edges along b at c-offset dc
        std::array<int, 3> corner = base;
        corner[c] += dc;
        edges[n++] = {corner[0], corner[1], corner[2], b};
    }
    return edges;
}

} // namespace

const char* to_string(VertexType t) {
    switch (t) {
    case VertexType::NotOnSurface: return "not_on_surface";
    case VertexType::M3: return "m3";
    case VertexType::M4Flat: return "m4_flat";
    case VertexType::M4Bent: return "m4_bent";
    case VertexType::M5: return "m5";
    case VertexType::M6a: return "m6a";
    case VertexType::M6b: return "m6b";
    case VertexType::NonManifold: return "nonmanifold";
    }
    return "?";
}

VertexType classify_vertex(std::uint8_t occupancy8) {
    return table()[occupancy8].type;
}

int pattern_face_count(std::uint8_t occupancy8) {
    return table()[occupancy8].face_count;
}

std::uint16_t pattern_face_mask(std::uint8_t occupancy8) {
    return table()[occupancy8].mask;
}

std::uint8_t corner_pattern(const VoxelGrid& grid, int cx, int cy, int cz) {
    std::uint8_t p = 0;
    for (int dz = 0; dz < 2; ++dz)
        for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx)
                if (grid.occupied(cx - 1 + dx, cy - 1 + dy, cz - 1 + dz))
                    p = static_cast<std::uint8_t>(p | (1 << (dx + 2 * dy + 4 * dz)));
    return p;
}

std::vector<BoundaryFace> incident_faces(const VoxelGrid& grid, int cx, int cy, int cz) {
    const std::uint8_t pattern = corner_pattern(grid, cx, cy, cz);
    std::vector<BoundaryFace> out;
    const std::uint16_t mask = pattern_face_mask(pattern);
    for (int f = 0; f < 12; ++f) {
        if (!((mask >> f) & 1))
            continue;
        const FaceInfo& info = kFaceInfos[static_cast<std::size_t>(f)];
        const bool lo_occ = (pattern >> info.cell_lo) & 1;
        const std::uint8_t occ = lo_occ ? info.cell_lo : info.cell_hi;
        BoundaryFace face;
        face.cell = {cx - 1 + (occ & 1), cy - 1 + ((occ >> 1) & 1), cz - 1 + ((occ >> 2) & 1)};
        face.axis = info.axis;
        face.side = lo_occ ? 1 : 0; // empty neighbor is on the high side iff low cell occupied
        out.push_back(face);
    }
    return out;
}

SurfaceMesh extract_surface(const VoxelGrid& grid, int threads) {
    const int workers = resolve_thread_count(threads);
    SurfaceMesh mesh;
    mesh.nx = grid.nx();
    mesh.ny = grid.ny();
    mesh.nz = grid.nz();
    const int ex = grid.nx() + 1, ey = grid.ny() + 1, ez = grid.nz() + 1;

    // Vertices: classify every corner of the (nx+1)*(ny+1)*(nz+1) lattice,
    // partitioned by z-slab; merge in slab order.
    {
        const int chunks = chunk_count(ez, workers);
        std::vector<std::vector<SurfaceVertex>> parts(static_cast<std::size_t>(chunks));
        std::vector<TypeCounts> part_counts(static_cast<std::size_t>(chunks));
        parallel_chunks(ez, workers, [&](int chunk, std::int64_t z0, std::int64_t z1) {
            auto& verts = parts[static_cast<std::size_t>(chunk)];
            auto& counts = part_counts[static_cast<std::size_t>(chunk)];
            for (int cz = static_cast<int>(z0); cz < static_cast<int>(z1); ++cz)
                for (int cy = 0; cy < ey; ++cy)
                    for (int cx = 0; cx < ex; ++cx) {
                        const std::uint8_t p = corner_pattern(grid, cx, cy, cz);
                        if (p == 0 || p == 255)
                            continue; // constant patterns have no incident face
                        const VertexType t = classify_vertex(p);
                        verts.push_back(SurfaceVertex{{cx, cy, cz}, p, t});
                        bump_count(counts, t);
                    }
        });
        for (int c = 0; c < chunks; ++c) {
            auto& v = parts[static_cast<std::size_t>(c)];
            mesh.vertices.insert(mesh.vertices.end(), v.begin(), v.end());
            const TypeCounts& pc = part_counts[static_cast<std::size_t>(c)];
            mesh.counts.m3 += pc.m3;
            mesh.counts.m4_flat += pc.m4_flat;
            mesh.counts.m4_bent += pc.m4_bent;
            mesh.counts.m5 += pc.m5;
            mesh.counts.m6a += pc.m6a;
            mesh.counts.m6b += pc.m6b;
            mesh.counts.nonmanifold += pc.nonmanifold;
        }
    }

    // Faces: occupied cell vs empty 6-neighbor, fixed direction order.
    {
        const int chunks = chunk_count(grid.nz(), workers);
        std::vector<std::vector<BoundaryFace>> parts(static_cast<std::size_t>(chunks));
        parallel_chunks(grid.nz(), workers, [&](int chunk, std::int64_t z0, std::int64_t z1) {
            auto& faces = parts[static_cast<std::size_t>(chunk)];
            for (int z = static_cast<int>(z0); z < static_cast<int>(z1); ++z)
                for (int y = 0; y < grid.ny(); ++y)
                    for (int x = 0; x < grid.nx(); ++x) {
                        if (!grid.at(x, y, z))
                            continue;
                        for (int axis = 0; axis < 3; ++axis)
                            for (int side = 0; side < 2; ++side) {
                                int nxp = x, nyp = y, nzp = z;
                                const int step = side ? 1 : -1;
                                (axis == 0 ? nxp : axis == 1 ? nyp : nzp) += step;
                                if (!grid.occupied(nxp, nyp, nzp))
                                    faces.push_back(BoundaryFace{
                                        {x, y, z},
                                        static_cast<std::uint8_t>(axis),
                                        static_cast<std::uint8_t>(side)});
                            }
                    }
        });
        for (auto& part : parts)
            mesh.faces.insert(mesh.faces.end(), part.begin(), part.end());
    }

    // Edges: the 4 cells around a lattice edge form a ring; each occupancy
    // flip between cyclically adjacent cells is one incident boundary face,
    // so the incidence is 0, 2 (manifold) or 4 (checkerboard defect).
    {
        struct EdgeAcc {
            std::int64_t two = 0;
            std::vector<GridEdge> defects;
        };
        const int chunks = chunk_count(ez, workers);
        std::vector<EdgeAcc> parts(static_cast<std::size_t>(chunks));
        parallel_chunks(ez, workers, [&](int chunk, std::int64_t z0, std::int64_t z1) {
            EdgeAcc& acc = parts[static_cast<std::size_t>(chunk)];
            for (int z = static_cast<int>(z0); z < static_cast<int>(z1); ++z)
                for (int y = 0; y < ey; ++y)
                    for (int x = 0; x < ex; ++x)
                        for (int axis = 0; axis < 3; ++axis) {
                            const int extent = (axis == 0) ? grid.nx()
                                               : (axis == 1) ? grid.ny()
                                                             : grid.nz();
                            const int along = (axis == 0) ? x : (axis == 1) ? y : z;
                            if (along >= extent)
                                continue;
                            const int b = (axis == 0) ? 1 : 0;
                            const int c = (axis == 2) ? 1 : 2;
                            // Ring of 4 cells around the edge, cyclic order.
                            static constexpr int ring[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
                            bool occ[4];
                            for (int i = 0; i < 4; ++i) {
                                int cell[3] = {x, y, z};
                                cell[b] += ring[i][0] - 1;
                                cell[c] += ring[i][1] - 1;
                                occ[i] = grid.occupied(cell[0], cell[1], cell[2]);
                            }
                            int flips = 0;
                            for (int i = 0; i < 4; ++i)
                                flips += (occ[i] != occ[(i + 1) & 3]);
                            if (flips == 2)
                                ++acc.two;
                            else if (flips == 4)
                                acc.defects.push_back(
                                    GridEdge{{x, y, z}, static_cast<std::uint8_t>(axis)});
                        }
        });
        for (auto& part : parts) {
            mesh.two_face_edge_count += part.two;
            mesh.edge_defects.insert(mesh.edge_defects.end(), part.defects.begin(),
                                     part.defects.end());
        }
    }

    return mesh;
}

int euler_characteristic(const SurfaceMesh& mesh) {
    if (!mesh.manifold()) {
        std::string msg = "euler_characteristic requires a manifold surface: " +
                          std::to_string(mesh.counts.nonmanifold) + " non-manifold vertices, " +
                          std::to_string(mesh.edge_defects.size()) + " edge defects";
        for (std::size_t i = 0; i < mesh.edge_defects.size() && i < 4; ++i) {
            const GridEdge& e = mesh.edge_defects[i];
            msg += "; edge (" + std::to_string(e.corner[0]) + "," + std::to_string(e.corner[1]) +
                   "," + std::to_string(e.corner[2]) + ") axis " + std::to_string(e.axis);
        }
        throw InputError(msg);
    }
    const std::int64_t v = static_cast<std::int64_t>(mesh.vertices.size());
    const std::int64_t e = mesh.two_face_edge_count;
    const std::int64_t f = static_cast<std::int64_t>(mesh.faces.size());
    return static_cast<int>(v - e + f);
}

int surface_component_count(const SurfaceMesh& mesh) {
    if (!mesh.manifold())
        throw InputError("surface_component_count requires a manifold surface");
    if (mesh.faces.empty())
        return 0;
    std::unordered_map<std::uint64_t, std::array<std::int32_t, 2>> by_edge;
    by_edge.reserve(mesh.faces.size() * 2);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(mesh.faces.size()); ++i) {
        for (const auto& e : face_edges(mesh.faces[static_cast<std::size_t>(i)])) {
            auto [it, inserted] =
                by_edge.try_emplace(edge_key(mesh, e[0], e[1], e[2], e[3]),
                                    std::array<std::int32_t, 2>{i, -1});
            if (!inserted) {
                assert(it->second[1] == -1 && "manifold edge has at most two faces");
                it->second[1] = i;
            }
        }
    }
    std::vector<std::uint8_t> seen(mesh.faces.size(), 0);
    std::vector<std::int32_t> stack;
    int components = 0;
    for (std::int32_t start = 0; start < static_cast<std::int32_t>(mesh.faces.size()); ++start) {
        if (seen[static_cast<std::size_t>(start)])
            continue;
        ++components;
        seen[static_cast<std::size_t>(start)] = 1;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::int32_t cur = stack.back();
            stack.pop_back();
            for (const auto& e : face_edges(mesh.faces[static_cast<std::size_t>(cur)])) {
                const auto it = by_edge.find(edge_key(mesh, e[0], e[1], e[2], e[3]));
                assert(it != by_edge.end());
                for (const std::int32_t other : it->second) {
                    if (other >= 0 && !seen[static_cast<std::size_t>(other)]) {
                        seen[static_cast<std::size_t>(other)] = 1;
                        stack.push_back(other);
                    }
                }
            }
        }
    }
    return components;
}

} // namespace voxcurv
