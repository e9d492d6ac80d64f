#include "voxcurv/shapes.hpp"

#include "voxcurv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace voxcurv {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok)
        throw InputError(what);
}

// mt19937 is fully specified by the standard; taking the draw modulo n keeps
// blob generation reproducible across platforms (std::uniform_int_distribution
// is not portable).
std::uint32_t draw_below(std::mt19937& rng, std::uint32_t n) {
    return rng() % n;
}

constexpr int kBlobCanvas = 48;

struct Box {
    int x0, y0, z0, x1, y1, z1; // half-open
};

} // namespace

VoxelGrid make_cube(int a) {
    require(a >= 1, "cube: side must be >= 1");
    return VoxelGrid::filled(a, a, a, true);
}

VoxelGrid make_box(int a, int b, int c) {
    require(a >= 1 && b >= 1 && c >= 1, "box: sides must be >= 1");
    return VoxelGrid::filled(a, b, c, true);
}

VoxelGrid make_sphere(int r) {
    require(r >= 1, "sphere: radius must be >= 1");
    const int n = 2 * r + 1;
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n * n, 0);
    std::size_t i = 0;
    const std::int64_t rr = static_cast<std::int64_t>(r) * r;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const std::int64_t dx = x - r, dy = y - r, dz = z - r;
                cells[i++] = (dx * dx + dy * dy + dz * dz <= rr);
            }
    return VoxelGrid(n, n, n, std::move(cells));
}

VoxelGrid make_torus(int ring_radius, int tube_radius) {
    require(tube_radius >= 1, "torus: tube radius must be >= 1");
    require(ring_radius > tube_radius, "torus: ring radius must exceed tube radius");
    const int half_xy = ring_radius + tube_radius;
    const int nxy = 2 * half_xy + 1;
    const int nz = 2 * tube_radius + 1;
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(nxy) * nxy * nz, 0);
    std::size_t i = 0;
    const double rt = tube_radius;
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < nxy; ++y)
            for (int x = 0; x < nxy; ++x) {
                const double dx = x - half_xy, dy = y - half_xy, dz = z - tube_radius;
                const double rho = std::sqrt(dx * dx + dy * dy) - ring_radius;
                cells[i++] = (rho * rho + dz * dz <= rt * rt);
            }
    return VoxelGrid(nxy, nxy, nz, std::move(cells));
}

VoxelGrid make_blob(std::uint32_t seed, int steps) {
    require(steps >= 1, "blob: steps must be >= 1");
    const int n = kBlobCanvas;
    std::mt19937 rng(seed);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n * n, 0);
    std::vector<Box> boxes;

    auto fill = [&](const Box& b) {
        for (int z = b.z0; z < b.z1; ++z)
            for (int y = b.y0; y < b.y1; ++y)
                for (int x = b.x0; x < b.x1; ++x)
                    cells[static_cast<std::size_t>(x) +
                          static_cast<std::size_t>(n) * (y + static_cast<std::size_t>(n) * z)] = 1;
    };
    auto clamp_box = [&](Box b) {
        b.x0 = std::max(b.x0, 0);
        b.y0 = std::max(b.y0, 0);
        b.z0 = std::max(b.z0, 0);
        b.x1 = std::min(b.x1, n);
        b.y1 = std::min(b.y1, n);
        b.z1 = std::min(b.z1, n);
        return b;
    };

    // Seed box around the canvas center.
    {
        int ext[3];
        for (auto& e : ext)
            e = 4 + static_cast<int>(draw_below(rng, 5)); // 4..8
        Box b{n / 2 - ext[0] / 2, n / 2 - ext[1] / 2, n / 2 - ext[2] / 2, 0, 0, 0};
        b.x1 = b.x0 + ext[0];
        b.y1 = b.y0 + ext[1];
        b.z1 = b.z0 + ext[2];
        b = clamp_box(b);
        fill(b);
        boxes.push_back(b);
    }

    for (int step = 1; step < steps; ++step) {
        const Box& host = boxes[draw_below(rng, static_cast<std::uint32_t>(boxes.size()))];
        // Anchor cell inside the host keeps every box overlapping the union.
        const int ax = host.x0 + static_cast<int>(draw_below(rng, static_cast<std::uint32_t>(host.x1 - host.x0)));
        const int ay = host.y0 + static_cast<int>(draw_below(rng, static_cast<std::uint32_t>(host.y1 - host.y0)));
        const int az = host.z0 + static_cast<int>(draw_below(rng, static_cast<std::uint32_t>(host.z1 - host.z0)));
        int ext[3];
        for (auto& e : ext)
            e = 3 + static_cast<int>(draw_below(rng, 6)); // 3..8
        Box b;
        b.x0 = ax - static_cast<int>(draw_below(rng, static_cast<std::uint32_t>(ext[0])));
        b.y0 = ay - static_cast<int>(draw_below(rng, static_cast<std::uint32_t>(ext[1])));
        b.z0 = az - static_cast<int>(draw_below(rng, static_cast<std::uint32_t>(ext[2])));
        b.x1 = b.x0 + ext[0];
        b.y1 = b.y0 + ext[1];
        b.z1 = b.z0 + ext[2];
        b = clamp_box(b);
        if (b.x0 >= b.x1 || b.y0 >= b.y1 || b.z0 >= b.z1)
            continue;
        fill(b);
        boxes.push_back(b);
    }
    return VoxelGrid(n, n, n, std::move(cells));
}

BumpCenter bump_plate_center(int w, int h) {
    return BumpCenter{w / 2, h / 2};
}

VoxelGrid make_bump_plate(int w, int h, int bump_r) {
    require(w >= 1 && h >= 1 && bump_r >= 1, "bump_plate: parameters must be >= 1");
    const int nz = bump_r + 2;
    const auto [cx, cy] = bump_plate_center(w, h);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(w) * h * nz, 0);
    std::size_t i = 0;
    const std::int64_t rr = static_cast<std::int64_t>(bump_r) * bump_r;
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x, ++i) {
                if (z < 2) {
                    cells[i] = 1; // slab
                } else {
                    const std::int64_t dx = x - cx, dy = y - cy, dz = z - 1;
                    cells[i] = (dx * dx + dy * dy + dz * dz <= rr);
                }
            }
    return VoxelGrid(w, h, nz, std::move(cells));
}

VoxelGrid generate_shape(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::vector<std::int64_t> args;
    if (colon != std::string::npos) {
        std::size_t pos = colon + 1;
        while (pos <= spec.size()) {
            const auto comma = spec.find(',', pos);
            const std::string tok =
                spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw InputError("shape spec: bad integer argument '" + tok + "' in '" + spec + "'");
            if (tok.size() > 9)
                throw InputError("shape spec: argument out of range in '" + spec + "'");
            args.push_back(std::stoll(tok));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
    }
    auto arity = [&](std::size_t k) {
        if (args.size() != k)
            throw InputError("shape spec '" + name + "' expects " + std::to_string(k) +
                             " argument(s), got " + std::to_string(args.size()));
    };
    if (name == "cube") {
        arity(1);
        return make_cube(static_cast<int>(args[0]));
    }
    if (name == "box") {
        arity(3);
        return make_box(static_cast<int>(args[0]), static_cast<int>(args[1]),
                        static_cast<int>(args[2]));
    }
    if (name == "sphere") {
        arity(1);
        return make_sphere(static_cast<int>(args[0]));
    }
    if (name == "torus") {
        arity(2);
        return make_torus(static_cast<int>(args[0]), static_cast<int>(args[1]));
    }
    if (name == "blob") {
        arity(2);
        return make_blob(static_cast<std::uint32_t>(args[0]), static_cast<int>(args[1]));
    }
    if (name == "bump_plate") {
        arity(3);
        return make_bump_plate(static_cast<int>(args[0]), static_cast<int>(args[1]),
                               static_cast<int>(args[2]));
    }
    throw InputError("unknown shape '" + name + "'");
}

} // namespace voxcurv
