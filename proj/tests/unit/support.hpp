#pragma once

#include "voxcurv/voxel_grid.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

/// One of the 48 axis-aligned symmetries of the grid: axis permutation plus
/// per-axis reflection.
struct Symmetry {
    std::array<int, 3> perm;  ///< output axis i reads input axis perm[i]
    std::array<bool, 3> flip; ///< reflect input axis perm[i] before reading
};

inline std::vector<Symmetry> all_symmetries() {
    std::vector<Symmetry> out;
    std::array<int, 3> perm = {0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    // All 6 permutations of three axes.
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (b == a)
                continue;
            const int c = 3 - a - b;
            perms.push_back({a, b, c});
        }
    for (const auto& p : perms)
        for (int bits = 0; bits < 8; ++bits)
            out.push_back(Symmetry{p, {(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0}});
    (void)perm;
    return out;
}

/// Applies a symmetry to a grid (relabels cells; occupancy preserved).
inline voxcurv::VoxelGrid transform_grid(const voxcurv::VoxelGrid& g, const Symmetry& s) {
    const int in_dims[3] = {g.nx(), g.ny(), g.nz()};
    int out_dims[3];
    for (int i = 0; i < 3; ++i)
        out_dims[i] = in_dims[s.perm[i]];
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(g.cell_count()));
    std::size_t idx = 0;
    for (int z = 0; z < out_dims[2]; ++z)
        for (int y = 0; y < out_dims[1]; ++y)
            for (int x = 0; x < out_dims[0]; ++x, ++idx) {
                const int out_pos[3] = {x, y, z};
                int in_pos[3];
                for (int i = 0; i < 3; ++i) {
                    int v = out_pos[i];
                    if (s.flip[i])
                        v = out_dims[i] - 1 - v;
                    in_pos[s.perm[i]] = v;
                }
                cells[idx] = g.at(in_pos[0], in_pos[1], in_pos[2]) ? 1 : 0;
            }
    return voxcurv::VoxelGrid(out_dims[0], out_dims[1], out_dims[2], std::move(cells));
}

/// Applies a symmetry to an 8-cell corner pattern (bit dx + 2dy + 4dz).
inline std::uint8_t transform_pattern(std::uint8_t p, const Symmetry& s) {
    std::uint8_t out = 0;
    for (int bit = 0; bit < 8; ++bit) {
        if (!((p >> bit) & 1))
            continue;
        const int in_b[3] = {bit & 1, (bit >> 1) & 1, (bit >> 2) & 1};
        int out_b[3];
        for (int i = 0; i < 3; ++i) {
            int v = in_b[s.perm[i]];
            if (s.flip[i])
                v = 1 - v;
            out_b[i] = v;
        }
        out = static_cast<std::uint8_t>(out | (1 << (out_b[0] + 2 * out_b[1] + 4 * out_b[2])));
    }
    return out;
}

/// Deterministic random grid for round-trip and invariance properties.
inline voxcurv::VoxelGrid random_grid(std::uint32_t seed, int max_dim = 9) {
    std::mt19937 rng(seed);
    const int nx = 1 + static_cast<int>(rng() % static_cast<std::uint32_t>(max_dim));
    const int ny = 1 + static_cast<int>(rng() % static_cast<std::uint32_t>(max_dim));
    const int nz = 1 + static_cast<int>(rng() % static_cast<std::uint32_t>(max_dim));
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(nx) * ny * nz);
    for (auto& c : cells)
        c = (rng() & 1u) != 0;
    return voxcurv::VoxelGrid(nx, ny, nz, std::move(cells));
}

/// Grid from an explicit occupied-cell list.
inline voxcurv::VoxelGrid grid_from_cells(int nx, int ny, int nz,
                                          const std::vector<std::array<int, 3>>& occupied) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(nx) * ny * nz, 0);
    for (const auto& c : occupied)
        cells[static_cast<std::size_t>(c[0]) +
              static_cast<std::size_t>(nx) * (static_cast<std::size_t>(c[1]) +
                                              static_cast<std::size_t>(ny) * c[2])] = 1;
    return voxcurv::VoxelGrid(nx, ny, nz, std::move(cells));
}

/// Flat plate with vertical square shafts cut through it; genus = number of
/// shafts when they are disjoint and interior.
inline voxcurv::VoxelGrid plate_with_shafts(int w, int h, int thickness,
                                            const std::vector<std::array<int, 2>>& shafts) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(w) * h * thickness, 1);
    for (const auto& s : shafts)
        for (int z = 0; z < thickness; ++z)
            cells[static_cast<std::size_t>(s[0]) +
                  static_cast<std::size_t>(w) * (static_cast<std::size_t>(s[1]) +
                                                 static_cast<std::size_t>(h) * z)] = 0;
    return voxcurv::VoxelGrid(w, h, thickness, std::move(cells));
}

} // namespace testsupport
