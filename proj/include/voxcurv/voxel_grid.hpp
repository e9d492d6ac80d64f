#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace voxcurv {

/// Dense binary occupancy volume. Cells are indexed (x, y, z) with x the
/// fastest-varying coordinate in the serialized order. Immutable after
/// construction; concurrent reads are safe.
class VoxelGrid {
public:
    /// occupancy.size() must equal nx*ny*nz, entries 0 or 1, dims >= 1.
    VoxelGrid(int nx, int ny, int nz, std::vector<std::uint8_t> occupancy);

    static VoxelGrid filled(int nx, int ny, int nz, bool value);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    std::int64_t cell_count() const { return static_cast<std::int64_t>(nx_) * ny_ * nz_; }

    std::int64_t index(int x, int y, int z) const {
        return x + static_cast<std::int64_t>(nx_) * (y + static_cast<std::int64_t>(ny_) * z);
    }

    /// In-bounds read.
    bool at(int x, int y, int z) const { return cells_[index(x, y, z)] != 0; }

    /// Read with infinite empty background: out-of-bounds cells are false.
    bool occupied(int x, int y, int z) const {
        if (x < 0 || y < 0 || z < 0 || x >= nx_ || y >= ny_ || z >= nz_)
            return false;
        return cells_[index(x, y, z)] != 0;
    }

    const std::vector<std::uint8_t>& cells() const { return cells_; }

    bool operator==(const VoxelGrid&) const = default;

private:
    int nx_, ny_, nz_;
    std::vector<std::uint8_t> cells_;
};

struct GridStats {
    std::int64_t occupied_count = 0;
    int component_count_6adj = 0;
};

/// Occupied-cell count and number of 6-connected occupied components.
GridStats grid_stats(const VoxelGrid& grid);

enum class VoxFormat { text, raw };

/// Parses one of the two on-disk formats. Malformed input raises InputError
/// with the byte offset of the defect.
///
/// Text format: line "vox3 <nx> <ny> <nz>" (single spaces, LF), then nz slice
/// blocks in z order, each ny lines of nx '0'/'1' characters, LF-terminated.
/// Blank lines are accepted (and ignored) between slice blocks only.
///
/// Raw format: 16-byte header 'V' 'X' '3' NUL, then nx, ny, nz as u32 little
/// endian; payload of ceil(nx*ny*nz/8) bytes, bit i (LSB-first per byte) is
/// cell i in x-fastest order; trailing pad bits must be zero.
VoxelGrid load_grid(const std::string& bytes, VoxFormat format);
VoxelGrid load_grid(std::istream& in, VoxFormat format);

/// Sniffs the format from the leading magic ("vox3 " or 'V''X''3'NUL).
VoxFormat detect_format(const std::string& bytes);

/// Loads from a file, auto-detecting the format unless one is forced.
VoxelGrid load_grid_file(const std::filesystem::path& path,
                         std::optional<VoxFormat> format = std::nullopt,
                         VoxFormat* detected = nullptr);

/// Serializes bit-exactly; load_grid(save_grid(g, f), f) == g for both formats.
std::string save_grid(const VoxelGrid& grid, VoxFormat format);
void save_grid(const VoxelGrid& grid, std::ostream& out, VoxFormat format);
void save_grid_file(const VoxelGrid& grid, const std::filesystem::path& path, VoxFormat format);

} // namespace voxcurv
