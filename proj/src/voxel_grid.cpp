#include "voxcurv/voxel_grid.hpp"

#include "voxcurv/errors.hpp"

#include <cassert>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace voxcurv {

namespace {

constexpr std::int64_t kMaxCells = std::int64_t(1) << 31;
constexpr char kRawMagic[4] = {'V', 'X', '3', '\0'};

[[noreturn]] void fail_at(std::size_t offset, const std::string& what) {
    throw InputError(what + " at byte " + std::to_string(offset));
}

void check_dims(std::int64_t nx, std::int64_t ny, std::int64_t nz, std::size_t offset) {
    if (nx < 1 || ny < 1 || nz < 1)
        fail_at(offset, "dimensions must be positive");
    if (nx > kMaxCells || ny > kMaxCells || nz > kMaxCells || nx * ny * nz > kMaxCells)
        fail_at(offset, "dimensions too large");
}

// Parses a decimal run; advances pos past it.
std::int64_t parse_uint(const std::string& s, std::size_t& pos, const char* what) {
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9')
        fail_at(pos, std::string("malformed header: expected ") + what);
    std::int64_t v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        v = v * 10 + (s[pos] - '0');
        if (v > kMaxCells)
            fail_at(pos, "dimension out of range");
        ++pos;
    }
    return v;
}

void expect_char(const std::string& s, std::size_t& pos, char c, const char* what) {
    if (pos >= s.size() || s[pos] != c)
        fail_at(pos, std::string("malformed header: expected ") + what);
    ++pos;
}

VoxelGrid load_text(const std::string& s) {
    std::size_t pos = 0;
    if (s.rfind("vox3 ", 0) != 0)
        fail_at(0, "malformed header: expected \"vox3 \"");
    pos = 5;
    const std::int64_t nx = parse_uint(s, pos, "<nx>");
    expect_char(s, pos, ' ', "single space");
    const std::int64_t ny = parse_uint(s, pos, "<ny>");
    expect_char(s, pos, ' ', "single space");
    const std::int64_t nz = parse_uint(s, pos, "<nz>");
    expect_char(s, pos, '\n', "LF after header");
    check_dims(nx, ny, nz, 0);

    std::vector<std::uint8_t> cells(static_cast<std::size_t>(nx * ny * nz));
    std::size_t cell = 0;
    for (std::int64_t z = 0; z < nz; ++z) {
        // Blank separator lines are allowed before each slice block.
        while (pos < s.size() && s[pos] == '\n')
            ++pos;
        for (std::int64_t y = 0; y < ny; ++y) {
            for (std::int64_t x = 0; x < nx; ++x) {
                if (pos >= s.size())
                    fail_at(pos, "unexpected end of stream");
                const char c = s[pos];
                if (c != '0' && c != '1') {
                    if (c == '\n')
                        fail_at(pos, "row shorter than <nx>");
                    fail_at(pos, std::string("illegal character '") + c + "'");
                }
                cells[cell++] = (c == '1');
                ++pos;
            }
            if (pos >= s.size())
                fail_at(pos, "unexpected end of stream: missing LF");
            if (s[pos] != '\n')
                fail_at(pos, "row longer than <nx>");
            ++pos;
        }
    }
    while (pos < s.size() && s[pos] == '\n')
        ++pos;
    if (pos != s.size())
        fail_at(pos, "trailing data");
    return VoxelGrid(static_cast<int>(nx), static_cast<int>(ny), static_cast<int>(nz),
                     std::move(cells));
}

std::uint32_t read_u32le(const std::string& s, std::size_t pos) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 1])) << 8 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 2])) << 16 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 3])) << 24;
}

VoxelGrid load_raw(const std::string& s) {
    if (s.size() < 16)
        fail_at(s.size(), "truncated header");
    if (std::memcmp(s.data(), kRawMagic, 4) != 0)
        fail_at(0, "bad magic");
    const std::int64_t nx = read_u32le(s, 4);
    const std::int64_t ny = read_u32le(s, 8);
    const std::int64_t nz = read_u32le(s, 12);
    check_dims(nx, ny, nz, 4);
    const std::int64_t n = nx * ny * nz;
    const std::size_t payload = static_cast<std::size_t>((n + 7) / 8);
    if (s.size() != 16 + payload)
        throw InputError("payload length mismatch: expected " + std::to_string(payload) +
                         " bytes, got " + std::to_string(s.size() - 16));
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        cells[static_cast<std::size_t>(i)] =
            (static_cast<unsigned char>(s[16 + static_cast<std::size_t>(i >> 3)]) >> (i & 7)) & 1;
    // Pad bits beyond the last cell must be zero.
    for (std::int64_t i = n; i < static_cast<std::int64_t>(payload) * 8; ++i)
        if ((static_cast<unsigned char>(s[16 + static_cast<std::size_t>(i >> 3)]) >> (i & 7)) & 1)
            fail_at(16 + static_cast<std::size_t>(i >> 3), "nonzero padding bit");
    return VoxelGrid(static_cast<int>(nx), static_cast<int>(ny), static_cast<int>(nz),
                     std::move(cells));
}

std::string slurp(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

VoxelGrid::VoxelGrid(int nx, int ny, int nz, std::vector<std::uint8_t> occupancy)
    : nx_(nx), ny_(ny), nz_(nz), cells_(std::move(occupancy)) {
    if (nx < 1 || ny < 1 || nz < 1)
        throw InputError("grid dimensions must be positive");
    if (cells_.size() != static_cast<std::size_t>(cell_count()))
        throw InputError("occupancy size does not match dimensions");
    for (auto& c : cells_)
        c = (c != 0);
}

VoxelGrid VoxelGrid::filled(int nx, int ny, int nz, bool value) {
    return VoxelGrid(nx, ny, nz,
                     std::vector<std::uint8_t>(
                         static_cast<std::size_t>(nx) * ny * nz, value ? 1 : 0));
}

GridStats grid_stats(const VoxelGrid& grid) {
    GridStats stats;
    const std::int64_t n = grid.cell_count();
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::int64_t> stack;
    const int nx = grid.nx(), ny = grid.ny(), nz = grid.nz();
    for (std::int64_t start = 0; start < n; ++start) {
        if (!grid.cells()[static_cast<std::size_t>(start)])
            continue;
        ++stats.occupied_count;
        if (seen[static_cast<std::size_t>(start)])
            continue;
        ++stats.component_count_6adj;
        seen[static_cast<std::size_t>(start)] = 1;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::int64_t cur = stack.back();
            stack.pop_back();
            const int x = static_cast<int>(cur % nx);
            const int y = static_cast<int>((cur / nx) % ny);
            const int z = static_cast<int>(cur / (static_cast<std::int64_t>(nx) * ny));
            const int nb[6][3] = {{x - 1, y, z}, {x + 1, y, z}, {x, y - 1, z},
                                  {x, y + 1, z}, {x, y, z - 1}, {x, y, z + 1}};
            for (const auto& p : nb) {
                if (p[0] < 0 || p[1] < 0 || p[2] < 0 || p[0] >= nx || p[1] >= ny || p[2] >= nz)
                    continue;
                const std::int64_t idx = grid.index(p[0], p[1], p[2]);
                if (grid.cells()[static_cast<std::size_t>(idx)] &&
                    !seen[static_cast<std::size_t>(idx)]) {
                    seen[static_cast<std::size_t>(idx)] = 1;
                    stack.push_back(idx);
                }
            }
        }
    }
    return stats;
}

VoxelGrid load_grid(const std::string& bytes, VoxFormat format) {
    return format == VoxFormat::text ? load_text(bytes) : load_raw(bytes);
}

VoxelGrid load_grid(std::istream& in, VoxFormat format) {
    return load_grid(slurp(in), format);
}

VoxFormat detect_format(const std::string& bytes) {
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kRawMagic, 4) == 0)
        return VoxFormat::raw;
    if (bytes.rfind("vox3 ", 0) == 0)
        return VoxFormat::text;
    throw InputError("unrecognized format: no \"vox3 \" or VX3 magic at byte 0");
}

VoxelGrid load_grid_file(const std::filesystem::path& path, std::optional<VoxFormat> format,
                         VoxFormat* detected) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path.string());
    const std::string bytes = slurp(in);
    const VoxFormat f = format ? *format : detect_format(bytes);
    if (detected)
        *detected = f;
    try {
        return load_grid(bytes, f);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string save_grid(const VoxelGrid& grid, VoxFormat format) {
    std::string out;
    if (format == VoxFormat::text) {
        out = "vox3 " + std::to_string(grid.nx()) + " " + std::to_string(grid.ny()) + " " +
              std::to_string(grid.nz()) + "\n";
        out.reserve(out.size() +
                    static_cast<std::size_t>(grid.cell_count()) + static_cast<std::size_t>(grid.ny()) * grid.nz());
        std::size_t i = 0;
        for (int z = 0; z < grid.nz(); ++z)
            for (int y = 0; y < grid.ny(); ++y) {
                for (int x = 0; x < grid.nx(); ++x)
                    out.push_back(grid.cells()[i++] ? '1' : '0');
                out.push_back('\n');
            }
    } else {
        const std::int64_t n = grid.cell_count();
        out.assign(16 + static_cast<std::size_t>((n + 7) / 8), '\0');
        std::memcpy(out.data(), kRawMagic, 4);
        const std::uint32_t dims[3] = {static_cast<std::uint32_t>(grid.nx()),
                                       static_cast<std::uint32_t>(grid.ny()),
                                       static_cast<std::uint32_t>(grid.nz())};
        for (int d = 0; d < 3; ++d)
            for (int b = 0; b < 4; ++b)
                out[4 + 4 * d + b] = static_cast<char>((dims[d] >> (8 * b)) & 0xff);
        for (std::int64_t i = 0; i < n; ++i)
            if (grid.cells()[static_cast<std::size_t>(i)])
                out[16 + static_cast<std::size_t>(i >> 3)] =
                    static_cast<char>(static_cast<unsigned char>(out[16 + static_cast<std::size_t>(i >> 3)]) |
                                      (1u << (i & 7)));
    }
    return out;
}

void save_grid(const VoxelGrid& grid, std::ostream& out, VoxFormat format) {
    const std::string bytes = save_grid(grid, format);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void save_grid_file(const VoxelGrid& grid, const std::filesystem::path& path, VoxFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot write " + path.string());
    save_grid(grid, out, format);
    out.flush();
    if (!out)
        throw InputError("write failed: " + path.string());
}

} // namespace voxcurv
