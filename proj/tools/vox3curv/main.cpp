#include "voxcurv/errors.hpp"
#include "voxcurv/report.hpp"
#include "voxcurv/shapes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using voxcurv::InputError;
using voxcurv::InternalError;
using voxcurv::MapFileFormat;
using voxcurv::MapKind;
using voxcurv::Metric;
using voxcurv::VoxelGrid;
using voxcurv::VoxFormat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::optional<VoxFormat> parse_format_flag(const std::string& f) {
    if (f == "auto")
        return std::nullopt;
    if (f == "text")
        return VoxFormat::text;
    if (f == "raw")
        return VoxFormat::raw;
    throw InputError("unknown format '" + f + "' (expected auto, text or raw)");
}

VoxFormat parse_save_format(const std::string& f) {
    if (f == "text")
        return VoxFormat::text;
    if (f == "raw")
        return VoxFormat::raw;
    throw InputError("unknown format '" + f + "' (expected text or raw)");
}

int parse_axis(const std::string& a) {
    if (a == "x")
        return 0;
    if (a == "y")
        return 1;
    if (a == "z")
        return 2;
    throw InputError("axis must be x, y or z");
}

MapKind parse_kind(const std::string& k) {
    if (k == "gauss")
        return MapKind::gauss_sum;
    if (k == "meanabs")
        return MapKind::mean_abs_sum;
    throw InputError("kind must be gauss or meanabs");
}

MapFileFormat parse_map_format(const std::string& f) {
    if (f == "csv")
        return MapFileFormat::csv;
    if (f == "pgm")
        return MapFileFormat::pgm;
    throw InputError("map format must be csv or pgm");
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out)
        throw InputError("write failed: " + path.string());
}

VoxelGrid load_input(const std::string& path, const std::string& format_flag,
                     std::string* format_name = nullptr) {
    VoxFormat detected{};
    VoxelGrid grid = voxcurv::load_grid_file(path, parse_format_flag(format_flag), &detected);
    if (format_name)
        *format_name = detected == VoxFormat::text ? "text" : "raw";
    return grid;
}

// Inputs for `matrix`: a directory (all regular files, sorted) or a list
// file with one path per line.
std::vector<fs::path> collect_inputs(const std::string& input) {
    std::vector<fs::path> paths;
    const fs::path p(input);
    if (fs::is_directory(p)) {
        for (const auto& entry : fs::directory_iterator(p))
            if (entry.is_regular_file())
                paths.push_back(entry.path());
    } else if (fs::is_regular_file(p)) {
        std::ifstream in(p);
        if (!in)
            throw InputError("cannot open " + input);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (!line.empty())
                paths.emplace_back(line);
        }
    } else {
        throw InputError("no such file or directory: " + input);
    }
    std::sort(paths.begin(), paths.end(), [](const fs::path& a, const fs::path& b) {
        return a.stem() != b.stem() ? a.stem() < b.stem() : a < b;
    });
    return paths;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"digital curvature analysis of binary voxel volumes"};
    app.require_subcommand(1);

    std::string input, input_b, out_path, format_flag = "auto", map_format = "csv";
    std::string kind_flag = "gauss", axis_flag = "z", metric_flag = "euclid";
    std::string shape_spec, save_format = "text", vectors_json;
    int level = 0, levels = 1, threads = 0, knn = 1;
    bool six_component = false;

    auto* analyze = app.add_subcommand("analyze", "surface, curvature and topology report");
    analyze->add_option("input", input)->required();
    analyze->add_option("--format", format_flag, "auto|text|raw");
    analyze->add_option("--threads", threads);

    auto* curvmap = app.add_subcommand("curvmap", "projected curvature map at one scale");
    curvmap->add_option("input", input)->required();
    curvmap->add_option("--kind", kind_flag, "gauss|meanabs");
    curvmap->add_option("--axis", axis_flag, "x|y|z");
    curvmap->add_option("--level", level);
    curvmap->add_option("--out", out_path)->required();
    curvmap->add_option("--format", map_format, "csv|pgm");
    curvmap->add_option("--input-format", format_flag, "auto|text|raw");
    curvmap->add_option("--threads", threads);

    auto* pyramid = app.add_subcommand("pyramid", "all dyadic scales of a curvature map");
    pyramid->add_option("input", input)->required();
    pyramid->add_option("--kind", kind_flag, "gauss|meanabs");
    pyramid->add_option("--axis", axis_flag, "x|y|z");
    pyramid->add_option("--levels", levels)->required();
    pyramid->add_option("--out", out_path, "output directory")->required();
    pyramid->add_option("--format", map_format, "csv|pgm");
    pyramid->add_option("--input-format", format_flag, "auto|text|raw");
    pyramid->add_option("--threads", threads);

    auto* compare = app.add_subcommand("compare", "feature-vector distance of two objects");
    compare->add_option("a", input)->required();
    compare->add_option("b", input_b)->required();
    compare->add_option("--metric", metric_flag, "euclid|sq|minkowski:<p>");
    compare->add_flag("--six", six_component, "six-component feature vectors");
    compare->add_option("--format", format_flag, "auto|text|raw");
    compare->add_option("--threads", threads);

    auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix of many objects");
    matrix->add_option("input", input, "directory or list file");
    matrix->add_option("--metric", metric_flag, "euclid|sq|minkowski:<p>");
    matrix->add_option("--out", out_path, "matrix CSV path")->required();
    matrix->add_option("--knn", knn, "neighbors per label in the summary");
    matrix->add_option("--vectors-json", vectors_json,
                       "JSON {\"vectors\": {label: [r3,r4,r5,r6], ...}} instead of voxel inputs");
    matrix->add_flag("--six", six_component, "six-component feature vectors");
    matrix->add_option("--format", format_flag, "auto|text|raw");
    matrix->add_option("--threads", threads);

    auto* gen = app.add_subcommand("gen", "deterministic fixture generator");
    gen->add_option("shape", shape_spec,
                    "cube:a | box:a,b,c | sphere:r | torus:R,r | blob:seed,steps | "
                    "bump_plate:w,h,r")
        ->required();
    gen->add_option("--out", out_path)->required();
    gen->add_option("--format", save_format, "text|raw");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (analyze->parsed()) {
            std::string format_name;
            const VoxelGrid grid = load_input(input, format_flag, &format_name);
            std::cout << voxcurv::analysis_report(grid, input, format_name, threads);
        } else if (curvmap->parsed()) {
            const VoxelGrid grid = load_input(input, format_flag);
            const auto result =
                voxcurv::curvmap_file(grid, parse_kind(kind_flag), parse_axis(axis_flag), level,
                                      parse_map_format(map_format), threads);
            if (result.clamped)
                std::cerr << "warning: level " << level << " clamped to " << result.level
                          << " (map top reached)\n";
            write_file(out_path, result.bytes);
        } else if (pyramid->parsed()) {
            const VoxelGrid grid = load_input(input, format_flag);
            const auto result =
                voxcurv::pyramid_files(grid, parse_kind(kind_flag), parse_axis(axis_flag), levels,
                                       parse_map_format(map_format), threads);
            fs::create_directories(out_path);
            for (std::size_t i = 0; i < result.files.size(); ++i)
                write_file(fs::path(out_path) / result.file_names[i], result.files[i]);
            write_file(fs::path(out_path) / "summary.json", result.summary_json);
            std::cout << result.summary_json;
        } else if (compare->parsed()) {
            const Metric metric = Metric::parse(metric_flag);
            const VoxelGrid ga = load_input(input, format_flag);
            const VoxelGrid gb = load_input(input_b, format_flag);
            const double d = voxcurv::distance(voxcurv::grid_features(ga, threads),
                                               voxcurv::grid_features(gb, threads), metric,
                                               six_component);
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.9f\n", d);
            std::cout << buf;
        } else if (matrix->parsed()) {
            const Metric metric = Metric::parse(metric_flag);
            std::vector<std::string> labels;
            std::vector<std::vector<double>> vectors;
            if (!vectors_json.empty()) {
                std::ifstream in(vectors_json);
                if (!in)
                    throw InputError("cannot open " + vectors_json);
                nlohmann::json doc;
                try {
                    in >> doc;
                } catch (const nlohmann::json::exception& e) {
                    throw InputError(vectors_json + ": " + e.what());
                }
                if (!doc.contains("vectors") || !doc["vectors"].is_object())
                    throw InputError(vectors_json + ": expected an object under \"vectors\"");
                std::map<std::string, std::vector<double>> sorted;
                for (const auto& [label, value] : doc["vectors"].items())
                    sorted[label] = value.get<std::vector<double>>();
                for (auto& [label, vec] : sorted) {
                    labels.push_back(label);
                    vectors.push_back(std::move(vec));
                }
            } else {
                if (input.empty())
                    throw InputError("matrix needs an input directory/list or --vectors-json");
                for (const fs::path& p : collect_inputs(input)) {
                    const VoxelGrid grid =
                        voxcurv::load_grid_file(p, parse_format_flag(format_flag));
                    const auto fv = voxcurv::grid_features(grid, threads);
                    labels.push_back(p.stem().string());
                    if (six_component) {
                        const auto r = fv.ratios_split();
                        vectors.emplace_back(r.begin(), r.end());
                    } else {
                        const auto r = fv.ratios();
                        vectors.emplace_back(r.begin(), r.end());
                    }
                }
            }
            const auto result = voxcurv::matrix_outputs(vectors, labels, metric, knn);
            write_file(out_path, result.csv);
            std::cout << result.summary_json;
        } else if (gen->parsed()) {
            const VoxelGrid grid = voxcurv::generate_shape(shape_spec);
            voxcurv::save_grid_file(grid, out_path, parse_save_format(save_format));
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
