#include "voxcurv/report.hpp"

#include "voxcurv/curvature.hpp"
#include "voxcurv/errors.hpp"
#include "voxcurv/surface.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace voxcurv {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json counts_json(const TypeCounts& c) {
    ordered_json j;
    j["m3"] = c.m3;
    j["m4_flat"] = c.m4_flat;
    j["m4_bent"] = c.m4_bent;
    j["m5"] = c.m5;
    j["m6a"] = c.m6a;
    j["m6b"] = c.m6b;
    return j;
}

const char* axis_name(int axis) {
    return axis == 0 ? "x" : axis == 1 ? "y" : "z";
}

// Argmax by |value|; first cell in storage order wins ties.
ordered_json argmax_json(const ScaleMap& map) {
    std::int64_t best = 0;
    for (std::int64_t i = 1; i < map.cell_count(); ++i)
        if (std::abs(map.cells[static_cast<std::size_t>(i)]) >
            std::abs(map.cells[static_cast<std::size_t>(best)]))
            best = i;
    ordered_json j;
    j["u"] = static_cast<int>(best % map.width);
    j["v"] = static_cast<int>((best / map.width) % map.height);
    if (map.plane == MapPlane::volume)
        j["w"] = static_cast<int>(best / (static_cast<std::int64_t>(map.width) * map.height));
    j["value"] = map.output_value(best);
    return j;
}

} // namespace

std::string analysis_report(const VoxelGrid& grid, const std::string& source,
                            const std::string& format_name, int threads) {
    const GridStats stats = grid_stats(grid);
    if (stats.occupied_count == 0)
        throw InputError("empty object");
    const SurfaceMesh mesh = extract_surface(grid, threads);
    const CurvatureField field = assign_curvatures(mesh);
    const FeatureVector fv = feature_vector(mesh);

    ordered_json j;
    j["input"] = {{"source", source},
                  {"format", format_name},
                  {"dims", {grid.nx(), grid.ny(), grid.nz()}},
                  {"occupied", stats.occupied_count},
                  {"components_6adj", stats.component_count_6adj}};

    const bool manifold = mesh.manifold();
    int surface_components = 0;
    if (manifold)
        surface_components = surface_component_count(mesh);

    ordered_json surface;
    surface["faces"] = mesh.faces.size();
    surface["vertices"] = mesh.vertices.size();
    surface["counts"] = counts_json(mesh.counts);
    surface["nonmanifold_vertices"] = mesh.counts.nonmanifold;
    surface["edge_defects"] = mesh.edge_defects.size();
    if (manifold)
        surface["components"] = surface_components;
    j["surface"] = surface;
    j["nonmanifold"] = !manifold;

    // m3 == 8 + m5 + 2*m6 is exact precisely for a single closed genus-0
    // surface; on other inputs the raw comparison is still reported.
    const bool single_closed = manifold && surface_components == 1;
    int g = 0;
    if (single_closed)
        g = genus(mesh);
    ordered_json identity;
    identity["m3"] = mesh.counts.m3;
    identity["genus0_expected_m3"] = 8 + mesh.counts.m5 + 2 * mesh.counts.m6();
    identity["holds"] = mesh.counts.m3 == 8 + mesh.counts.m5 + 2 * mesh.counts.m6();
    identity["applicable"] = single_closed && g == 0;
    identity["note"] = "exact iff the surface is a single closed manifold of genus 0";
    j["count_identity"] = identity;

    if (single_closed)
        j["genus"] = g;

    const GaussQ total = total_gaussian(field);
    j["total_gaussian"] = {{"pi_half_units", total.units}, {"radians", total.radians()}};

    ordered_json features;
    features["total_points"] = fv.total_points;
    features["counts"] = {{"m3", fv.counts.m3},
                          {"m4", fv.counts.m4()},
                          {"m5", fv.counts.m5},
                          {"m6", fv.counts.m6()}};
    features["ratios"] = fv.ratios();
    features["ratios_split"] = fv.ratios_split();
    features["nonmanifold"] = fv.counts.nonmanifold;
    j["features"] = features;

    return j.dump(2) + "\n";
}

CurvmapResult curvmap_file(const VoxelGrid& grid, MapKind kind, int axis, int level,
                           MapFileFormat format, int threads) {
    if (level < 0)
        throw InputError("level must be >= 0");
    const SurfaceMesh mesh = extract_surface(grid, threads);
    const CurvatureField field = assign_curvatures(mesh);
    const ScaleMap base = kind == MapKind::gauss_sum ? gauss_projection_map(field, axis)
                                                     : meanabs_projection_map(field, axis);
    const Pyramid pyr = build_pyramid(base, level + 1);
    CurvmapResult result;
    result.clamped = static_cast<int>(pyr.levels.size()) < level + 1;
    result.level = static_cast<int>(pyr.levels.size()) - 1;
    const ScaleMap& map = pyr.levels.back();
    result.bytes = format == MapFileFormat::csv ? map_to_csv(map) : map_to_pgm(map);
    return result;
}

PyramidFiles pyramid_files(const VoxelGrid& grid, MapKind kind, int axis, int levels,
                           MapFileFormat format, int threads) {
    if (levels < 1)
        throw InputError("levels must be >= 1");
    const SurfaceMesh mesh = extract_surface(grid, threads);
    const CurvatureField field = assign_curvatures(mesh);
    const ScaleMap base = kind == MapKind::gauss_sum ? gauss_projection_map(field, axis)
                                                     : meanabs_projection_map(field, axis);
    const Pyramid pyr = build_pyramid(base, levels);

    PyramidFiles out;
    ordered_json summary;
    summary["kind"] = to_string(kind);
    summary["axis"] = axis_name(axis);
    summary["levels_requested"] = levels;
    summary["levels_built"] = pyr.levels.size();
    summary["clamped"] = pyr.clamped;
    ordered_json per_level = ordered_json::array();
    const char* ext = format == MapFileFormat::csv ? "csv" : "pgm";
    for (std::size_t k = 0; k < pyr.levels.size(); ++k) {
        const ScaleMap& map = pyr.levels[k];
        out.file_names.push_back("level_" + std::to_string(k) + "." + ext);
        out.files.push_back(format == MapFileFormat::csv ? map_to_csv(map) : map_to_pgm(map));
        ordered_json lvl;
        lvl["level"] = k;
        lvl["width"] = map.width;
        lvl["height"] = map.height;
        if (kind == MapKind::gauss_sum) {
            lvl["total_pi_half_units"] = static_cast<std::int64_t>(map.total());
            lvl["total_radians"] = GaussQ{static_cast<std::int64_t>(map.total())}.radians();
        } else {
            lvl["total"] = map.total();
        }
        lvl["argmax"] = argmax_json(map);
        per_level.push_back(lvl);
    }
    summary["per_level"] = per_level;
    out.summary_json = summary.dump(2) + "\n";
    return out;
}

FeatureVector grid_features(const VoxelGrid& grid, int threads) {
    const SurfaceMesh mesh = extract_surface(grid, threads);
    return feature_vector(mesh);
}

MatrixOutputs matrix_outputs(const std::vector<std::vector<double>>& vectors,
                             const std::vector<std::string>& labels, const Metric& metric,
                             int knn) {
    const DistanceMatrix m = distance_matrix(vectors, labels, metric);
    MatrixOutputs out;
    out.csv = matrix_to_csv(m);

    const auto nn = nearest_neighbors(m, std::clamp(knn, 1, m.size() - 1));
    ordered_json summary;
    summary["metric"] = metric.name();
    summary["k"] = std::clamp(knn, 1, m.size() - 1);
    ordered_json per_label = ordered_json::array();
    for (int i = 0; i < m.size(); ++i) {
        ordered_json entry;
        entry["label"] = m.labels[static_cast<std::size_t>(i)];
        ordered_json list = ordered_json::array();
        for (const Neighbor& nb : nn[static_cast<std::size_t>(i)]) {
            ordered_json item;
            item["label"] = m.labels[static_cast<std::size_t>(nb.index)];
            item["distance"] = nb.dist;
            list.push_back(item);
        }
        entry["nearest"] = list;
        per_label.push_back(entry);
    }
    summary["neighbors"] = per_label;
    out.summary_json = summary.dump(2) + "\n";
    return out;
}

} // namespace voxcurv
