#pragma once

#include "voxcurv/surface.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace voxcurv {

/// Type-count ratios of a surface. T counts every surface vertex including
/// non-manifold ones, while the per-type counts cover only manifold-typed
/// vertices, so the ratios may sum below 1.
struct FeatureVector {
    TypeCounts counts;
    std::int64_t total_points = 0;

    /// (r3, r4, r5, r6) with m4 and m6 sub-shapes combined.
    std::array<double, 4> ratios() const;
    /// Six-component variant: (m3, m4_flat, m4_bent, m5, m6a, m6b) / T.
    std::array<double, 6> ratios_split() const;
};

/// Ratios per vertex type. Raises InputError on an empty mesh (T = 0).
FeatureVector feature_vector(const SurfaceMesh& mesh);

struct Metric {
    enum class Kind : std::uint8_t { euclid, sq_euclid, minkowski };
    Kind kind = Kind::euclid;
    double p = 2.0; ///< minkowski order, >= 1

    /// Accepts "euclid", "sq", "sq_euclid", or "minkowski:<p>".
    static Metric parse(const std::string& name);
    std::string name() const;
};

/// Distance between equal-length ratio vectors. minkowski(p) requires
/// p >= 1 (InputError otherwise); sq_euclid is the squared Euclidean form.
double distance(std::span<const double> a, std::span<const double> b, const Metric& metric);

double distance(const FeatureVector& a, const FeatureVector& b, const Metric& metric,
                bool six_component = false);

struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<double> values; ///< n*n row-major, symmetric, zero diagonal
    Metric metric;

    int size() const { return static_cast<int>(labels.size()); }
    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * labels.size() + static_cast<std::size_t>(j)];
    }
};

/// Pairwise distances of >= 2 ratio vectors; labels must match 1:1.
DistanceMatrix distance_matrix(const std::vector<std::vector<double>>& vectors,
                               const std::vector<std::string>& labels, const Metric& metric);

struct Neighbor {
    int index;
    double dist;
};

/// For each label the k nearest other labels, ascending by distance, ties by
/// label order. Requires 1 <= k < n.
std::vector<std::vector<Neighbor>> nearest_neighbors(const DistanceMatrix& matrix, int k);

/// CSV with a label header row, then one row per label with 9-decimal
/// distances.
void write_matrix_csv(const DistanceMatrix& matrix, std::ostream& out);
std::string matrix_to_csv(const DistanceMatrix& matrix);

} // namespace voxcurv
