#include "voxcurv/features.hpp"

#include "voxcurv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace voxcurv {

std::array<double, 4> FeatureVector::ratios() const {
    const double t = static_cast<double>(total_points);
    return {static_cast<double>(counts.m3) / t, static_cast<double>(counts.m4()) / t,
            static_cast<double>(counts.m5) / t, static_cast<double>(counts.m6()) / t};
}

std::array<double, 6> FeatureVector::ratios_split() const {
    const double t = static_cast<double>(total_points);
    return {static_cast<double>(counts.m3) / t,     static_cast<double>(counts.m4_flat) / t,
            static_cast<double>(counts.m4_bent) / t, static_cast<double>(counts.m5) / t,
            static_cast<double>(counts.m6a) / t,     static_cast<double>(counts.m6b) / t};
}

FeatureVector feature_vector(const SurfaceMesh& mesh) {
    if (mesh.vertices.empty())
        throw InputError("empty object");
    return FeatureVector{mesh.counts, static_cast<std::int64_t>(mesh.vertices.size())};
}

Metric Metric::parse(const std::string& name) {
    if (name == "euclid")
        return Metric{Kind::euclid, 2.0};
    if (name == "sq" || name == "sq_euclid")
        return Metric{Kind::sq_euclid, 2.0};
    if (name.rfind("minkowski:", 0) == 0) {
        const std::string arg = name.substr(10);
        char* end = nullptr;
        const double p = std::strtod(arg.c_str(), &end);
        if (arg.empty() || !end || *end != '\0' || !std::isfinite(p))
            throw InputError("bad minkowski order '" + arg + "'");
        if (p < 1.0)
            throw InputError("p must be >= 1");
        return Metric{Kind::minkowski, p};
    }
    throw InputError("unknown metric '" + name + "' (expected euclid, sq or minkowski:<p>)");
}

std::string Metric::name() const {
    switch (kind) {
    case Kind::euclid: return "euclid";
    case Kind::sq_euclid: return "sq_euclid";
    case Kind::minkowski: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "minkowski:%.9g", p);
        return buf;
    }
    }
    return "?";
}

double distance(std::span<const double> a, std::span<const double> b, const Metric& metric) {
    if (a.size() != b.size())
        throw InputError("distance: vector lengths differ");
    switch (metric.kind) {
    case Metric::Kind::euclid:
    case Metric::Kind::sq_euclid: {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            sum += d * d;
        }
        return metric.kind == Metric::Kind::sq_euclid ? sum : std::sqrt(sum);
    }
    case Metric::Kind::minkowski: {
        if (metric.p < 1.0)
            throw InputError("p must be >= 1");
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            sum += std::pow(std::abs(a[i] - b[i]), metric.p);
        return std::pow(sum, 1.0 / metric.p);
    }
    }
    throw InputError("bad metric");
}

double distance(const FeatureVector& a, const FeatureVector& b, const Metric& metric,
                bool six_component) {
    if (six_component) {
        const auto ra = a.ratios_split(), rb = b.ratios_split();
        return distance(std::span<const double>(ra), std::span<const double>(rb), metric);
    }
    const auto ra = a.ratios(), rb = b.ratios();
    return distance(std::span<const double>(ra), std::span<const double>(rb), metric);
}

DistanceMatrix distance_matrix(const std::vector<std::vector<double>>& vectors,
                               const std::vector<std::string>& labels, const Metric& metric) {
    if (vectors.size() != labels.size())
        throw InputError("distance_matrix: label count does not match vector count");
    if (vectors.size() < 2)
        throw InputError("distance_matrix needs at least two vectors");
    const std::size_t n = vectors.size();
    for (const auto& v : vectors)
        if (v.size() != vectors[0].size())
            throw InputError("distance_matrix: vector lengths differ");
    DistanceMatrix m{labels, std::vector<double>(n * n, 0.0), metric};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(std::span<const double>(vectors[i]),
                                      std::span<const double>(vectors[j]), metric);
            m.values[i * n + j] = d;
            m.values[j * n + i] = d;
        }
    return m;
}

std::vector<std::vector<Neighbor>> nearest_neighbors(const DistanceMatrix& matrix, int k) {
    const int n = matrix.size();
    if (k < 1 || k >= n)
        throw InputError("nearest_neighbors: k must be in [1, n-1]");
    std::vector<std::vector<Neighbor>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<Neighbor> row;
        row.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < n; ++j)
            if (j != i)
                row.push_back(Neighbor{j, matrix.at(i, j)});
        std::stable_sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) {
            return a.dist < b.dist; // stable: ties keep label order
        });
        row.resize(static_cast<std::size_t>(k));
        out[static_cast<std::size_t>(i)] = std::move(row);
    }
    return out;
}

std::string matrix_to_csv(const DistanceMatrix& matrix) {
    std::string out = "label";
    for (const auto& l : matrix.labels)
        out += "," + l;
    out += "\n";
    char buf[48];
    const int n = matrix.size();
    for (int i = 0; i < n; ++i) {
        out += matrix.labels[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.9f", matrix.at(i, j));
            out += ",";
            out += buf;
        }
        out += "\n";
    }
    return out;
}

void write_matrix_csv(const DistanceMatrix& matrix, std::ostream& out) {
    const std::string s = matrix_to_csv(matrix);
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

} // namespace voxcurv
