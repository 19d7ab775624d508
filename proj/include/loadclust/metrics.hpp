#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "loadclust/common.hpp"

namespace loadclust {

enum class MetricKind { Euclidean, Cosine, Minkowski };

struct Metric {
    MetricKind kind = MetricKind::Euclidean;
    double p = 2.0;  // Minkowski order

    static Metric euclidean() { return {MetricKind::Euclidean, 2.0}; }
    static Metric cosine() { return {MetricKind::Cosine, 2.0}; }
    static Metric minkowski(double order) {
        if (!std::isfinite(order) || order < 1.0)
            throw config_error("Minkowski order must be finite and >= 1");
        return {MetricKind::Minkowski, order};
    }
};

/// Distance between two equal-length vectors. Euclidean and Minkowski
/// carry a 1/H dimensional normalization so distances are comparable
/// across feature counts; cosine is 1 - cos(x, y), clamped to [0, 2].
inline double dist(const Metric& m, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw input_error("dist: length mismatch");
    const std::size_t h = x.size();
    if (h == 0) throw input_error("dist: empty vectors");
    switch (m.kind) {
        case MetricKind::Euclidean: {
            double s = 0.0;
            for (std::size_t i = 0; i < h; ++i) {
                double d = x[i] - y[i];
                s += d * d;
            }
            return std::sqrt(s / double(h));
        }
        case MetricKind::Minkowski: {
            double s = 0.0;
            for (std::size_t i = 0; i < h; ++i) s += std::pow(std::abs(x[i] - y[i]), m.p);
            return std::pow(s / double(h), 1.0 / m.p);
        }
        case MetricKind::Cosine: {
            double dot = 0.0, nx = 0.0, ny = 0.0;
            for (std::size_t i = 0; i < h; ++i) {
                dot += x[i] * y[i];
                nx += x[i] * x[i];
                ny += y[i] * y[i];
            }
            if (nx == 0.0 || ny == 0.0)
                throw std::domain_error("cosine distance undefined for a zero vector");
            double c = 1.0 - dot / (std::sqrt(nx) * std::sqrt(ny));
            return std::clamp(c, 0.0, 2.0);
        }
    }
    throw std::logic_error("unknown metric kind");
}

/// Arithmetic mean per coordinate.
inline Vec centroid(const Matrix& set) {
    if (set.empty()) throw std::domain_error("centroid of an empty set");
    Vec mean(set.front().size(), 0.0);
    for (const Vec& v : set) {
        if (v.size() != mean.size()) throw input_error("centroid: ragged input");
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
    }
    for (double& m : mean) m /= double(set.size());
    return mean;
}

/// Mean of selected rows of a data matrix.
inline Vec centroid(const Matrix& data, std::span<const int> members) {
    if (members.empty()) throw std::domain_error("centroid of an empty set");
    Vec mean(data.at(std::size_t(members[0])).size(), 0.0);
    for (int idx : members)
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += data[std::size_t(idx)][i];
    for (double& m : mean) m /= double(members.size());
    return mean;
}

/// Root-mean of squared distances from x to the members of L.
inline double point_to_set_distance(const Metric& m, std::span<const double> x, const Matrix& set) {
    if (set.empty()) throw std::domain_error("point-to-set distance with an empty set");
    double s = 0.0;
    for (const Vec& y : set) {
        double d = dist(m, x, y);
        s += d * d;
    }
    return std::sqrt(s / double(set.size()));
}

inline double point_to_set_distance(const Metric& m, std::span<const double> x, const Matrix& data,
                                    std::span<const int> members) {
    if (members.empty()) throw std::domain_error("point-to-set distance with an empty set");
    double s = 0.0;
    for (int idx : members) {
        double d = dist(m, x, data[std::size_t(idx)]);
        s += d * d;
    }
    return std::sqrt(s / double(members.size()));
}

/// Set compactness: sqrt( (1 / 2|L|^2) * sum over all ordered pairs of
/// squared distance ). Zero for singletons.
inline double intraset_distance(const Metric& m, const Matrix& set) {
    const std::size_t n = set.size();
    if (n == 0) throw std::domain_error("intraset distance of an empty set");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = dist(m, set[i], set[j]);
            s += 2.0 * d * d;
        }
    return std::sqrt(s / (2.0 * double(n) * double(n)));
}

inline double intraset_distance(const Metric& m, const Matrix& data, std::span<const int> members) {
    const std::size_t n = members.size();
    if (n == 0) throw std::domain_error("intraset distance of an empty set");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = dist(m, data[std::size_t(members[i])], data[std::size_t(members[j])]);
            s += 2.0 * d * d;
        }
    return std::sqrt(s / (2.0 * double(n) * double(n)));
}

}  // namespace loadclust
