#pragma once

#include <limits>
#include <string>
#include <vector>

#include "loadclust/kmeans.hpp"
#include "loadclust/metrics.hpp"

namespace loadclust {

/// Internal validity scores of one partition. Indices are always
/// computed with the Euclidean metric on the raw pattern space, no
/// matter which metric produced the partition, so different methods
/// share one axis.
struct ValidityReport {
    std::string method_tag;
    std::size_t requested_k = 0;
    std::size_t effective_k = 0;
    double cdi = 0.0;
    double mdi = 0.0;
    double dbi = 0.0;
    double mia = 0.0;
};

namespace detail {

inline const Metric& validity_metric() {
    static const Metric m = Metric::euclidean();
    return m;
}

inline void check_partition(const Matrix& data, const Partition& p) {
    if (p.n != data.size() || p.assignment.size() != p.n)
        throw std::logic_error("validity: partition does not match data");
    if (p.k < 2) throw std::domain_error("index undefined for a single cluster");
    std::vector<std::size_t> counts(p.k, 0);
    for (int a : p.assignment) {
        if (a < 0 || std::size_t(a) >= p.k) throw std::logic_error("validity: assignment out of range");
        ++counts[std::size_t(a)];
    }
    for (std::size_t c = 0; c < p.k; ++c)
        if (counts[c] == 0) throw std::logic_error("validity: empty cluster");
}

}  // namespace detail

/// Mean index adequacy: root-mean of the centroid-to-member set
/// distances. Pure compactness, lower is better.
inline double mia(const Matrix& data, const Partition& p) {
    detail::check_partition(data, p);
    auto clusters = p.clusters();
    double s = 0.0;
    for (std::size_t c = 0; c < p.k; ++c) {
        Vec r = centroid(data, clusters[c]);
        double d = point_to_set_distance(detail::validity_metric(), r, data, clusters[c]);
        s += d * d;
    }
    return std::sqrt(s / double(p.k));
}

/// Clustering dispersion index: rooted mean squared within-cluster
/// intraset distance over the intraset distance of the centroids.
inline double cdi(const Matrix& data, const Partition& p) {
    detail::check_partition(data, p);
    auto clusters = p.clusters();
    Matrix centroids;
    centroids.reserve(p.k);
    double s = 0.0;
    for (std::size_t c = 0; c < p.k; ++c) {
        double d = intraset_distance(detail::validity_metric(), data, clusters[c]);
        s += d * d;
        centroids.push_back(centroid(data, clusters[c]));
    }
    double denom = intraset_distance(detail::validity_metric(), centroids);
    if (denom == 0.0) throw std::domain_error("cdi: coincident centroids");
    return std::sqrt(s / double(p.k)) / denom;
}

/// Modified Dunn index: maximum cluster intraset distance over the
/// minimum centroid separation (inverted Dunn, lower is better).
inline double mdi(const Matrix& data, const Partition& p) {
    detail::check_partition(data, p);
    auto clusters = p.clusters();
    Matrix centroids;
    centroids.reserve(p.k);
    double max_intra = 0.0;
    for (std::size_t c = 0; c < p.k; ++c) {
        max_intra = std::max(max_intra, intraset_distance(detail::validity_metric(), data, clusters[c]));
        centroids.push_back(centroid(data, clusters[c]));
    }
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.k; ++i)
        for (std::size_t j = i + 1; j < p.k; ++j)
            min_sep = std::min(min_sep, dist(detail::validity_metric(), centroids[i], centroids[j]));
    if (min_sep == 0.0) throw std::domain_error("mdi: coincident centroids");
    return max_intra / min_sep;
}

/// Davies-Bouldin index: mean over clusters of the worst pairwise
/// similarity (scatter sum over centroid distance).
inline double dbi(const Matrix& data, const Partition& p) {
    detail::check_partition(data, p);
    auto clusters = p.clusters();
    Matrix centroids;
    std::vector<double> scatter(p.k, 0.0);
    centroids.reserve(p.k);
    for (std::size_t c = 0; c < p.k; ++c) {
        centroids.push_back(centroid(data, clusters[c]));
        scatter[c] = point_to_set_distance(detail::validity_metric(), centroids[c], data, clusters[c]);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < p.k; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < p.k; ++j) {
            if (i == j) continue;
            double sep = dist(detail::validity_metric(), centroids[i], centroids[j]);
            if (sep == 0.0) throw std::domain_error("dbi: coincident centroids");
            worst = std::max(worst, (scatter[i] + scatter[j]) / sep);
        }
        s += worst;
    }
    return s / double(p.k);
}

inline ValidityReport validity_report(const Matrix& data, const Partition& p,
                                      std::size_t requested_k) {
    ValidityReport r;
    r.method_tag = p.method_tag;
    r.requested_k = requested_k;
    r.effective_k = p.k;
    r.cdi = cdi(data, p);
    r.mdi = mdi(data, p);
    r.dbi = dbi(data, p);
    r.mia = mia(data, p);
    return r;
}

/// Adjusted Rand index between a partition and reference class labels.
/// Test harness plumbing, not part of the reported indices.
inline double ground_truth_agreement(const Partition& p, const std::vector<int>& labels) {
    if (labels.size() != p.n) throw input_error("labels length does not match partition");
    int max_label = -1;
    for (int l : labels) {
        if (l < 0) throw input_error("labels must be nonnegative");
        max_label = std::max(max_label, l);
    }
    const std::size_t rows = p.k, cols = std::size_t(max_label) + 1;
    std::vector<double> table(rows * cols, 0.0), a(rows, 0.0), b(cols, 0.0);
    for (std::size_t i = 0; i < p.n; ++i) {
        std::size_t r = std::size_t(p.assignment[i]), c = std::size_t(labels[i]);
        table[r * cols + c] += 1.0;
        a[r] += 1.0;
        b[c] += 1.0;
    }
    auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
    double sum_nij = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (double v : table) sum_nij += choose2(v);
    for (double v : a) sum_a += choose2(v);
    for (double v : b) sum_b += choose2(v);
    double total = choose2(double(p.n));
    double expected = sum_a * sum_b / total;
    double maximum = 0.5 * (sum_a + sum_b);
    if (maximum == expected) return 0.0;  // degenerate (e.g. single cluster vs single class)
    return (sum_nij - expected) / (maximum - expected);
}

}  // namespace loadclust
