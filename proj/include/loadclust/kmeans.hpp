#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "loadclust/metrics.hpp"

namespace loadclust {

/// Assignment of n patterns to k nonempty clusters plus centroids.
struct Partition {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<int> assignment;  // length n, values 0..k-1
    Matrix centroids;             // k vectors
    std::string method_tag;
    std::uint64_t seed = 0;

    std::vector<std::vector<int>> clusters() const {
        std::vector<std::vector<int>> groups(k);
        for (std::size_t i = 0; i < n; ++i) groups[std::size_t(assignment[i])].push_back(int(i));
        return groups;
    }

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> s(k, 0);
        for (int a : assignment) ++s[std::size_t(a)];
        return s;
    }
};

struct KmeansConfig {
    std::size_t k = 1;
    int max_iter = 300;
    int restarts = 10;
    std::uint64_t seed = 0;
};

struct KmeansResult {
    Partition partition;
    double objective = 0.0;  // SSE for km, summed cosine distance for skm
    /// Per-restart, per-iteration objective values (used by the
    /// monotonicity checks).
    std::vector<std::vector<double>> objective_trace;
};

namespace detail {

inline std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + std::size_t(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

inline KmeansResult lloyd(const Matrix& data, const KmeansConfig& cfg, bool spherical,
                          const char* tag) {
    const std::size_t n = data.size();
    const std::size_t k = cfg.k;
    if (k == 0) throw input_error("k must be >= 1");
    if (k > n) throw input_error("k exceeds the number of patterns");
    if (cfg.max_iter < 1) throw config_error("max_iter must be >= 1");
    if (cfg.restarts < 1) throw config_error("restarts must be >= 1");
    const std::size_t dim = data.front().size();
    const Metric metric = spherical ? Metric::cosine() : Metric::euclidean();
    if (spherical)
        for (const Vec& x : data) {
            double nn = 0.0;
            for (double v : x) nn += v * v;
            if (nn == 0.0) throw std::domain_error("spherical k-means: all-zero input vector");
        }

    KmeansResult result;
    double best_obj = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        Rng rng(mix_seed(cfg.seed, std::uint64_t(restart)));
        Matrix centroids;
        centroids.reserve(k);
        for (std::size_t idx : sample_distinct(n, k, rng)) centroids.push_back(data[idx]);
        if (spherical)
            for (Vec& c : centroids) {
                double nn = 0.0;
                for (double v : c) nn += v * v;
                for (double& v : c) v /= std::sqrt(nn);
            }

        std::vector<int> assign(n, -1), prev(n, -2);
        std::vector<double> trace;
        for (int iter = 0; iter < cfg.max_iter; ++iter) {
            // assignment step, ties to the lowest cluster index
            for (std::size_t i = 0; i < n; ++i) {
                int best_c = 0;
                double best_d = dist(metric, data[i], centroids[0]);
                for (std::size_t c = 1; c < k; ++c) {
                    double d = dist(metric, data[i], centroids[c]);
                    if (d < best_d) {
                        best_d = d;
                        best_c = int(c);
                    }
                }
                assign[i] = best_c;
            }

            // empty-cluster repair: move the point farthest from its
            // centroid into each empty cluster
            std::vector<std::size_t> counts(k, 0);
            for (int a : assign) ++counts[std::size_t(a)];
            for (std::size_t c = 0; c < k; ++c) {
                if (counts[c] != 0) continue;
                double worst = -1.0;
                std::size_t worst_i = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (counts[std::size_t(assign[i])] <= 1) continue;
                    double d = dist(metric, data[i], centroids[std::size_t(assign[i])]);
                    if (d > worst) {
                        worst = d;
                        worst_i = i;
                    }
                }
                if (worst < 0.0) throw std::logic_error("k-means: cannot repair empty cluster");
                --counts[std::size_t(assign[worst_i])];
                assign[worst_i] = int(c);
                ++counts[c];
            }

            // centroid update
            for (std::size_t c = 0; c < k; ++c) std::fill(centroids[c].begin(), centroids[c].end(), 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t d = 0; d < dim; ++d) centroids[std::size_t(assign[i])][d] += data[i][d];
            for (std::size_t c = 0; c < k; ++c) {
                for (double& v : centroids[c]) v /= double(counts[c]);
                if (spherical) {
                    double nn = 0.0;
                    for (double v : centroids[c]) nn += v * v;
                    if (nn == 0.0) {
                        // degenerate mean direction: reseed from the worst-fit point
                        double worst = -1.0;
                        std::size_t worst_i = 0;
                        for (std::size_t i = 0; i < n; ++i) {
                            if (std::size_t(assign[i]) == c) continue;
                            double d = dist(metric, data[i], centroids[std::size_t(assign[i])]);
                            if (d > worst) {
                                worst = d;
                                worst_i = i;
                            }
                        }
                        centroids[c] = data[worst_i];
                        nn = 0.0;
                        for (double v : centroids[c]) nn += v * v;
                    }
                    for (double& v : centroids[c]) v /= std::sqrt(nn);
                }
            }

            double obj = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double d = dist(metric, data[i], centroids[std::size_t(assign[i])]);
                obj += spherical ? d : d * d;
            }
            trace.push_back(obj);

            if (assign == prev) break;
            prev = assign;
        }

        double obj = trace.back();
        result.objective_trace.push_back(std::move(trace));
        if (obj < best_obj) {
            best_obj = obj;
            result.objective = obj;
            result.partition.n = n;
            result.partition.k = k;
            result.partition.assignment = assign;
            result.partition.centroids = centroids;
        }
    }

    result.partition.method_tag = tag;
    result.partition.seed = cfg.seed;
    return result;
}

}  // namespace detail

/// Classical k-means (Euclidean). Deterministic for a given
/// (data order, seed); the best of cfg.restarts seeded restarts wins.
inline KmeansResult kmeans(const Matrix& data, const KmeansConfig& cfg) {
    return detail::lloyd(data, cfg, false, "km");
}

/// Spherical k-means: cosine assignment, unit-length mean centroids.
inline KmeansResult spherical_kmeans(const Matrix& data, const KmeansConfig& cfg) {
    return detail::lloyd(data, cfg, true, "skm");
}

}  // namespace loadclust
