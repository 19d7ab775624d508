#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "loadclust/kmeans.hpp"
#include "loadclust/metrics.hpp"

namespace loadclust {

enum class Linkage { Ward, Average, Single };

inline const char* linkage_name(Linkage l) {
    switch (l) {
        case Linkage::Ward: return "ward";
        case Linkage::Average: return "average";
        case Linkage::Single: return "single";
    }
    return "?";
}

struct LinkageSpec {
    Linkage linkage = Linkage::Average;
    Metric metric = Metric::euclidean();
};

/// One agglomeration step. Leaves carry ids 0..n-1, the i-th merge
/// creates id n+i.
struct Merge {
    int left = 0;
    int right = 0;
    double height = 0.0;
    int size = 0;  // members of the new cluster
};

struct Dendrogram {
    std::size_t n = 0;
    std::vector<Merge> merges;  // exactly n-1 entries
};

/// Agglomerative clustering over a full pairwise distance matrix with
/// Lance-Williams updates. Ties on the linkage value break to the
/// lexicographically smallest (min id, max id) pair. Ward requires
/// Euclidean distances; its stored value is the merge criterion
/// (initialized to squared distances) and the reported height is its
/// square root.
inline Dendrogram hcluster(const Matrix& data, const LinkageSpec& spec) {
    const std::size_t n = data.size();
    if (n < 2) throw input_error("hcluster needs at least 2 patterns");
    if (spec.linkage == Linkage::Ward && spec.metric.kind != MetricKind::Euclidean)
        throw config_error("ward linkage requires the Euclidean metric");

    const bool ward = spec.linkage == Linkage::Ward;
    std::vector<double> value(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = dist(spec.metric, data[i], data[j]);
            double v = ward ? d * d : d;
            value[i * n + j] = value[j * n + i] = v;
        }

    std::vector<int> id(n);        // current cluster id per slot
    std::vector<int> size(n, 1);
    std::vector<bool> active(n, true);
    std::iota(id.begin(), id.end(), 0);

    Dendrogram out;
    out.n = n;
    out.merges.reserve(n - 1);

    for (std::size_t step = 0; step < n - 1; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        int best_lo = 0, best_hi = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                double v = value[i * n + j];
                if (v > best) continue;
                int lo = std::min(id[i], id[j]);
                int hi = std::max(id[i], id[j]);
                if (v < best || lo < best_lo || (lo == best_lo && hi < best_hi)) {
                    best = v;
                    bi = i;
                    bj = j;
                    best_lo = lo;
                    best_hi = hi;
                }
            }
        }

        const int si = size[bi], sj = size[bj];
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            double dik = value[bi * n + k];
            double djk = value[bj * n + k];
            double merged;
            switch (spec.linkage) {
                case Linkage::Single:
                    merged = std::min(dik, djk);
                    break;
                case Linkage::Average:
                    merged = (si * dik + sj * djk) / double(si + sj);
                    break;
                case Linkage::Ward: {
                    const int sk = size[k];
                    merged = ((si + sk) * dik + (sj + sk) * djk - sk * value[bi * n + bj]) /
                             double(si + sj + sk);
                    break;
                }
                default:
                    throw std::logic_error("unknown linkage");
            }
            value[bi * n + k] = value[k * n + bi] = merged;
        }

        out.merges.push_back({best_lo, best_hi, ward ? std::sqrt(best) : best, si + sj});
        id[bi] = int(n + step);
        size[bi] = si + sj;
        active[bj] = false;
    }
    return out;
}

/// Undoes the last k-1 merges; the surviving groups become clusters,
/// ordered by their smallest member index. Centroids are member means.
inline Partition cut(const Dendrogram& dendro, const Matrix& data, std::size_t k) {
    const std::size_t n = dendro.n;
    if (k < 1 || k > n) throw input_error("cut: k out of range 1..n");
    if (data.size() != n) throw input_error("cut: data size does not match dendrogram");

    // union-find over the first n-k merges
    std::vector<int> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[std::size_t(x)] != x) {
            parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
            x = parent[std::size_t(x)];
        }
        return x;
    };
    for (std::size_t m = 0; m < n - k; ++m) {
        int node = int(n + m);
        parent[std::size_t(find(dendro.merges[m].left))] = node;
        parent[std::size_t(find(dendro.merges[m].right))] = node;
    }

    std::vector<int> root_to_cluster(2 * n - 1, -1);
    Partition p;
    p.n = n;
    p.k = k;
    p.assignment.resize(n);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int r = find(int(i));
        if (root_to_cluster[std::size_t(r)] < 0) root_to_cluster[std::size_t(r)] = next++;
        p.assignment[i] = root_to_cluster[std::size_t(r)];
    }

    p.centroids.resize(k);
    std::vector<int> counts(int(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
        Vec& c = p.centroids[std::size_t(p.assignment[i])];
        if (c.empty()) c.assign(data[i].size(), 0.0);
        for (std::size_t d = 0; d < data[i].size(); ++d) c[d] += data[i][d];
        ++counts[std::size_t(p.assignment[i])];
    }
    for (std::size_t c = 0; c < k; ++c)
        for (double& v : p.centroids[c]) v /= double(counts[c]);
    return p;
}

}  // namespace loadclust
