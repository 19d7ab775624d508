#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "loadclust/kmeans.hpp"
#include "loadclust/metrics.hpp"

namespace loadclust {

/// Hexagonal bi-dimensional lattice. Odd rows are offset half a column
/// and the row pitch is sqrt(3)/2, so all six neighbors of an interior
/// unit sit at lattice distance 1.
struct SomGrid {
    int rows = 10;
    int cols = 10;

    int units() const { return rows * cols; }

    void validate() const {
        if (rows < 1 || cols < 1 || rows * cols < 2)
            throw config_error("SOM grid needs at least 2 units");
    }

    std::pair<double, double> position(int unit) const {
        int r = unit / cols, c = unit % cols;
        return {double(c) + 0.5 * double(r & 1), double(r) * 0.8660254037844386467637231707529};
    }

    double lattice_distance(int a, int b) const {
        auto [ax, ay] = position(a);
        auto [bx, by] = position(b);
        return std::hypot(ax - bx, ay - by);
    }
};

/// Two-phase online training schedule: a rough ordering phase followed
/// by fine tuning, with linearly interpolated learning rate and
/// Gaussian neighborhood radius.
struct TrainSchedule {
    int rough_epochs = 20;
    int finetune_epochs = 40;
    double rough_lr_start = 0.5, rough_lr_end = 0.05;
    double finetune_lr_start = 0.05, finetune_lr_end = 0.01;
    double rough_radius_end = 1.0;
    double finetune_radius_start = 1.0, finetune_radius_end = 0.5;

    void validate() const {
        if (rough_epochs < 1 || finetune_epochs < 1) throw config_error("epochs must be >= 1");
    }
};

struct TrainingMeta {
    std::uint64_t seed = 0;
    int epochs = 0;
    std::vector<double> qe_per_epoch;  // quantization error at each epoch end
};

struct SomModel {
    SomGrid grid;
    Matrix weights;  // rows*cols vectors
    TrainingMeta meta;
};

/// Best matching unit: minimal Euclidean distance, ties to the lowest
/// unit index.
inline int bmu(const SomModel& model, std::span<const double> x) {
    const Metric metric = Metric::euclidean();
    int best = 0;
    double best_d = dist(metric, x, model.weights[0]);
    for (std::size_t u = 1; u < model.weights.size(); ++u) {
        double d = dist(metric, x, model.weights[u]);
        if (d < best_d) {
            best_d = d;
            best = int(u);
        }
    }
    return best;
}

/// Mean distance from each pattern to its BMU weight.
inline double quantization_error(const SomModel& model, const Matrix& data) {
    if (data.empty()) throw std::domain_error("quantization error of empty data");
    const Metric metric = Metric::euclidean();
    double s = 0.0;
    for (const Vec& x : data) s += dist(metric, x, model.weights[std::size_t(bmu(model, x))]);
    return s / double(data.size());
}

/// Fraction of patterns whose first and second BMUs are not lattice
/// neighbors.
inline double topographic_error(const SomModel& model, const Matrix& data) {
    if (data.empty()) throw std::domain_error("topographic error of empty data");
    if (model.weights.size() < 2)
        throw std::domain_error("topographic error needs at least 2 units");
    const Metric metric = Metric::euclidean();
    std::size_t bad = 0;
    for (const Vec& x : data) {
        int first = -1, second = -1;
        double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
        for (std::size_t u = 0; u < model.weights.size(); ++u) {
            double d = dist(metric, x, model.weights[u]);
            if (d < d1) {
                d2 = d1;
                second = first;
                d1 = d;
                first = int(u);
            } else if (d < d2) {
                d2 = d;
                second = int(u);
            }
        }
        if (model.grid.lattice_distance(first, second) > 1.0001) ++bad;
    }
    return double(bad) / double(data.size());
}

/// Sequential Kohonen training. Weights start as a seeded sample (with
/// replacement) of the data; each epoch presents the data in a seeded
/// shuffled order. Deterministic for a given (data, grid, schedule, seed).
inline SomModel train_som(const Matrix& data, const SomGrid& grid, const TrainSchedule& schedule,
                          std::uint64_t seed) {
    if (data.empty()) throw input_error("train_som: empty data");
    grid.validate();
    schedule.validate();
    const std::size_t n = data.size();
    const std::size_t dim = data.front().size();
    for (const Vec& x : data)
        if (x.size() != dim) throw input_error("train_som: inconsistent dimensions");

    Rng rng(mix_seed(seed, 0x50d));
    SomModel model;
    model.grid = grid;
    model.meta.seed = seed;
    model.meta.epochs = schedule.rough_epochs + schedule.finetune_epochs;
    model.weights.reserve(std::size_t(grid.units()));
    for (int u = 0; u < grid.units(); ++u) model.weights.push_back(data[rng.below(n)]);

    const double radius_start = std::max(grid.rows, grid.cols) / 2.0;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    auto phase_value = [](double a, double b, int e, int len) {
        return len > 1 ? a + (b - a) * double(e) / double(len - 1) : a;
    };

    for (int epoch = 0; epoch < model.meta.epochs; ++epoch) {
        double lr, radius;
        if (epoch < schedule.rough_epochs) {
            lr = phase_value(schedule.rough_lr_start, schedule.rough_lr_end, epoch,
                             schedule.rough_epochs);
            radius = phase_value(radius_start, schedule.rough_radius_end, epoch,
                                 schedule.rough_epochs);
        } else {
            int e = epoch - schedule.rough_epochs;
            lr = phase_value(schedule.finetune_lr_start, schedule.finetune_lr_end, e,
                             schedule.finetune_epochs);
            radius = phase_value(schedule.finetune_radius_start, schedule.finetune_radius_end, e,
                                 schedule.finetune_epochs);
        }
        // seeded shuffle for this epoch
        for (std::size_t i = n; i > 1; --i) {
            std::size_t j = rng.below(i);
            std::swap(order[i - 1], order[j]);
        }
        const double denom = 2.0 * radius * radius;
        for (std::size_t oi = 0; oi < n; ++oi) {
            const Vec& x = data[order[oi]];
            int winner = bmu(model, x);
            for (int u = 0; u < grid.units(); ++u) {
                double latd = grid.lattice_distance(u, winner);
                double g = lr * std::exp(-(latd * latd) / denom);
                Vec& w = model.weights[std::size_t(u)];
                for (std::size_t d = 0; d < dim; ++d) w[d] += g * (x[d] - w[d]);
            }
        }
        model.meta.qe_per_epoch.push_back(quantization_error(model, data));
    }
    return model;
}

struct SomKmeansResult {
    Partition partition;
    std::size_t requested_k = 0;
    std::size_t effective_k = 0;
    SomModel model;
};

/// Each pattern inherits the cluster of its BMU; unit clusters that win
/// no patterns are dropped and the rest re-indexed densely in order.
/// Centroids are recomputed as member means over the patterns.
inline Partition inherit_bmu_clusters(const Matrix& data, const SomModel& model,
                                      const Partition& unit_partition) {
    const std::size_t n = data.size();
    std::vector<int> raw(n);
    std::vector<std::size_t> counts(unit_partition.k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        raw[i] = unit_partition.assignment[std::size_t(bmu(model, data[i]))];
        ++counts[std::size_t(raw[i])];
    }
    std::vector<int> remap(unit_partition.k, -1);
    int next = 0;
    for (std::size_t c = 0; c < unit_partition.k; ++c)
        if (counts[c] > 0) remap[c] = next++;

    Partition p;
    p.n = n;
    p.k = std::size_t(next);
    p.assignment.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.assignment[i] = remap[std::size_t(raw[i])];
    p.centroids.assign(p.k, Vec(data.front().size(), 0.0));
    std::vector<std::size_t> msize(p.k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Vec& c = p.centroids[std::size_t(p.assignment[i])];
        for (std::size_t d = 0; d < c.size(); ++d) c[d] += data[i][d];
        ++msize[std::size_t(p.assignment[i])];
    }
    for (std::size_t c = 0; c < p.k; ++c)
        for (double& v : p.centroids[c]) v /= double(msize[c]);
    p.method_tag = "som";
    return p;
}

/// SOM-then-k-means pipeline: cluster the trained unit weights with
/// Euclidean k-means, let every pattern inherit its BMU's cluster, and
/// drop clusters that end up with no patterns (dense re-indexing keeps
/// the surviving cluster order).
inline SomKmeansResult som_kmeans(const Matrix& data, const SomGrid& grid, std::size_t k,
                                  std::uint64_t seed, const TrainSchedule& schedule,
                                  KmeansConfig km_cfg) {
    grid.validate();
    if (k < 1 || k > std::size_t(grid.units()))
        throw input_error("som_kmeans: k must be in 1..units");

    SomKmeansResult out;
    out.requested_k = k;
    out.model = train_som(data, grid, schedule, seed);

    km_cfg.k = k;
    KmeansResult km = kmeans(out.model.weights, km_cfg);
    out.partition = inherit_bmu_clusters(data, out.model, km.partition);
    out.partition.seed = seed;
    out.effective_k = out.partition.k;
    return out;
}

}  // namespace loadclust
