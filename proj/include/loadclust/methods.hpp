#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "loadclust/hier.hpp"
#include "loadclust/kmeans.hpp"
#include "loadclust/som.hpp"
#include "loadclust/validity.hpp"

namespace loadclust {

/// The eight experiment methods, by their shorthand names.
enum class MethodId { Som, Km, Skm, HcW2, HcS5, HcA2, HcSc, HcAc };

inline constexpr std::array<MethodId, 8> kAllMethods = {
    MethodId::Som,  MethodId::Km,   MethodId::Skm,  MethodId::HcW2,
    MethodId::HcS5, MethodId::HcA2, MethodId::HcSc, MethodId::HcAc,
};

inline const char* method_name(MethodId m) {
    switch (m) {
        case MethodId::Som: return "som";
        case MethodId::Km: return "km";
        case MethodId::Skm: return "skm";
        case MethodId::HcW2: return "hc-w2";
        case MethodId::HcS5: return "hc-s5";
        case MethodId::HcA2: return "hc-a2";
        case MethodId::HcSc: return "hc-sc";
        case MethodId::HcAc: return "hc-ac";
    }
    return "?";
}

inline std::optional<MethodId> parse_method(const std::string& name) {
    for (MethodId m : kAllMethods)
        if (name == method_name(m)) return m;
    return std::nullopt;
}

inline bool is_hierarchical(MethodId m) {
    return m == MethodId::HcW2 || m == MethodId::HcS5 || m == MethodId::HcA2 ||
           m == MethodId::HcSc || m == MethodId::HcAc;
}

inline LinkageSpec hc_spec(MethodId m) {
    switch (m) {
        case MethodId::HcW2: return {Linkage::Ward, Metric::euclidean()};
        case MethodId::HcS5: return {Linkage::Single, Metric::minkowski(5.0)};
        case MethodId::HcA2: return {Linkage::Average, Metric::euclidean()};
        case MethodId::HcSc: return {Linkage::Single, Metric::cosine()};
        case MethodId::HcAc: return {Linkage::Average, Metric::cosine()};
        default: throw config_error("not a hierarchical method");
    }
}

struct MethodOptions {
    int restarts = 10;
    int max_iter = 300;
    SomGrid grid{};
    TrainSchedule schedule{};
};

struct MethodRun {
    Partition partition;
    std::size_t requested_k = 0;
    std::size_t effective_k = 0;
};

/// Runs one method at one K. Hierarchical methods rebuild their
/// dendrogram each call; use SweepEngine when evaluating a K range.
inline MethodRun run_method(const Matrix& data, MethodId method, std::size_t k,
                            std::uint64_t seed, const MethodOptions& opt = {}) {
    MethodRun out;
    out.requested_k = k;
    if (method == MethodId::Km || method == MethodId::Skm) {
        KmeansConfig cfg{k, opt.max_iter, opt.restarts, seed};
        KmeansResult r = method == MethodId::Km ? kmeans(data, cfg) : spherical_kmeans(data, cfg);
        out.partition = std::move(r.partition);
    } else if (method == MethodId::Som) {
        KmeansConfig cfg{k, opt.max_iter, opt.restarts, mix_seed(seed, 0x6b6d)};
        SomKmeansResult r = som_kmeans(data, opt.grid, k, seed, opt.schedule, cfg);
        out.partition = std::move(r.partition);
    } else {
        Dendrogram d = hcluster(data, hc_spec(method));
        out.partition = cut(d, data, k);
        out.partition.method_tag = method_name(method);
        out.partition.seed = seed;
    }
    out.effective_k = out.partition.k;
    return out;
}

/// Caches the per-method expensive artifact (dendrogram or trained SOM)
/// so a K sweep costs one build plus cheap per-K work.
class SweepEngine {
public:
    SweepEngine(const Matrix& data, MethodId method, std::uint64_t seed,
                const MethodOptions& opt = {})
        : data_(data), method_(method), seed_(seed), opt_(opt) {
        if (is_hierarchical(method_)) dendro_ = hcluster(data_, hc_spec(method_));
        else if (method_ == MethodId::Som)
            model_ = train_som(data_, opt_.grid, opt_.schedule, mix_seed(seed_, 0x50ed));
    }

    MethodRun at(std::size_t k) const {
        MethodRun out;
        out.requested_k = k;
        if (is_hierarchical(method_)) {
            out.partition = cut(*dendro_, data_, k);
            out.partition.method_tag = method_name(method_);
            out.partition.seed = seed_;
        } else if (method_ == MethodId::Som) {
            KmeansConfig cfg{k, opt_.max_iter, opt_.restarts, mix_seed(seed_, k)};
            KmeansResult km = kmeans(model_->weights, cfg);
            out.partition = inherit_bmu_clusters(data_, *model_, km.partition);
            out.partition.seed = seed_;
        } else {
            KmeansConfig cfg{k, opt_.max_iter, opt_.restarts, mix_seed(seed_, k)};
            KmeansResult r =
                method_ == MethodId::Km ? kmeans(data_, cfg) : spherical_kmeans(data_, cfg);
            out.partition = std::move(r.partition);
        }
        out.effective_k = out.partition.k;
        return out;
    }

    const SomModel* som_model() const { return model_ ? &*model_ : nullptr; }

private:
    const Matrix& data_;
    MethodId method_;
    std::uint64_t seed_;
    MethodOptions opt_;
    std::optional<Dendrogram> dendro_;
    std::optional<SomModel> model_;
};

/// Validity rows for every (method, K) pair, ordered by the given
/// method order, then K ascending.
inline std::vector<ValidityReport> run_sweep(const Matrix& data,
                                             const std::vector<MethodId>& methods,
                                             std::size_t k_min, std::size_t k_max,
                                             std::uint64_t seed, const MethodOptions& opt = {}) {
    if (k_min < 2 || k_max >= data.size() || k_min > k_max)
        throw input_error("sweep: K range must satisfy 2 <= kmin <= kmax <= n-1");
    std::vector<ValidityReport> rows;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        SweepEngine engine(data, methods[mi], mix_seed(seed, mi), opt);
        for (std::size_t k = k_min; k <= k_max; ++k) {
            MethodRun run = engine.at(k);
            try {
                rows.push_back(validity_report(data, run.partition, k));
            } catch (const std::domain_error&) {
                // degenerate geometry (collapsed partition or coincident
                // centroids): keep the row, flag the indices as NaN
                ValidityReport r;
                r.method_tag = run.partition.method_tag;
                r.requested_k = k;
                r.effective_k = run.effective_k;
                r.cdi = r.mdi = r.dbi = r.mia = std::numeric_limits<double>::quiet_NaN();
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

}  // namespace loadclust
