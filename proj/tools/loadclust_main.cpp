// loadclust: context-based load-pattern extraction and clustering for
// hourly electricity meter data.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "loadclust/io.hpp"
#include "loadclust/methods.hpp"
#include "loadclust/svg.hpp"
#include "loadclust/synth.hpp"

namespace lc = loadclust;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lc::input_error("cannot open input file '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw lc::input_error("cannot open output file '" + path + "'");
    return out;
}

struct SynthArgs {
    lc::PopulationSpec spec;
    std::string out_readings, out_labels;
};

int cmd_synth(const SynthArgs& a) {
    if (a.spec.total() < 1) {
        std::cerr << "synth: all class counts are zero; set at least one of --households,"
                     " --households-flat-season, --cabins-summer-off, --cabins-winter-off,"
                     " --lighting, --flat-industrial, --noise-pv (defaults are 0;"
                     " --year defaults to 2012, --noise-sd to 0.15, --seed to 0)\n";
        return kExitUsage;
    }
    auto population = lc::generate_population(a.spec);
    {
        auto out = open_output(a.out_readings);
        std::vector<lc::ConsumptionSeries> series;
        series.reserve(population.size());
        for (const auto& ls : population) series.push_back(ls.series);
        lc::write_readings_csv(out, series);
    }
    {
        auto out = open_output(a.out_labels);
        lc::write_labels_csv(out, population);
    }
    std::cout << "seed: " << a.spec.seed << "\n";
    std::cout << "meters: " << a.spec.total() << "\n";
    const std::pair<const char*, int> counts[] = {
        {"household", a.spec.households},
        {"household_flat_season", a.spec.households_flat_season},
        {"cabin_summer_off", a.spec.cabins_summer_off},
        {"cabin_winter_off", a.spec.cabins_winter_off},
        {"lighting", a.spec.lighting},
        {"flat_industrial", a.spec.flat_industrial},
        {"noise_pv", a.spec.noise_pv},
    };
    for (auto [name, count] : counts)
        if (count > 0) std::cout << "  " << name << ": " << count << "\n";
    return kExitOk;
}

struct ExtractArgs {
    std::string in_path, out_path, rejected_path, holiday_path;
    lc::SeasonConfig seasons;
    lc::QualityPolicy policy;
};

int cmd_extract(const ExtractArgs& a) {
    a.seasons.validate();
    lc::HolidayCalendar holidays;
    if (!a.holiday_path.empty()) {
        auto in = open_input(a.holiday_path);
        holidays = lc::load_holiday_overrides(in);
    }
    auto in = open_input(a.in_path);
    lc::ParseResult parsed = lc::parse_readings(in);
    for (const auto& d : parsed.diagnostics)
        std::cerr << "line " << d.line << ": " << d.message << "\n";
    lc::RlpMatrix matrix = lc::extract_all(parsed.series, a.seasons, holidays, a.policy);
    {
        auto out = open_output(a.out_path);
        lc::write_rlp_csv(out, matrix.rows);
    }
    if (!a.rejected_path.empty()) {
        auto out = open_output(a.rejected_path);
        out << "meter_id,reason\n";
        for (const auto& [id, reason] : matrix.rejected) out << id << ',' << reason << '\n';
    } else {
        for (const auto& [id, reason] : matrix.rejected)
            std::cerr << "rejected " << id << ": " << reason << "\n";
    }
    std::cout << "meters: " << matrix.rows.size() << " accepted, " << matrix.rejected.size()
              << " rejected\n";
    return kExitOk;
}

struct ClusterArgs {
    std::string rlp_path, method_name, assignments_path, centroids_path;
    std::string hc_linkage, hc_metric;
    double minkowski_p = 2.0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    lc::MethodOptions options;
};

int cmd_cluster(const ClusterArgs& a) {
    auto in = open_input(a.rlp_path);
    std::vector<lc::Rlp> rows = lc::read_rlp_csv(in);
    lc::Matrix data;
    std::vector<std::string> ids;
    for (const lc::Rlp& r : rows) {
        data.emplace_back(r.values.begin(), r.values.end());
        ids.push_back(r.meter_id);
    }

    lc::Partition partition;
    std::size_t requested_k = a.k, effective_k = 0;
    if (!a.hc_linkage.empty() || !a.hc_metric.empty()) {
        lc::LinkageSpec spec;
        if (a.hc_linkage == "ward") spec.linkage = lc::Linkage::Ward;
        else if (a.hc_linkage == "average") spec.linkage = lc::Linkage::Average;
        else if (a.hc_linkage == "single") spec.linkage = lc::Linkage::Single;
        else throw lc::config_error("--hc-linkage must be ward, average or single");
        if (a.hc_metric == "euclidean" || a.hc_metric.empty()) spec.metric = lc::Metric::euclidean();
        else if (a.hc_metric == "cosine") spec.metric = lc::Metric::cosine();
        else if (a.hc_metric == "minkowski") spec.metric = lc::Metric::minkowski(a.minkowski_p);
        else throw lc::config_error("--hc-metric must be euclidean, cosine or minkowski");
        lc::Dendrogram d = lc::hcluster(data, spec);
        partition = lc::cut(d, data, a.k);
        partition.method_tag = std::string("hc-") + a.hc_linkage;
        effective_k = partition.k;
    } else {
        auto method = lc::parse_method(a.method_name);
        if (!method) {
            std::cerr << "unknown method '" << a.method_name
                      << "'; valid shorthands: som km skm hc-w2 hc-s5 hc-a2 hc-sc hc-ac\n";
            return kExitUsage;
        }
        lc::MethodRun run = lc::run_method(data, *method, a.k, a.seed, a.options);
        partition = std::move(run.partition);
        effective_k = run.effective_k;
    }

    {
        auto out = open_output(a.assignments_path);
        lc::write_assignments_csv(out, ids, partition);
    }
    {
        auto out = open_output(a.centroids_path);
        lc::write_centroids_csv(out, partition);
    }
    std::cout << "seed: " << a.seed << "\n";
    std::cout << "requested k: " << requested_k << ", effective k: " << effective_k << "\n";
    return kExitOk;
}

struct SweepArgs {
    std::string rlp_path, methods_csv, out_path;
    std::size_t k_min = 2, k_max = 50;
    std::uint64_t seed = 0;
    lc::MethodOptions options;
};

int cmd_sweep(const SweepArgs& a) {
    std::vector<lc::MethodId> methods;
    {
        std::stringstream ss(a.methods_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto m = lc::parse_method(item);
            if (!m) {
                std::cerr << "unknown method '" << item
                          << "'; valid shorthands: som km skm hc-w2 hc-s5 hc-a2 hc-sc hc-ac\n";
                return kExitUsage;
            }
            methods.push_back(*m);
        }
    }
    if (methods.empty()) {
        std::cerr << "sweep: no methods given\n";
        return kExitUsage;
    }
    auto in = open_input(a.rlp_path);
    std::vector<lc::Rlp> rows = lc::read_rlp_csv(in);
    lc::Matrix data;
    for (const lc::Rlp& r : rows) data.emplace_back(r.values.begin(), r.values.end());

    std::vector<lc::ValidityReport> reports =
        lc::run_sweep(data, methods, a.k_min, a.k_max, a.seed, a.options);
    auto out = open_output(a.out_path);
    lc::write_validity_csv(out, reports);
    std::cout << "seed: " << a.seed << "\n";
    std::cout << "rows: " << reports.size() << "\n";
    return kExitOk;
}

struct ReportArgs {
    std::vector<std::string> assignment_paths;
    std::string rlp_path, table_path, svg_prefix;
};

int cmd_report(const ReportArgs& a) {
    auto in = open_input(a.rlp_path);
    std::vector<lc::Rlp> rows = lc::read_rlp_csv(in);
    std::map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i].meter_id] = i;

    struct MethodTable {
        std::string name;
        std::vector<std::size_t> sizes;
    };
    std::vector<MethodTable> tables;

    for (const std::string& path : a.assignment_paths) {
        auto ain = open_input(path);
        std::map<std::string, int> assignment = lc::read_assignments_csv(ain);
        if (assignment.empty()) {
            std::cerr << "report: assignments file '" << path << "' has no rows\n";
            return kExitUsage;
        }
        std::vector<std::string> missing;
        for (const auto& [id, cluster] : assignment)
            if (!row_of.count(id)) missing.push_back(id);
        if (!missing.empty()) {
            std::cerr << "report: meter ids missing from the RLP file:";
            for (const auto& id : missing) std::cerr << ' ' << id;
            std::cerr << "\n";
            return kExitData;
        }

        // subset of the RLP matrix covered by this assignment, by meter id
        lc::Matrix data;
        std::vector<int> raw;
        for (const auto& [id, cluster] : assignment) {
            if (cluster < 0) throw lc::input_error("report: negative cluster id");
            const lc::Rlp& r = rows[row_of[id]];
            data.emplace_back(r.values.begin(), r.values.end());
            raw.push_back(cluster);
        }
        int max_id = 0;
        for (int c : raw) max_id = std::max(max_id, c);
        std::vector<std::size_t> sizes(std::size_t(max_id) + 1, 0);
        for (int c : raw) ++sizes[std::size_t(c)];

        std::string name = std::filesystem::path(path).stem().string();
        tables.push_back({name, sizes});

        if (!a.svg_prefix.empty()) {
            // dense partition for plotting (empty ids dropped)
            std::vector<int> remap(sizes.size(), -1);
            int next = 0;
            for (std::size_t c = 0; c < sizes.size(); ++c)
                if (sizes[c] > 0) remap[c] = next++;
            lc::Partition p;
            p.n = data.size();
            p.k = std::size_t(next);
            p.assignment.resize(p.n);
            for (std::size_t i = 0; i < p.n; ++i) p.assignment[i] = remap[std::size_t(raw[i])];
            p.centroids.assign(p.k, lc::Vec(data.front().size(), 0.0));
            std::vector<std::size_t> msize(p.k, 0);
            for (std::size_t i = 0; i < p.n; ++i) {
                auto& cen = p.centroids[std::size_t(p.assignment[i])];
                for (std::size_t d = 0; d < cen.size(); ++d) cen[d] += data[i][d];
                ++msize[std::size_t(p.assignment[i])];
            }
            for (std::size_t c = 0; c < p.k; ++c)
                for (double& v : p.centroids[c]) v /= double(msize[c]);
            auto out = open_output(a.svg_prefix + name + ".svg");
            lc::write_cluster_svg(out, data, p, name);
        }
    }

    // member-distribution table: one column per method, one row per cluster
    std::size_t max_k = 0;
    for (const auto& t : tables) max_k = std::max(max_k, t.sizes.size());
    std::ostringstream table;
    table << "cluster";
    for (const auto& t : tables) table << ',' << t.name;
    table << '\n';
    for (std::size_t c = 0; c < max_k; ++c) {
        table << c;
        for (const auto& t : tables) {
            table << ',';
            if (c < t.sizes.size()) table << t.sizes[c];
        }
        table << '\n';
    }
    // index values are only comparable between methods at equal
    // effective K, so flag any mismatch rather than hiding it
    std::size_t first_k = 0;
    bool mismatch = false;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        std::size_t effective = 0;
        for (std::size_t s : tables[t].sizes)
            if (s > 0) ++effective;
        if (t == 0) first_k = effective;
        else if (effective != first_k) mismatch = true;
    }
    if (mismatch)
        std::cerr << "warning: methods have different effective cluster counts;"
                     " validity indices are not directly comparable\n";

    if (a.table_path.empty()) {
        std::cout << table.str();
    } else {
        auto out = open_output(a.table_path);
        out << table.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"context-based load pattern extraction and clustering"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "generate a labeled synthetic population");
    s->add_option("--year", synth.spec.year, "calendar year")->default_val(2012);
    s->add_option("--households", synth.spec.households, "regular household meters");
    s->add_option("--households-flat-season", synth.spec.households_flat_season,
                  "households without a winter increase");
    s->add_option("--cabins-summer-off", synth.spec.cabins_summer_off,
                  "cabins nearly off May-September");
    s->add_option("--cabins-winter-off", synth.spec.cabins_winter_off,
                  "cabins nearly off October-April");
    s->add_option("--lighting", synth.spec.lighting, "dusk-to-dawn lighting meters");
    s->add_option("--flat-industrial", synth.spec.flat_industrial, "flat business-hours meters");
    s->add_option("--noise-pv", synth.spec.noise_pv, "white-noise profile meters");
    s->add_option("--noise-sd", synth.spec.noise_sd, "relative reading noise")->default_val(0.15);
    s->add_option("--seed", synth.spec.seed, "random seed")->default_val(0);
    s->add_option("--out", synth.out_readings, "output readings CSV")->required();
    s->add_option("--labels", synth.out_labels, "output labels CSV")->required();

    ExtractArgs extract;
    auto* e = app.add_subcommand("extract", "extract representative load patterns");
    e->add_option("--in", extract.in_path, "readings CSV")->required();
    e->add_option("--out", extract.out_path, "output RLP CSV")->required();
    e->add_option("--rejected", extract.rejected_path, "output rejection CSV");
    e->add_option("--summer-start", extract.seasons.summer_start_month, "first summer month")
        ->default_val(5);
    e->add_option("--summer-end", extract.seasons.summer_end_month, "last summer month")
        ->default_val(9);
    e->add_option("--holiday-file", extract.holiday_path,
                  "holiday overrides (one ISO date per line, '-' removes)");
    e->add_option("--min-days", extract.policy.min_days_per_context,
                  "minimum observed days per context")
        ->default_val(10);
    e->add_flag("--keep-all-zero", [&extract](std::int64_t) { extract.policy.reject_all_zero = false; },
                "keep all-zero meters instead of rejecting them");

    ClusterArgs cluster;
    auto* c = app.add_subcommand("cluster", "cluster an RLP file with one method");
    c->add_option("--rlp", cluster.rlp_path, "RLP CSV")->required();
    c->add_option("--method", cluster.method_name,
                  "method shorthand: som km skm hc-w2 hc-s5 hc-a2 hc-sc hc-ac");
    c->add_option("--hc-linkage", cluster.hc_linkage, "explicit linkage: ward average single");
    c->add_option("--hc-metric", cluster.hc_metric, "explicit metric: euclidean cosine minkowski");
    c->add_option("--minkowski-p", cluster.minkowski_p, "Minkowski order")->default_val(2.0);
    c->add_option("--k", cluster.k, "number of clusters")->required()
        ->check(CLI::PositiveNumber);
    c->add_option("--seed", cluster.seed, "random seed")->default_val(0);
    c->add_option("--restarts", cluster.options.restarts, "k-means restarts")->default_val(10);
    c->add_option("--som-rows", cluster.options.grid.rows, "SOM grid rows")->default_val(10);
    c->add_option("--som-cols", cluster.options.grid.cols, "SOM grid cols")->default_val(10);
    c->add_option("--assignments", cluster.assignments_path, "output assignments CSV")->required();
    c->add_option("--centroids", cluster.centroids_path, "output centroids CSV")->required();

    SweepArgs sweep;
    auto* w = app.add_subcommand("sweep", "validity indices over a K range");
    w->add_option("--rlp", sweep.rlp_path, "RLP CSV")->required();
    w->add_option("--methods", sweep.methods_csv, "comma-separated method shorthands")
        ->default_val("som,km,skm,hc-w2,hc-s5,hc-a2,hc-sc,hc-ac");
    w->add_option("--kmin", sweep.k_min, "smallest K")->default_val(2);
    w->add_option("--kmax", sweep.k_max, "largest K")->default_val(50);
    w->add_option("--seed", sweep.seed, "random seed")->default_val(0);
    w->add_option("--restarts", sweep.options.restarts, "k-means restarts")->default_val(10);
    w->add_option("--out", sweep.out_path, "output validity CSV")->required();

    ReportArgs report;
    auto* r = app.add_subcommand("report", "member distribution table and cluster plots");
    r->add_option("assignments", report.assignment_paths, "assignments CSV file(s)")
        ->required()
        ->expected(-1);
    r->add_option("--rlp", report.rlp_path, "RLP CSV")->required();
    r->add_option("--out-table", report.table_path, "table output path (default stdout)");
    r->add_option("--svg-prefix", report.svg_prefix, "write <prefix><method>.svg per input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (s->parsed()) return cmd_synth(synth);
        if (e->parsed()) return cmd_extract(extract);
        if (c->parsed()) return cmd_cluster(cluster);
        if (w->parsed()) return cmd_sweep(sweep);
        if (r->parsed()) return cmd_report(report);
        return kExitUsage;
    } catch (const lc::config_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const lc::input_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitData;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitData;
    } catch (const std::logic_error& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitData;
    }
}
