#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "loadclust/hier.hpp"
#include "loadclust/ingest.hpp"
#include "loadclust/rlp.hpp"
#include "loadclust/som.hpp"
#include "loadclust/synth.hpp"
#include "loadclust/validity.hpp"

namespace loadclust {

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string rlp_header() {
    std::string h = "meter_id";
    for (int c = 0; c < kContexts; ++c)
        for (int hr = 0; hr < kHoursPerDay; ++hr) {
            char buf[16];
            std::snprintf(buf, sizeof buf, ",%s_h%02d", context_name(c), hr);
            h += buf;
        }
    return h;
}

inline std::string getline_csv(std::istream& in, bool& ok) {
    std::string line;
    ok = bool(std::getline(in, line));
    if (ok && !line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace detail

// ---- readings CSV (meter_id,timestamp,kwh) ----

inline void write_readings_csv(std::ostream& out, const std::vector<ConsumptionSeries>& all) {
    out << "meter_id,timestamp,kwh\n";
    for (const ConsumptionSeries& s : all)
        for (const Reading& r : s.readings) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:00", int(r.date.year()),
                          unsigned(r.date.month()), unsigned(r.date.day()), r.hour);
            out << s.meter_id << ',' << buf << ',' << detail::fmt_double(r.kwh) << '\n';
        }
}

// ---- RLP CSV ----

inline void write_rlp_csv(std::ostream& out, const std::vector<Rlp>& rows) {
    out << detail::rlp_header() << '\n';
    for (const Rlp& r : rows) {
        out << r.meter_id;
        for (double v : r.values) out << ',' << detail::fmt_double(v);
        out << '\n';
    }
}

inline std::vector<Rlp> read_rlp_csv(std::istream& in) {
    bool ok = false;
    std::string header = detail::getline_csv(in, ok);
    if (!ok || header != detail::rlp_header())
        throw input_error("RLP CSV: unexpected header");
    std::vector<Rlp> rows;
    std::size_t lineno = 1;
    for (;;) {
        std::string line = detail::getline_csv(in, ok);
        if (!ok) break;
        ++lineno;
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != std::size_t(kRlpFeatures) + 1)
            throw input_error("RLP CSV line " + std::to_string(lineno) + ": wrong field count");
        Rlp r;
        r.meter_id = fields[0];
        for (int i = 0; i < kRlpFeatures; ++i) {
            try {
                r.values[std::size_t(i)] = std::stod(fields[std::size_t(i) + 1]);
            } catch (const std::exception&) {
                throw input_error("RLP CSV line " + std::to_string(lineno) + ": bad value");
            }
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---- assignments / centroids CSV ----

inline void write_assignments_csv(std::ostream& out, const std::vector<std::string>& meter_ids,
                                  const Partition& p) {
    out << "meter_id,cluster\n";
    for (std::size_t i = 0; i < p.n; ++i) out << meter_ids[i] << ',' << p.assignment[i] << '\n';
}

inline std::map<std::string, int> read_assignments_csv(std::istream& in) {
    bool ok = false;
    std::string header = detail::getline_csv(in, ok);
    if (!ok || header != "meter_id,cluster")
        throw input_error("assignments CSV: expected header 'meter_id,cluster'");
    std::map<std::string, int> out;
    std::size_t lineno = 1;
    for (;;) {
        std::string line = detail::getline_csv(in, ok);
        if (!ok) break;
        ++lineno;
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 2)
            throw input_error("assignments CSV line " + std::to_string(lineno) + ": wrong field count");
        try {
            out[fields[0]] = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw input_error("assignments CSV line " + std::to_string(lineno) + ": bad cluster id");
        }
    }
    return out;
}

inline void write_centroids_csv(std::ostream& out, const Partition& p) {
    out << "cluster";
    std::string h = detail::rlp_header();
    out << h.substr(8) << '\n';  // drop "meter_id", keep the 96 feature names
    for (std::size_t c = 0; c < p.k; ++c) {
        out << c;
        for (double v : p.centroids[c]) out << ',' << detail::fmt_double(v);
        out << '\n';
    }
}

// ---- validity CSV ----

inline void write_validity_csv(std::ostream& out, const std::vector<ValidityReport>& rows) {
    out << "method,k,effective_k,cdi,mdi,dbi,mia\n";
    for (const ValidityReport& r : rows)
        out << r.method_tag << ',' << r.requested_k << ',' << r.effective_k << ','
            << detail::fmt_double(r.cdi) << ',' << detail::fmt_double(r.mdi) << ','
            << detail::fmt_double(r.dbi) << ',' << detail::fmt_double(r.mia) << '\n';
}

/// Accepts `bdi` as a legacy alias of the `dbi` column.
inline std::vector<ValidityReport> read_validity_csv(std::istream& in) {
    bool ok = false;
    std::string header = detail::getline_csv(in, ok);
    if (!ok || (header != "method,k,effective_k,cdi,mdi,dbi,mia" &&
                header != "method,k,effective_k,cdi,mdi,bdi,mia"))
        throw input_error("validity CSV: unexpected header");
    std::vector<ValidityReport> rows;
    for (;;) {
        std::string line = detail::getline_csv(in, ok);
        if (!ok) break;
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 7) throw input_error("validity CSV: wrong field count");
        ValidityReport r;
        r.method_tag = f[0];
        r.requested_k = std::size_t(std::stoul(f[1]));
        r.effective_k = std::size_t(std::stoul(f[2]));
        r.cdi = std::stod(f[3]);
        r.mdi = std::stod(f[4]);
        r.dbi = std::stod(f[5]);
        r.mia = std::stod(f[6]);
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---- labels CSV ----

inline void write_labels_csv(std::ostream& out, const std::vector<LabeledSeries>& population) {
    out << "meter_id,label\n";
    for (const LabeledSeries& ls : population)
        out << ls.series.meter_id << ',' << consumer_class_name(ls.label) << '\n';
}

inline std::map<std::string, std::string> read_labels_csv(std::istream& in) {
    bool ok = false;
    std::string header = detail::getline_csv(in, ok);
    if (!ok || header != "meter_id,label") throw input_error("labels CSV: unexpected header");
    std::map<std::string, std::string> out;
    for (;;) {
        std::string line = detail::getline_csv(in, ok);
        if (!ok) break;
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 2) throw input_error("labels CSV: wrong field count");
        out[f[0]] = f[1];
    }
    return out;
}

// ---- dendrogram / SOM weight dumps ----

inline void write_dendrogram_csv(std::ostream& out, const Dendrogram& d) {
    out << "left,right,height,size\n";
    for (const Merge& m : d.merges)
        out << m.left << ',' << m.right << ',' << detail::fmt_double(m.height) << ',' << m.size
            << '\n';
}

inline void write_som_weights_csv(std::ostream& out, const SomModel& model) {
    out << "unit_row,unit_col";
    const int dim = model.weights.empty() ? 0 : int(model.weights.front().size());
    for (int i = 0; i < dim; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, ",w%03d", i);
        out << buf;
    }
    out << '\n';
    for (int u = 0; u < model.grid.units(); ++u) {
        out << (u / model.grid.cols) << ',' << (u % model.grid.cols);
        for (double v : model.weights[std::size_t(u)]) out << ',' << detail::fmt_double(v);
        out << '\n';
    }
}

}  // namespace loadclust
