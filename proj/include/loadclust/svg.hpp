#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "loadclust/kmeans.hpp"
#include "loadclust/rlp.hpp"

namespace loadclust {

/// Small-multiples cluster plot: one panel per cluster, member
/// patterns in a light stroke, the centroid on top in red, with the
/// four context bands shaded alternately along the 96-point x axis.
inline void write_cluster_svg(std::ostream& out, const Matrix& data, const Partition& p,
                              const std::string& title = "") {
    const int panel_w = 220, panel_h = 130, pad = 10, label_h = 14;
    const int cols = p.k <= 4 ? int(p.k) : (p.k <= 12 ? 4 : 5);
    const int rows = int((p.k + std::size_t(cols) - 1) / std::size_t(cols));
    const int width = cols * (panel_w + pad) + pad;
    const int height = rows * (panel_h + pad + label_h) + pad + (title.empty() ? 0 : 20);

    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    if (!title.empty())
        out << "<text x=\"" << pad << "\" y=\"15\" font-size=\"13\">" << title << "</text>\n";
    const int top0 = title.empty() ? 0 : 20;

    auto clusters = p.clusters();
    const int dim = int(data.empty() ? kRlpFeatures : data.front().size());
    for (std::size_t c = 0; c < p.k; ++c) {
        const int px = pad + int(c) % cols * (panel_w + pad);
        const int py = top0 + pad + int(c) / cols * (panel_h + pad + label_h) + label_h;

        out << "<text x=\"" << px << "\" y=\"" << py - 3 << "\">cluster " << c
            << " (n=" << clusters[c].size() << ")</text>\n";
        // alternating context bands
        for (int band = 0; band < kContexts; ++band) {
            double bx = px + double(band) * panel_w / kContexts;
            out << "<rect x=\"" << fmt(bx) << "\" y=\"" << py << "\" width=\""
                << fmt(double(panel_w) / kContexts) << "\" height=\"" << panel_h << "\" fill=\""
                << (band % 2 ? "#f0f0f0" : "#fafafa") << "\"/>\n";
        }

        auto polyline = [&](const Vec& v, const char* stroke, double width_px) {
            out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
                << width_px << "\" points=\"";
            for (int i = 0; i < dim; ++i) {
                double x = px + (dim > 1 ? double(i) * panel_w / (dim - 1) : 0.0);
                double clamped = std::min(std::max(v[std::size_t(i)], 0.0), 1.0);
                double y = py + panel_h - clamped * panel_h;
                out << fmt(x) << ',' << fmt(y) << ' ';
            }
            out << "\"/>\n";
        };
        for (int idx : clusters[c]) polyline(data[std::size_t(idx)], "#c0c0c0", 0.6);
        polyline(p.centroids[c], "#d62728", 1.5);
    }
    out << "</svg>\n";
}

}  // namespace loadclust
