#include "cqed/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "cqed/errors.hpp"

namespace cqed {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    require(out.good(), ErrorCode::config, "cannot write to '" + path + "'");
    return out;
}

std::string fmt(double v, const char* spec) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

void write_csv(const std::string& path, const TimeSeries& series) {
    auto out = open_out(path);
    out << "time";
    for (const auto& label : series.labels) out << ',' << label;
    out << '\n';
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out << fmt(series.times[i], "%.12g");
        for (const auto& col : series.columns) out << ',' << fmt(col[i], "%.12g");
        out << '\n';
    }
}

void write_series_json(const std::string& path, const TimeSeries& series,
                       const json& metadata) {
    json j;
    j["metadata"] = metadata;
    j["metadata"]["tolerances"] = {{"norm_drift", 1e-8},
                                   {"trace_drift", 1e-6},
                                   {"partition_sum", 1e-7},
                                   {"probability_bound", 1e-7}};
    j["times"] = series.times;
    j["series"] = json::object();
    for (std::size_t c = 0; c < series.labels.size(); ++c)
        j["series"][series.labels[c]] = series.columns[c];
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_reduction_json(const std::string& path, const ReductionReport& report) {
    json j;
    j["dim_full"] = report.dim_full;
    j["dim_kept"] = report.dim_kept;
    j["dim_reduced"] = report.dim_reduced;
    j["keep_fraction"] = report.keep_fraction;
    j["repair_iterations"] = report.repair_iterations;
    j["states_by_tag"] = {{"seed-amplitude", report.seed_count},
                          {"neighbor-repair", report.repair_added}};
    j["fallback_component"] = report.fallback_component;
    j["discarded_weight"] = report.discarded_weight;
    if (!report.comparison.empty()) {
        j["comparison"] = json::array();
        for (const auto& c : report.comparison)
            j["comparison"].push_back({{"observable", c.label},
                                       {"stable_full", c.stable_full},
                                       {"stable_reduced", c.stable_reduced},
                                       {"stable_offset", c.offset},
                                       {"pearson", c.pearson}});
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_svg(const std::string& path, const TimeSeries& series, const std::string& title) {
    require(!series.times.empty() && !series.columns.empty(), ErrorCode::logic,
            "write_svg: empty series");
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};
    const double width = 900, height = 540;
    const double ml = 70, mr = 180, mt = 40, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;

    const double x0 = series.times.front(), x1 = series.times.back();
    double y0 = series.columns[0][0], y1 = y0;
    for (const auto& col : series.columns)
        for (double v : col) {
            y0 = std::min(y0, v);
            y1 = std::max(y1, v);
        }
    if (y1 - y0 < 1e-12) {
        y0 -= 0.5;
        y1 += 0.5;
    } else {
        const double pad = 0.05 * (y1 - y0);
        y0 -= pad;
        y1 += pad;
    }
    auto px = [&](double t) { return ml + (t - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return mt + (y1 - v) / (y1 - y0) * ph; };

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' '
        << height << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"24\" font-size=\"16\">" << title << "</text>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double t = x0 + (x1 - x0) * i / 5.0;
        const double v = y0 + (y1 - y0) * i / 5.0;
        out << "<line x1=\"" << fmt(px(t), "%.2f") << "\" y1=\"" << mt + ph << "\" x2=\""
            << fmt(px(t), "%.2f") << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << fmt(px(t), "%.2f") << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\">" << fmt(t, "%.4g") << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(py(v), "%.2f") << "\" x2=\"" << ml
            << "\" y2=\"" << fmt(py(v), "%.2f") << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << ml - 9 << "\" y=\"" << fmt(py(v) + 4, "%.2f")
            << "\" text-anchor=\"end\">" << fmt(v, "%.4g") << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">time</text>\n";

    for (std::size_t c = 0; c < series.columns.size(); ++c) {
        const char* color = palette[c % (sizeof palette / sizeof palette[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series.times.size(); ++i) {
            if (i) out << ' ';
            out << fmt(px(series.times[i]), "%.2f") << ',' << fmt(py(series.columns[c][i]), "%.2f");
        }
        out << "\"/>\n";
        const double ly = mt + 16 + 18 * double(c);
        out << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\""
            << ml + pw + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly << "\">" << series.labels[c]
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace cqed
