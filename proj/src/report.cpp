#include "cvdloss/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cvdloss {
namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string opt9(const std::optional<double>& v) { return v ? fmt9(*v) : ""; }

std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

std::optional<double> parse_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

// Short series labels for figure captions.
std::string prompt_abbrev(const std::string& prompt_type) {
    if (prompt_type == "standard") return "std";
    if (prompt_type == "colorblind_aware") return "cb";
    if (prompt_type == "protanopia_aware") return "prot";
    if (prompt_type == "deuteranopia_aware") return "deut";
    return prompt_type;
}

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string format_records_tsv(const std::vector<EvaluationRecord>& records) {
    std::string out =
        "path\tcategory\tprompt_type\tseed\tdeficiency\tcvdloss\tlog10_cvdloss\t"
        "normalized\terror\n";
    for (const auto& er : records) {
        out += er.record.path + '\t' + er.record.category + '\t' + er.record.prompt_type + '\t';
        if (er.record.seed) out += std::to_string(*er.record.seed);
        out += '\t';
        out += to_string(er.deficiency);
        out += '\t' + opt9(er.value) + '\t' + opt9(er.log10_value) + '\t' + opt9(er.normalized) +
               '\t' + sanitize(er.error) + '\n';
    }
    return out;
}

std::vector<EvaluationRecord> parse_records_tsv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty records table");
    std::vector<EvaluationRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        if (f.size() != 9) throw std::runtime_error("bad records table row: " + line);
        EvaluationRecord er;
        er.record.path = f[0];
        er.record.category = f[1];
        er.record.prompt_type = f[2];
        if (!f[3].empty()) er.record.seed = std::stol(f[3]);
        er.deficiency = parse_deficiency(f[4]);
        er.value = parse_opt(f[5]);
        er.log10_value = parse_opt(f[6]);
        er.normalized = parse_opt(f[7]);
        er.error = f[8];
        out.push_back(std::move(er));
    }
    return out;
}

std::string format_summaries_tsv(const std::vector<CategorySummary>& summaries) {
    std::string out =
        "category\tprompt_type\tdeficiency\tcount\terror_count\tmean\tmedian\tq1\tq3\t"
        "norm_mean\tnorm_median\tnorm_q1\tnorm_q3\n";
    for (const auto& s : summaries) {
        out += s.category + '\t' + s.prompt_type + '\t';
        out += to_string(s.deficiency);
        out += '\t' + std::to_string(s.count) + '\t' + std::to_string(s.error_count);
        if (s.count > 0) {
            out += '\t' + fmt9(s.mean) + '\t' + fmt9(s.median) + '\t' + fmt9(s.q1) + '\t' +
                   fmt9(s.q3);
        } else {
            out += "\t\t\t\t";
        }
        out += '\t' + opt9(s.normalized_mean) + '\t' + opt9(s.normalized_median) + '\t' +
               opt9(s.normalized_q1) + '\t' + opt9(s.normalized_q3) + '\n';
    }
    return out;
}

std::string format_delta_records_tsv(const std::vector<DeltaRecord>& deltas) {
    std::string out = "path\tcategory\tprompt_type\tseed\tdeficiency\tlog10_delta\terror\n";
    for (const auto& dr : deltas) {
        out += dr.record.path + '\t' + dr.record.category + '\t' + dr.record.prompt_type + '\t';
        if (dr.record.seed) out += std::to_string(*dr.record.seed);
        out += '\t';
        out += to_string(dr.deficiency);
        out += '\t' + opt9(dr.delta) + '\t' + sanitize(dr.error) + '\n';
    }
    return out;
}

std::vector<DeltaRecord> parse_delta_records_tsv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty delta table");
    std::vector<DeltaRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        if (f.size() != 7) throw std::runtime_error("bad delta table row: " + line);
        DeltaRecord dr;
        dr.record.path = f[0];
        dr.record.category = f[1];
        dr.record.prompt_type = f[2];
        if (!f[3].empty()) dr.record.seed = std::stol(f[3]);
        dr.deficiency = parse_deficiency(f[4]);
        dr.delta = parse_opt(f[5]);
        dr.error = f[6];
        out.push_back(std::move(dr));
    }
    return out;
}

std::string format_delta_summaries_tsv(const std::vector<DeltaSummary>& summaries) {
    std::string out = "category\tdeficiency\tcount\texcluded\tmean\tmedian\tq1\tq3\n";
    for (const auto& s : summaries) {
        out += s.category + '\t';
        out += to_string(s.deficiency);
        out += '\t' + std::to_string(s.count) + '\t' + std::to_string(s.excluded);
        if (s.count > 0) {
            out += '\t' + fmt9(s.mean) + '\t' + fmt9(s.median) + '\t' + fmt9(s.q1) + '\t' +
                   fmt9(s.q3);
        } else {
            out += "\t\t\t\t";
        }
        out += '\n';
    }
    return out;
}

std::string run_metadata_json(const std::string& command_line, int workers) {
    nlohmann::ordered_json meta;
    meta["tool"] = "cvdloss";
    meta["version"] = std::string(kToolVersion);
    meta["command"] = command_line;
    meta["workers"] = workers;
    meta["constants"] = {
        {"simulation", "vienot1999-smithpokorny"},
        {"color_space", "oklab-reference-2020"},
        {"daltonization", "error-redistribution-0.7"},
    };
    meta["float_format"] = "%.9g";
    return meta.dump(2) + "\n";
}

std::string render_boxplot_svg(const std::string& title, std::vector<BoxSeries> series) {
    constexpr double kLeft = 70, kTop = 40, kBoxSlot = 72, kPlotH = 260, kBottom = 50;
    const double plot_w = std::max<std::size_t>(series.size(), 1) * kBoxSlot;
    const double width = kLeft + plot_w + 30;
    const double height = kTop + kPlotH + kBottom;

    double lo = 0.0, hi = 0.0;  // always include the zero reference line
    bool any = false;
    for (const auto& s : series) {
        for (double v : s.values) {
            lo = any ? std::min(lo, v) : std::min(0.0, v);
            hi = any ? std::max(hi, v) : std::max(0.0, v);
            any = true;
        }
    }
    if (hi - lo < 1e-12) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.08 * (hi - lo);
    lo -= pad;
    hi += pad;
    const auto ypos = [&](double v) { return kTop + kPlotH * (hi - v) / (hi - lo); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(width)
        << "\" height=\"" << svg_num(height) << "\" font-family=\"sans-serif\">\n";
    svg << "<text x=\"" << svg_num(kLeft) << "\" y=\"24\" font-size=\"15\">" << title
        << "</text>\n";
    // y axis with 5 ticks
    svg << "<line x1=\"" << svg_num(kLeft) << "\" y1=\"" << svg_num(kTop) << "\" x2=\""
        << svg_num(kLeft) << "\" y2=\"" << svg_num(kTop + kPlotH)
        << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = lo + (hi - lo) * t / 4.0;
        const double y = ypos(v);
        svg << "<line x1=\"" << svg_num(kLeft - 4) << "\" y1=\"" << svg_num(y) << "\" x2=\""
            << svg_num(kLeft) << "\" y2=\"" << svg_num(y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << svg_num(kLeft - 8) << "\" y=\"" << svg_num(y + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt9(std::round(v * 1000) / 1000)
            << "</text>\n";
    }
    // dashed zero reference line
    svg << "<line x1=\"" << svg_num(kLeft) << "\" y1=\"" << svg_num(ypos(0.0)) << "\" x2=\""
        << svg_num(kLeft + plot_w) << "\" y2=\"" << svg_num(ypos(0.0))
        << "\" stroke=\"#666\" stroke-dasharray=\"5,4\"/>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        auto& s = series[i];
        const double cx = kLeft + kBoxSlot * (static_cast<double>(i) + 0.5);
        if (s.values.empty()) {
            svg << "<text x=\"" << svg_num(cx) << "\" y=\"" << svg_num(kTop + kPlotH / 2)
                << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#999\">empty</text>\n";
        } else {
            const double q1 = quantile(s.values, 0.25);
            const double q2 = quantile(s.values, 0.5);
            const double q3 = quantile(s.values, 0.75);
            const double iqr = q3 - q1;
            const double lo_fence = q1 - 1.5 * iqr;
            const double hi_fence = q3 + 1.5 * iqr;
            double whisk_lo = q1, whisk_hi = q3;
            std::vector<double> outliers;
            for (double v : s.values) {
                if (v < lo_fence || v > hi_fence) {
                    outliers.push_back(v);
                } else {
                    whisk_lo = std::min(whisk_lo, v);
                    whisk_hi = std::max(whisk_hi, v);
                }
            }
            std::sort(outliers.begin(), outliers.end());
            const char* color =
                s.deficiency == Deficiency::Protanopia ? "#4878cf" : "#ee854a";
            const double half = 22;
            svg << "<line x1=\"" << svg_num(cx) << "\" y1=\"" << svg_num(ypos(whisk_lo))
                << "\" x2=\"" << svg_num(cx) << "\" y2=\"" << svg_num(ypos(whisk_hi))
                << "\" stroke=\"black\"/>\n";
            for (double w : {whisk_lo, whisk_hi}) {
                svg << "<line x1=\"" << svg_num(cx - half / 2) << "\" y1=\""
                    << svg_num(ypos(w)) << "\" x2=\"" << svg_num(cx + half / 2) << "\" y2=\""
                    << svg_num(ypos(w)) << "\" stroke=\"black\"/>\n";
            }
            svg << "<rect x=\"" << svg_num(cx - half) << "\" y=\"" << svg_num(ypos(q3))
                << "\" width=\"" << svg_num(2 * half) << "\" height=\""
                << svg_num(std::max(ypos(q1) - ypos(q3), 0.5)) << "\" fill=\"" << color
                << "\" fill-opacity=\"0.6\" stroke=\"black\"/>\n";
            svg << "<line x1=\"" << svg_num(cx - half) << "\" y1=\"" << svg_num(ypos(q2))
                << "\" x2=\"" << svg_num(cx + half) << "\" y2=\"" << svg_num(ypos(q2))
                << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
            for (double v : outliers) {
                svg << "<circle cx=\"" << svg_num(cx) << "\" cy=\"" << svg_num(ypos(v))
                    << "\" r=\"2.5\" fill=\"none\" stroke=\"" << color << "\"/>\n";
            }
        }
        svg << "<text x=\"" << svg_num(cx) << "\" y=\"" << svg_num(kTop + kPlotH + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << s.label << "</text>\n";
    }
    // legend
    svg << "<rect x=\"" << svg_num(kLeft) << "\" y=\"" << svg_num(height - 22)
        << "\" width=\"12\" height=\"12\" fill=\"#4878cf\" fill-opacity=\"0.6\" "
           "stroke=\"black\"/>\n"
        << "<text x=\"" << svg_num(kLeft + 16) << "\" y=\"" << svg_num(height - 12)
        << "\" font-size=\"11\">protanopia</text>\n"
        << "<rect x=\"" << svg_num(kLeft + 100) << "\" y=\"" << svg_num(height - 22)
        << "\" width=\"12\" height=\"12\" fill=\"#ee854a\" fill-opacity=\"0.6\" "
           "stroke=\"black\"/>\n"
        << "<text x=\"" << svg_num(kLeft + 116) << "\" y=\"" << svg_num(height - 12)
        << "\" font-size=\"11\">deuteranopia</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::map<std::string, std::string> render_score_figures(
    const std::vector<EvaluationRecord>& records) {
    std::map<std::string, std::map<std::pair<std::string, Deficiency>, std::vector<double>>>
        by_category;
    for (const auto& er : records) {
        const std::optional<double> v = er.normalized ? er.normalized : er.log10_value;
        if (!v) continue;
        by_category[er.record.category][{er.record.prompt_type, er.deficiency}].push_back(*v);
    }
    std::map<std::string, std::string> figures;
    for (const auto& [category, groups] : by_category) {
        std::vector<BoxSeries> series;
        for (auto prompt : kPromptTypes) {
            for (Deficiency d : {Deficiency::Protanopia, Deficiency::Deuteranopia}) {
                // Deficiency-specific prompts have no series for the other
                // deficiency by construction; leave those out entirely.
                if ((prompt == "protanopia_aware" && d == Deficiency::Deuteranopia) ||
                    (prompt == "deuteranopia_aware" && d == Deficiency::Protanopia)) {
                    continue;
                }
                const auto it = groups.find({std::string(prompt), d});
                BoxSeries s;
                s.label = prompt_abbrev(std::string(prompt)) + "/" +
                          (d == Deficiency::Protanopia ? "P" : "D");
                s.deficiency = d;
                if (it != groups.end()) s.values = it->second;
                series.push_back(std::move(s));
            }
        }
        figures[category] = render_boxplot_svg(category, std::move(series));
    }
    return figures;
}

std::map<std::string, std::string> render_delta_figures(
    const std::vector<DeltaRecord>& deltas) {
    std::map<std::string, std::map<Deficiency, std::vector<double>>> by_category;
    for (const auto& dr : deltas) {
        if (dr.delta) by_category[dr.record.category][dr.deficiency].push_back(*dr.delta);
    }
    std::map<std::string, std::string> figures;
    for (const auto& [category, groups] : by_category) {
        std::vector<BoxSeries> series;
        for (Deficiency d : {Deficiency::Protanopia, Deficiency::Deuteranopia}) {
            BoxSeries s;
            s.label = d == Deficiency::Protanopia ? "protan" : "deutan";
            s.deficiency = d;
            const auto it = groups.find(d);
            if (it != groups.end()) s.values = it->second;
            series.push_back(std::move(s));
        }
        figures[category] = render_boxplot_svg(category + " (daltonization)", std::move(series));
    }
    return figures;
}

}  // namespace cvdloss
