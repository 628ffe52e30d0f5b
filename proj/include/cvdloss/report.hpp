#pragma once

#include <map>
#include <string>
#include <vector>

#include "cvdloss/pipeline.hpp"

namespace cvdloss {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Tab-separated tables with one header line. Floats are printed with 9
// significant digits so two runs over the same manifest are byte-identical.
std::string format_records_tsv(const std::vector<EvaluationRecord>& records);
std::vector<EvaluationRecord> parse_records_tsv(const std::string& text);

std::string format_summaries_tsv(const std::vector<CategorySummary>& summaries);

std::string format_delta_records_tsv(const std::vector<DeltaRecord>& deltas);
std::vector<DeltaRecord> parse_delta_records_tsv(const std::string& text);

std::string format_delta_summaries_tsv(const std::vector<DeltaSummary>& summaries);

// Machine-readable run metadata: tool version, constant-set identifiers,
// worker count, and the command line needed to re-run.
std::string run_metadata_json(const std::string& command_line, int workers);

// One box per series: median, interquartile box, whiskers at 1.5*IQR,
// outliers as points, dashed zero reference line. Deterministic output for
// deterministic input.
struct BoxSeries {
    std::string label;
    Deficiency deficiency = Deficiency::Protanopia;  // selects the series color
    std::vector<double> values;
};

std::string render_boxplot_svg(const std::string& title, std::vector<BoxSeries> series);

// One figure per category. Score figures plot normalized values when
// normalize_by_standard ran, raw log10(CVDLoss) otherwise; delta figures plot
// the daltonization log10 deltas. Keys are category names.
std::map<std::string, std::string> render_score_figures(
    const std::vector<EvaluationRecord>& records);
std::map<std::string, std::string> render_delta_figures(
    const std::vector<DeltaRecord>& deltas);

}  // namespace cvdloss
