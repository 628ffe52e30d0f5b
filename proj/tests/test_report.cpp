#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "cvdloss/report.hpp"

using namespace cvdloss;

namespace {

std::vector<EvaluationRecord> sample_records() {
    std::vector<EvaluationRecord> records;
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> u(-5.0, -1.0);
    int i = 0;
    for (const char* cat : {"candy", "flower"}) {
        for (const char* prompt :
             {"standard", "colorblind_aware", "protanopia_aware", "deuteranopia_aware"}) {
            for (Deficiency d : deficiencies_for_prompt_type(prompt)) {
                for (int k = 0; k < 3; ++k) {
                    EvaluationRecord er;
                    er.record = {"img_" + std::to_string(i++) + ".png", cat, prompt,
                                 i % 2 ? std::optional<long>(i) : std::nullopt};
                    er.deficiency = d;
                    const double lg = u(rng);
                    er.value = std::pow(10.0, lg);
                    er.log10_value = lg;
                    records.push_back(er);
                }
            }
        }
    }
    EvaluationRecord bad;
    bad.record = {"broken.png", "candy", "standard", std::nullopt};
    bad.error = "degenerate reference: metric undefined";
    records.push_back(bad);
    return records;
}

}  // namespace

TEST_CASE("records table round-trips through format/parse") {
    auto records = sample_records();
    normalize_by_standard(records);
    const std::string table = format_records_tsv(records);
    const auto parsed = parse_records_tsv(table);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].record.path == records[i].record.path);
        CHECK(parsed[i].record.seed == records[i].record.seed);
        CHECK(parsed[i].deficiency == records[i].deficiency);
        CHECK(parsed[i].error == records[i].error);
        CHECK(parsed[i].value.has_value() == records[i].value.has_value());
        if (records[i].value) {
            CHECK(*parsed[i].value ==
                  doctest::Approx(*records[i].value).epsilon(1e-8));  // 9 significant digits
        }
    }
    // formatting is deterministic
    CHECK(format_records_tsv(records) == table);
}

TEST_CASE("delta table round-trips") {
    std::vector<DeltaRecord> deltas;
    deltas.push_back({{"a.png", "candy", "standard", 1}, Deficiency::Protanopia, -0.25, ""});
    deltas.push_back({{"b.png", "candy", "standard", std::nullopt},
                      Deficiency::Deuteranopia,
                      std::nullopt,
                      "degenerate reference: metric undefined"});
    const std::string table = format_delta_records_tsv(deltas);
    const auto parsed = parse_delta_records_tsv(table);
    REQUIRE(parsed.size() == 2);
    CHECK(*parsed[0].delta == doctest::Approx(-0.25));
    CHECK(!parsed[1].delta.has_value());
    CHECK(parsed[1].error == "degenerate reference: metric undefined");
}

TEST_CASE("summary table has a row per group") {
    auto records = sample_records();
    normalize_by_standard(records);
    const auto summaries = summarize(records);
    const std::string table = format_summaries_tsv(summaries);
    const auto lines = std::count(table.begin(), table.end(), '\n');
    CHECK(static_cast<std::size_t>(lines) == summaries.size() + 1);
}

TEST_CASE("run metadata is valid JSON with the constant identifiers") {
    const auto meta = nlohmann::json::parse(run_metadata_json("cvdloss evaluate --out r", 4));
    CHECK(meta["workers"] == 4);
    CHECK(meta["constants"]["simulation"] == "vienot1999-smithpokorny");
    CHECK(meta["command"] == "cvdloss evaluate --out r");
}

TEST_CASE("boxplot SVG: median, zero line, outliers, legend") {
    BoxSeries s;
    s.label = "std/P";
    s.deficiency = Deficiency::Protanopia;
    s.values = {-1.0, 0.0, 1.0, 9.0};  // 9.0 lies beyond the 1.5 IQR fence
    const std::string svg = render_boxplot_svg("candy", {s});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // zero reference
    CHECK(svg.find("circle") != std::string::npos);            // outlier point
    CHECK(svg.find("protanopia") != std::string::npos);
    CHECK(svg.find("deuteranopia") != std::string::npos);
    CHECK(svg.find("std/P") != std::string::npos);
    // deterministic render
    CHECK(render_boxplot_svg("candy", {s}) == svg);
}

TEST_CASE("empty series are annotated") {
    BoxSeries s;
    s.label = "cb/D";
    s.deficiency = Deficiency::Deuteranopia;
    const std::string svg = render_boxplot_svg("flower", {s});
    CHECK(svg.find("empty") != std::string::npos);
}

TEST_CASE("score figures: one per category, numbers from the table") {
    auto records = sample_records();
    normalize_by_standard(records);
    const auto parsed = parse_records_tsv(format_records_tsv(records));
    const auto figures = render_score_figures(parsed);
    CHECK(figures.size() == 2);
    CHECK(figures.count("candy") == 1);
    CHECK(figures.count("flower") == 1);
    // regenerating from the same table reproduces identical files
    CHECK(render_score_figures(parsed) == figures);
}
