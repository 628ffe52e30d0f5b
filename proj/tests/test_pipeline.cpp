#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "cvdloss/pipeline.hpp"
#include "cvdloss/png_io.hpp"
#include "cvdloss/testcards.hpp"

namespace fs = std::filesystem;
using namespace cvdloss;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("cvdloss_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

DatasetManifest small_corpus(const TempDir& tmp) {
    DatasetManifest m;
    long seed = 0;
    for (auto prompt : kPromptTypes) {
        const std::string dir = (tmp.path / "fruit" / std::string(prompt)).string();
        fs::create_directories(dir);
        const std::string path = dir + "/card.png";
        write_png(path, make_step_card(16, 16, hue_to_rgb8(10.0 * seed),
                                       hue_to_rgb8(110.0 + 5.0 * seed)));
        m.records.push_back({path, "fruit", std::string(prompt), seed++});
    }
    return m;
}

}  // namespace

TEST_CASE("routing rule drives the record count") {
    TempDir tmp("routing");
    const DatasetManifest m = small_corpus(tmp);
    const auto records = evaluate_corpus(m, 1);
    // standard and colorblind_aware give 2 each, the specific prompts 1 each
    CHECK(records.size() == 6);
    std::size_t protan = 0, deutan = 0;
    for (const auto& er : records) {
        (er.deficiency == Deficiency::Protanopia ? protan : deutan)++;
        CHECK(er.error.empty());
        CHECK(er.value.has_value());
        CHECK(er.log10_value.has_value());
    }
    CHECK(protan == 3);
    CHECK(deutan == 3);
}

TEST_CASE("degenerate and unreadable images are error-marked, not fatal") {
    TempDir tmp("errors");
    DatasetManifest m = small_corpus(tmp);
    const std::string flat_path = (tmp.path / "fruit" / "standard" / "flat.png").string();
    write_png(flat_path, Srgb8Image{8, 8, std::vector<std::uint8_t>(3u * 64, 200)});
    m.records.push_back({flat_path, "fruit", "standard", std::nullopt});
    m.records.push_back({(tmp.path / "nope.png").string(), "fruit", "standard", std::nullopt});

    const auto records = evaluate_corpus(m, 1);
    CHECK(records.size() == 10);  // 6 + 2 + 2
    std::size_t errors = 0;
    for (const auto& er : records) {
        if (!er.error.empty()) {
            ++errors;
            CHECK(!er.value.has_value());
        }
    }
    CHECK(errors == 4);
}

TEST_CASE("worker count does not change results or their order") {
    TempDir tmp("workers");
    const std::string manifest_path = write_seed_card_corpus(tmp.path.string(), 16);
    const DatasetManifest m = load_manifest(manifest_path);
    const auto serial = evaluate_corpus(m, 1);
    const auto parallel = evaluate_corpus(m, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].record.path == parallel[i].record.path);
        CHECK(serial[i].deficiency == parallel[i].deficiency);
        CHECK(serial[i].value == parallel[i].value);
    }
}

TEST_CASE("normalization arithmetic on a synthetic group") {
    std::vector<EvaluationRecord> records;
    auto rec = [](const char* prompt, double log10v) {
        EvaluationRecord er;
        er.record = {"p" + std::to_string(rand()), "candy", prompt, std::nullopt};
        er.deficiency = Deficiency::Protanopia;
        er.value = std::pow(10.0, log10v);
        er.log10_value = log10v;
        return er;
    };
    records.push_back(rec("standard", -2.0));
    records.push_back(rec("standard", -4.0));
    records.push_back(rec("colorblind_aware", -2.5));
    const auto missing = normalize_by_standard(records);
    CHECK(missing.empty());
    CHECK(*records[0].normalized == doctest::Approx(1.0));
    CHECK(*records[1].normalized == doctest::Approx(-1.0));
    CHECK(*records[2].normalized == doctest::Approx(0.5));
    // the standard group mean is exactly zero
    CHECK(std::abs(*records[0].normalized + *records[1].normalized) < 1e-12);
}

TEST_CASE("groups without a standard baseline are reported and skipped") {
    std::vector<EvaluationRecord> records;
    EvaluationRecord er;
    er.record = {"x.png", "candy", "colorblind_aware", std::nullopt};
    er.deficiency = Deficiency::Deuteranopia;
    er.value = 0.01;
    er.log10_value = -2.0;
    records.push_back(er);
    const auto missing = normalize_by_standard(records);
    REQUIRE(missing.size() == 1);
    CHECK(missing[0].category == "candy");
    CHECK(missing[0].deficiency == Deficiency::Deuteranopia);
    CHECK(!records[0].normalized.has_value());
}

TEST_CASE("summaries have ordered quartiles and conserve counts") {
    TempDir tmp("summaries");
    const DatasetManifest m = load_manifest(write_seed_card_corpus(tmp.path.string(), 16));
    auto records = evaluate_corpus(m, 1);
    normalize_by_standard(records);
    const auto summaries = summarize(records);
    std::size_t total = 0;
    for (const auto& s : summaries) {
        total += s.count + s.error_count;
        if (s.count > 0) {
            CHECK(s.q1 <= s.median);
            CHECK(s.median <= s.q3);
        }
        if (s.prompt_type == "standard" && s.normalized_mean) {
            CHECK(std::abs(*s.normalized_mean) < 1e-12);
        }
    }
    CHECK(total == records.size());
}

TEST_CASE("daltonization experiment on red/green cards favors protanopia") {
    TempDir tmp("daltexp");
    const DatasetManifest m = load_manifest(write_seed_card_corpus(tmp.path.string(), 16));
    const auto deltas = daltonization_experiment(m, 1);
    CHECK(deltas.size() == 2 * m.records.size());
    std::vector<double> protan_deltas;
    for (const auto& dr : deltas) {
        if (dr.deficiency == Deficiency::Protanopia && dr.delta) {
            protan_deltas.push_back(*dr.delta);
        }
    }
    REQUIRE(!protan_deltas.empty());
    CHECK(quantile(protan_deltas, 0.5) < 0.0);
}

TEST_CASE("experiment without standard-prompt records is rejected") {
    TempDir tmp("nothing");
    DatasetManifest m;
    const std::string dir = (tmp.path / "fruit" / "protanopia_aware").string();
    fs::create_directories(dir);
    const std::string path = dir + "/card.png";
    write_png(path, make_step_card(8, 8, {255, 0, 0}, {0, 255, 0}));
    m.records.push_back({path, "fruit", "protanopia_aware", std::nullopt});
    CHECK_THROWS_WITH_AS(daltonization_experiment(m, 1),
                         "nothing to verify: no standard-prompt records", std::runtime_error);
}

TEST_CASE("quantile interpolation") {
    CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile({3, 1, 2}, 0.5) == doctest::Approx(2.0));
    CHECK(quantile({1, 2, 3, 4}, 0.25) == doctest::Approx(1.75));
    CHECK(quantile({5}, 0.75) == doctest::Approx(5.0));
}
