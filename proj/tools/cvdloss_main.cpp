#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cvdloss/color.hpp"
#include "cvdloss/daltonize.hpp"
#include "cvdloss/gradient.hpp"
#include "cvdloss/manifest.hpp"
#include "cvdloss/metric.hpp"
#include "cvdloss/pipeline.hpp"
#include "cvdloss/png_io.hpp"
#include "cvdloss/report.hpp"
#include "cvdloss/simulate.hpp"
#include "cvdloss/testcards.hpp"

namespace fs = std::filesystem;
using namespace cvdloss;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("failed to open '" + path + "' for writing");
    os << content;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("failed to open '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

std::string join_argv(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

DatasetManifest load_input(const std::string& manifest_path, const std::string& images_dir) {
    if (!manifest_path.empty()) return load_manifest(manifest_path);
    return discover_manifest(images_dir);
}

void write_figures(const std::string& dir, const std::map<std::string, std::string>& figures,
                   const std::string& suffix) {
    fs::create_directories(dir);
    for (const auto& [category, svg] : figures) {
        write_file(dir + "/" + category + suffix + ".svg", svg);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"CVDLoss: color accessibility scoring for red-green color vision deficiencies"};
    app.require_subcommand(0, 1);

    std::string seed_cards_dir;
    app.add_option("--seed-cards", seed_cards_dir,
                   "Generate the synthetic red/green test-card corpus into this directory");

    std::string deficiency_name = "protan";
    std::string in_path, out_path, raw_path;
    std::string manifest_path, images_dir, out_dir = "results";
    std::string normalize_mode = "standard";
    int workers = 0;

    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate dichromatic vision of a PNG");
    simulate_cmd->add_option("--deficiency", deficiency_name, "protan or deutan");
    simulate_cmd->add_option("input", in_path)->required();
    simulate_cmd->add_option("output", out_path)->required();

    auto* daltonize_cmd = app.add_subcommand("daltonize", "Daltonize a PNG at full strength");
    daltonize_cmd->add_option("--deficiency", deficiency_name, "protan or deutan");
    daltonize_cmd->add_option("input", in_path)->required();
    daltonize_cmd->add_option("output", out_path)->required();

    auto* gmm_cmd = app.add_subcommand("gmm", "Emit the perceptual gradient magnitude map");
    gmm_cmd->add_option("input", in_path)->required();
    gmm_cmd->add_option("output", out_path, "Grayscale PNG, normalized by its maximum")
        ->required();
    gmm_cmd->add_option("--raw", raw_path, "Also dump raw float64 values (GMM1 format)");

    auto* score_cmd = app.add_subcommand("score", "Print the CVDLoss score of a PNG as JSON");
    score_cmd->add_option("--deficiency", deficiency_name, "protan or deutan");
    score_cmd->add_option("input", in_path)->required();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a corpus and emit tables/figures");
    evaluate_cmd->add_option("--manifest", manifest_path, "Manifest TSV");
    evaluate_cmd->add_option("--images", images_dir,
                             "Directory tree <category>/<prompt_type>/*.png");
    evaluate_cmd->add_option("--out", out_dir, "Output directory");
    evaluate_cmd->add_option("--workers", workers, "Worker threads (default: CVDLOSS_WORKERS)");
    evaluate_cmd->add_option("--normalize", normalize_mode, "standard or none");

    auto* verify_cmd =
        app.add_subcommand("verify-daltonization", "Run the daltonization verification");
    verify_cmd->add_option("--manifest", manifest_path, "Manifest TSV");
    verify_cmd->add_option("--images", images_dir, "Directory tree");
    verify_cmd->add_option("--out", out_dir, "Output directory");
    verify_cmd->add_option("--workers", workers, "Worker threads");

    auto* report_cmd =
        app.add_subcommand("report", "Regenerate figures from previously emitted tables");
    report_cmd->add_option("--in", in_path, "Directory holding records.tsv / deltas.tsv")
        ->required();
    report_cmd->add_option("--out", out_path, "Figure output directory (default: <in>/figures)");
    report_cmd->add_option("--normalize", normalize_mode, "standard or none");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    if (!seed_cards_dir.empty()) {
        const std::string manifest = write_seed_card_corpus(seed_cards_dir);
        std::cout << "wrote test-card corpus, manifest: " << manifest << "\n";
        if (app.get_subcommands().empty()) return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
    }

    if (*simulate_cmd) {
        const Deficiency d = parse_deficiency(deficiency_name);
        const Srgb8Image img = read_png(in_path);
        write_png(out_path, encode_srgb(simulate_image(decode_srgb(img), d)));
        return 0;
    }

    if (*daltonize_cmd) {
        const Deficiency d = parse_deficiency(deficiency_name);
        const DaltonizationResult result = daltonize(read_png(in_path), d);
        write_png(out_path, result.image);
        std::cout << "clip_fraction " << result.clip_fraction << "\n";
        return 0;
    }

    if (*gmm_cmd) {
        const GradientMagnitudeMap map =
            gradient_magnitude_map(to_oklab(decode_srgb(read_png(in_path))));
        write_png_gray(out_path, map);
        if (!raw_path.empty()) write_gmm_raw(raw_path, map);
        return 0;
    }

    if (*score_cmd) {
        const Deficiency d = parse_deficiency(deficiency_name);
        const CvdLossScore score = cvdloss_for_image(read_png(in_path), d);
        nlohmann::ordered_json j;
        j["value"] = score.value;
        j["log10_value"] = score.value > 0 ? nlohmann::json(std::log10(score.value))
                                           : nlohmann::json(nullptr);
        j["n_pixels"] = score.n_pixels;
        j["max_gradient"] = score.max_gradient;
        std::cout << j.dump() << "\n";
        return 0;
    }

    if (*evaluate_cmd) {
        if (manifest_path.empty() == images_dir.empty()) {
            throw std::runtime_error("evaluate: pass exactly one of --manifest or --images");
        }
        if (workers <= 0) workers = default_worker_count();
        const DatasetManifest m = load_input(manifest_path, images_dir);
        std::vector<EvaluationRecord> records = evaluate_corpus(m, workers);
        if (normalize_mode == "standard") {
            for (const GroupKey& key : normalize_by_standard(records)) {
                std::cerr << "note: no standard-prompt baseline for category '" << key.category
                          << "' / " << to_string(key.deficiency) << "\n";
            }
        } else if (normalize_mode != "none") {
            throw std::runtime_error("evaluate: --normalize must be standard or none");
        }

        fs::create_directories(out_dir);
        write_file(out_dir + "/records.tsv", format_records_tsv(records));
        write_file(out_dir + "/summaries.tsv", format_summaries_tsv(summarize(records)));
        write_file(out_dir + "/run_metadata.json",
                   run_metadata_json(join_argv(argc, argv), workers));
        // Figures are rendered from the emitted table, not from in-memory
        // state, so `report` regenerates them byte-identically.
        const auto table_records = parse_records_tsv(read_file(out_dir + "/records.tsv"));
        write_figures(out_dir + "/figures", render_score_figures(table_records), "");

        std::size_t errors = 0;
        for (const auto& er : records) {
            if (!er.error.empty()) ++errors;
        }
        std::cout << "evaluated " << records.size() << " records (" << errors
                  << " errors), output in " << out_dir << "\n";
        return 0;
    }

    if (*verify_cmd) {
        if (manifest_path.empty() == images_dir.empty()) {
            throw std::runtime_error(
                "verify-daltonization: pass exactly one of --manifest or --images");
        }
        if (workers <= 0) workers = default_worker_count();
        const DatasetManifest m = load_input(manifest_path, images_dir);
        const std::vector<DeltaRecord> deltas = daltonization_experiment(m, workers);

        fs::create_directories(out_dir);
        write_file(out_dir + "/deltas.tsv", format_delta_records_tsv(deltas));
        write_file(out_dir + "/delta_summaries.tsv",
                   format_delta_summaries_tsv(summarize_deltas(deltas)));
        write_file(out_dir + "/run_metadata.json",
                   run_metadata_json(join_argv(argc, argv), workers));
        const auto table_deltas = parse_delta_records_tsv(read_file(out_dir + "/deltas.tsv"));
        write_figures(out_dir + "/figures", render_delta_figures(table_deltas),
                      "_daltonization");

        std::size_t excluded = 0;
        for (const auto& dr : deltas) {
            if (!dr.delta) ++excluded;
        }
        std::cout << "verified " << deltas.size() << " image/deficiency pairs (" << excluded
                  << " excluded), output in " << out_dir << "\n";
        return 0;
    }

    if (*report_cmd) {
        auto records_path = in_path + "/records.tsv";
        auto deltas_path = in_path + "/deltas.tsv";
        const std::string fig_dir = out_path.empty() ? in_path + "/figures" : out_path;
        bool any = false;
        if (fs::exists(records_path)) {
            auto records = parse_records_tsv(read_file(records_path));
            const bool already_normalized =
                std::any_of(records.begin(), records.end(),
                            [](const EvaluationRecord& er) { return er.normalized.has_value(); });
            // The normalized column from the table wins when present; it was
            // computed before the 9-digit rounding.
            if (normalize_mode == "standard" && !already_normalized) {
                normalize_by_standard(records);
            }
            write_figures(fig_dir, render_score_figures(records), "");
            any = true;
        }
        if (fs::exists(deltas_path)) {
            const auto deltas = parse_delta_records_tsv(read_file(deltas_path));
            write_figures(fig_dir, render_delta_figures(deltas), "_daltonization");
            any = true;
        }
        if (!any) throw std::runtime_error("report: no records.tsv or deltas.tsv in " + in_path);
        std::cout << "figures written to " << fig_dir << "\n";
        return 0;
    }

    std::cerr << app.help();
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
