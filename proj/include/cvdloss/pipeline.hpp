#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvdloss/manifest.hpp"
#include "cvdloss/metric.hpp"
#include "cvdloss/simulate.hpp"

namespace cvdloss {

struct EvaluationRecord {
    ImageRecord record;
    Deficiency deficiency = Deficiency::Protanopia;
    std::optional<double> value;        // CVDLoss; absent iff error is set
    std::optional<double> log10_value;  // present iff value > 0
    std::optional<double> normalized;   // set by normalize_by_standard
    std::string error;                  // diagnostic for degenerate/unreadable images
};

struct GroupKey {
    std::string category;
    Deficiency deficiency = Deficiency::Protanopia;

    bool operator<(const GroupKey& o) const {
        return category != o.category ? category < o.category : deficiency < o.deficiency;
    }
    bool operator==(const GroupKey& o) const = default;
};

// Five-number distribution summary of log10(CVDLoss) per
// (category, prompt_type, deficiency) group. Quartiles use linear
// interpolation; q1 <= median <= q3.
struct CategorySummary {
    std::string category;
    std::string prompt_type;
    Deficiency deficiency = Deficiency::Protanopia;
    std::size_t count = 0;        // non-degenerate contributors
    std::size_t error_count = 0;  // degenerate/unreadable, excluded above
    double mean = 0, median = 0, q1 = 0, q3 = 0;
    std::optional<double> normalized_mean, normalized_median, normalized_q1, normalized_q3;
};

struct DeltaRecord {
    ImageRecord record;
    Deficiency deficiency = Deficiency::Protanopia;
    std::optional<double> delta;  // log10 CVDLoss change after daltonization
    std::string error;
};

struct DeltaSummary {
    std::string category;
    Deficiency deficiency = Deficiency::Protanopia;
    std::size_t count = 0;
    std::size_t excluded = 0;
    double mean = 0, median = 0, q1 = 0, q3 = 0;
};

// Number of worker threads: CVDLOSS_WORKERS if set, else hardware concurrency.
int default_worker_count();

// Scores every (record, deficiency) pair routed by the prompt type. Output
// order follows manifest order regardless of worker count; per-image failures
// become error-marked records and never abort the run.
std::vector<EvaluationRecord> evaluate_corpus(const DatasetManifest& m, int workers = 0);

// Subtracts, within each (category, deficiency) group, the mean standard-
// prompt log10(CVDLoss) from every record's log10 value. Returns the groups
// that had no usable standard-prompt baseline (left unnormalized).
std::vector<GroupKey> normalize_by_standard(std::vector<EvaluationRecord>& records);

std::vector<CategorySummary> summarize(const std::vector<EvaluationRecord>& records);

// Daltonization verification: for every standard-prompt image and both
// deficiencies, the log10 CVDLoss change from daltonizing. Throws
// std::runtime_error("nothing to verify") when the manifest has no
// standard-prompt records.
std::vector<DeltaRecord> daltonization_experiment(const DatasetManifest& m, int workers = 0);

std::vector<DeltaSummary> summarize_deltas(const std::vector<DeltaRecord>& deltas);

// Quartile helper shared by the summaries; linear interpolation between
// order statistics. data need not be sorted.
double quantile(std::vector<double> data, double q);

}  // namespace cvdloss
