#include "cvdloss/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <tuple>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cvdloss/daltonize.hpp"
#include "cvdloss/png_io.hpp"

namespace cvdloss {
namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Runs fn(i) for i in [0, n) across the given number of threads.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(workers, n);
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

}  // namespace

int default_worker_count() {
    if (const char* env = std::getenv("CVDLOSS_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

double quantile(std::vector<double> data, double q) {
    if (data.empty()) throw std::invalid_argument("quantile of empty data");
    std::sort(data.begin(), data.end());
    const double pos = q * static_cast<double>(data.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, data.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return data[lo] * (1.0 - frac) + data[hi] * frac;
}

std::vector<EvaluationRecord> evaluate_corpus(const DatasetManifest& m, int workers) {
    if (workers <= 0) workers = default_worker_count();

    std::vector<EvaluationRecord> out;
    for (const auto& rec : m.records) {
        for (Deficiency d : deficiencies_for_prompt_type(rec.prompt_type)) {
            out.push_back({rec, d, std::nullopt, std::nullopt, std::nullopt, ""});
        }
    }

    parallel_for(out.size(), workers, [&](std::size_t i) {
        EvaluationRecord& er = out[i];
        try {
            const Srgb8Image img = read_png(er.record.path);
            const CvdLossScore score = cvdloss_for_image(img, er.deficiency);
            er.value = score.value;
            if (score.value > 0.0) er.log10_value = std::log10(score.value);
        } catch (const std::exception& e) {
            er.error = e.what();
        }
    });
    return out;
}

std::vector<GroupKey> normalize_by_standard(std::vector<EvaluationRecord>& records) {
    std::map<GroupKey, std::vector<double>> baselines;
    std::map<GroupKey, bool> groups;
    for (const auto& er : records) {
        const GroupKey key{er.record.category, er.deficiency};
        groups[key] = true;
        if (er.record.prompt_type == "standard" && er.log10_value) {
            baselines[key].push_back(*er.log10_value);
        }
    }
    std::vector<GroupKey> missing;
    for (const auto& [key, _] : groups) {
        if (!baselines.count(key)) missing.push_back(key);
    }
    for (auto& er : records) {
        const GroupKey key{er.record.category, er.deficiency};
        const auto it = baselines.find(key);
        if (it != baselines.end() && er.log10_value) {
            er.normalized = *er.log10_value - mean_of(it->second);
        }
    }
    return missing;
}

std::vector<CategorySummary> summarize(const std::vector<EvaluationRecord>& records) {
    struct Bucket {
        std::vector<double> log10s;
        std::vector<double> normalized;
        std::size_t errors = 0;
    };
    std::map<std::tuple<std::string, std::string, Deficiency>, Bucket> buckets;
    for (const auto& er : records) {
        Bucket& b = buckets[{er.record.category, er.record.prompt_type, er.deficiency}];
        if (!er.error.empty() || !er.log10_value) {
            ++b.errors;
            continue;
        }
        b.log10s.push_back(*er.log10_value);
        if (er.normalized) b.normalized.push_back(*er.normalized);
    }
    std::vector<CategorySummary> out;
    for (const auto& [key, b] : buckets) {
        CategorySummary s;
        std::tie(s.category, s.prompt_type, s.deficiency) = key;
        s.count = b.log10s.size();
        s.error_count = b.errors;
        if (s.count > 0) {
            s.mean = mean_of(b.log10s);
            s.median = quantile(b.log10s, 0.5);
            s.q1 = quantile(b.log10s, 0.25);
            s.q3 = quantile(b.log10s, 0.75);
        }
        if (b.normalized.size() == b.log10s.size() && !b.normalized.empty()) {
            s.normalized_mean = mean_of(b.normalized);
            s.normalized_median = quantile(b.normalized, 0.5);
            s.normalized_q1 = quantile(b.normalized, 0.25);
            s.normalized_q3 = quantile(b.normalized, 0.75);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<DeltaRecord> daltonization_experiment(const DatasetManifest& m, int workers) {
    if (workers <= 0) workers = default_worker_count();

    std::vector<DeltaRecord> out;
    for (const auto& rec : m.records) {
        if (rec.prompt_type != "standard") continue;
        out.push_back({rec, Deficiency::Protanopia, std::nullopt, ""});
        out.push_back({rec, Deficiency::Deuteranopia, std::nullopt, ""});
    }
    if (out.empty()) throw std::runtime_error("nothing to verify: no standard-prompt records");

    parallel_for(out.size(), workers, [&](std::size_t i) {
        DeltaRecord& dr = out[i];
        try {
            const Srgb8Image img = read_png(dr.record.path);
            dr.delta = daltonization_delta(img, dr.deficiency);
        } catch (const std::exception& e) {
            dr.error = e.what();
        }
    });
    return out;
}

std::vector<DeltaSummary> summarize_deltas(const std::vector<DeltaRecord>& deltas) {
    struct Bucket {
        std::vector<double> values;
        std::size_t excluded = 0;
    };
    std::map<GroupKey, Bucket> buckets;
    for (const auto& dr : deltas) {
        Bucket& b = buckets[{dr.record.category, dr.deficiency}];
        if (dr.delta) {
            b.values.push_back(*dr.delta);
        } else {
            ++b.excluded;
        }
    }
    std::vector<DeltaSummary> out;
    for (const auto& [key, b] : buckets) {
        DeltaSummary s;
        s.category = key.category;
        s.deficiency = key.deficiency;
        s.count = b.values.size();
        s.excluded = b.excluded;
        if (s.count > 0) {
            s.mean = mean_of(b.values);
            s.median = quantile(b.values, 0.5);
            s.q1 = quantile(b.values, 0.25);
            s.q3 = quantile(b.values, 0.75);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace cvdloss
