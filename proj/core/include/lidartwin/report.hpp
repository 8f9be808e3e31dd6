#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lidartwin {

// Metrics for one candidate/reference frame pair. Fields stay unset when the
// reference cannot support them (mesh-only references yield just p2m).
struct PairMetrics {
    std::uint64_t frame = 0;
    std::optional<double> hausdorff_p95;
    std::optional<double> hausdorff_max;  // populated only in verbose runs
    std::optional<double> jsd;
    std::optional<double> p2m_mean;
};

// Result of evaluating one dataset against one reference.
struct DatasetEval {
    std::string candidate;
    std::string reference;
    double voxel_size = 0.5;
    std::vector<PairMetrics> pairs;
    std::vector<double> p2m_distances;  // pooled per-point multiset
    std::optional<double> mean_hausdorff_p95;
    std::optional<double> mean_jsd;
    std::optional<double> mean_p2m;

    void compute_means();
    std::vector<double> values(const std::string& metric) const;  // per-pair multiset
};

// Side-by-side comparison of one metric across two evaluations.
struct MetricComparison {
    std::optional<double> mean_candidate;
    std::optional<double> mean_baseline;
    std::optional<double> reduction_pct;      // (1 - candidate/baseline) * 100, 1 decimal
    std::vector<double> values_candidate;     // histogram multisets
    std::vector<double> values_baseline;
};

struct FidelityReport {
    MetricComparison hausdorff_p95;
    MetricComparison jsd;
    MetricComparison p2m;
};

// (1 - candidate/baseline) * 100 rounded to one decimal.
// Throws Error(DegenerateBaseline) when baseline <= 0.
double percent_reduction(double candidate, double baseline);

// Per-metric means and percent reductions of candidate vs baseline, with the
// distance multisets carried along for histogram emission.
FidelityReport aggregate(const DatasetEval& candidate, const DatasetEval& baseline);

// One CSV per metric under out_dir: bin_left,bin_right,count_dt,count_other
// with 50 fixed bins over the pooled min..max. Metrics with no values on
// either side are skipped.
void emit_histograms(const FidelityReport& report, const std::string& out_dir);

// Human-readable comparison table (candidate vs baseline, lower is better).
std::string format_comparison_table(const FidelityReport& report);

// report.json round trip for `evaluate` outputs.
void save_dataset_eval(const DatasetEval& eval, const std::string& path);
DatasetEval load_dataset_eval(const std::string& path);

// aggregate.json writer for `report --out`.
void save_fidelity_report(const FidelityReport& report, const std::string& path);

}  // namespace lidartwin
