#include "lidartwin/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "lidartwin/errors.hpp"
#include "lidartwin/fs_util.hpp"

namespace lidartwin {

using nlohmann::json;

namespace {

std::optional<double> mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    double sum = 0.0;
    for (const double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

void set_if(json& obj, const char* key, const std::optional<double>& v) {
    if (v) obj[key] = *v;
}

std::optional<double> get_if(const json& obj, const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    return obj[key].get<double>();
}

}  // namespace

void DatasetEval::compute_means() {
    std::vector<double> h, j, p;
    for (const PairMetrics& pm : pairs) {
        if (pm.hausdorff_p95) h.push_back(*pm.hausdorff_p95);
        if (pm.jsd) j.push_back(*pm.jsd);
        if (pm.p2m_mean) p.push_back(*pm.p2m_mean);
    }
    mean_hausdorff_p95 = mean_of(h);
    mean_jsd = mean_of(j);
    mean_p2m = mean_of(p);
}

std::vector<double> DatasetEval::values(const std::string& metric) const {
    std::vector<double> out;
    for (const PairMetrics& pm : pairs) {
        if (metric == "hausdorff_p95" && pm.hausdorff_p95) out.push_back(*pm.hausdorff_p95);
        if (metric == "jsd" && pm.jsd) out.push_back(*pm.jsd);
        if (metric == "p2m" && pm.p2m_mean) out.push_back(*pm.p2m_mean);
    }
    return out;
}

double percent_reduction(double candidate, double baseline) {
    if (candidate == baseline) return 0.0;  // identity comparison, even at zero
    if (!(baseline > 0.0))
        throw Error(ErrorCode::DegenerateBaseline,
                    "baseline mean must be positive to compute a reduction");
    const double pct = (1.0 - candidate / baseline) * 100.0;
    return std::round(pct * 10.0) / 10.0;
}

FidelityReport aggregate(const DatasetEval& candidate, const DatasetEval& baseline) {
    if (candidate.pairs.empty() || baseline.pairs.empty())
        throw Error(ErrorCode::DegenerateBaseline, "aggregate needs at least one pair per side");

    FidelityReport report;
    struct Row {
        MetricComparison* cmp;
        const std::optional<double>* mc;
        const std::optional<double>* mb;
        const char* name;
    };
    const Row rows[] = {
        {&report.hausdorff_p95, &candidate.mean_hausdorff_p95, &baseline.mean_hausdorff_p95,
         "hausdorff_p95"},
        {&report.jsd, &candidate.mean_jsd, &baseline.mean_jsd, "jsd"},
        {&report.p2m, &candidate.mean_p2m, &baseline.mean_p2m, "p2m"},
    };
    for (const Row& row : rows) {
        row.cmp->mean_candidate = *row.mc;
        row.cmp->mean_baseline = *row.mb;
        if (*row.mc && *row.mb)
            row.cmp->reduction_pct = percent_reduction(**row.mc, **row.mb);
        row.cmp->values_candidate = candidate.values(row.name);
        row.cmp->values_baseline = baseline.values(row.name);
    }
    // P2M histograms use the pooled per-point distances when available.
    if (!candidate.p2m_distances.empty()) report.p2m.values_candidate = candidate.p2m_distances;
    if (!baseline.p2m_distances.empty()) report.p2m.values_baseline = baseline.p2m_distances;
    return report;
}

void emit_histograms(const FidelityReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    constexpr int kBins = 50;
    const std::pair<const MetricComparison*, const char*> metrics[] = {
        {&report.hausdorff_p95, "hausdorff_p95"},
        {&report.jsd, "jsd"},
        {&report.p2m, "p2m"},
    };

    for (const auto& [cmp, name] : metrics) {
        const std::vector<double>& dt = cmp->values_candidate;
        const std::vector<double>& other = cmp->values_baseline;
        if (dt.empty() && other.empty()) continue;

        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const double v : dt) { lo = std::min(lo, v); hi = std::max(hi, v); }
        for (const double v : other) { lo = std::min(lo, v); hi = std::max(hi, v); }
        if (lo == hi) { lo -= 0.5; hi += 0.5; }
        const double width = (hi - lo) / kBins;

        std::vector<std::uint64_t> count_dt(kBins, 0), count_other(kBins, 0);
        auto bin_of = [&](double v) {
            int b = static_cast<int>(std::floor((v - lo) / width));
            return std::clamp(b, 0, kBins - 1);
        };
        for (const double v : dt) ++count_dt[bin_of(v)];
        for (const double v : other) ++count_other[bin_of(v)];

        std::ostringstream csv;
        csv << "bin_left,bin_right,count_dt,count_other\n";
        char buf[96];
        for (int b = 0; b < kBins; ++b) {
            std::snprintf(buf, sizeof(buf), "%.9g,%.9g,", lo + b * width, lo + (b + 1) * width);
            csv << buf << count_dt[b] << "," << count_other[b] << "\n";
        }
        write_file_atomic((fs::path(out_dir) / (std::string(name) + ".csv")).string(), csv.str());
    }
}

std::string format_comparison_table(const FidelityReport& report) {
    std::ostringstream os;
    os << "metric          candidate     baseline     reduction\n";
    const std::pair<const MetricComparison*, const char*> rows[] = {
        {&report.hausdorff_p95, "P95 Hausdorff"},
        {&report.jsd, "JS Divergence"},
        {&report.p2m, "P2M"},
    };
    char buf[160];
    for (const auto& [cmp, label] : rows) {
        if (!cmp->mean_candidate && !cmp->mean_baseline) continue;
        const double mc = cmp->mean_candidate.value_or(std::nan(""));
        const double mb = cmp->mean_baseline.value_or(std::nan(""));
        if (cmp->reduction_pct) {
            double delta = -*cmp->reduction_pct;
            if (delta == 0.0) delta = 0.0;  // avoid printing -0.0
            std::snprintf(buf, sizeof(buf), "%-15s %-13.4g %-12.4g %+.1f%%\n", label, mc, mb,
                          delta);
        }
        else {
            std::snprintf(buf, sizeof(buf), "%-15s %-13.4g %-12.4g n/a\n", label, mc, mb);
        }
        os << buf;
    }
    return os.str();
}

void save_dataset_eval(const DatasetEval& eval, const std::string& path) {
    json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "evaluation";
    doc["candidate"] = eval.candidate;
    doc["reference"] = eval.reference;
    doc["voxel_size"] = eval.voxel_size;

    json pairs = json::array();
    for (const PairMetrics& pm : eval.pairs) {
        json p;
        p["frame"] = pm.frame;
        set_if(p, "hausdorff_p95", pm.hausdorff_p95);
        set_if(p, "hausdorff_max", pm.hausdorff_max);
        set_if(p, "jsd", pm.jsd);
        set_if(p, "p2m_mean", pm.p2m_mean);
        pairs.push_back(std::move(p));
    }
    doc["pairs"] = std::move(pairs);

    json means;
    set_if(means, "hausdorff_p95", eval.mean_hausdorff_p95);
    set_if(means, "jsd", eval.mean_jsd);
    set_if(means, "p2m_mean", eval.mean_p2m);
    doc["means"] = std::move(means);
    doc["p2m_distances"] = eval.p2m_distances;

    write_file_atomic(path, doc.dump(2) + "\n");
}

DatasetEval load_dataset_eval(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    DatasetEval eval;
    try {
        eval.candidate = doc.at("candidate").get<std::string>();
        eval.reference = doc.at("reference").get<std::string>();
        eval.voxel_size = doc.at("voxel_size").get<double>();
        for (const json& p : doc.at("pairs")) {
            PairMetrics pm;
            pm.frame = p.at("frame").get<std::uint64_t>();
            pm.hausdorff_p95 = get_if(p, "hausdorff_p95");
            pm.hausdorff_max = get_if(p, "hausdorff_max");
            pm.jsd = get_if(p, "jsd");
            pm.p2m_mean = get_if(p, "p2m_mean");
            eval.pairs.push_back(pm);
        }
        if (doc.contains("p2m_distances"))
            eval.p2m_distances = doc["p2m_distances"].get<std::vector<double>>();
        if (doc.contains("means")) {
            eval.mean_hausdorff_p95 = get_if(doc["means"], "hausdorff_p95");
            eval.mean_jsd = get_if(doc["means"], "jsd");
            eval.mean_p2m = get_if(doc["means"], "p2m_mean");
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": malformed report: " + e.what());
    }
    return eval;
}

void save_fidelity_report(const FidelityReport& report, const std::string& path) {
    json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "aggregate";
    const std::pair<const MetricComparison*, const char*> rows[] = {
        {&report.hausdorff_p95, "hausdorff_p95"},
        {&report.jsd, "jsd"},
        {&report.p2m, "p2m"},
    };
    json metrics;
    for (const auto& [cmp, name] : rows) {
        json m;
        set_if(m, "mean_candidate", cmp->mean_candidate);
        set_if(m, "mean_baseline", cmp->mean_baseline);
        set_if(m, "reduction_pct", cmp->reduction_pct);
        metrics[name] = std::move(m);
    }
    doc["metrics"] = std::move(metrics);
    write_file_atomic(path, doc.dump(2) + "\n");
}

}  // namespace lidartwin
