#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "lidartwin/errors.hpp"
#include "lidartwin/fs_util.hpp"
#include "lidartwin/obj_io.hpp"
#include "lidartwin/parallel.hpp"
#include "lidartwin/pipeline.hpp"
#include "lidartwin/prep.hpp"
#include "lidartwin/report.hpp"
#include "lidartwin/scenario.hpp"
#include "lidartwin/scene_config.hpp"

namespace lidartwin::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(const Error& e) { return is_io_error(e.code()) ? kExitIo : kExitValidation; }

struct PrepArgs {
    std::string in_path;
    std::string out_path;
    std::vector<double> roi;
    double scale = 1.0;
    double min_component_area = 1.0;
};

int cmd_prep(const PrepArgs& args) {
    PrepConfig config;
    config.scale = args.scale;
    config.min_component_area = args.min_component_area;
    if (!args.roi.empty()) {
        RoiBox roi{{args.roi[0], args.roi[1], args.roi[2]}, {args.roi[3], args.roi[4], args.roi[5]}};
        if (!roi.valid()) {
            std::cerr << "error: --roi min must be componentwise below max\n";
            return kExitValidation;
        }
        config.roi = roi;
    }

    SemanticPalette palette;
    std::size_t dropped = 0;
    TriangleMesh mesh = load_obj(args.in_path, palette, &dropped);
    if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, args.in_path + " has no triangles");

    PrepSummary summary;
    const TriangleMesh out = prep_mesh(mesh, config, &summary);
    save_obj(args.out_path, out, palette);

    std::cerr << "triangles: " << summary.triangles_before << "->" << summary.triangles_after
              << ", components removed: " << summary.components_removed;
    if (dropped > 0) std::cerr << " (dropped " << dropped << " degenerate faces at load)";
    std::cerr << "\n";
    return kExitOk;
}

struct ValidateArgs {
    std::string scene_path;
    std::size_t warmup = ValidateOptions{}.warmup_steps;
};

int cmd_validate(const ValidateArgs& args) {
    const SceneConfig config = load_scene_config(args.scene_path);
    ValidateOptions options;
    options.warmup_steps = args.warmup;
    options.dt = config.dt;
    const ValidationReport report =
        validate_scenario(config.paths, config.signals, config.catalog, config.spawn_points,
                          config.distribution, config.seed, options);
    if (report.ok()) {
        std::cerr << "scenario ok: " << config.paths.size() << " loop(s), "
                  << config.spawn_points.size() << " spawn point(s)\n";
        return kExitOk;
    }
    std::cerr << report.findings.size() << " finding(s):\n";
    for (const ValidationFinding& f : report.findings) std::cerr << "  - " << f.detail << "\n";
    return kExitValidation;
}

struct SimulateArgs {
    std::string scene_path;
    std::string out_dir;
    std::optional<std::uint64_t> frames;
    std::optional<std::uint64_t> seed;
    std::size_t warmup = 100;
};

int cmd_simulate(const SimulateArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const SceneConfig config = load_scene_config(args.scene_path);
    const double parse_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    SimulateOptions options;
    options.warmup_steps = args.warmup;
    options.frames_override = args.frames;
    options.seed_override = args.seed;

    const SimulateResult result = run_simulation(config, args.out_dir, options);

    json manifest;
    manifest["tool_version"] = kToolVersion;
    manifest["scene_schema_version"] = kSceneSchemaVersion;
    manifest["scene_config"] = args.scene_path;
    manifest["scene_config_crc32"] = crc32_of_file(args.scene_path);
    manifest["seed"] = result.seed;
    manifest["frames"] = result.frames;
    manifest["outputs"] = result.dataset_dirs;
    manifest["timings_s"] = json{{"parse", parse_s},
                                 {"prep", result.timings.prep_s},
                                 {"simulate", result.timings.simulate_s},
                                 {"write", result.timings.write_s}};
    fs::create_directories(args.out_dir);
    write_file_atomic((fs::path(args.out_dir) / "run_manifest.json").string(),
                      manifest.dump(2) + "\n");

    std::cerr << "simulated " << result.frames << " frame(s) for " << config.sensors.size()
              << " sensor(s) into " << args.out_dir << "\n";
    return kExitOk;
}

struct EvaluateArgs {
    EvaluateOptions options;
    std::string out_path;
    std::string hist_dir;
    bool to_stdout = false;
};

int cmd_evaluate(const EvaluateArgs& args) {
    const DatasetEval eval = run_evaluate(args.options);
    if (eval.pairs.empty())
        throw Error(ErrorCode::EmptyCloud, "no usable frame pairs between candidate and reference");

    if (args.to_stdout) {
        // Machine output on stdout mirrors the file writer.
        const std::string tmp =
            (fs::temp_directory_path() / ("lidartwin_eval_" + std::to_string(::getpid()) + ".json"))
                .string();
        save_dataset_eval(eval, tmp);
        std::cout << read_file(tmp);
        fs::remove(tmp);
    }
    if (!args.out_path.empty()) save_dataset_eval(eval, args.out_path);

    if (!args.hist_dir.empty()) {
        // Single-sided histograms: candidate values only, baseline column zero.
        FidelityReport report;
        report.hausdorff_p95.values_candidate = eval.values("hausdorff_p95");
        report.jsd.values_candidate = eval.values("jsd");
        report.p2m.values_candidate =
            eval.p2m_distances.empty() ? eval.values("p2m") : eval.p2m_distances;
        emit_histograms(report, args.hist_dir);
    }

    std::cerr << "evaluated " << eval.pairs.size() << " frame pair(s)";
    if (eval.mean_hausdorff_p95) std::cerr << ", mean P95 Hausdorff " << *eval.mean_hausdorff_p95;
    if (eval.mean_jsd) std::cerr << ", mean JSD " << *eval.mean_jsd;
    if (eval.mean_p2m) std::cerr << ", mean P2M " << *eval.mean_p2m;
    std::cerr << "\n";
    return kExitOk;
}

struct ReportArgs {
    std::string candidate_path;
    std::string baseline_path;
    std::string out_path;
    std::string hist_dir;
    bool to_stdout = false;
};

int cmd_report(const ReportArgs& args) {
    const DatasetEval candidate = load_dataset_eval(args.candidate_path);
    const DatasetEval baseline = load_dataset_eval(args.baseline_path);
    const FidelityReport report = aggregate(candidate, baseline);

    std::cerr << format_comparison_table(report);
    if (!args.out_path.empty()) save_fidelity_report(report, args.out_path);
    if (args.to_stdout) {
        const std::string tmp =
            (fs::temp_directory_path() /
             ("lidartwin_report_" + std::to_string(::getpid()) + ".json"))
                .string();
        save_fidelity_report(report, tmp);
        std::cout << read_file(tmp);
        fs::remove(tmp);
    }
    if (!args.hist_dir.empty()) emit_histograms(report, args.hist_dir);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"lidartwin: desk-scale LiDAR digital-twin simulation and fidelity evaluation"};
    app.require_subcommand(0, 1);
    std::ostringstream version;
    version << "lidartwin " << kToolVersion << " (scene-config schema " << kSceneSchemaVersion
            << ")";
    app.set_version_flag("--version", version.str());

    unsigned threads = 0;
    app.add_option("--threads", threads, "Cap worker threads (0 = hardware concurrency)");

    PrepArgs prep_args;
    CLI::App* prep = app.add_subcommand("prep", "Crop, de-noise and rescale an OBJ mesh");
    prep->add_option("--in", prep_args.in_path, "Input OBJ")->required();
    prep->add_option("--out", prep_args.out_path, "Output OBJ")->required();
    prep->add_option("--roi", prep_args.roi,
                     "Crop box xmin,ymin,zmin,xmax,ymax,zmax (meters, after scaling)")
        ->delimiter(',')
        ->expected(6);
    prep->add_option("--scale", prep_args.scale, "Unit multiplier to meters (0.01 for cm units)");
    prep->add_option("--min-component-area", prep_args.min_component_area,
                     "Remove disconnected components below this area, m^2");

    ValidateArgs validate_args;
    CLI::App* validate = app.add_subcommand("validate", "Dry-run a scene config and report anomalies");
    validate->add_option("--scene", validate_args.scene_path, "Scene config JSON")->required();
    validate->add_option("--warmup", validate_args.warmup, "Dry-run steps");

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Run the scene and write dataset(s)");
    simulate->add_option("--scene", simulate_args.scene_path, "Scene config JSON")->required();
    simulate->add_option("--out", simulate_args.out_dir, "Output directory")->required();
    std::uint64_t frames_flag = 0, seed_flag = 0;
    CLI::Option* frames_opt =
        simulate->add_option("--frames", frames_flag, "Override config frame count");
    CLI::Option* seed_opt = simulate->add_option("--seed", seed_flag, "Override config seed");
    simulate->add_option("--warmup", simulate_args.warmup, "Warm-up steps before frame 0");

    EvaluateArgs eval_args;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Score a dataset against a reference");
    evaluate->add_option("--candidate", eval_args.options.candidate_dir, "Candidate dataset dir")
        ->required();
    evaluate
        ->add_option("--reference", eval_args.options.reference,
                     "Reference dataset dir, or an .obj mesh for point-to-mesh only")
        ->required();
    std::string eval_mesh;
    evaluate->add_option("--mesh", eval_mesh,
                         "Reference surface OBJ for point-to-mesh when --reference is a dataset");
    evaluate->add_option("--voxel-size", eval_args.options.voxel_size,
                         "JS-divergence voxel edge, meters");
    evaluate->add_option("--out", eval_args.out_path, "Write report JSON here");
    evaluate->add_option("--hist-dir", eval_args.hist_dir, "Write per-metric histogram CSVs here");
    evaluate->add_flag("--stdout", eval_args.to_stdout, "Print report JSON to stdout");
    evaluate->add_flag("--verbose", eval_args.options.verbose,
                       "Include the raw (max) Hausdorff per pair");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand("report", "Compare two evaluation reports");
    report->add_option("--candidate", report_args.candidate_path, "Candidate report.json")
        ->required();
    report->add_option("--baseline", report_args.baseline_path, "Baseline report.json")
        ->required();
    report->add_option("--out", report_args.out_path, "Write aggregate JSON here");
    report->add_option("--hist-dir", report_args.hist_dir, "Write per-metric histogram CSVs here");
    report->add_flag("--stdout", report_args.to_stdout, "Print aggregate JSON to stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cerr << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        std::cerr << version.str() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        set_thread_cap(threads);
        if (prep->parsed()) return cmd_prep(prep_args);
        if (validate->parsed()) return cmd_validate(validate_args);
        if (simulate->parsed()) {
            if (frames_opt->count() > 0) simulate_args.frames = frames_flag;
            if (seed_opt->count() > 0) simulate_args.seed = seed_flag;
            return cmd_simulate(simulate_args);
        }
        if (evaluate->parsed()) {
            if (!eval_mesh.empty()) eval_args.options.reference_mesh = eval_mesh;
            if (eval_args.out_path.empty() && !eval_args.to_stdout) {
                std::cerr << "error: evaluate needs --out or --stdout\n";
                return kExitValidation;
            }
            return cmd_evaluate(eval_args);
        }
        if (report->parsed()) return cmd_report(report_args);
        std::cerr << app.help();
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace lidartwin::cli
