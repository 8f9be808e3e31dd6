#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lidartwin/report.hpp"
#include "lidartwin/scene_config.hpp"

namespace lidartwin {

struct SimulateOptions {
    std::size_t warmup_steps = 100;
    std::optional<std::uint64_t> frames_override;
    std::optional<std::uint64_t> seed_override;
};

struct StageTimings {
    double prep_s = 0.0;
    double simulate_s = 0.0;
    double write_s = 0.0;
};

struct SimulateResult {
    std::vector<std::string> dataset_dirs;  // one per sensor
    std::uint64_t frames = 0;
    std::uint64_t seed = 0;
    StageTimings timings;
};

// End-to-end run: mesh prep, actor spawn, warm-up, per-frame scan + label,
// dataset write. One actor is spawned per configured spawn point. With a
// single sensor the dataset lands in out_dir itself, otherwise in
// out_dir/<sensor name>. frames == 0 runs validation and warm-up only.
SimulateResult run_simulation(const SceneConfig& config, const std::string& out_dir,
                              const SimulateOptions& options = {});

struct EvaluateOptions {
    std::string candidate_dir;
    std::string reference;  // dataset directory, or an .obj mesh for p2m only
    std::optional<std::string> reference_mesh;  // extra surface when reference is a dataset
    double voxel_size = 0.5;
    bool verbose = false;  // adds raw (max) Hausdorff to each pair
};

// Loads datasets, lifts points back into the world frame via the manifest
// poses, and computes per-frame-pair metrics plus means. Frames empty on
// either side are skipped.
DatasetEval run_evaluate(const EvaluateOptions& options);

}  // namespace lidartwin
