#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lidartwin/prep.hpp"
#include "lidartwin/scenario.hpp"
#include "lidartwin/sensor.hpp"

namespace lidartwin {

struct SensorConfig {
    std::string name;  // dataset subdirectory name for multi-sensor runs
    SensorSpec spec;
    SensorPose pose;
};

struct MeshConfig {
    std::string path;  // resolved relative to the config file
    PrepConfig prep;   // scale 1 / no roi / area 0 leaves the mesh untouched
};

// The scene-config document (JSON). Top-level keys: mesh, sensors, paths,
// spawn_points, distribution, catalog, signals, seed, frames, dt. Unknown
// keys anywhere are a hard error.
struct SceneConfig {
    MeshConfig mesh;
    std::vector<SensorConfig> sensors;
    std::vector<PathLoop> paths;
    std::vector<SpawnPoint> spawn_points;
    ClassDistribution distribution;
    std::vector<ActorCatalogEntry> catalog;
    std::vector<SignalController> signals;
    std::uint64_t seed = 0;
    std::uint64_t frames = 0;
    double dt = 0.1;
};

// Parses and validates. JSON syntax problems raise ParseError; schema and
// semantic violations are collected and raised together as one ConfigInvalid
// whose message lists every violation.
SceneConfig load_scene_config(const std::string& path);

// Same, from an in-memory document (origin_dir resolves the mesh path).
SceneConfig parse_scene_config(const std::string& json_text, const std::string& origin_dir);

}  // namespace lidartwin
