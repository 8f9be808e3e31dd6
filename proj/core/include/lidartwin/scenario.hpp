#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lidartwin/vec3.hpp"

namespace lidartwin {

// Closed polyline a traffic actor circulates on. Valid loops repeat the
// first waypoint as the last one.
struct PathLoop {
    std::string id;
    std::vector<Vec3> waypoints;
    double speed_limit = 13.9;  // m/s

    bool is_closed(double tol = 1e-9) const;
    double length() const;  // total polyline length

    // Arc-length position/tangent, s wrapped into [0, length).
    Vec3 position_at(double s) const;
    Vec3 tangent_at(double s) const;
    double heading_at(double s) const;  // atan2 of the xy tangent

    // Precomputes cumulative segment lengths; called lazily by the accessors.
    void build_arc_table() const;

private:
    mutable std::vector<double> cumulative_;  // cumulative length per segment end
};

struct SpawnPoint {
    std::string path_id;
    double arc_offset = 0.0;  // meters along the loop
};

// Class name -> non-negative weight; normalized when sampling.
struct ClassDistribution {
    std::map<std::string, double> weights;

    // Throws Error(InvalidDistribution) on empty/negative/all-zero weights.
    void validate() const;
};

struct ActorCatalogEntry {
    std::string class_name;
    Vec3 dims{4.5, 1.9, 1.6};   // dx (length), dy (width), dz (height), meters
    double cruise_speed = 13.9;  // m/s
    std::uint32_t semantic_tag = 2;
};

// Fixed-cycle signal gating one stop node on one loop.
struct SignalController {
    std::string path_id;
    double arc_position = 0.0;  // stop node, meters along the loop
    double green_s = 20.0;
    double red_s = 20.0;
    double offset_s = 0.0;
};

enum class Phase { Green, Red };

// green iff ((t + offset) mod (green + red)) < green; half-open boundary.
Phase signal_phase(const SignalController& controller, double t);

struct ActorState {
    std::uint32_t track_id = 0;  // unique within a run, never 0
    std::uint32_t catalog_index = 0;
    std::uint32_t path_index = 0;
    double arc_position = 0.0;  // wraps modulo loop length
    double speed = 0.0;         // m/s actually travelled last step
};

struct StepParams {
    double headway_margin = 2.0;  // gap kept behind a leader, + leader length
    double stop_distance = 3.0;   // meters short of a red stop node
};

// The stepped traffic world. Paths/signals/catalog are fixed after
// construction; step() advances every actor and is strictly ordered, so runs
// are reproducible.
class World {
public:
    World(std::vector<PathLoop> paths, std::vector<SignalController> signals,
          std::vector<ActorCatalogEntry> catalog, StepParams params = {});

    // Draws classes i.i.d. from the distribution and assigns each actor a
    // distinct spawn point (seeded shuffle). Track ids start at 1.
    // Throws TooManyActors / InvalidDistribution.
    void spawn_actors(const std::vector<SpawnPoint>& spawn_points,
                      const ClassDistribution& distribution, std::size_t n, std::uint64_t seed);

    // Advances every actor by min(cruise, speed_limit) * dt, gated by red
    // signals (held stop_distance before the node) and clamped behind loop
    // leaders so cyclic order never changes.
    void step(double dt);

    double time() const { return time_; }
    std::uint64_t step_count() const { return step_count_; }
    const std::vector<ActorState>& actors() const { return actors_; }
    const std::vector<PathLoop>& paths() const { return paths_; }
    const std::vector<SignalController>& signals() const { return signals_; }
    const std::vector<ActorCatalogEntry>& catalog() const { return catalog_; }
    const StepParams& params() const { return params_; }

    std::uint32_t path_index(const std::string& id) const;  // throws ConfigInvalid
    Vec3 actor_position(const ActorState& a) const;
    double actor_heading(const ActorState& a) const;

private:
    std::vector<PathLoop> paths_;
    std::vector<SignalController> signals_;
    std::vector<ActorCatalogEntry> catalog_;
    std::vector<ActorState> actors_;
    StepParams params_;
    double time_ = 0.0;
    std::uint64_t step_count_ = 0;
    std::uint32_t next_track_id_ = 1;
};

struct ValidationFinding {
    enum class Kind { Deadlock, LoopNotClosed, OverlappingSpawnPoints, UnknownPath, EmptyLoop };
    Kind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool ok() const { return findings.empty(); }
};

struct ValidateOptions {
    std::size_t warmup_steps = 1200;
    double dt = 0.1;
    double stall_threshold_s = 30.0;  // stationary longer than this => deadlock
};

// Headless dry run: checks loop closure, spawn point overlap, and stalls
// that a red phase cannot explain (including signals whose green phase is
// shorter than one step and therefore can never pass traffic).
ValidationReport validate_scenario(const std::vector<PathLoop>& paths,
                                   const std::vector<SignalController>& signals,
                                   const std::vector<ActorCatalogEntry>& catalog,
                                   const std::vector<SpawnPoint>& spawn_points,
                                   const ClassDistribution& distribution, std::uint64_t seed,
                                   const ValidateOptions& options = {});

}  // namespace lidartwin
