#include "lidartwin/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lidartwin/errors.hpp"
#include "lidartwin/rng.hpp"

namespace lidartwin {

namespace {

double wrap(double s, double length) {
    s = std::fmod(s, length);
    return s < 0.0 ? s + length : s;
}

// Arc distance from `from` forward to `to` on a loop of given length.
double gap_ahead(double from, double to, double length) { return wrap(to - from, length); }

}  // namespace

bool PathLoop::is_closed(double tol) const {
    return waypoints.size() >= 3 && (waypoints.front() - waypoints.back()).norm() <= tol;
}

void PathLoop::build_arc_table() const {
    if (!cumulative_.empty()) return;
    cumulative_.reserve(waypoints.size());
    double total = 0.0;
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        total += (waypoints[i] - waypoints[i - 1]).norm();
        cumulative_.push_back(total);
    }
}

double PathLoop::length() const {
    build_arc_table();
    return cumulative_.empty() ? 0.0 : cumulative_.back();
}

Vec3 PathLoop::position_at(double s) const {
    build_arc_table();
    const double total = length();
    s = wrap(s, total);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const std::size_t seg = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    const std::size_t next = std::min(seg + 1, waypoints.size() - 1);
    const double seg_len = cumulative_[next] - cumulative_[seg];
    const double u = seg_len > 0.0 ? (s - cumulative_[seg]) / seg_len : 0.0;
    return waypoints[seg] + (waypoints[next] - waypoints[seg]) * u;
}

Vec3 PathLoop::tangent_at(double s) const {
    build_arc_table();
    const double total = length();
    s = wrap(s, total);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t seg = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    // Skip zero-length segments.
    while (seg + 1 < waypoints.size() && cumulative_[seg + 1] - cumulative_[seg] <= 0.0) ++seg;
    const std::size_t next = std::min(seg + 1, waypoints.size() - 1);
    return (waypoints[next] - waypoints[seg]).normalized();
}

double PathLoop::heading_at(double s) const {
    const Vec3 t = tangent_at(s);
    return std::atan2(t.y, t.x);
}

void ClassDistribution::validate() const {
    if (weights.empty())
        throw Error(ErrorCode::InvalidDistribution, "class distribution is empty");
    double total = 0.0;
    for (const auto& [name, w] : weights) {
        if (w < 0.0)
            throw Error(ErrorCode::InvalidDistribution, "negative weight for class '" + name + "'");
        total += w;
    }
    if (!(total > 0.0))
        throw Error(ErrorCode::InvalidDistribution, "all class weights are zero");
}

Phase signal_phase(const SignalController& controller, double t) {
    const double cycle = controller.green_s + controller.red_s;
    const double phase = wrap(t + controller.offset_s, cycle);
    return phase < controller.green_s ? Phase::Green : Phase::Red;
}

World::World(std::vector<PathLoop> paths, std::vector<SignalController> signals,
             std::vector<ActorCatalogEntry> catalog, StepParams params)
    : paths_(std::move(paths)),
      signals_(std::move(signals)),
      catalog_(std::move(catalog)),
      params_(params) {
    for (const PathLoop& p : paths_) {
        if (!p.is_closed())
            throw Error(ErrorCode::ConfigInvalid,
                        "path '" + p.id + "' is not a closed loop (first waypoint must repeat last)");
        if (!(p.length() > 0.0))
            throw Error(ErrorCode::ConfigInvalid, "path '" + p.id + "' has zero length");
    }
    for (const SignalController& s : signals_) {
        if (!(s.green_s > 0.0) || s.red_s < 0.0)
            throw Error(ErrorCode::ConfigInvalid,
                        "signal on path '" + s.path_id + "' needs green > 0 and red >= 0");
        path_index(s.path_id);  // existence check
    }
    for (const ActorCatalogEntry& e : catalog_)
        if (!(e.dims.x > 0.0 && e.dims.y > 0.0 && e.dims.z > 0.0))
            throw Error(ErrorCode::ConfigInvalid,
                        "catalog entry '" + e.class_name + "' has non-positive dimensions");
}

std::uint32_t World::path_index(const std::string& id) const {
    for (std::size_t i = 0; i < paths_.size(); ++i)
        if (paths_[i].id == id) return static_cast<std::uint32_t>(i);
    throw Error(ErrorCode::ConfigInvalid, "unknown path id '" + id + "'");
}

Vec3 World::actor_position(const ActorState& a) const {
    return paths_[a.path_index].position_at(a.arc_position);
}

double World::actor_heading(const ActorState& a) const {
    return paths_[a.path_index].heading_at(a.arc_position);
}

void World::spawn_actors(const std::vector<SpawnPoint>& spawn_points,
                         const ClassDistribution& distribution, std::size_t n,
                         std::uint64_t seed) {
    if (n > spawn_points.size()) {
        std::ostringstream os;
        os << "requested " << n << " actors but only " << spawn_points.size()
           << " spawn points exist";
        throw Error(ErrorCode::TooManyActors, os.str());
    }
    distribution.validate();

    // Sampling order is catalog order so draws are reproducible.
    std::vector<std::pair<std::uint32_t, double>> classes;  // catalog index, weight
    double total_weight = 0.0;
    for (const auto& [name, w] : distribution.weights) {
        bool found = false;
        for (std::size_t c = 0; c < catalog_.size(); ++c)
            if (catalog_[c].class_name == name) {
                found = true;
                if (w > 0.0) classes.emplace_back(static_cast<std::uint32_t>(c), w);
                break;
            }
        if (!found)
            throw Error(ErrorCode::ConfigInvalid,
                        "distribution class '" + name + "' is not in the catalog");
        total_weight += w;
    }
    std::sort(classes.begin(), classes.end());

    // Seeded Fisher-Yates over spawn point slots.
    std::vector<std::uint32_t> perm(spawn_points.size());
    std::iota(perm.begin(), perm.end(), 0u);
    CounterRng shuffle_rng(seed, rng_stream::kSpawnPoint, 0);
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[shuffle_rng.uniform_below(i)]);

    for (std::size_t k = 0; k < n; ++k) {
        const SpawnPoint& sp = spawn_points[perm[k]];
        const std::uint32_t pidx = path_index(sp.path_id);
        const double loop_len = paths_[pidx].length();

        CounterRng class_rng(seed, rng_stream::kSpawnClass, k);
        const double u = class_rng.uniform01() * total_weight;
        double acc = 0.0;
        std::uint32_t chosen = classes.back().first;
        for (const auto& [cidx, w] : classes) {
            acc += w;
            if (u < acc) {
                chosen = cidx;
                break;
            }
        }

        ActorState actor;
        actor.track_id = next_track_id_++;
        actor.catalog_index = chosen;
        actor.path_index = pidx;
        actor.arc_position = wrap(sp.arc_offset, loop_len);
        actor.speed = std::min(catalog_[chosen].cruise_speed, paths_[pidx].speed_limit);
        actors_.push_back(actor);
    }
}

void World::step(double dt) {
    // Actors are processed per loop from front to back (descending arc, the
    // seam broken at the max-arc actor) so each follower caps against its
    // leader's already-advanced position and cyclic order is preserved.
    for (std::uint32_t pidx = 0; pidx < paths_.size(); ++pidx) {
        const PathLoop& path = paths_[pidx];
        const double loop_len = path.length();

        std::vector<std::uint32_t> on_path;
        for (std::uint32_t i = 0; i < actors_.size(); ++i)
            if (actors_[i].path_index == pidx) on_path.push_back(i);
        if (on_path.empty()) continue;

        std::sort(on_path.begin(), on_path.end(), [&](std::uint32_t l, std::uint32_t r) {
            if (actors_[l].arc_position != actors_[r].arc_position)
                return actors_[l].arc_position > actors_[r].arc_position;
            return actors_[l].track_id < actors_[r].track_id;
        });

        const std::size_t m = on_path.size();
        std::vector<double> new_arc(m);
        std::vector<double> new_speed(m);

        for (std::size_t k = 0; k < m; ++k) {
            const ActorState& me = actors_[on_path[k]];
            const ActorCatalogEntry& my_class = catalog_[me.catalog_index];
            double desired = std::min(my_class.cruise_speed, path.speed_limit);

            // Gating by red stop nodes: never advance past (node - stop_distance).
            double advance_cap = std::numeric_limits<double>::infinity();
            for (const SignalController& sig : signals_) {
                if (sig.path_id != path.id) continue;
                if (signal_phase(sig, time_) != Phase::Red) continue;
                const double dist = gap_ahead(me.arc_position, wrap(sig.arc_position, loop_len),
                                              loop_len);
                advance_cap = std::min(advance_cap, std::max(0.0, dist - params_.stop_distance));
            }

            if (m > 1) {
                const bool front = (k == 0);
                const std::size_t leader_slot = front ? m - 1 : k - 1;
                const ActorState& leader = actors_[on_path[leader_slot]];
                // Front actor caps against the seam leader's pre-step position;
                // that leader only moves forward afterwards, so the gap it
                // guarantees here can only grow.
                const double leader_pos = front ? leader.arc_position : new_arc[leader_slot];
                const double leader_speed = front ? leader.speed : new_speed[leader_slot];
                const double headway =
                    params_.headway_margin + catalog_[leader.catalog_index].dims.x;
                const double gap = gap_ahead(me.arc_position, leader_pos, loop_len);
                if (gap < headway) desired = std::min(desired, leader_speed);
                advance_cap = std::min(advance_cap, std::max(0.0, gap - headway));
            }

            const double advance = std::min(desired * dt, advance_cap);
            new_arc[k] = wrap(me.arc_position + advance, loop_len);
            new_speed[k] = advance / dt;
        }

        for (std::size_t k = 0; k < m; ++k) {
            actors_[on_path[k]].arc_position = new_arc[k];
            actors_[on_path[k]].speed = new_speed[k];
        }
    }

    time_ += dt;
    ++step_count_;
}

ValidationReport validate_scenario(const std::vector<PathLoop>& paths,
                                   const std::vector<SignalController>& signals,
                                   const std::vector<ActorCatalogEntry>& catalog,
                                   const std::vector<SpawnPoint>& spawn_points,
                                   const ClassDistribution& distribution, std::uint64_t seed,
                                   const ValidateOptions& options) {
    ValidationReport report;
    auto add = [&](ValidationFinding::Kind kind, const std::string& detail) {
        report.findings.push_back({kind, detail});
    };

    bool structure_ok = true;
    for (const PathLoop& p : paths) {
        if (p.waypoints.size() < 3) {
            add(ValidationFinding::Kind::EmptyLoop,
                "path '" + p.id + "' has fewer than 3 waypoints");
            structure_ok = false;
            continue;
        }
        if (!p.is_closed()) {
            add(ValidationFinding::Kind::LoopNotClosed,
                "path '" + p.id + "' first and last waypoints differ (loop not closed)");
            structure_ok = false;
        }
        if (!(p.length() > 0.0)) {
            add(ValidationFinding::Kind::EmptyLoop, "path '" + p.id + "' has zero length");
            structure_ok = false;
        }
    }

    auto known_path = [&](const std::string& id) {
        for (const PathLoop& p : paths)
            if (p.id == id) return true;
        return false;
    };
    for (const SpawnPoint& sp : spawn_points)
        if (!known_path(sp.path_id)) {
            add(ValidationFinding::Kind::UnknownPath,
                "spawn point references unknown path '" + sp.path_id + "'");
            structure_ok = false;
        }
    for (const SignalController& sig : signals)
        if (!known_path(sig.path_id)) {
            add(ValidationFinding::Kind::UnknownPath,
                "signal references unknown path '" + sig.path_id + "'");
            structure_ok = false;
        }

    for (std::size_t i = 0; i < spawn_points.size(); ++i)
        for (std::size_t j = i + 1; j < spawn_points.size(); ++j)
            if (spawn_points[i].path_id == spawn_points[j].path_id &&
                std::abs(spawn_points[i].arc_offset - spawn_points[j].arc_offset) < 1e-6) {
                std::ostringstream os;
                os << "overlapping spawn points " << i << " and " << j << " on path '"
                   << spawn_points[i].path_id << "' at arc " << spawn_points[i].arc_offset;
                add(ValidationFinding::Kind::OverlappingSpawnPoints, os.str());
            }

    if (!structure_ok || spawn_points.empty()) return report;

    // Headless dry run watching for stalls a red phase cannot explain.
    World world(paths, signals, catalog);
    world.spawn_actors(spawn_points, distribution, spawn_points.size(), seed);

    std::vector<double> stalled_s(world.actors().size(), 0.0);
    std::vector<char> reported(world.actors().size(), 0);

    for (std::size_t s = 0; s < options.warmup_steps; ++s) {
        const double t_before = world.time();
        world.step(options.dt);

        for (std::size_t a = 0; a < world.actors().size(); ++a) {
            const ActorState& actor = world.actors()[a];
            if (actor.speed > 1e-12) {
                stalled_s[a] = 0.0;
                continue;
            }
            stalled_s[a] += options.dt;
            if (stalled_s[a] <= options.stall_threshold_s || reported[a]) continue;

            // A stall is legitimate only while held by a red signal that can
            // actually pass traffic (green at least one step long).
            bool justified = false;
            const PathLoop& path = world.paths()[actor.path_index];
            for (const SignalController& sig : world.signals()) {
                if (sig.path_id != path.id) continue;
                if (signal_phase(sig, t_before) != Phase::Red) continue;
                if (sig.green_s < options.dt) continue;
                const double dist =
                    wrap(sig.arc_position - actor.arc_position, path.length());
                if (dist <= world.params().stop_distance + 1e-9) {
                    justified = true;
                    break;
                }
            }
            if (!justified) {
                std::ostringstream os;
                os << "actor " << actor.track_id << " on path '" << path.id
                   << "' stationary for " << stalled_s[a] << " s with no passable red signal";
                add(ValidationFinding::Kind::Deadlock, os.str());
                reported[a] = 1;
            }
        }
    }
    return report;
}

}  // namespace lidartwin
