#include "lidartwin/scene_config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lidartwin/errors.hpp"

namespace lidartwin {

namespace {

using nlohmann::json;

class Violations {
public:
    void add(const std::string& where, const std::string& what) {
        messages_.push_back(where + ": " + what);
    }
    bool empty() const { return messages_.empty(); }
    [[noreturn]] void raise() const {
        std::ostringstream os;
        os << messages_.size() << " scene-config violation(s):";
        for (const std::string& m : messages_) os << "\n  - " << m;
        throw Error(ErrorCode::ConfigInvalid, os.str());
    }

private:
    std::vector<std::string> messages_;
};

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed, Violations& v) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) v.add(where, "unknown key '" + key + "'");
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  Violations& v, double fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) v.add(where, "missing required key '" + key + "'");
        return fallback;
    }
    if (!obj[key].is_number()) {
        v.add(where, "'" + key + "' must be a number");
        return fallback;
    }
    return obj[key].get<double>();
}

bool get_vec3(const json& obj, const std::string& where, const std::string& key, Violations& v,
              Vec3& out, bool required) {
    if (!obj.contains(key)) {
        if (required) v.add(where, "missing required key '" + key + "'");
        return false;
    }
    const json& a = obj[key];
    if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
        !a[2].is_number()) {
        v.add(where, "'" + key + "' must be an array of 3 numbers");
        return false;
    }
    out = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
    return true;
}

MeshConfig parse_mesh(const json& node, const std::string& origin_dir, Violations& v) {
    MeshConfig mc;
    if (!node.is_object()) {
        v.add("mesh", "must be an object");
        return mc;
    }
    check_keys(node, "mesh", {"path", "roi", "scale", "min_component_area"}, v);
    if (!node.contains("path") || !node["path"].is_string()) {
        v.add("mesh", "missing required string key 'path'");
    } else {
        std::filesystem::path p = node["path"].get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(origin_dir) / p;
        mc.path = p.string();
    }
    mc.prep.scale = get_number(node, "mesh", "scale", v, 1.0);
    if (!(mc.prep.scale > 0.0)) v.add("mesh", "'scale' must be positive");
    mc.prep.min_component_area = get_number(node, "mesh", "min_component_area", v, 0.0);
    if (mc.prep.min_component_area < 0.0) v.add("mesh", "'min_component_area' must be >= 0");
    if (node.contains("roi")) {
        const json& r = node["roi"];
        bool ok = r.is_array() && r.size() == 6;
        for (std::size_t i = 0; ok && i < 6; ++i) ok = r[i].is_number();
        if (!ok) {
            v.add("mesh", "'roi' must be [xmin,ymin,zmin,xmax,ymax,zmax]");
        } else {
            RoiBox roi{{r[0].get<double>(), r[1].get<double>(), r[2].get<double>()},
                       {r[3].get<double>(), r[4].get<double>(), r[5].get<double>()}};
            if (!roi.valid())
                v.add("mesh", "'roi' min must be componentwise below max");
            else
                mc.prep.roi = roi;
        }
    }
    return mc;
}

SensorConfig parse_sensor(const json& node, std::size_t index, Violations& v) {
    SensorConfig sc;
    std::ostringstream wh;
    wh << "sensors[" << index << "]";
    const std::string where = wh.str();
    char default_name[16];
    std::snprintf(default_name, sizeof(default_name), "sensor%02zu", index);
    sc.name = default_name;

    if (!node.is_object()) {
        v.add(where, "must be an object");
        return sc;
    }
    check_keys(node, where, {"name", "spec", "pose"}, v);
    if (node.contains("name")) {
        if (!node["name"].is_string())
            v.add(where, "'name' must be a string");
        else
            sc.name = node["name"].get<std::string>();
    }

    if (!node.contains("spec") || !node["spec"].is_object()) {
        v.add(where, "missing required object key 'spec'");
    } else {
        const json& s = node["spec"];
        const std::string sw = where + ".spec";
        check_keys(s, sw,
                   {"channels", "horizontal_resolution", "h_fov", "v_fov", "range_max",
                    "point_rate", "rotation_rate", "noise_sigma", "dropout_prob"},
                   v);
        const double ch = get_number(s, sw, "channels", v, 1.0, true);
        if (ch < 1.0 || ch != std::floor(ch))
            v.add(sw, "'channels' must be a positive integer");
        else
            sc.spec.channels = static_cast<std::uint32_t>(ch);
        sc.spec.horizontal_resolution =
            get_number(s, sw, "horizontal_resolution", v, 1.0, true);
        for (const char* key : {"h_fov", "v_fov"}) {
            if (!s.contains(key)) {
                v.add(sw, std::string("missing required key '") + key + "'");
                continue;
            }
            const json& f = s[key];
            if (!f.is_array() || f.size() != 2 || !f[0].is_number() || !f[1].is_number()) {
                v.add(sw, std::string("'") + key + "' must be [start, end] degrees");
                continue;
            }
            if (std::string(key) == "h_fov") {
                sc.spec.h_fov_start = f[0].get<double>();
                sc.spec.h_fov_end = f[1].get<double>();
            } else {
                sc.spec.v_fov_min = f[0].get<double>();
                sc.spec.v_fov_max = f[1].get<double>();
            }
        }
        sc.spec.range_max = get_number(s, sw, "range_max", v, 100.0, true);
        sc.spec.point_rate = get_number(s, sw, "point_rate", v, 0.0);
        sc.spec.rotation_rate = get_number(s, sw, "rotation_rate", v, 10.0);
        sc.spec.noise_sigma = get_number(s, sw, "noise_sigma", v, 0.0);
        sc.spec.dropout_prob = get_number(s, sw, "dropout_prob", v, 0.0);
        try {
            sc.spec.validate();
        } catch (const Error& e) {
            v.add(sw, e.what());
        }
    }

    if (!node.contains("pose") || !node["pose"].is_object()) {
        v.add(where, "missing required object key 'pose'");
    } else {
        const json& p = node["pose"];
        const std::string pw = where + ".pose";
        check_keys(p, pw, {"position", "yaw", "pitch", "roll"}, v);
        get_vec3(p, pw, "position", v, sc.pose.position, true);
        sc.pose.yaw = get_number(p, pw, "yaw", v, 0.0);
        sc.pose.pitch = get_number(p, pw, "pitch", v, 0.0);
        sc.pose.roll = get_number(p, pw, "roll", v, 0.0);
    }
    return sc;
}

}  // namespace

SceneConfig parse_scene_config(const std::string& json_text, const std::string& origin_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("scene config: ") + e.what());
    }

    Violations v;
    SceneConfig cfg;
    if (!doc.is_object()) {
        v.add("(root)", "scene config must be a JSON object");
        v.raise();
    }

    check_keys(doc, "(root)",
               {"mesh", "sensors", "paths", "spawn_points", "distribution", "catalog", "signals",
                "seed", "frames", "dt"},
               v);

    if (!doc.contains("mesh"))
        v.add("(root)", "missing required key 'mesh'");
    else
        cfg.mesh = parse_mesh(doc["mesh"], origin_dir, v);

    if (!doc.contains("sensors") || !doc["sensors"].is_array() || doc["sensors"].empty()) {
        v.add("(root)", "missing required non-empty array 'sensors'");
    } else {
        for (std::size_t i = 0; i < doc["sensors"].size(); ++i)
            cfg.sensors.push_back(parse_sensor(doc["sensors"][i], i, v));
        std::set<std::string> names;
        for (const SensorConfig& s : cfg.sensors)
            if (!names.insert(s.name).second)
                v.add("sensors", "duplicate sensor name '" + s.name + "'");
    }

    if (doc.contains("paths")) {
        if (!doc["paths"].is_array()) v.add("(root)", "'paths' must be an array");
        else
            for (std::size_t i = 0; i < doc["paths"].size(); ++i) {
                const json& node = doc["paths"][i];
                std::ostringstream wh;
                wh << "paths[" << i << "]";
                const std::string where = wh.str();
                PathLoop loop;
                if (!node.is_object()) {
                    v.add(where, "must be an object");
                    continue;
                }
                check_keys(node, where, {"id", "waypoints", "speed_limit"}, v);
                if (!node.contains("id") || !node["id"].is_string())
                    v.add(where, "missing required string key 'id'");
                else
                    loop.id = node["id"].get<std::string>();
                loop.speed_limit = get_number(node, where, "speed_limit", v, 13.9);
                if (!(loop.speed_limit > 0.0)) v.add(where, "'speed_limit' must be positive");
                if (!node.contains("waypoints") || !node["waypoints"].is_array() ||
                    node["waypoints"].size() < 3) {
                    v.add(where, "'waypoints' must be an array of >= 3 [x,y,z] points");
                } else {
                    bool ok = true;
                    for (const json& w : node["waypoints"]) {
                        if (!w.is_array() || w.size() != 3 || !w[0].is_number() ||
                            !w[1].is_number() || !w[2].is_number()) {
                            v.add(where, "waypoint entries must be [x,y,z] numbers");
                            ok = false;
                            break;
                        }
                        loop.waypoints.push_back(
                            {w[0].get<double>(), w[1].get<double>(), w[2].get<double>()});
                    }
                    if (!ok) loop.waypoints.clear();
                }
                cfg.paths.push_back(std::move(loop));
            }
        std::set<std::string> ids;
        for (const PathLoop& p : cfg.paths)
            if (!p.id.empty() && !ids.insert(p.id).second)
                v.add("paths", "duplicate path id '" + p.id + "'");
    }

    auto path_known = [&](const std::string& id) {
        for (const PathLoop& p : cfg.paths)
            if (p.id == id) return true;
        return false;
    };

    if (doc.contains("spawn_points")) {
        if (!doc["spawn_points"].is_array()) v.add("(root)", "'spawn_points' must be an array");
        else
            for (std::size_t i = 0; i < doc["spawn_points"].size(); ++i) {
                const json& node = doc["spawn_points"][i];
                std::ostringstream wh;
                wh << "spawn_points[" << i << "]";
                const std::string where = wh.str();
                SpawnPoint sp;
                if (!node.is_object()) {
                    v.add(where, "must be an object");
                    continue;
                }
                check_keys(node, where, {"path_id", "arc_offset"}, v);
                if (!node.contains("path_id") || !node["path_id"].is_string())
                    v.add(where, "missing required string key 'path_id'");
                else {
                    sp.path_id = node["path_id"].get<std::string>();
                    if (!path_known(sp.path_id))
                        v.add(where, "unknown path id '" + sp.path_id + "'");
                }
                sp.arc_offset = get_number(node, where, "arc_offset", v, 0.0, true);
                if (sp.arc_offset < 0.0) v.add(where, "'arc_offset' must be >= 0");
                cfg.spawn_points.push_back(sp);
            }
    }

    if (doc.contains("catalog")) {
        if (!doc["catalog"].is_array()) v.add("(root)", "'catalog' must be an array");
        else
            for (std::size_t i = 0; i < doc["catalog"].size(); ++i) {
                const json& node = doc["catalog"][i];
                std::ostringstream wh;
                wh << "catalog[" << i << "]";
                const std::string where = wh.str();
                ActorCatalogEntry entry;
                if (!node.is_object()) {
                    v.add(where, "must be an object");
                    continue;
                }
                check_keys(node, where, {"class", "dims", "cruise_speed", "semantic_tag"}, v);
                if (!node.contains("class") || !node["class"].is_string()) {
                    v.add(where, "missing required string key 'class'");
                } else {
                    entry.class_name = node["class"].get<std::string>();
                    // class names end up as tokens in label files
                    if (entry.class_name.empty() ||
                        entry.class_name.find_first_of(" \t\n") != std::string::npos)
                        v.add(where, "'class' must be a non-empty token without whitespace");
                }
                Vec3 dims;
                if (get_vec3(node, where, "dims", v, dims, true)) {
                    if (!(dims.x > 0.0 && dims.y > 0.0 && dims.z > 0.0))
                        v.add(where, "'dims' must be positive");
                    else
                        entry.dims = dims;
                }
                entry.cruise_speed = get_number(node, where, "cruise_speed", v, 13.9, true);
                if (!(entry.cruise_speed > 0.0)) v.add(where, "'cruise_speed' must be positive");
                const double tag = get_number(node, where, "semantic_tag", v, 2.0, true);
                if (tag < 2.0 || tag != std::floor(tag))
                    v.add(where, "'semantic_tag' must be an integer >= 2 (0/1 are reserved)");
                else
                    entry.semantic_tag = static_cast<std::uint32_t>(tag);
                cfg.catalog.push_back(std::move(entry));
            }
        std::set<std::string> names;
        std::set<std::uint32_t> tags;
        for (const ActorCatalogEntry& e : cfg.catalog) {
            if (!e.class_name.empty() && !names.insert(e.class_name).second)
                v.add("catalog", "duplicate class '" + e.class_name + "'");
            if (!tags.insert(e.semantic_tag).second)
                v.add("catalog",
                      "duplicate semantic_tag " + std::to_string(e.semantic_tag));
        }
    }

    if (doc.contains("distribution")) {
        if (!doc["distribution"].is_object()) {
            v.add("(root)", "'distribution' must be an object of class -> weight");
        } else {
            for (const auto& [name, w] : doc["distribution"].items()) {
                if (!w.is_number()) {
                    v.add("distribution", "weight for '" + name + "' must be a number");
                    continue;
                }
                const double weight = w.get<double>();
                if (weight < 0.0) v.add("distribution", "negative weight for '" + name + "'");
                cfg.distribution.weights[name] = weight;
                bool in_catalog = false;
                for (const ActorCatalogEntry& e : cfg.catalog)
                    if (e.class_name == name) in_catalog = true;
                if (!in_catalog)
                    v.add("distribution", "class '" + name + "' is not in the catalog");
            }
        }
    }

    if (doc.contains("signals")) {
        if (!doc["signals"].is_array()) v.add("(root)", "'signals' must be an array");
        else
            for (std::size_t i = 0; i < doc["signals"].size(); ++i) {
                const json& node = doc["signals"][i];
                std::ostringstream wh;
                wh << "signals[" << i << "]";
                const std::string where = wh.str();
                SignalController sig;
                if (!node.is_object()) {
                    v.add(where, "must be an object");
                    continue;
                }
                check_keys(node, where, {"path_id", "arc_position", "green", "red", "offset"}, v);
                if (!node.contains("path_id") || !node["path_id"].is_string())
                    v.add(where, "missing required string key 'path_id'");
                else {
                    sig.path_id = node["path_id"].get<std::string>();
                    if (!path_known(sig.path_id))
                        v.add(where, "unknown path id '" + sig.path_id + "'");
                }
                sig.arc_position = get_number(node, where, "arc_position", v, 0.0, true);
                sig.green_s = get_number(node, where, "green", v, 20.0);
                sig.red_s = get_number(node, where, "red", v, 20.0);
                sig.offset_s = get_number(node, where, "offset", v, 0.0);
                if (!(sig.green_s > 0.0)) v.add(where, "'green' must be positive");
                if (sig.red_s < 0.0) v.add(where, "'red' must be >= 0");
                cfg.signals.push_back(std::move(sig));
            }
    }

    if (!doc.contains("seed"))
        v.add("(root)", "missing required key 'seed'");
    else if (!doc["seed"].is_number_unsigned())
        v.add("(root)", "'seed' must be a non-negative integer");
    else
        cfg.seed = doc["seed"].get<std::uint64_t>();

    if (!doc.contains("frames"))
        v.add("(root)", "missing required key 'frames'");
    else if (!doc["frames"].is_number_unsigned())
        v.add("(root)", "'frames' must be a non-negative integer");
    else
        cfg.frames = doc["frames"].get<std::uint64_t>();

    cfg.dt = get_number(doc, "(root)", "dt", v, 0.1);
    if (!(cfg.dt > 0.0)) v.add("(root)", "'dt' must be positive");

    // Spawn density is the spawn point list: one actor per point. That needs
    // every point to land on a loop and a usable distribution when any exist.
    if (!cfg.spawn_points.empty()) {
        try {
            cfg.distribution.validate();
        } catch (const Error& e) {
            v.add("distribution", e.what());
        }
    }

    if (!v.empty()) v.raise();
    return cfg;
}

SceneConfig load_scene_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open scene config " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return parse_scene_config(buffer.str(), dir.empty() ? "." : dir);
}

}  // namespace lidartwin
