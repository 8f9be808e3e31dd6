#include "lidartwin/dataset_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "lidartwin/errors.hpp"
#include "lidartwin/fs_util.hpp"

namespace lidartwin {

namespace fs = std::filesystem;
using nlohmann::json;

static_assert(sizeof(LabeledPoint) == 4 * sizeof(float),
              "LabeledPoint must be four packed floats for raw export");

namespace {

json spec_to_json(const SensorSpec& s) {
    return json{{"channels", s.channels},
                {"horizontal_resolution", s.horizontal_resolution},
                {"h_fov", {s.h_fov_start, s.h_fov_end}},
                {"v_fov", {s.v_fov_min, s.v_fov_max}},
                {"range_max", s.range_max},
                {"point_rate", s.point_rate},
                {"rotation_rate", s.rotation_rate},
                {"noise_sigma", s.noise_sigma},
                {"dropout_prob", s.dropout_prob}};
}

SensorSpec spec_from_json(const json& j) {
    SensorSpec s;
    s.channels = j.at("channels").get<std::uint32_t>();
    s.horizontal_resolution = j.at("horizontal_resolution").get<double>();
    s.h_fov_start = j.at("h_fov")[0].get<double>();
    s.h_fov_end = j.at("h_fov")[1].get<double>();
    s.v_fov_min = j.at("v_fov")[0].get<double>();
    s.v_fov_max = j.at("v_fov")[1].get<double>();
    s.range_max = j.at("range_max").get<double>();
    s.point_rate = j.at("point_rate").get<double>();
    s.rotation_rate = j.at("rotation_rate").get<double>();
    s.noise_sigma = j.at("noise_sigma").get<double>();
    s.dropout_prob = j.at("dropout_prob").get<double>();
    return s;
}

json pose_to_json(const SensorPose& p) {
    return json{{"position", {p.position.x, p.position.y, p.position.z}},
                {"yaw", p.yaw},
                {"pitch", p.pitch},
                {"roll", p.roll}};
}

SensorPose pose_from_json(const json& j) {
    SensorPose p;
    p.position = {j.at("position")[0].get<double>(), j.at("position")[1].get<double>(),
                  j.at("position")[2].get<double>()};
    p.yaw = j.at("yaw").get<double>();
    p.pitch = j.at("pitch").get<double>();
    p.roll = j.at("roll").get<double>();
    return p;
}

std::string points_bytes(const LabeledFrame& frame) {
    std::string bytes(frame.points.size() * 4 * sizeof(float), '\0');
    std::memcpy(bytes.data(), frame.points.data(), bytes.size());
    return bytes;
}

std::string ids_bytes(const std::vector<std::uint32_t>& ids) {
    std::string bytes(ids.size() * sizeof(std::uint32_t), '\0');
    std::memcpy(bytes.data(), ids.data(), bytes.size());
    return bytes;
}

std::string labels_text(const LabeledFrame& frame) {
    std::ostringstream os;
    char buf[256];
    for (const Box3D& b : frame.boxes) {
        std::snprintf(buf, sizeof(buf), "%s %.9g %.9g %.9g %.9g %.9g %.9g %.9g %u %u\n",
                      b.class_name.c_str(), b.cx, b.cy, b.cz, b.dx, b.dy, b.dz, b.yaw,
                      b.track_id, b.num_points);
        os << buf;
    }
    return os.str();
}

std::vector<Box3D> parse_labels(const std::string& text, const std::string& path) {
    std::vector<Box3D> boxes;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        Box3D b;
        std::istringstream ls(line);
        if (!(ls >> b.class_name >> b.cx >> b.cy >> b.cz >> b.dx >> b.dy >> b.dz >> b.yaw >>
              b.track_id >> b.num_points)) {
            std::ostringstream os;
            os << path << ":" << line_no << ": malformed label line";
            throw Error(ErrorCode::ParseError, os.str());
        }
        boxes.push_back(std::move(b));
    }
    return boxes;
}

struct FrameFiles {
    std::string points, labels, semantic, instance;
};

FrameFiles frame_files(std::uint64_t index) {
    const std::string stem = frame_stem(index);
    return {"points/" + stem + ".bin", "labels/" + stem + ".txt", "semantic/" + stem + ".bin",
            "instance/" + stem + ".bin"};
}

}  // namespace

std::string frame_stem(std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%06" PRIu64, index);
    return buf;
}

DatasetManifest write_dataset(const std::vector<LabeledFrame>& frames, const std::string& out_dir,
                              const std::map<std::string, std::uint32_t>& palette,
                              const std::string& sensor_name, const SensorSpec& spec,
                              const SensorPose& pose) {
    for (const LabeledFrame& f : frames)
        if (!f.consistent())
            throw Error(ErrorCode::ConfigInvalid,
                        "frame " + std::to_string(f.frame_index) +
                            " has mismatched point/semantic/instance lengths");

    const fs::path target(out_dir);
    const fs::path staging(out_dir + ".staging");

    std::error_code ec;
    fs::remove_all(staging, ec);
    for (const char* sub : {"points", "labels", "semantic", "instance"})
        if (!fs::create_directories(staging / sub))
            throw Error(ErrorCode::IoError, "cannot create " + (staging / sub).string());

    json manifest;
    manifest["schema_version"] = 1;
    manifest["palette"] = palette;
    manifest["sensor"] =
        json{{"name", sensor_name}, {"spec", spec_to_json(spec)}, {"pose", pose_to_json(pose)}};

    json frame_list = json::array();
    DatasetManifest result;
    result.palette = palette;
    result.sensor_name = sensor_name;
    result.spec = spec;
    result.pose = pose;

    for (const LabeledFrame& frame : frames) {
        const FrameFiles files = frame_files(frame.frame_index);
        const std::string points = points_bytes(frame);
        const std::string labels = labels_text(frame);
        const std::string semantic = ids_bytes(frame.semantic);
        const std::string instance = ids_bytes(frame.instance);

        write_file_atomic((staging / files.points).string(), points);
        write_file_atomic((staging / files.labels).string(), labels);
        write_file_atomic((staging / files.semantic).string(), semantic);
        write_file_atomic((staging / files.instance).string(), instance);

        json entry;
        entry["index"] = frame.frame_index;
        entry["point_count"] = frame.points.size();
        entry["files"] = json{
            {"points", json{{"path", files.points}, {"crc32", crc32_of(points)}}},
            {"labels", json{{"path", files.labels}, {"crc32", crc32_of(labels)}}},
            {"semantic", json{{"path", files.semantic}, {"crc32", crc32_of(semantic)}}},
            {"instance", json{{"path", files.instance}, {"crc32", crc32_of(instance)}}},
        };
        frame_list.push_back(std::move(entry));
        result.frame_indices.push_back(frame.frame_index);
    }
    manifest["frames"] = std::move(frame_list);
    write_file_atomic((staging / "manifest.json").string(), manifest.dump(2) + "\n");

    // Stage complete; swap into place. Refuse to clobber a directory that is
    // not a dataset we wrote earlier.
    if (fs::exists(target)) {
        if (fs::is_directory(target) &&
            (fs::exists(target / "manifest.json") || fs::is_empty(target))) {
            fs::remove_all(target);
        } else {
            fs::remove_all(staging, ec);
            throw Error(ErrorCode::IoError,
                        out_dir + " exists and does not look like a dataset; refusing to replace");
        }
    } else if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
    }
    fs::rename(staging, target, ec);
    if (ec) {
        fs::remove_all(staging);
        throw Error(ErrorCode::IoError, "cannot move staged dataset into " + out_dir);
    }
    return result;
}

std::vector<LabeledFrame> read_dataset(const std::string& dir, DatasetManifest* manifest_out) {
    const fs::path root(dir);
    const fs::path manifest_path = root / "manifest.json";
    if (!fs::exists(manifest_path))
        throw Error(ErrorCode::IoError, "missing dataset manifest " + manifest_path.string());

    json manifest;
    try {
        manifest = json::parse(read_file(manifest_path.string()));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, manifest_path.string() + ": " + e.what());
    }

    DatasetManifest meta;
    std::vector<LabeledFrame> frames;
    try {
        meta.palette = manifest.at("palette").get<std::map<std::string, std::uint32_t>>();
        meta.sensor_name = manifest.at("sensor").at("name").get<std::string>();
        meta.spec = spec_from_json(manifest.at("sensor").at("spec"));
        meta.pose = pose_from_json(manifest.at("sensor").at("pose"));

        for (const json& entry : manifest.at("frames")) {
            LabeledFrame frame;
            frame.frame_index = entry.at("index").get<std::uint64_t>();
            const std::size_t point_count = entry.at("point_count").get<std::size_t>();
            meta.frame_indices.push_back(frame.frame_index);

            auto load_checked = [&](const char* kind) {
                const json& f = entry.at("files").at(kind);
                const fs::path path = root / f.at("path").get<std::string>();
                if (!fs::exists(path))
                    throw Error(ErrorCode::IncompleteDataset, "missing file " + path.string());
                const std::string bytes = read_file(path.string());
                if (crc32_of(bytes) != f.at("crc32").get<std::uint32_t>())
                    throw Error(ErrorCode::CorruptDataset,
                                "checksum mismatch for " + path.string());
                return bytes;
            };

            const std::string points = load_checked("points");
            if (points.size() != point_count * 4 * sizeof(float))
                throw Error(ErrorCode::CorruptDataset,
                            "unexpected point file size for frame " +
                                std::to_string(frame.frame_index));
            frame.points.resize(point_count);
            std::memcpy(frame.points.data(), points.data(), points.size());

            const std::string semantic = load_checked("semantic");
            const std::string instance = load_checked("instance");
            if (semantic.size() != point_count * 4 || instance.size() != point_count * 4)
                throw Error(ErrorCode::CorruptDataset,
                            "label channel size mismatch for frame " +
                                std::to_string(frame.frame_index));
            frame.semantic.resize(point_count);
            frame.instance.resize(point_count);
            std::memcpy(frame.semantic.data(), semantic.data(), semantic.size());
            std::memcpy(frame.instance.data(), instance.data(), instance.size());

            const json& lf = entry.at("files").at("labels");
            frame.boxes = parse_labels(load_checked("labels"),
                                       (root / lf.at("path").get<std::string>()).string());
            frames.push_back(std::move(frame));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError,
                    manifest_path.string() + ": malformed manifest: " + e.what());
    }

    if (manifest_out) *manifest_out = std::move(meta);
    return frames;
}

}  // namespace lidartwin
