#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lidartwin/labels.hpp"
#include "lidartwin/sensor.hpp"

namespace lidartwin {

// Per-frame dataset layout (little-endian, OpenPCDet-style):
//   points/NNNNNN.bin    float32 records (x, y, z, intensity)
//   labels/NNNNNN.txt    one box per line:
//                        class cx cy cz dx dy dz yaw track_id num_points
//   semantic/NNNNNN.bin  uint32 per point, point-order aligned
//   instance/NNNNNN.bin  uint32 per point, point-order aligned
//   manifest.json        palette, sensor echo, frame list, CRC32 per file
struct DatasetManifest {
    std::map<std::string, std::uint32_t> palette;
    std::string sensor_name;
    SensorSpec spec;
    SensorPose pose;
    std::vector<std::uint64_t> frame_indices;
};

// Writes the layout above. Output is staged in a temp directory and moved
// into place on success, so a failed run leaves no partial dataset. Byte
// output is deterministic for identical input.
DatasetManifest write_dataset(const std::vector<LabeledFrame>& frames, const std::string& out_dir,
                              const std::map<std::string, std::uint32_t>& palette,
                              const std::string& sensor_name, const SensorSpec& spec,
                              const SensorPose& pose);

// Inverse of write_dataset. Verifies per-file CRC32 (CorruptDataset) and
// presence (IncompleteDataset / IoError for a missing manifest).
std::vector<LabeledFrame> read_dataset(const std::string& dir,
                                       DatasetManifest* manifest = nullptr);

std::string frame_stem(std::uint64_t index);  // "000042"

}  // namespace lidartwin
