#pragma once

#include <cstdint>
#include <string>

namespace lidartwin {

// Whole-file helpers. Writers go through a temp file + rename so failures
// never leave partial outputs at the destination.
std::string read_file(const std::string& path);           // throws IoError
void write_file_atomic(const std::string& path, const std::string& bytes);

std::uint32_t crc32_of(const std::string& bytes);
std::uint32_t crc32_of_file(const std::string& path);

}  // namespace lidartwin
