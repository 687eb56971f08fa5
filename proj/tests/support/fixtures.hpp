#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SPOTBID_SOURCE_DIR
#error "SPOTBID_SOURCE_DIR must point at the repository root"
#endif

namespace spotbid::testing {

inline std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(SPOTBID_SOURCE_DIR) / relative;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Fresh, empty scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("spotbid_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace spotbid::testing
