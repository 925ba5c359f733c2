#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace testutil {

inline std::string source_dir() { return CAMA_SOURCE_DIR; }

inline std::string fixture_path(const std::string& name) {
  return source_dir() + "/tests/fixtures/" + name;
}

inline std::string world_path(const std::string& name) {
  return source_dir() + "/worlds/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testutil
