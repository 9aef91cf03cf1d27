#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tfmst/dsl.hpp"

namespace fixtures {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string model_path(const std::string& name) {
  return std::string(TFMST_MODELS_DIR) + "/" + name;
}

/// Parsed and relation-closed, the way the CLI loads models.
inline tfmst::Model load(const std::string& name) {
  auto result = tfmst::parse_model(read_file(model_path(name)), name);
  if (!result) throw std::runtime_error(result.errors().front().message());
  return tfmst::close_relations(result.model());
}

inline tfmst::Model robots() { return load("robots.tfm"); }

}  // namespace fixtures
