#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "trrg/dot_model.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(TRRG_FIXTURE_DIR) + "/" + name; }

inline std::string text(const std::string& name) {
  std::ifstream in(path(name));
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline trrg::TimedModel model(const std::string& name) { return trrg::parse_model_text(text(name)); }

// Well-formed models that the whole pipeline accepts.
inline const std::vector<std::string>& valid() {
  static const std::vector<std::string> names{"fig1.dot", "coffee.dot", "coffee_tea_only.dot", "trs.dot",
                                              "alarm.dot", "lights.dot", "choice_window.dot"};
  return names;
}

// Valid fixtures without nondeterminism.
inline const std::vector<std::string>& deterministic() {
  static const std::vector<std::string> names{"fig1.dot", "coffee_tea_only.dot", "trs.dot", "alarm.dot",
                                              "lights.dot"};
  return names;
}

}  // namespace fixtures
