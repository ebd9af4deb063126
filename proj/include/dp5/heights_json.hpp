#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dp5/heightspec.hpp"

namespace dp5 {

// Height-spec file: {"format":"dp5-heights-v1","members":[[c0,...,c9],...]}
// with each coefficient either an integer or a pair [x,y] meaning x + y·ω in
// the integral basis of the target field; coefficient order is the fixed
// degree-3 monomial order documented in cubic.hpp.

inline nlohmann::json height_set_to_json(const FieldSpec& F, const std::vector<CubicForm>& forms) {
  nlohmann::json j;
  j["format"] = "dp5-heights-v1";
  j["members"] = nlohmann::json::array();
  for (auto& f : forms) {
    nlohmann::json row = nlohmann::json::array();
    for (auto& c : f.c) {
      if (F.is_rational() || c.y == 0) row.push_back(c.x);
      else row.push_back(nlohmann::json::array({c.x, c.y}));
    }
    j["members"].push_back(row);
  }
  return j;
}

inline std::vector<CubicForm> height_set_from_json(const FieldSpec& F, const nlohmann::json& j) {
  if (!j.contains("format") || j["format"] != "dp5-heights-v1")
    throw std::invalid_argument("height spec: unknown format");
  std::vector<CubicForm> forms;
  for (auto& row : j.at("members")) {
    if (row.size() != 10) throw std::invalid_argument("height spec: member needs 10 coefficients");
    CubicForm f;
    for (int i = 0; i < 10; ++i) {
      auto& c = row[i];
      if (c.is_number_integer()) f.c[i] = {c.get<i64>(), 0};
      else if (c.is_array() && c.size() == 2)
        f.c[i] = {c[0].get<i64>(), c[1].get<i64>()};
      else throw std::invalid_argument("height spec: bad coefficient");
      if (F.is_rational() && f.c[i].y != 0)
        throw std::invalid_argument("height spec: quadratic coefficient over Q");
    }
    forms.push_back(f);
  }
  return forms;
}

// Load and validate; refuses anything that fails admissibility.
inline HeightSpec load_height_spec(const FieldSpec& F, const std::string& path, int samples = 2000,
                                   uint64_t seed = 1) {
  // builtin aliases for the two canonical sets
  if (path == "weil6" || path == "builtin:weil6") return make_weil_spec(F, samples);
  if (path == "sym12" || path == "builtin:sym12") return make_symmetric_spec(F, samples);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open height spec file: " + path);
  nlohmann::json j;
  in >> j;
  return validate_admissible(F, height_set_from_json(F, j), samples, seed);
}

inline void save_height_set(const FieldSpec& F, const std::vector<CubicForm>& forms,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << height_set_to_json(F, forms).dump(1) << "\n";
}

}  // namespace dp5
