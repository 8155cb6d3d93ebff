#pragma once

#include "skm/cartan.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skm {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Diagram from the file format; the matrix is returned as written (not normalized).
inline Diagram diagram_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("parity") || !j.contains("matrix"))
    throw InputError("diagram needs \"parity\" and \"matrix\" fields");
  Diagram d;
  if (j.contains("name")) d.name = j.at("name").get<std::string>();
  for (const auto& p : j.at("parity")) d.parity.push_back(p.get<int>());
  for (const auto& row : j.at("matrix")) {
    Vec r;
    for (const auto& e : row) {
      if (e.is_string()) r.push_back(parse_scalar(e.get<std::string>()));
      else if (e.is_number_integer()) r.push_back(Scalar(e.get<long long>()));
      else throw InputError("matrix entries must be scalar-expression strings");
    }
    d.a.push_back(std::move(r));
  }
  check_shape(d.a, d.parity);
  return d;
}

inline Json diagram_to_json(const Diagram& d) {
  Json j;
  if (!d.name.empty()) j["name"] = d.name;
  j["parity"] = d.parity;
  Json m = Json::array();
  for (const auto& row : d.a) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.str());
    m.push_back(std::move(r));
  }
  j["matrix"] = std::move(m);
  return j;
}

inline Diagram read_diagram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  try {
    return diagram_from_json(j);
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

/// "s1,s2,..." with commas at parenthesis depth zero separating entries.
inline Vec parse_weight(const std::string& text) {
  Vec out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    if (cur.find_first_not_of(" \t") == std::string::npos) throw InputError("empty weight entry");
    out.push_back(parse_scalar(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) flush();
    else cur += c;
  }
  flush();
  return out;
}

inline std::string path_str(const std::vector<int>& steps) {
  std::ostringstream s;
  for (size_t i = 0; i < steps.size(); ++i) s << (i ? "," : "") << steps[i] + 1;
  return s.str();
}

}  // namespace skm
