#include "hkforge/json_io.hpp"

#include <cmath>
#include <fstream>
#include <map>

namespace hkforge {

namespace {

int two_j_of(const Json& j) {
  if (!j.contains("j") || !j["j"].is_number()) throw Error(ErrorKind::structural, "multiplet JSON needs a numeric \"j\"");
  double v = j["j"].get<double>() * 2;
  if (v < 0 || std::abs(v - std::round(v)) > 1e-12) throw Error(ErrorKind::structural, "\"j\" must be a non-negative half-integer");
  return int(std::lround(v));
}

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::structural, "complex numbers are written as [re, im]");
}

}  // namespace

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

SpherePoint sphere_point_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return SpherePoint::infinity();
    throw Error(ErrorKind::structural, "the only string root value is \"inf\"");
  }
  return SpherePoint::at(complex_from_json(j));
}

Json sphere_point_to_json(const SpherePoint& p) {
  if (p.inf) return "inf";
  return complex_to_json(p.z);
}

Multiplet multiplet_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::structural, "multiplet JSON must be an object");
  const int two_j = two_j_of(j);
  if (j.contains("coeffs")) {
    Multiplet m;
    m.two_j = two_j;
    for (const auto& c : j["coeffs"]) m.coeffs.push_back(complex_from_json(c));
    check_wellformed(m);
    return m;
  }
  if (j.contains("roots")) {
    RootConstellation c;
    c.two_j = two_j;
    if (!j.contains("scale") || !j["scale"].is_number()) throw Error(ErrorKind::structural, "root form needs a numeric \"scale\"");
    c.scale = j["scale"].get<double>();
    for (const auto& r : j["roots"]) c.roots.push_back(sphere_point_from_json(r));
    return roots_to_coefficients(c);
  }
  throw Error(ErrorKind::structural, "multiplet JSON needs \"coeffs\" or \"roots\"");
}

Json multiplet_to_json(const Multiplet& m) {
  Json c = Json::array();
  for (auto z : m.coeffs) c.push_back(complex_to_json(z));
  return {{"j", m.two_j % 2 ? Json(m.two_j / 2.0) : Json(m.two_j / 2)}, {"coeffs", c}};
}

Json constellation_to_json(const RootConstellation& c) {
  Json r = Json::array();
  for (const auto& p : c.roots) r.push_back(sphere_point_to_json(p));
  return {{"j", c.two_j % 2 ? Json(c.two_j / 2.0) : Json(c.two_j / 2)}, {"scale", c.scale}, {"roots", r}};
}

Diagram diagram_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw Error(ErrorKind::structural, "diagram JSON needs \"vertices\" and \"edges\"");
  Diagram d;
  std::map<std::string, int> index;
  for (const auto& v : j["vertices"]) {
    Vertex x;
    x.id = v.at("id").get<std::string>();
    x.rank = v.at("rank").get<int>();
    if (v.contains("tensor"))
      x.tensor = v["tensor"].get<std::string>();
    else
      x.tensor = x.rank == 2 ? "o2" : x.rank == 4 ? "o4" : "";
    if (index.count(x.id)) throw Error(ErrorKind::structural, "duplicate vertex id '" + x.id + "'");
    index[x.id] = int(d.vertices.size());
    d.vertices.push_back(x);
  }
  auto slot = [&](const Json& s) {
    if (!s.is_array() || s.size() != 2) throw Error(ErrorKind::structural, "slots are written as [\"id\", index]");
    auto it = index.find(s[0].get<std::string>());
    if (it == index.end()) throw Error(ErrorKind::structural, "edge refers to unknown vertex '" + s[0].get<std::string>() + "'");
    return Slot{it->second, s[1].get<int>()};
  };
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw Error(ErrorKind::structural, "edges are [slot, slot, orientation]");
    Edge x;
    x.from = slot(e[0]);
    x.to = slot(e[1]);
    x.orientation = e.size() == 3 ? e[2].get<int>() : 1;
    d.edges.push_back(x);
  }
  validate_diagram(d);
  return d;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::usage, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::usage, "invalid JSON in '" + path + "': " + e.what());
  }
}

Multiplet load_multiplet(const std::string& path) {
  try {
    return multiplet_from_json(load_json_file(path));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::structural, "malformed multiplet in '" + path + "': " + e.what());
  }
}

}  // namespace hkforge
