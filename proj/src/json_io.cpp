#include "vecflow/json_io.hpp"

#include <string>

#include "vecflow/errors.hpp"

namespace vecflow {

namespace {

int parse_id(const std::string& key) {
  std::size_t used = 0;
  int id = 0;
  try {
    id = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw PreconditionError("malformed_json", "'" + key + "' is not an integer id");
  return id;
}

const Json& member(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw PreconditionError("malformed_json", std::string("missing member '") + name + "'");
  return j.at(name);
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("malformed_json", "expected an array of numbers");
  Eigen::VectorXd x(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw PreconditionError("malformed_json", "expected a number");
    x[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return x;
}

Eigen::Vector3d vec3_from_json(const Json& j) {
  const Eigen::VectorXd x = vector_from_json(j);
  if (x.size() != 3) throw PreconditionError("malformed_json", "expected a 3-vector");
  return x;
}

Orientation orientation_or(const Json& j, const Orientation& fallback) {
  auto o = orientation_from_json(j);
  return o ? *o : fallback;
}

// nlohmann throws its own hierarchy; the CLI only knows PreconditionError.
template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw PreconditionError("malformed_json", e.what());
  }
}

}  // namespace

Json to_json(const Eigen::VectorXd& x) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(x[i]);
  return a;
}

Json to_json(const Multigraph& g) {
  Json j;
  j["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const auto& [id, e] : g.edge_map()) edges.push_back({{"id", id}, {"u", e.u}, {"v", e.v}});
  j["edges"] = edges;
  if (g.allows_loops()) j["allow_loops"] = true;
  return j;
}

Json to_json(const Multigraph& g, const Orientation& o) {
  Json j = to_json(g);
  j["orientation"] = to_json(o);
  return j;
}

Json to_json(const Orientation& o) {
  Json j = Json::object();
  for (const auto& [id, a] : o.arrows()) j[std::to_string(id)] = {{"init", a.init}, {"ter", a.ter}};
  return j;
}

Json to_json(const GroupFlow& flow) {
  Json j;
  j["group"] = flow.group.moduli;
  Json values = Json::object();
  for (const auto& [id, x] : flow.values) values[std::to_string(id)] = x;
  j["values"] = values;
  j["orientation"] = to_json(flow.orientation);
  return j;
}

Json to_json(const VectorFlow& flow) {
  Json j;
  j["dim"] = flow.dim;
  Json values = Json::object();
  for (const auto& [id, x] : flow.values) values[std::to_string(id)] = to_json(x);
  j["values"] = values;
  j["orientation"] = to_json(flow.orientation);
  return j;
}

Json to_json(const Immersion& imm) {
  Json j;
  Json points = Json::object();
  for (const auto& [v, p] : imm.points) points[std::to_string(v)] = to_json(Eigen::VectorXd(p));
  j["vertices"] = points;
  Json arcs = Json::object();
  for (const auto& [id, arc] : imm.arcs)
    arcs[std::to_string(id)] = {{"axis", to_json(Eigen::VectorXd(arc.axis))},
                                {"start", to_json(Eigen::VectorXd(arc.start))},
                                {"length", arc.length}};
  j["arcs"] = arcs;
  j["orientation"] = to_json(imm.orientation);
  return j;
}

Multigraph graph_from_json(const Json& j) {
  return guarded([&] {
    Multigraph g(j.is_object() && j.value("allow_loops", false));
    for (const Json& v : member(j, "vertices")) g.add_vertex(v.get<int>());
    for (const Json& e : member(j, "edges"))
      g.add_edge(member(e, "id").get<int>(), member(e, "u").get<int>(), member(e, "v").get<int>());
    return g;
  });
}

std::optional<Orientation> orientation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("orientation")) return std::nullopt;
  return guarded([&] {
    Orientation o;
    for (const auto& [key, a] : j.at("orientation").items())
      o.set(parse_id(key), {member(a, "init").get<int>(), member(a, "ter").get<int>()});
    return std::optional<Orientation>(o);
  });
}

GroupFlow group_flow_from_json(const Json& j, const Orientation& fallback) {
  return guarded([&] {
    GroupFlow flow{AbelianGroup(member(j, "group").get<std::vector<int>>()), orientation_or(j, fallback), {}};
    for (const auto& [key, x] : member(j, "values").items()) flow.values[parse_id(key)] = x.get<std::vector<int>>();
    return flow;
  });
}

VectorFlow vector_flow_from_json(const Json& j, const Orientation& fallback) {
  return guarded([&] {
    VectorFlow flow;
    flow.dim = member(j, "dim").get<int>();
    flow.orientation = orientation_or(j, fallback);
    for (const auto& [key, x] : member(j, "values").items()) flow.values[parse_id(key)] = vector_from_json(x);
    return flow;
  });
}

Immersion immersion_from_json(const Json& j, const Orientation& fallback) {
  return guarded([&] {
    Immersion imm;
    imm.orientation = orientation_or(j, fallback);
    for (const auto& [key, p] : member(j, "vertices").items()) imm.points[parse_id(key)] = vec3_from_json(p);
    for (const auto& [key, a] : member(j, "arcs").items())
      imm.arcs[parse_id(key)] =
          Arc{vec3_from_json(member(a, "axis")), vec3_from_json(member(a, "start")), member(a, "length").get<double>()};
    return imm;
  });
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw PreconditionError("malformed_json", e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace vecflow
