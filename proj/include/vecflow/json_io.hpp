#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "vecflow/graph.hpp"
#include "vecflow/group_flow.hpp"
#include "vecflow/immersion.hpp"
#include "vecflow/vector_flow.hpp"

namespace vecflow {

using Json = nlohmann::ordered_json;

/// Keys are inserted in id order so dumps are canonical.
Json to_json(const Multigraph& g);
Json to_json(const Multigraph& g, const Orientation& o);
Json to_json(const Orientation& o);
Json to_json(const GroupFlow& flow);
Json to_json(const VectorFlow& flow);
Json to_json(const Immersion& imm);
Json to_json(const Eigen::VectorXd& x);

Multigraph graph_from_json(const Json& j);
/// The "orientation" member if present.
std::optional<Orientation> orientation_from_json(const Json& j);
/// A flow file may omit its orientation; `fallback` is used then.
GroupFlow group_flow_from_json(const Json& j, const Orientation& fallback);
VectorFlow vector_flow_from_json(const Json& j, const Orientation& fallback);
Immersion immersion_from_json(const Json& j, const Orientation& fallback);

Json parse_json(const std::string& text);
std::string dump(const Json& j);
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace vecflow
