#pragma once

#include <string>

#include "bfmn/network.hpp"

namespace bfmn {

// GraphML with node attributes (label, count, display_form, is_cue) and
// edge attributes (multiplicity, idiosyncratic, class).
std::string to_graphml(const Bfmn& bfmn);
Bfmn from_graphml(const std::string& xml);

std::string to_dot(const Bfmn& bfmn);

// JSON document mirroring the GraphML schema.
std::string to_graph_json(const Bfmn& bfmn);

}  // namespace bfmn
