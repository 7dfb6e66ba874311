#pragma once

#include <string>

#include "dpt/generators.hpp"
#include "json.hpp"

namespace dpt {

using json = nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json graph_to_json(const EmbeddedGraph& g);
EmbeddedGraph graph_from_json(const json& j);

// {"graph":{...},"interior":[...]} plus optional "marks", "arcs", "points", "spec".
json domain_to_json(const Generated& gen);
json domain_to_json(const DiscreteDomain& dom);
// "graph" may be inline or a path relative to base_dir. Missing marks leave quad = {-1,-1,-1,-1}.
Generated domain_from_json(const json& j, const std::string& base_dir = ".");

GenSpec genspec_from_json(const json& j);
json genspec_to_json(const GenSpec& s);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
Generated load_domain_file(const std::string& path);

}  // namespace dpt
