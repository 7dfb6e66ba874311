#include "dpt/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace dpt {

namespace {

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw IoError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw IoError(std::string(what) + " is not finite");
  return v;
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw IoError(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

json graph_to_json(const EmbeddedGraph& g) {
  json vs = json::array(), es = json::array();
  for (int i = 0; i < g.num_vertices(); ++i) vs.push_back({{"id", i}, {"x", g.pos[i].x}, {"y", g.pos[i].y}});
  for (const auto& e : g.edges) es.push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}});
  return {{"vertices", vs}, {"edges", es}};
}

EmbeddedGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw IoError("graph needs 'vertices' and 'edges'");
  const auto& vs = j.at("vertices");
  const auto& es = j.at("edges");
  if (!vs.is_array() || !es.is_array()) throw IoError("'vertices' and 'edges' must be arrays");
  std::vector<Vec2> pts(vs.size());
  std::vector<char> seen(vs.size(), 0);
  for (const auto& v : vs) {
    const int id = integer(v.at("id"), "vertex id");
    if (id < 0 || id >= static_cast<int>(vs.size()) || seen[id])
      throw IoError("vertex ids must be dense from 0 without repeats");
    seen[id] = 1;
    pts[id] = {finite_number(v.at("x"), "x"), finite_number(v.at("y"), "y")};
  }
  std::vector<EdgeInput> edges;
  for (const auto& e : es) {
    EdgeInput in;
    in.u = integer(e.at("u"), "edge u");
    in.v = integer(e.at("v"), "edge v");
    in.w = e.contains("w") ? finite_number(e.at("w"), "edge weight") : 1.0;
    edges.push_back(in);
  }
  try {
    return build_graph(pts, edges);
  } catch (const GraphError& err) {
    throw IoError(std::string("invalid graph: ") + err.what());
  }
}

json genspec_to_json(const GenSpec& s) {
  json p = json::object();
  for (const auto& [k, v] : s.params) p[k] = v;
  return {{"family", s.family}, {"params", p}, {"seed", s.seed}};
}

GenSpec genspec_from_json(const json& j) {
  GenSpec s;
  if (!j.contains("family") || !j.at("family").is_string()) throw IoError("generator spec needs 'family'");
  s.family = j.at("family").get<std::string>();
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) s.params[k] = finite_number(v, "parameter");
  }
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

json domain_to_json(const DiscreteDomain& dom) {
  return {{"graph", graph_to_json(dom.g())}, {"interior", dom.interior}};
}

json domain_to_json(const Generated& gen) {
  json j = domain_to_json(gen.dom);
  j["marks"] = {{"a", gen.quad[0]}, {"b", gen.quad[1]}, {"c", gen.quad[2]}, {"d", gen.quad[3]}};
  json arcs = json::object();
  for (const auto& [k, v] : gen.arcs) arcs[k] = {v.first, v.second};
  j["arcs"] = arcs;
  j["points"] = gen.points;
  if (!gen.spec.family.empty()) j["spec"] = genspec_to_json(gen.spec);
  return j;
}

Generated domain_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("graph") || !j.contains("interior"))
    throw IoError("domain needs 'graph' and 'interior'");
  json gj = j.at("graph");
  if (gj.is_string()) gj = read_json_file((std::filesystem::path(base_dir) / gj.get<std::string>()).string());
  auto g = std::make_shared<EmbeddedGraph>(graph_from_json(gj));
  std::vector<int> interior;
  for (const auto& v : j.at("interior")) interior.push_back(integer(v, "interior id"));
  Generated out;
  try {
    out.dom = make_domain(g, interior);
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid domain: ") + e.what());
  }
  out.quad = {-1, -1, -1, -1};
  if (j.contains("marks")) {
    const auto& m = j.at("marks");
    out.quad = {m.at("a").get<int>(), m.at("b").get<int>(), m.at("c").get<int>(), m.at("d").get<int>()};
  }
  if (j.contains("arcs"))
    for (const auto& [k, v] : j.at("arcs").items()) out.arcs[k] = {v.at(0).get<int>(), v.at(1).get<int>()};
  if (j.contains("points"))
    for (const auto& [k, v] : j.at("points").items()) out.points[k] = v.get<int>();
  if (j.contains("spec")) out.spec = genspec_from_json(j.at("spec"));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

Generated load_domain_file(const std::string& path) {
  const json j = read_json_file(path);
  const auto dir = std::filesystem::path(path).parent_path().string();
  return domain_from_json(j, dir.empty() ? "." : dir);
}

}  // namespace dpt
