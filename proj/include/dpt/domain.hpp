#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "dpt/graph.hpp"

namespace dpt {

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DiscreteDomain {
  std::shared_ptr<const EmbeddedGraph> graph;
  std::vector<int> interior;  // sorted vertex ids
  std::vector<int> local;     // vertex id -> index into interior, or -1
  // Oriented boundary edges (a_int -> a) as darts. The outer contour comes first in ccw order;
  // further contours (holes) follow, each starting at contour_start[k].
  std::vector<int> boundary;
  std::vector<int> contour_start;
  std::vector<int> interior_edges;  // edge ids with both endpoints interior
  bool simply_connected = false;

  const EmbeddedGraph& g() const { return *graph; }
  int num_interior() const { return static_cast<int>(interior.size()); }
  int num_boundary() const { return static_cast<int>(boundary.size()); }
  int outer_size() const {
    return contour_start.size() > 1 ? contour_start[1] : num_boundary();
  }
  bool is_interior(int v) const { return v >= 0 && v < static_cast<int>(local.size()) && local[v] >= 0; }
  int bd_int(int i) const { return graph->tail(boundary[i]); }
  int bd_ext(int i) const { return graph->head(boundary[i]); }
  // boundary index of the dart from interior x_int to exterior x, or -1
  int boundary_index(int x_int, int x) const;
  int contour_of(int i) const;
};

DiscreteDomain make_domain(std::shared_ptr<const EmbeddedGraph> g, std::vector<int> interior);
bool is_simply_connected(const DiscreteDomain& dom);

struct BoundaryArc {
  int start = 0;
  int end = 0;
  std::vector<int> members;  // boundary indices, ccw from start to end inclusive; a == b gives {a}
};

BoundaryArc arc(const DiscreteDomain& dom, int a, int b);

struct Quadrilateral {
  const DiscreteDomain* dom = nullptr;
  int a = 0, b = 0, c = 0, d = 0;
  std::vector<int> AB() const { return arc(*dom, a, b).members; }
  std::vector<int> BC() const { return arc(*dom, b, c).members; }
  std::vector<int> CD() const { return arc(*dom, c, d).members; }
  std::vector<int> DA() const { return arc(*dom, d, a).members; }
  Quadrilateral rotated() const { return Quadrilateral{dom, b, c, d, a}; }
};

// Validates that the marks are distinct and ccw-ordered on the outer contour.
Quadrilateral make_quad(const DiscreteDomain& dom, int a, int b, int c, int d);

struct PolygonalRepresentation {
  std::vector<Vec2> points;
  double signed_area = 0.0;
};

PolygonalRepresentation polygonal_representation(const DiscreteDomain& dom);

double distance_to_boundary(const DiscreteDomain& dom, int u);
std::vector<int> inner_disc(const DiscreteDomain& dom, int u);
// r-neighbourhood of an interior vertex u in the domain
std::vector<int> neighborhood_of_vertex(const DiscreteDomain& dom, int u, double r);
// r-neighbourhood of boundary edge i (component through its interior end), empty if r <= |x-x_int|
std::vector<int> neighborhood_of_boundary(const DiscreteDomain& dom, int i, double r);

// Maximal cyclic run of outer boundary indices satisfying pred; throws unless it is a single run.
std::pair<int, int> run_arc(const DiscreteDomain& dom, const std::function<bool(int)>& pred);

// Connected components of an induced vertex subset.
std::vector<std::vector<int>> components(const EmbeddedGraph& g, const std::vector<int>& verts);

}  // namespace dpt
