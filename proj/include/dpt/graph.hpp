#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpt {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 a);
double cross(Vec2 a, Vec2 b);

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgeInput {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

// A dart is a directed edge: dart 2e runs edges[e].u -> edges[e].v, dart 2e+1 the reverse.
struct Face {
  std::vector<int> darts;  // ccw for inner faces, each dart has the face on its left
  bool is_outer = false;
  double signed_area = 0.0;
  Vec2 centroid;
};

struct Neighbor {
  int vertex;
  int dart;  // outgoing dart to `vertex`
};

class EmbeddedGraph {
 public:
  std::vector<Vec2> pos;
  std::vector<EdgeInput> edges;
  std::vector<std::vector<Neighbor>> rotation;  // ccw by angle
  std::vector<double> mu;                        // total incident weight
  std::vector<Face> faces;
  std::vector<int> dart_face;  // face on the left of each dart
  int outer_face = -1;

  int num_vertices() const { return static_cast<int>(pos.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_darts() const { return 2 * num_edges(); }

  int tail(int d) const { return (d & 1) ? edges[d >> 1].v : edges[d >> 1].u; }
  int head(int d) const { return (d & 1) ? edges[d >> 1].u : edges[d >> 1].v; }
  static int twin(int d) { return d ^ 1; }
  double weight(int d) const { return edges[d >> 1].w; }
  double length(int d) const { return norm(pos[head(d)] - pos[tail(d)]); }

  // dart from u to v, or -1
  int find_dart(int u, int v) const;
  // position of dart d within rotation[tail(d)]
  int rotation_index(int d) const { return rot_index_[d]; }
  // next dart along the face on the left of d
  int face_next(int d) const { return face_next_[d]; }

  friend EmbeddedGraph build_graph(const std::vector<Vec2>&, const std::vector<EdgeInput>&, bool);

 private:
  std::vector<int> rot_index_;
  std::vector<int> face_next_;
};

// Builds rotation system and faces. Throws GraphError on invalid input.
EmbeddedGraph build_graph(const std::vector<Vec2>& vertices, const std::vector<EdgeInput>& edges,
                          bool check_planarity = false);

struct StructureReport {
  double varpi0 = 0.0;
  double eta0 = 0.0;
  double kappa0 = 0.0;
  double nu0 = 0.0;
  int nu0_samples = 0;
  int max_degree = 0;
  int max_face_degree = 0;
  bool satisfied_a = false;
  bool satisfied_b = false;
  bool satisfied_c = false;
};

StructureReport validate_assumptions(const EmbeddedGraph& g, int nu_samples = 200,
                                     std::uint64_t seed = 1);

double local_scale(const EmbeddedGraph& g, int v);
double transition_probability(const EmbeddedGraph& g, int v, int w);

struct DiscPair {
  std::vector<int> interior;
  std::vector<int> boundary;
};

// Component of {v : |v-u| < r} containing u ({u} when r <= r_u), plus its outer neighbours.
DiscPair discrete_disc(const EmbeddedGraph& g, int u, double r);

struct ConnectorPath {
  std::vector<int> path;
  double length = 0.0;
  double ratio = 0.0;
};

// Nearest-neighbour path from u to v using only vertices of faces met by the segment [u;v].
ConnectorPath connector_path(const EmbeddedGraph& g, int u, int v);

// Faces (inner) whose closed polygon meets the segment [p;q].
std::vector<int> faces_crossed(const EmbeddedGraph& g, Vec2 p, Vec2 q);

// Unit-weight square lattice patch with vertices (x0..x1) x (y0..y1); id = (y-y0)*(nx)+(x-x0).
EmbeddedGraph square_lattice(int x0, int x1, int y0, int y1);
int lattice_id(int x0, int x1, int y0, int x, int y);

}  // namespace dpt
