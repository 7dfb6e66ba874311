#include "dpt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

namespace dpt {

namespace {

constexpr double kPosTol = 1e-12;
constexpr double kAngleTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

double angle_of(Vec2 d) { return std::atan2(d.y, d.x); }

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
    double v = cross(b - a, c - a);
    if (std::abs(v) < 1e-14) return 0;
    return v > 0 ? 1 : -1;
  };
  auto on_seg = [](Vec2 a, Vec2 b, Vec2 c) {
    return std::min(a.x, b.x) - 1e-14 <= c.x && c.x <= std::max(a.x, b.x) + 1e-14 &&
           std::min(a.y, b.y) - 1e-14 <= c.y && c.y <= std::max(a.y, b.y) + 1e-14;
  };
  int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_seg(p1, p2, q1)) return true;
  if (o2 == 0 && on_seg(p1, p2, q2)) return true;
  if (o3 == 0 && on_seg(q1, q2, p1)) return true;
  if (o4 == 0 && on_seg(q1, q2, p2)) return true;
  return false;
}

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i], b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xc = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

int EmbeddedGraph::find_dart(int u, int v) const {
  if (u < 0 || u >= num_vertices()) return -1;
  for (const auto& nb : rotation[u])
    if (nb.vertex == v) return nb.dart;
  return -1;
}

EmbeddedGraph build_graph(const std::vector<Vec2>& vertices, const std::vector<EdgeInput>& edges,
                          bool check_planarity) {
  EmbeddedGraph g;
  const int n = static_cast<int>(vertices.size());
  if (n == 0) throw GraphError("graph has no vertices");
  for (const auto& p : vertices)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GraphError("non-finite vertex position");

  {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return vertices[a].x < vertices[b].x ||
             (vertices[a].x == vertices[b].x && vertices[a].y < vertices[b].y);
    });
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Vec2 a = vertices[order[i]], b = vertices[order[j]];
        if (b.x - a.x > kPosTol) break;
        if (std::abs(b.y - a.y) <= kPosTol)
          throw GraphError("duplicate vertex position at vertices " + std::to_string(order[i]) +
                           " and " + std::to_string(order[j]));
      }
    }
  }

  g.pos = vertices;
  g.edges = edges;
  g.rotation.assign(n, {});
  g.mu.assign(n, 0.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
      throw GraphError("edge " + std::to_string(e) + " references a missing vertex");
    if (ed.u == ed.v) throw GraphError("self-loop at vertex " + std::to_string(ed.u));
    if (!(ed.w > 0.0) || !std::isfinite(ed.w))
      throw GraphError("edge " + std::to_string(e) + " has non-positive or non-finite weight");
    if (norm(vertices[ed.v] - vertices[ed.u]) <= kPosTol)
      throw GraphError("zero-length edge " + std::to_string(e));
    g.rotation[ed.u].push_back({ed.v, static_cast<int>(2 * e)});
    g.rotation[ed.v].push_back({ed.u, static_cast<int>(2 * e + 1)});
    g.mu[ed.u] += ed.w;
    g.mu[ed.v] += ed.w;
  }

  for (int v = 0; v < n; ++v) {
    auto& rot = g.rotation[v];
    std::vector<std::pair<double, Neighbor>> keyed;
    keyed.reserve(rot.size());
    for (const auto& nb : rot) keyed.push_back({angle_of(vertices[nb.vertex] - vertices[v]), nb});
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < keyed.size(); ++i) {
      if (keyed[i].second.vertex == keyed[i + 1].second.vertex)
        throw GraphError("parallel edges between " + std::to_string(v) + " and " +
                         std::to_string(keyed[i].second.vertex));
      if (keyed[i + 1].first - keyed[i].first < kAngleTol)
        throw GraphError("two edges leave vertex " + std::to_string(v) + " at the same angle");
    }
    if (keyed.size() > 1 && keyed.front().first + 2 * kPi - keyed.back().first < kAngleTol)
      throw GraphError("two edges leave vertex " + std::to_string(v) + " at the same angle");
    for (std::size_t i = 0; i < keyed.size(); ++i) rot[i] = keyed[i].second;
  }

  // connectivity
  {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& nb : g.rotation[v])
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = 1;
          ++count;
          stack.push_back(nb.vertex);
        }
    }
    if (count != n) throw GraphError("graph is disconnected");
  }

  const int nd = g.num_darts();
  g.rot_index_.assign(nd, -1);
  for (int v = 0; v < n; ++v)
    for (std::size_t i = 0; i < g.rotation[v].size(); ++i) g.rot_index_[g.rotation[v][i].dart] = i;

  g.face_next_.assign(nd, -1);
  for (int d = 0; d < nd; ++d) {
    const int v = g.head(d);
    const auto& rot = g.rotation[v];
    const int deg = static_cast<int>(rot.size());
    const int i = g.rot_index_[EmbeddedGraph::twin(d)];
    g.face_next_[d] = rot[(i - 1 + deg) % deg].dart;
  }

  g.dart_face.assign(nd, -1);
  for (int d0 = 0; d0 < nd; ++d0) {
    if (g.dart_face[d0] >= 0) continue;
    Face f;
    const int fid = static_cast<int>(g.faces.size());
    int d = d0;
    double area2 = 0.0, cx = 0.0, cy = 0.0;
    do {
      g.dart_face[d] = fid;
      f.darts.push_back(d);
      const Vec2 p = vertices[g.tail(d)], q = vertices[g.head(d)];
      const double c = cross(p, q);
      area2 += c;
      cx += (p.x + q.x) * c;
      cy += (p.y + q.y) * c;
      d = g.face_next_[d];
    } while (d != d0);
    f.signed_area = 0.5 * area2;
    if (std::abs(area2) > 1e-300) {
      f.centroid = {cx / (3.0 * area2), cy / (3.0 * area2)};
    } else {
      double sx = 0, sy = 0;
      for (int dd : f.darts) {
        sx += vertices[g.tail(dd)].x;
        sy += vertices[g.tail(dd)].y;
      }
      f.centroid = {sx / f.darts.size(), sy / f.darts.size()};
    }
    g.faces.push_back(std::move(f));
  }
  if (edges.empty()) {
    Face f;
    f.is_outer = true;
    f.centroid = vertices[0];
    g.faces.push_back(f);
  }

  const long long euler = static_cast<long long>(n) - static_cast<long long>(edges.size()) +
                          static_cast<long long>(g.faces.size());
  if (euler != 2) throw GraphError("rotation system fails the Euler check (V-E+F=" +
                                   std::to_string(euler) + "); embedding is not planar");

  int outer = -1;
  for (std::size_t i = 0; i < g.faces.size(); ++i) {
    if (g.faces[i].signed_area < 0.0) {
      if (outer >= 0) throw GraphError("several faces with negative area; embedding is not planar");
      outer = static_cast<int>(i);
    }
  }
  if (outer < 0) {
    if (g.faces.size() != 1) throw GraphError("no face with negative area");
    outer = 0;
  }
  g.outer_face = outer;
  g.faces[outer].is_outer = true;

  if (check_planarity) {
    const int m = g.num_edges();
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const auto &ea = edges[a], &eb = edges[b];
        if (ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v) continue;
        if (segments_intersect(vertices[ea.u], vertices[ea.v], vertices[eb.u], vertices[eb.v]))
          throw GraphError("edges " + std::to_string(a) + " and " + std::to_string(b) + " cross");
      }
  }
  return g;
}

double local_scale(const EmbeddedGraph& g, int v) {
  if (v < 0 || v >= g.num_vertices()) throw GraphError("vertex out of range");
  if (g.rotation[v].empty()) throw GraphError("isolated vertex " + std::to_string(v));
  double r = std::numeric_limits<double>::infinity();
  for (const auto& nb : g.rotation[v]) r = std::min(r, norm(g.pos[nb.vertex] - g.pos[v]));
  return r;
}

double transition_probability(const EmbeddedGraph& g, int v, int w) {
  const int d = g.find_dart(v, w);
  if (d < 0) throw GraphError("(" + std::to_string(v) + "," + std::to_string(w) + ") is not an edge");
  return g.weight(d) / g.mu[v];
}

StructureReport validate_assumptions(const EmbeddedGraph& g, int nu_samples, std::uint64_t seed) {
  StructureReport rep;
  double min_w = std::numeric_limits<double>::infinity(), max_mu = 0.0;
  for (const auto& e : g.edges) min_w = std::min(min_w, e.w);
  for (double m : g.mu) max_mu = std::max(max_mu, m);
  rep.varpi0 = g.edges.empty() ? 0.0 : std::min(min_w, 1.0 / max_mu);

  double max_angle = 0.0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& rot = g.rotation[v];
    const int deg = static_cast<int>(rot.size());
    rep.max_degree = std::max(rep.max_degree, deg);
    for (int i = 0; i < deg; ++i) {
      const int d = rot[i].dart;
      if (g.dart_face[d] == g.outer_face) continue;
      const double a0 = angle_of(g.pos[rot[i].vertex] - g.pos[v]);
      const double a1 = angle_of(g.pos[rot[(i + 1) % deg].vertex] - g.pos[v]);
      double gap = a1 - a0;
      if (deg == 1 || gap <= 0.0) gap += 2 * kPi;
      max_angle = std::max(max_angle, gap);
    }
  }
  rep.eta0 = kPi - max_angle;
  for (const auto& f : g.faces)
    if (!f.is_outer) rep.max_face_degree = std::max<int>(rep.max_face_degree, f.darts.size());

  rep.kappa0 = 1.0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.rotation[v].empty()) continue;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& nb : g.rotation[v]) {
      const double l = norm(g.pos[nb.vertex] - g.pos[v]);
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
    rep.kappa0 = std::max(rep.kappa0, hi / lo);
  }

  rep.nu0 = 1.0;
  const int n = g.num_vertices();
  if (n >= 2 && nu_samples > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < nu_samples; ++s) {
      int u = pick(rng), v = pick(rng);
      if (u == v) continue;
      rep.nu0 = std::max(rep.nu0, connector_path(g, u, v).ratio);
      ++rep.nu0_samples;
    }
  }
  rep.satisfied_a = rep.varpi0 > 0.0;
  rep.satisfied_b = rep.eta0 > 0.0;
  rep.satisfied_c = std::isfinite(rep.kappa0) && std::isfinite(rep.nu0);
  return rep;
}

DiscPair discrete_disc(const EmbeddedGraph& g, int u, double r) {
  const int n = g.num_vertices();
  if (u < 0 || u >= n) throw GraphError("vertex out of range");
  std::vector<char> in(n, 0);
  std::vector<int> stack{u};
  in[u] = 1;
  DiscPair out;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.interior.push_back(v);
    for (const auto& nb : g.rotation[v]) {
      if (in[nb.vertex]) continue;
      if (norm(g.pos[nb.vertex] - g.pos[u]) < r) {
        in[nb.vertex] = 1;
        stack.push_back(nb.vertex);
      }
    }
  }
  std::vector<char> bd(n, 0);
  for (int v : out.interior)
    for (const auto& nb : g.rotation[v])
      if (!in[nb.vertex] && !bd[nb.vertex]) {
        bd[nb.vertex] = 1;
        out.boundary.push_back(nb.vertex);
      }
  std::sort(out.interior.begin(), out.interior.end());
  std::sort(out.boundary.begin(), out.boundary.end());
  return out;
}

std::vector<int> faces_crossed(const EmbeddedGraph& g, Vec2 p, Vec2 q) {
  std::vector<int> out;
  std::vector<Vec2> poly;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const Face& face = g.faces[f];
    poly.clear();
    bool hit = false;
    for (int d : face.darts) {
      const Vec2 a = g.pos[g.tail(d)], b = g.pos[g.head(d)];
      poly.push_back(a);
      if (!hit && segments_intersect(a, b, p, q)) hit = true;
    }
    if (!hit && !face.is_outer) hit = point_in_polygon(poly, p);
    if (hit) out.push_back(static_cast<int>(f));
  }
  return out;
}

ConnectorPath connector_path(const EmbeddedGraph& g, int u, int v) {
  if (u == v) throw GraphError("connector_path needs distinct endpoints");
  const int n = g.num_vertices();
  if (u < 0 || u >= n || v < 0 || v >= n) throw GraphError("vertex out of range");
  std::vector<char> allowed(n, 0);
  for (int f : faces_crossed(g, g.pos[u], g.pos[v]))
    for (int d : g.faces[f].darts) allowed[g.tail(d)] = 1;
  allowed[u] = allowed[v] = 1;

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[u] = 0.0;
  pq.push({0.0, u});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    if (x == v) break;
    for (const auto& nb : g.rotation[x]) {
      if (!allowed[nb.vertex]) continue;
      const double nd = d + norm(g.pos[nb.vertex] - g.pos[x]);
      if (nd < dist[nb.vertex]) {
        dist[nb.vertex] = nd;
        prev[nb.vertex] = x;
        pq.push({nd, nb.vertex});
      }
    }
  }
  ConnectorPath out;
  if (!std::isfinite(dist[v])) throw GraphError("no connector path inside the crossed faces");
  for (int x = v; x != -1; x = prev[x]) out.path.push_back(x);
  std::reverse(out.path.begin(), out.path.end());
  out.length = dist[v];
  out.ratio = out.length / norm(g.pos[v] - g.pos[u]);
  return out;
}

int lattice_id(int x0, int x1, int y0, int x, int y) { return (y - y0) * (x1 - x0 + 1) + (x - x0); }

EmbeddedGraph square_lattice(int x0, int x1, int y0, int y1) {
  std::vector<Vec2> pts;
  std::vector<EdgeInput> es;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) pts.push_back({double(x), double(y)});
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const int id = lattice_id(x0, x1, y0, x, y);
      if (x < x1) es.push_back({id, lattice_id(x0, x1, y0, x + 1, y), 1.0});
      if (y < y1) es.push_back({id, lattice_id(x0, x1, y0, x, y + 1), 1.0});
    }
  return build_graph(pts, es);
}

}  // namespace dpt
