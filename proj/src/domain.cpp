#include "dpt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dpt {

namespace {

int next_boundary_dart(const EmbeddedGraph& g, const std::vector<int>& local, int d) {
  int t = g.tail(d);
  int i = g.rotation_index(d);
  // bounded by the number of darts around the contour
  for (int guard = 0; guard <= 2 * g.num_darts(); ++guard) {
    const auto& rot = g.rotation[t];
    i = (i + 1) % static_cast<int>(rot.size());
    const Neighbor nb = rot[i];
    if (local[nb.vertex] < 0) return nb.dart;
    const int back = EmbeddedGraph::twin(nb.dart);
    t = nb.vertex;
    i = g.rotation_index(back);
  }
  throw DomainError("boundary contour traversal did not close");
}

double midpoint_area(const EmbeddedGraph& g, const std::vector<int>& darts) {
  double a2 = 0.0;
  const std::size_t n = darts.size();
  for (std::size_t k = 0; k < n; ++k) {
    const int d0 = darts[k], d1 = darts[(k + 1) % n];
    const Vec2 p = 0.5 * (g.pos[g.tail(d0)] + g.pos[g.head(d0)]);
    const Vec2 q = 0.5 * (g.pos[g.tail(d1)] + g.pos[g.head(d1)]);
    a2 += cross(p, q);
  }
  return 0.5 * a2;
}

}  // namespace

int DiscreteDomain::boundary_index(int x_int, int x) const {
  const int d = graph->find_dart(x_int, x);
  if (d < 0) return -1;
  for (int i = 0; i < num_boundary(); ++i)
    if (boundary[i] == d) return i;
  return -1;
}

int DiscreteDomain::contour_of(int i) const {
  int k = 0;
  for (std::size_t c = 0; c < contour_start.size(); ++c)
    if (contour_start[c] <= i) k = static_cast<int>(c);
  return k;
}

std::vector<std::vector<int>> components(const EmbeddedGraph& g, const std::vector<int>& verts) {
  std::vector<int> mark(g.num_vertices(), -2);
  for (int v : verts) mark[v] = -1;
  std::vector<std::vector<int>> out;
  for (int s : verts) {
    if (mark[s] != -1) continue;
    const int cid = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    mark[s] = cid;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out[cid].push_back(v);
      for (const auto& nb : g.rotation[v])
        if (mark[nb.vertex] == -1) {
          mark[nb.vertex] = cid;
          stack.push_back(nb.vertex);
        }
    }
    std::sort(out[cid].begin(), out[cid].end());
  }
  return out;
}

DiscreteDomain make_domain(std::shared_ptr<const EmbeddedGraph> gp, std::vector<int> interior) {
  if (!gp) throw DomainError("null graph");
  const EmbeddedGraph& g = *gp;
  if (interior.empty()) throw DomainError("empty interior");
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  for (int v : interior)
    if (v < 0 || v >= g.num_vertices()) throw DomainError("interior vertex out of range");
  if (components(g, interior).size() != 1) throw DomainError("interior is disconnected");

  DiscreteDomain dom;
  dom.graph = gp;
  dom.interior = std::move(interior);
  dom.local.assign(g.num_vertices(), -1);
  for (std::size_t i = 0; i < dom.interior.size(); ++i) dom.local[dom.interior[i]] = static_cast<int>(i);

  std::vector<int> bdarts;
  for (int v : dom.interior)
    for (const auto& nb : g.rotation[v])
      if (dom.local[nb.vertex] < 0) bdarts.push_back(nb.dart);
  if (bdarts.empty()) throw DomainError("interior touches no exterior vertex");
  for (int e = 0; e < g.num_edges(); ++e)
    if (dom.local[g.edges[e].u] >= 0 && dom.local[g.edges[e].v] >= 0) dom.interior_edges.push_back(e);

  std::sort(bdarts.begin(), bdarts.end());
  std::vector<char> used(g.num_darts(), 0);
  std::vector<std::vector<int>> contours;
  for (int d0 : bdarts) {
    if (used[d0]) continue;
    std::vector<int> c;
    int d = d0;
    do {
      if (used[d]) throw DomainError("boundary contour traversal revisits an edge");
      used[d] = 1;
      c.push_back(d);
      d = next_boundary_dart(g, dom.local, d);
    } while (d != d0);
    contours.push_back(std::move(c));
  }
  // outer contour: largest signed area of the midpoint polygon
  std::size_t outer = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < contours.size(); ++k) {
    const double a = midpoint_area(g, contours[k]);
    if (a > best) {
      best = a;
      outer = k;
    }
  }
  std::swap(contours[0], contours[outer]);
  for (auto& c : contours) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    dom.contour_start.push_back(static_cast<int>(dom.boundary.size()));
    dom.boundary.insert(dom.boundary.end(), c.begin(), c.end());
  }
  dom.simply_connected = is_simply_connected(dom);
  return dom;
}

bool is_simply_connected(const DiscreteDomain& dom) {
  const EmbeddedGraph& g = dom.g();
  const long long rank = static_cast<long long>(dom.interior_edges.size()) -
                         static_cast<long long>(dom.interior.size()) + 1;
  long long enclosed = 0;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    if (g.faces[f].is_outer) continue;
    bool all = true;
    for (int d : g.faces[f].darts)
      if (!dom.is_interior(g.tail(d)) || !dom.is_interior(g.head(d))) {
        all = false;
        break;
      }
    if (all) ++enclosed;
  }
  return rank == enclosed;
}

BoundaryArc arc(const DiscreteDomain& dom, int a, int b) {
  const int nb = dom.num_boundary();
  if (a < 0 || a >= nb || b < 0 || b >= nb) throw DomainError("boundary index out of range");
  const int ca = dom.contour_of(a), cb = dom.contour_of(b);
  if (ca != cb) throw DomainError("arc endpoints lie on different boundary contours");
  const int s = dom.contour_start[ca];
  const int len = (ca + 1 < static_cast<int>(dom.contour_start.size()) ? dom.contour_start[ca + 1] : nb) - s;
  BoundaryArc out;
  out.start = a;
  out.end = b;
  const int steps = ((b - a) % len + len) % len + 1;
  for (int k = 0; k < steps; ++k) out.members.push_back(s + ((a - s + k) % len));
  return out;
}

Quadrilateral make_quad(const DiscreteDomain& dom, int a, int b, int c, int d) {
  const int n = dom.outer_size();
  for (int x : {a, b, c, d})
    if (x < 0 || x >= n) throw DomainError("quadrilateral mark is not on the outer boundary");
  auto off = [&](int x) { return ((x - a) % n + n) % n; };
  if (!(0 < off(b) && off(b) < off(c) && off(c) < off(d)))
    throw DomainError("quadrilateral marks must be distinct and counterclockwise");
  return Quadrilateral{&dom, a, b, c, d};
}

PolygonalRepresentation polygonal_representation(const DiscreteDomain& dom) {
  if (!dom.simply_connected) throw DomainError("polygonal representation needs a simply connected domain");
  PolygonalRepresentation p;
  const EmbeddedGraph& g = dom.g();
  for (int d : dom.boundary) p.points.push_back(0.5 * (g.pos[g.tail(d)] + g.pos[g.head(d)]));
  p.signed_area = midpoint_area(g, dom.boundary);
  return p;
}

double distance_to_boundary(const DiscreteDomain& dom, int u) {
  if (!dom.is_interior(u)) throw DomainError("vertex " + std::to_string(u) + " is not interior");
  const EmbeddedGraph& g = dom.g();
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dom.num_boundary(); ++i) d = std::min(d, norm(g.pos[dom.bd_ext(i)] - g.pos[u]));
  return d;
}

std::vector<int> inner_disc(const DiscreteDomain& dom, int u) {
  const double d = distance_to_boundary(dom, u);
  return discrete_disc(dom.g(), u, d / 3.0).interior;
}

namespace {
std::vector<int> ball_component(const DiscreteDomain& dom, Vec2 centre, int seed, double r) {
  const EmbeddedGraph& g = dom.g();
  std::vector<int> out;
  if (!(norm(g.pos[seed] - centre) < r)) return out;
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<int> stack{seed};
  seen[seed] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (const auto& nb : g.rotation[v]) {
      const int w = nb.vertex;
      if (seen[w] || !dom.is_interior(w) || !(norm(g.pos[w] - centre) < r)) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

std::vector<int> neighborhood_of_vertex(const DiscreteDomain& dom, int u, double r) {
  if (!dom.is_interior(u)) throw DomainError("vertex " + std::to_string(u) + " is not interior");
  return ball_component(dom, dom.g().pos[u], u, r);
}

std::vector<int> neighborhood_of_boundary(const DiscreteDomain& dom, int i, double r) {
  if (i < 0 || i >= dom.num_boundary()) throw DomainError("boundary index out of range");
  return ball_component(dom, dom.g().pos[dom.bd_ext(i)], dom.bd_int(i), r);
}

std::pair<int, int> run_arc(const DiscreteDomain& dom, const std::function<bool(int)>& pred) {
  const int n = dom.outer_size();
  std::vector<char> in(n);
  int count = 0;
  for (int i = 0; i < n; ++i) count += (in[i] = pred(i) ? 1 : 0);
  if (count == 0) throw DomainError("no boundary edge matches the arc selector");
  if (count == n) return {0, n - 1};
  int start = -1, runs = 0;
  for (int i = 0; i < n; ++i)
    if (in[i] && !in[(i - 1 + n) % n]) {
      start = i;
      ++runs;
    }
  if (runs != 1) throw DomainError("arc selector does not produce a single contiguous run");
  return {start, (start + count - 1) % n};
}

}  // namespace dpt
