#include "dpt/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <set>

namespace dpt {

namespace {

std::vector<double> z_target(const PotentialContext& ctx, int y) { return ctx.z_field({y}); }

}  // namespace

CrossRatios cross_ratios(const PotentialContext& ctx, int a, int b, int c, int d) {
  const Network& net = ctx.net();
  const auto zb = z_target(ctx, b), zc = z_target(ctx, c), zd = z_target(ctx, d);
  auto Z = [&](int x, const std::vector<double>& zy) { return net.varpi_out(x) * zy[net.bd[x].node]; };
  CrossRatios cr;
  cr.Zab = Z(a, zb);
  cr.Zac = Z(a, zc);
  cr.Zad = Z(a, zd);
  cr.Zbc = Z(b, zc);
  cr.Zbd = Z(b, zd);
  cr.Zcd = Z(c, zd);
  const double den = cr.Zab * cr.Zcd;
  if (!(den > 0.0)) throw SolverError("degenerate quadrilateral: vanishing partition function");
  cr.X = std::sqrt(cr.Zac * cr.Zbd / den);
  cr.Y = std::sqrt(cr.Zad * cr.Zbc / den);
  if (cr.X > 1.0 + 1e-12 || cr.X > cr.Y * (1.0 + 1e-12))
    throw SolverError("cross-ratio invariants X <= 1, X <= Y violated");
  return cr;
}

CrossRatios cross_ratios(const Quadrilateral& q) {
  (void)make_quad(*q.dom, q.a, q.b, q.c, q.d);
  PotentialContext ctx(*q.dom);
  return cross_ratios(ctx, q.a, q.b, q.c, q.d);
}

double xy_relation_ratio(const CrossRatios& cr) { return (1.0 / cr.X) / (1.0 + 1.0 / cr.Y); }

std::pair<double, double> sandwich_check(const Quadrilateral& q) {
  PotentialContext ctx(*q.dom);
  const CrossRatios cr = cross_ratios(ctx, q.a, q.b, q.c, q.d);
  const double Z = ctx.Z_sets(q.AB(), q.CD());
  return {Z / cr.X, Z / cr.Y};
}

double z_log_y_ratio(const Quadrilateral& q) {
  PotentialContext ctx(*q.dom);
  const CrossRatios cr = cross_ratios(ctx, q.a, q.b, q.c, q.d);
  return ctx.Z_sets(q.AB(), q.CD()) / std::log1p(cr.Y);
}

// ---------------------------------------------------------------------------------------------

ExtremalLengthResult extremal_length(const Network& net, const std::vector<int>& A, const std::vector<int>& B) {
  if (A.empty() || B.empty()) throw DomainError("extremal length needs two nonempty arcs");
  require_disjoint(A, B);
  std::vector<char> active(net.num_boundary(), 0);
  std::vector<double> data(net.num_boundary(), 0.0);
  for (int x : A) active.at(x) = 1;
  for (int y : B) {
    active.at(y) = 1;
    data[y] = 1.0;
  }
  LaplaceSolver solver(net, active);
  ExtremalLengthResult res;
  DNField& f = res.field;
  f.A = A;
  f.B = B;
  f.V = solver.extend(data, &f.residual);
  for (double v : f.V)
    if (v < -1e-10 || v > 1.0 + 1e-10) throw SolverError("Dirichlet-Neumann potential leaves [0,1]");
  f.link_value.resize(net.num_boundary());
  for (int j = 0; j < net.num_boundary(); ++j) f.link_value[j] = active[j] ? data[j] : f.V[net.bd[j].node];
  for (int x : A) f.current_A += net.bd[x].w * f.V[net.bd[x].node];
  for (int y : B) f.current_B += net.bd[y].w * (1.0 - f.V[net.bd[y].node]);
  if (!(f.current() > 0.0)) throw SolverError("zero current between the arcs");
  res.EL = 1.0 / f.current();
  return res;
}

ExtremalLengthResult extremal_length(const DiscreteDomain& dom, const std::vector<int>& A,
                                     const std::vector<int>& B) {
  return extremal_length(network_of(dom), A, B);
}

EdgeMetric extremal_metric(const Network& net, const ExtremalLengthResult& res) {
  EdgeMetric g;
  const auto& V = res.field.V;
  g.edge.resize(net.num_edges());
  for (int e = 0; e < net.num_edges(); ++e) g.edge[e] = std::abs(V[net.eu[e]] - V[net.ev[e]]);
  g.link.resize(net.num_boundary());
  for (int j = 0; j < net.num_boundary(); ++j) g.link[j] = std::abs(res.field.link_value[j] - V[net.bd[j].node]);
  return g;
}

double metric_length(const Network& net, const EdgeMetric& g, const std::vector<int>& A, const std::vector<int>& B) {
  for (double x : g.edge)
    if (x < 0.0) throw DomainError("negative metric entry");
  for (double x : g.link)
    if (x < 0.0) throw DomainError("negative metric entry");
  std::vector<std::vector<std::pair<int, double>>> adj(net.n);
  for (int e = 0; e < net.num_edges(); ++e) {
    adj[net.eu[e]].push_back({net.ev[e], g.edge[e]});
    adj[net.ev[e]].push_back({net.eu[e], g.edge[e]});
  }
  std::vector<double> dist(net.n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (int x : A) {
    const int v = net.bd.at(x).node;
    if (g.link[x] < dist[v]) {
      dist[v] = g.link[x];
      pq.push({dist[v], v});
    }
  }
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (auto [w, len] : adj[v])
      if (d + len < dist[w]) {
        dist[w] = d + len;
        pq.push({dist[w], w});
      }
  }
  double best = std::numeric_limits<double>::infinity();
  for (int y : B) best = std::min(best, dist[net.bd.at(y).node] + g.link[y]);
  return best;
}

double metric_area(const Network& net, const EdgeMetric& g) {
  double s = 0.0;
  for (int e = 0; e < net.num_edges(); ++e) s += net.ew[e] * g.edge[e] * g.edge[e];
  for (int j = 0; j < net.num_boundary(); ++j) s += net.bd[j].w * g.link[j] * g.link[j];
  return s;
}

// ---------------------------------------------------------------------------------------------

ConjugateField harmonic_conjugate(const DiscreteDomain& dom, const std::vector<double>& V,
                                  const std::vector<double>& link_value) {
  const EmbeddedGraph& g = dom.g();
  if (static_cast<int>(V.size()) != dom.num_interior() ||
      static_cast<int>(link_value.size()) != dom.num_boundary())
    throw DomainError("field size does not match the domain");
  struct Constraint {
    int left, right;
    double delta;
  };
  std::vector<Constraint> cons;
  auto val = [&](int v) { return V[dom.local[v]]; };
  for (int e : dom.interior_edges) {
    const int d = 2 * e;
    cons.push_back({g.dart_face[d], g.dart_face[d ^ 1], g.weight(d) * (val(g.head(d)) - val(g.tail(d)))});
  }
  for (int j = 0; j < dom.num_boundary(); ++j) {
    const int d = dom.boundary[j];
    cons.push_back({g.dart_face[d], g.dart_face[d ^ 1], g.weight(d) * (link_value[j] - val(g.tail(d)))});
  }
  const int nf = static_cast<int>(g.faces.size());
  std::vector<std::vector<std::pair<int, double>>> adj(nf);
  for (const auto& c : cons) {
    adj[c.right].push_back({c.left, c.delta});
    adj[c.left].push_back({c.right, -c.delta});
  }
  ConjugateField out;
  out.value.assign(nf, std::numeric_limits<double>::quiet_NaN());
  int start = -1;
  for (const auto& c : cons) start = start < 0 ? std::min(c.left, c.right) : std::min({start, c.left, c.right});
  if (start < 0) return out;
  std::deque<int> queue{start};
  out.value[start] = 0.0;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (auto [h, dl] : adj[f])
      if (std::isnan(out.value[h])) {
        out.value[h] = out.value[f] + dl;
        queue.push_back(h);
      }
  }
  for (const auto& c : cons) {
    const double mis = out.value[c.left] - out.value[c.right] - c.delta;
    out.monodromy = std::max(out.monodromy, std::abs(mis));
  }
  double scale = 0.0;
  for (const auto& c : cons) scale = std::max(scale, std::abs(c.delta));
  for (int v : dom.interior) {
    double s = 0.0;
    for (const auto& nb : g.rotation[v]) {
      const int w = nb.vertex;
      double vw;
      if (dom.is_interior(w)) {
        vw = val(w);
      } else {
        vw = link_value[dom.boundary_index(v, w)];
      }
      s += g.weight(nb.dart) * (vw - val(v));
    }
    out.closedness_residual = std::max(out.closedness_residual, std::abs(s) / std::max(scale, 1e-300));
  }
  return out;
}

int corner_face(const DiscreteDomain& dom, int i) { return dom.g().dart_face[dom.boundary.at(i)]; }

double dual_extremal_length(const DiscreteDomain& dom, int a, int b, int c, int d) {
  if (!dom.simply_connected) throw DomainError("dual extremal length needs a simply connected domain");
  (void)make_quad(dom, a, b, c, d);
  const EmbeddedGraph& g = dom.g();
  const int n = dom.num_boundary();
  for (int i = 0; i < n; ++i)
    if (g.dart_face[g.twin(dom.boundary[(i + 1) % n])] != corner_face(dom, i))
      throw DomainError("boundary corner faces are inconsistent");
  const auto A = arc(dom, a, b).members, B = arc(dom, c, d).members;
  std::vector<int> role(g.faces.size(), 0);  // 1: electrode at 0, 2: electrode at 1
  auto mark = [&](int from, int to, int r) {
    for (int i = from; i != to; i = (i + 1) % n) {
      const int f = corner_face(dom, i);
      if (role[f] != 0 && role[f] != r) throw DomainError("dual electrodes share a face (pinched domain)");
      role[f] = r;
    }
  };
  mark(b, c, 1);
  mark(d, a, 2);

  struct DualEdge {
    int f, h;
    double c;
  };
  std::vector<DualEdge> edges;
  for (int e : dom.interior_edges) edges.push_back({g.dart_face[2 * e], g.dart_face[2 * e + 1], 1.0 / g.edges[e].w});
  for (int j : A) edges.push_back({g.dart_face[dom.boundary[j]], g.dart_face[dom.boundary[j] ^ 1], 1.0 / g.weight(dom.boundary[j])});
  for (int j : B) edges.push_back({g.dart_face[dom.boundary[j]], g.dart_face[dom.boundary[j] ^ 1], 1.0 / g.weight(dom.boundary[j])});

  std::vector<int> node(g.faces.size(), -1);
  Network net;
  for (const auto& e : edges)
    for (int f : {e.f, e.h})
      if (role[f] == 0 && node[f] < 0) {
        node[f] = net.n++;
        net.vertex_of.push_back(f);
      }
  net.mu.assign(net.n, 0.0);
  std::vector<double> data;
  double direct = 0.0;
  for (const auto& e : edges) {
    if (e.f == e.h) continue;
    const int rf = role[e.f], rh = role[e.h];
    if (rf == 0 && rh == 0) {
      net.eu.push_back(node[e.f]);
      net.ev.push_back(node[e.h]);
      net.ew.push_back(e.c);
      net.mu[node[e.f]] += e.c;
      net.mu[node[e.h]] += e.c;
    } else if (rf == 0 || rh == 0) {
      const int free_face = rf == 0 ? e.f : e.h;
      const int r = rf == 0 ? rh : rf;
      net.bd.push_back({node[free_face], e.c, 1.0, -1});
      net.mu[node[free_face]] += e.c;
      data.push_back(r == 2 ? 1.0 : 0.0);
    } else if (rf != rh) {
      direct += e.c;
    }
  }
  double current = direct;
  if (net.n > 0) {
    LaplaceSolver solver(net);
    const auto h = solver.extend(data);
    for (int j = 0; j < net.num_boundary(); ++j)
      if (data[j] == 1.0) current += net.bd[j].w * (1.0 - h[net.bd[j].node]);
  }
  if (!(current > 0.0)) throw SolverError("dual network carries no current");
  return 1.0 / current;
}

double duality_product(const Quadrilateral& q) {
  const Network net = network_of(*q.dom);
  return extremal_length(net, q.AB(), q.CD()).EL * extremal_length(net, q.BC(), q.DA()).EL;
}

double z_el_bound(const Quadrilateral& q) {
  const PotentialContext ctx(*q.dom);
  return ctx.Z_sets(q.AB(), q.CD()) * extremal_length(ctx.net(), q.AB(), q.CD()).EL;
}

InvariantReport invariant_report(const Quadrilateral& q) {
  const DiscreteDomain& dom = *q.dom;
  (void)make_quad(dom, q.a, q.b, q.c, q.d);
  const PotentialContext ctx(dom);
  const Network& net = ctx.net();
  InvariantReport r;
  r.a = q.a;
  r.b = q.b;
  r.c = q.c;
  r.d = q.d;
  const auto AB = q.AB(), BC = q.BC(), CD = q.CD(), DA = q.DA();
  const CrossRatios cr = cross_ratios(ctx, q.a, q.b, q.c, q.d);
  r.max_residual = std::max(r.max_residual, ctx.last_residual());
  r.X = cr.X;
  r.Y = cr.Y;
  r.X_dual = std::sqrt(cr.Zbd * cr.Zac / (cr.Zbc * cr.Zad));
  r.Y_dual = std::sqrt(cr.Zab * cr.Zcd / (cr.Zbc * cr.Zad));
  r.Z = ctx.Z_sets(AB, ctx.z_field(CD));
  r.Z_dual = ctx.Z_sets(BC, ctx.z_field(DA));
  const double Za_bc = ctx.Z_sets({q.a}, ctx.z_field(BC));
  const auto el = extremal_length(net, AB, CD);
  const auto el2 = extremal_length(net, BC, DA);
  r.EL = el.EL;
  r.EL_dual = el2.EL;
  r.max_residual = std::max({r.max_residual, el.field.residual, el2.field.residual});
  r.flux_mismatch = std::abs(el.field.current_A - el.field.current_B) / el.field.current();
  r.EL_dual_network = dom.simply_connected ? dual_extremal_length(dom, q.a, q.b, q.c, q.d)
                                           : std::numeric_limits<double>::quiet_NaN();

  r.ratios["zfact"] = Za_bc / std::sqrt(cr.Zab * cr.Zac / cr.Zbc);
  r.ratios["xy_relation"] = xy_relation_ratio(cr);
  r.ratios["z_over_x"] = r.Z / r.X;
  r.ratios["z_over_y"] = r.Z / r.Y;
  r.ratios["z_log_y"] = r.Z / std::log1p(r.Y);
  r.ratios["el_product"] = r.EL * r.EL_dual;
  r.ratios["z_el"] = r.Z * r.EL;
  r.ratios["log_yinv_over_el"] = std::log1p(1.0 / r.Y) / r.EL;
  r.ratios["exact_dual_product"] = r.EL * r.EL_dual_network;
  r.ratios["y_product"] = r.Y * r.Y_dual;
  r.ratios["neg_log_z"] = -std::log(r.Z);

  r.flags["Y_le_1"] = r.Y <= 1.0;
  r.flags["Z_le_1"] = r.Z <= 1.0;
  r.flags["EL_ge_half"] = r.EL >= 0.5;
  r.flags["Ydual_ge_1"] = r.Y_dual >= 1.0;
  r.flags["Zdual_ge_eighth"] = r.Z_dual >= 0.125;
  r.flags["ELdual_le_2"] = r.EL_dual <= 2.0;
  return r;
}

}  // namespace dpt
