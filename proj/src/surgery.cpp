#include "dpt/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace dpt {

namespace {

std::vector<char> mask_of(int n, const std::vector<int>& idx) {
  std::vector<char> m(n, 0);
  for (int i : idx) m.at(i) = 1;
  return m;
}

// Shortest path (BFS, smallest ids first) in the subgraph of allowed edges.
std::vector<int> bfs_path(const std::map<int, std::vector<int>>& adj, const std::vector<int>& sources,
                          const std::set<int>& targets) {
  std::map<int, int> parent;
  std::deque<int> queue;
  for (int s : sources)
    if (!parent.count(s)) {
      parent[s] = -1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (targets.count(v)) {
      std::vector<int> path;
      for (int x = v; x >= 0; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (int w : it->second)
      if (!parent.count(w)) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  return {};
}

}  // namespace

std::vector<int> SubNetwork::cut_links() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(link_origin.size()); ++i)
    if (link_origin[i] < 0) out.push_back(i);
  return out;
}

std::vector<int> SubNetwork::links_from(const std::vector<int>& boundary_indices) const {
  std::set<int> want(boundary_indices.begin(), boundary_indices.end());
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(link_origin.size()); ++i)
    if (link_origin[i] >= 0 && want.count(link_origin[i])) out.push_back(i);
  if (out.size() != want.size()) throw DomainError("boundary arc is not contained in the sub-domain");
  return out;
}

SubNetwork sub_network(const DiscreteDomain& dom, const std::vector<int>& verts) {
  const EmbeddedGraph& g = dom.g();
  std::vector<int> node(g.num_vertices(), -1);
  SubNetwork s;
  Network& net = s.net;
  for (int v : verts) {
    if (!dom.is_interior(v)) throw DomainError("sub-network vertex is not interior");
    if (node[v] >= 0) throw DomainError("repeated sub-network vertex");
    node[v] = net.n++;
    net.vertex_of.push_back(v);
    net.mu.push_back(g.mu[v]);
  }
  for (int e : dom.interior_edges) {
    const int u = g.edges[e].u, v = g.edges[e].v;
    if (node[u] >= 0 && node[v] >= 0) {
      net.eu.push_back(node[u]);
      net.ev.push_back(node[v]);
      net.ew.push_back(g.edges[e].w);
    }
  }
  for (int v : verts)
    for (const auto& nb : g.rotation[v]) {
      const int w = nb.vertex;
      if (node[w] >= 0) continue;
      net.bd.push_back({node[v], g.weight(nb.dart), g.mu[w], w});
      s.link_origin.push_back(dom.is_interior(w) ? -1 - (nb.dart >> 1) : dom.boundary_index(v, w));
    }
  return s;
}

// ---------------------------------------------------------------------------------------------

SeparatorSplit separator_split(const DiscreteDomain& dom, const PotentialContext& ctx, const std::vector<int>& A,
                               const std::vector<int>& B, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("separator level k must be positive");
  if (A.empty() || B.empty()) throw DomainError("separator arcs must be nonempty");
  require_disjoint(A, B);
  const EmbeddedGraph& g = dom.g();
  SeparatorSplit s;
  s.k = k;
  s.A = A;
  s.B = B;
  const auto zA = ctx.z_field(A), zB = ctx.z_field(B);
  std::vector<char> inA(dom.num_interior(), 0);
  s.ratio.resize(dom.num_interior());
  for (int i = 0; i < dom.num_interior(); ++i) {
    s.ratio[i] = zA[i] / zB[i];
    inA[i] = s.ratio[i] >= k * (1.0 - 1e-12);
    (inA[i] ? s.part_A : s.part_B).push_back(dom.interior[i]);
  }
  for (int e : dom.interior_edges)
    if (inA[dom.local[g.edges[e].u]] != inA[dom.local[g.edges[e].v]]) s.slit.push_back(e);
  s.connected_A = !s.part_A.empty() && components(g, s.part_A).size() == 1;
  s.connected_B = !s.part_B.empty() && components(g, s.part_B).size() == 1;
  s.holds_A = std::all_of(A.begin(), A.end(), [&](int i) { return inA[dom.local[dom.bd_int(i)]]; });
  s.holds_B = std::none_of(B.begin(), B.end(), [&](int i) { return inA[dom.local[dom.bd_int(i)]]; });
  const int n = dom.outer_size();
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const bool a_i = inA[dom.local[dom.bd_int(i)]], a_j = inA[dom.local[dom.bd_int(j)]];
    if (a_i && !a_j && s.x_A < 0) {
      s.x_A = i;
      s.x_B = j;
    } else if (!a_i && a_j && s.y_B < 0) {
      s.y_B = i;
      s.y_A = j;
    }
  }
  return s;
}

SeparatorSplit separator_split(const DiscreteDomain& dom, const std::vector<int>& A, const std::vector<int>& B,
                               double k) {
  return separator_split(dom, PotentialContext(dom), A, B, k);
}

SeparatorRatios separator_verify(const DiscreteDomain& dom, const SeparatorSplit& split) {
  if (!split.usable()) throw DomainError("separator part is empty, disconnected or misses its arc");
  if (split.slit.empty()) throw DomainError("separator slit is empty");
  SeparatorRatios r;
  r.Z = PotentialContext(dom).Z_sets(split.A, split.B);
  const SubNetwork sa = sub_network(dom, split.part_A), sb = sub_network(dom, split.part_B);
  r.Z_A = PotentialContext(sa.net).Z_sets(sa.links_from(split.A), sa.cut_links());
  r.Z_B = PotentialContext(sb.net).Z_sets(sb.cut_links(), sb.links_from(split.B));
  r.factorization = r.Z / (r.Z_A * r.Z_B);
  r.balance = (r.Z_A / r.Z_B) / split.k;
  return r;
}

bool separator_inclusion_check(const DiscreteDomain& dom, const std::vector<int>& A, const std::vector<int>& B,
                               const std::vector<int>& C, int x) {
  if (A.empty() || B.empty() || C.empty()) throw DomainError("inclusion check needs three nonempty arcs");
  require_disjoint(A, B);
  require_disjoint(A, C);
  require_disjoint(B, C);
  const int n = dom.outer_size();
  for (const auto* S : {&A, &B, &C})
    for (int i : *S)
      if (i >= n) throw DomainError("arcs must lie on the outer boundary");
  if (x < 0 || x >= n) throw DomainError("reference point must lie on the outer boundary");
  if ((B.back() + 1) % n != C.front()) throw DomainError("B and C must be consecutive arcs");
  auto off = [&](int i) { return ((i - A.back()) % n + n) % n; };
  const bool first_line = off(x) > 0 && off(x) < off(B.front());
  const bool second_line = off(x) > off(C.back()) && off(x) < off(A.front()) + (off(A.front()) == 0 ? n : 0);
  if (!first_line && !second_line) throw DomainError("reference point lies on a marked arc");

  PotentialContext ctx(dom);
  std::vector<int> BC = B;
  BC.insert(BC.end(), C.begin(), C.end());
  const auto zA = ctx.z_field(A), zB = ctx.z_field(B), zC = ctx.z_field(C), zBC = ctx.z_field(BC);
  const int xi = dom.local[dom.bd_int(x)];
  auto level = [&](const std::vector<double>& zQ) { return zA[xi] / zQ[xi]; };
  const double lB = level(zB), lC = level(zC), lBC = level(zBC);
  // S_small ⊆ S_big, where S_Q = {u : zA/zQ >= level_Q}; strict on the inner set, lenient on the outer
  auto included = [&](const std::vector<double>& zs, double ls, const std::vector<double>& zb, double lb) {
    for (int i = 0; i < dom.num_interior(); ++i)
      if (zA[i] / zs[i] >= ls && zA[i] / zb[i] < lb * (1.0 - 1e-12)) return false;
    return true;
  };
  if (first_line) return included(zC, lC, zBC, lBC) && included(zBC, lBC, zB, lB);
  return included(zB, lB, zBC, lBC) && included(zBC, lBC, zC, lC);
}

// ---------------------------------------------------------------------------------------------

std::vector<int> AnnulusDomain::map_links(const std::vector<int>& base_indices) const {
  std::set<int> want(base_indices.begin(), base_indices.end());
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(omega_link.size()); ++i)
    if (omega_link[i] >= 0 && want.count(omega_link[i])) out.push_back(i);
  return out;
}

AnnulusDomain annulus(const DiscreteDomain& dom, int u, double rho0, const std::vector<int>& arc) {
  if (!dom.is_interior(u)) throw DomainError("annulus centre must be interior");
  if (!(rho0 > 0.0 && rho0 < 1.0)) throw DomainError("rho0 must lie in (0,1)");
  const EmbeddedGraph& g = dom.g();
  AnnulusDomain ann;
  ann.base = &dom;
  ann.u = u;
  ann.rho0 = rho0;
  ann.radius = rho0 * distance_to_boundary(dom, u);
  ann.disc = discrete_disc(g, u, ann.radius).interior;
  std::vector<char> removed(g.num_vertices(), 0);
  for (int v : ann.disc) removed[v] = 1;
  std::vector<int> rest;
  for (int v : dom.interior)
    if (!removed[v]) rest.push_back(v);
  if (rest.empty()) throw DomainError("annulus is empty");
  auto comps = components(g, rest);
  std::vector<int> chosen;
  if (comps.size() == 1) {
    chosen = rest;
  } else {
    std::set<int> arc_tails;
    for (int i : arc) arc_tails.insert(dom.bd_int(i));
    long best = -1;
    for (auto& c : comps) {
      long score = 0;
      for (int v : c) score += arc_tails.count(v);
      score = score * (1L << 20) + static_cast<long>(c.size());
      if (score > best) {
        best = score;
        chosen = c;
      }
    }
  }
  ann.dom = make_domain(dom.graph, chosen);
  for (int i = 0; i < ann.dom.num_boundary(); ++i) {
    const int h = ann.dom.bd_ext(i);
    if (removed[h]) {
      ann.C.push_back(i);
      ann.omega_link.push_back(-1);
    } else {
      ann.omega_link.push_back(dom.boundary_index(ann.dom.bd_int(i), h));
    }
  }
  bool dc = comps.size() == 1 && ann.dom.contour_start.size() == 2 && !ann.C.empty();
  if (dc) {
    const int split = ann.dom.contour_start[1];
    for (int i = 0; i < ann.dom.num_boundary(); ++i)
      if ((ann.omega_link[i] < 0) != (i >= split)) dc = false;
    dc = dc && split == dom.num_boundary();
  }
  ann.doubly_connected = dc;
  ann.fallback = !dc;
  if (!ann.C.empty()) {
    const auto G = greens_function(dom, u);
    ann.green_min = std::numeric_limits<double>::infinity();
    for (int i : ann.C) {
      const double v = G.values[dom.local[ann.dom.bd_ext(i)]];
      ann.green_min = std::min(ann.green_min, v);
      ann.green_max = std::max(ann.green_max, v);
    }
  }
  return ann;
}

HmAnnulus hm_via_annulus(const DiscreteDomain& dom, int u, const std::vector<int>& arc, double rho0) {
  const AnnulusDomain ann = annulus(dom, u, rho0, arc);
  HmAnnulus r;
  r.omega = harmonic_measure(dom, u, arc);
  const auto links = ann.map_links(arc);
  if (ann.C.empty() || links.empty()) throw DomainError("annulus does not connect the disc to the arc");
  r.Z = PotentialContext(ann.dom).Z_sets(ann.C, links);
  r.ratio = r.omega / r.Z;
  return r;
}

LogHmEl log_hm_vs_el(const DiscreteDomain& dom, int u, const std::vector<int>& arc, double rho0) {
  const AnnulusDomain ann = annulus(dom, u, rho0, arc);
  const auto links = ann.map_links(arc);
  if (ann.C.empty() || links.empty()) throw DomainError("annulus does not connect the disc to the arc");
  LogHmEl r;
  r.fallback = ann.fallback;
  r.log_hm = std::log1p(1.0 / harmonic_measure(dom, u, arc));
  r.EL = extremal_length(ann.dom, ann.C, links).EL;
  r.ratio = r.log_hm / r.EL;
  return r;
}

// ---------------------------------------------------------------------------------------------

std::vector<int> CutDomain::links_of(const std::vector<int>& base_indices) const {
  std::set<int> want(base_indices.begin(), base_indices.end());
  std::vector<int> out;
  for (std::size_t k = 0; k < outer.size(); ++k)
    if (want.count(outer_base[k])) out.push_back(outer[k]);
  std::sort(out.begin(), out.end());
  return out;
}

CutDomain cut_annulus(const AnnulusDomain& ann, const std::vector<int>& gamma, const std::vector<int>& arc) {
  if (!ann.doubly_connected) throw DomainError("cutting needs a doubly connected annulus");
  const DiscreteDomain& dom = ann.dom;
  const EmbeddedGraph& g = dom.g();
  const int k = static_cast<int>(gamma.size()) - 1;
  if (k < 0) throw DomainError("empty slit");
  std::vector<int> pos(g.num_vertices(), -1);
  for (int i = 0; i <= k; ++i) {
    const int v = gamma[i];
    if (!dom.is_interior(v)) throw DomainError("slit vertex is not interior to the annulus");
    if (pos[v] >= 0) throw DomainError("slit path is self-intersecting");
    pos[v] = i;
    if (i > 0 && g.find_dart(gamma[i - 1], v) < 0) throw DomainError("slit path is not nearest-neighbour");
  }
  std::vector<char> is_C(dom.num_boundary(), 0);
  for (int i : ann.C) is_C[i] = 1;
  const std::set<int> arc_set(arc.begin(), arc.end());
  // endpoints c (into the disc) and d (onto the outer boundary, outside the arc when possible)
  int c = -1, d = -1, d_in_arc = -1;
  for (const auto& nb : g.rotation[gamma[0]]) {
    const int j = dom.is_interior(nb.vertex) ? -1 : dom.boundary_index(gamma[0], nb.vertex);
    if (j >= 0 && is_C[j] && c < 0) c = nb.vertex;
  }
  for (const auto& nb : g.rotation[gamma[k]]) {
    const int j = dom.is_interior(nb.vertex) ? -1 : dom.boundary_index(gamma[k], nb.vertex);
    if (j < 0 || is_C[j]) continue;
    if (arc_set.count(ann.omega_link[j])) {
      if (d_in_arc < 0) d_in_arc = nb.vertex;
    } else if (d < 0) {
      d = nb.vertex;
    }
  }
  if (c < 0) throw DomainError("slit does not start next to the inner boundary");
  if (d < 0) throw DomainError(d_in_arc >= 0 ? "slit ends on the target arc" : "slit does not reach the outer boundary");

  // side of neighbour w at gamma[i]: +1 left of the directed path, -1 right, 0 on the path
  auto side = [&](int i, int w) {
    const int v = gamma[i];
    const int p = i > 0 ? gamma[i - 1] : c;
    const int nx = i < k ? gamma[i + 1] : d;
    if (w == p || w == nx) return 0;
    const int deg = static_cast<int>(g.rotation[v].size());
    const int ip = g.rotation_index(g.find_dart(v, p)), in = g.rotation_index(g.find_dart(v, nx)),
              iw = g.rotation_index(g.find_dart(v, w));
    return ((iw - in + deg) % deg) < ((ip - in + deg) % deg) ? 1 : -1;
  };

  CutDomain cut;
  cut.gamma = gamma;
  Network& net = cut.net;
  std::vector<int> node(g.num_vertices(), -1);
  for (int v : dom.interior)
    if (pos[v] < 0) {
      node[v] = net.n++;
      cut.provenance.push_back(v);
    }
  for (int v : gamma) {
    cut.gamma_left.push_back(net.n++);
    cut.provenance.push_back(v);
  }
  for (int v : gamma) {
    cut.gamma_right.push_back(net.n++);
    cut.provenance.push_back(v);
  }
  for (int v : cut.provenance) net.mu.push_back(g.mu[v]);
  net.vertex_of = cut.provenance;
  auto add_edge = [&](int a, int b, double w) {
    net.eu.push_back(a);
    net.ev.push_back(b);
    net.ew.push_back(w);
  };
  auto add_link = [&](int a, double w, int ext) {
    net.bd.push_back({a, w, g.mu[ext], ext});
    return net.num_boundary() - 1;
  };

  for (int e : dom.interior_edges) {
    const int a = g.edges[e].u, b = g.edges[e].v;
    const double w = g.edges[e].w;
    const int pa = pos[a], pb = pos[b];
    if (pa < 0 && pb < 0) {
      add_edge(node[a], node[b], w);
    } else if (pa >= 0 && pb >= 0) {
      const int sa = side(pa, b), sb = side(pb, a);
      if (sa == 0 && sb == 0) {
        add_edge(cut.gamma_left[pa], cut.gamma_left[pb], w);
        add_edge(cut.gamma_right[pa], cut.gamma_right[pb], w);
      } else if (sa == sb) {
        const auto& row = sa > 0 ? cut.gamma_left : cut.gamma_right;
        add_edge(row[pa], row[pb], w);
        const auto& other = sa > 0 ? cut.gamma_right : cut.gamma_left;
        auto& bdl = sa > 0 ? cut.right_bd : cut.left_bd;
        bdl.push_back(add_link(other[pa], w, b));
        bdl.push_back(add_link(other[pb], w, a));
      } else {
        throw DomainError("slit chord crosses the path");
      }
    } else {
      const int i = pa >= 0 ? pa : pb;
      const int o = pa >= 0 ? b : a;
      if (side(i, o) > 0) {
        add_edge(cut.gamma_left[i], node[o], w);
        cut.right_bd.push_back(add_link(cut.gamma_right[i], w, o));
      } else {
        add_edge(cut.gamma_right[i], node[o], w);
        cut.left_bd.push_back(add_link(cut.gamma_left[i], w, o));
      }
    }
  }
  for (int j = 0; j < dom.num_boundary(); ++j) {
    const int t = dom.bd_int(j), h = dom.bd_ext(j);
    const double w = g.weight(dom.boundary[j]);
    std::vector<int> tails;
    if (pos[t] < 0) {
      tails.push_back(node[t]);
    } else {
      const int i = pos[t];
      const int s = side(i, h);
      if (s >= 0) tails.push_back(cut.gamma_left[i]);
      if (s <= 0) tails.push_back(cut.gamma_right[i]);
    }
    for (int a : tails) {
      const int l = add_link(a, w, h);
      if (is_C[j]) {
        cut.C.push_back(l);
      } else {
        cut.outer.push_back(l);
        cut.outer_base.push_back(ann.omega_link[j]);
      }
    }
  }
  return cut;
}

Sandwich cut_sandwich(const AnnulusDomain& ann, const CutDomain& cut, const std::vector<int>& arc) {
  Sandwich s;
  s.middle = PotentialContext(ann.dom).Z_sets(ann.C, ann.map_links(arc));
  const PotentialContext ctx(cut.net);
  const auto zab = ctx.z_field(cut.links_of(arc));
  s.lower = ctx.Z_sets(cut.C, zab);
  std::vector<int> all = cut.left_bd;
  all.insert(all.end(), cut.C.begin(), cut.C.end());
  all.insert(all.end(), cut.right_bd.begin(), cut.right_bd.end());
  s.upper = ctx.Z_sets(all, zab);
  return s;
}

// ---------------------------------------------------------------------------------------------

SlitResult find_slit(const AnnulusDomain& ann, const std::vector<int>& arc, SlitMode mode, double q) {
  if (!ann.doubly_connected) throw DomainError("slits need a doubly connected annulus");
  if (mode == SlitMode::LevelSet && !(q > 1.0)) throw DomainError("level-set slit needs q > 1");
  const DiscreteDomain& dom = ann.dom;
  const EmbeddedGraph& g = dom.g();
  const Network net = network_of(dom);
  const auto arcL = ann.map_links(arc);
  if (arcL.empty()) throw DomainError("arc is not on the annulus boundary");
  const auto res = extremal_length(net, arcL, ann.C);
  const auto& V = res.field.V;
  const double I = res.field.current();

  std::vector<char> is_C = mask_of(dom.num_boundary(), ann.C), is_arc = mask_of(dom.num_boundary(), arcL);
  std::vector<int> c_adjacent, neumann;
  std::set<int> neumann_adjacent;
  for (int j = 0; j < dom.num_boundary(); ++j) {
    if (is_C[j]) c_adjacent.push_back(dom.bd_int(j));
    else if (!is_arc[j]) {
      neumann.push_back(j);
      neumann_adjacent.insert(dom.bd_int(j));
    }
  }
  std::sort(c_adjacent.begin(), c_adjacent.end());
  c_adjacent.erase(std::unique(c_adjacent.begin(), c_adjacent.end()), c_adjacent.end());
  if (neumann.empty()) throw DomainError("arc covers the whole outer boundary");

  SlitResult out;
  out.EL = res.EL;
  std::map<int, std::vector<int>> adj;
  auto add = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };

  if (mode == SlitMode::ConjugateSign) {
    out.branch = "conjugate_sign";
    const auto conj = harmonic_conjugate(dom, V, res.field.link_value);
    const double offset = conj.value[g.dart_face[dom.boundary[neumann.front()]]];
    auto wrap = [&](double x) {
      double m = std::fmod(x - offset, I);
      if (m < 0) m += I;
      if (m > I * (1.0 - 1e-12) || m < I * 1e-12) m = 0.0;
      return m;
    };
    for (int e : dom.interior_edges) {
      const int a = g.edges[e].u, b = g.edges[e].v;
      const double delta = g.edges[e].w * (V[dom.local[b]] - V[dom.local[a]]);
      const double jump = wrap(conj.value[g.dart_face[2 * e]]) - wrap(conj.value[g.dart_face[2 * e + 1]]) - delta;
      if (std::abs(jump) > 0.5 * I) add(a, b);
    }
    for (auto& [v, nbs] : adj) std::sort(nbs.begin(), nbs.end());
    std::vector<int> sources;
    for (int v : c_adjacent)
      if (adj.count(v) || neumann_adjacent.count(v)) sources.push_back(v);
    out.gamma = bfs_path(adj, sources, neumann_adjacent);
    if (out.gamma.empty()) return out;
    out.found = true;
    const CutDomain cut = cut_annulus(ann, out.gamma, arc);
    out.EL_cut = extremal_length(cut.net, cut.links_of(arc), cut.C).EL;
    out.bound = 2.0 * out.EL;
    out.inequality_holds = out.EL_cut <= out.bound + 1e-9;
    return out;
  }

  const double level = 1.0 - 1.0 / q;
  int d_int = -1;
  for (int j : neumann) {
    const int t = dom.bd_int(j);
    if (d_int < 0 || V[dom.local[t]] > V[dom.local[d_int]]) d_int = t;
  }
  if (V[dom.local[d_int]] < level) {
    out.branch = "near_arc";
    std::vector<int> outer;
    for (int j = 0; j < dom.num_boundary(); ++j)
      if (!is_C[j]) outer.push_back(j);
    out.EL_outer = extremal_length(net, outer, ann.C).EL;
    out.bound = q * q * out.EL_outer;
    out.inequality_holds = out.EL < out.bound;
    return out;
  }
  out.branch = "level_path";
  for (int e : dom.interior_edges) {
    const int a = g.edges[e].u, b = g.edges[e].v;
    if (V[dom.local[a]] >= level && V[dom.local[b]] >= level) add(a, b);
  }
  for (auto& [v, nbs] : adj) std::sort(nbs.begin(), nbs.end());
  std::vector<int> sources;
  for (int v : c_adjacent)
    if (V[dom.local[v]] >= level) sources.push_back(v);
  out.gamma = bfs_path(adj, sources, {d_int});
  if (out.gamma.empty()) throw SolverError("superlevel set does not connect the outer maximum to the inner boundary");
  out.found = true;
  const CutDomain cut = cut_annulus(ann, out.gamma, arc);
  std::vector<int> inner = cut.left_bd;
  inner.insert(inner.end(), cut.C.begin(), cut.C.end());
  inner.insert(inner.end(), cut.right_bd.begin(), cut.right_bd.end());
  out.EL_cut = extremal_length(cut.net, cut.links_of(arc), inner).EL;
  out.bound = level * level * out.EL;
  out.inequality_holds = out.EL_cut >= out.bound - 1e-9;
  return out;
}

}  // namespace dpt
