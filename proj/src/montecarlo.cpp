#include "dpt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>

#include "dpt/parallel.hpp"

namespace dpt {

namespace {

constexpr long kStepCap = 1000000000L;

enum Tag : std::uint64_t { kFree = 11, kConditioned = 12, kPairFirst = 13, kPairSecond = 14, kBall = 15, kOcc = 16 };

EmpiricalEstimate indicator_estimate(const std::vector<double>& hits, std::uint64_t seed) {
  EmpiricalEstimate e;
  e.n = static_cast<long>(hits.size());
  e.seed = seed;
  if (e.n == 0) return e;
  e.estimate = pairwise_sum(hits) / static_cast<double>(e.n);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(e.n));
  return e;
}

EmpiricalEstimate mean_estimate(const std::vector<double>& x, std::uint64_t seed) {
  EmpiricalEstimate e;
  e.n = static_cast<long>(x.size());
  e.seed = seed;
  if (e.n < 2) {
    e.estimate = e.n ? x[0] : 0.0;
    return e;
  }
  e.estimate = pairwise_sum(x) / static_cast<double>(e.n);
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = (x[i] - e.estimate) * (x[i] - e.estimate);
  e.std_error = std::sqrt(pairwise_sum(sq) / static_cast<double>(e.n - 1) / static_cast<double>(e.n));
  return e;
}

std::shared_ptr<const EmbeddedGraph> borrow(const EmbeddedGraph& g) {
  return std::shared_ptr<const EmbeddedGraph>(&g, [](const EmbeddedGraph*) {});
}

DiscreteDomain disc_domain(const EmbeddedGraph& g, int u, double r) {
  const DiscPair disc = discrete_disc(g, u, r);
  if (disc.interior.empty()) throw DomainError("disc interior is empty");
  for (int v : disc.interior)
    for (const auto& nb : g.rotation[v])
      if (g.faces[g.dart_face[nb.dart]].is_outer) throw DomainError("disc reaches the edge of the graph");
  return make_domain(borrow(g), disc.interior);
}

bool in_sector(Vec2 d, double theta0, double width) {
  double t = std::atan2(d.y, d.x) - theta0;
  const double two_pi = 2.0 * std::numbers::pi;
  t = std::fmod(t, two_pi);
  if (t < 0) t += two_pi;
  return t < width - 1e-12;
}

std::vector<int> sector_links(const DiscreteDomain& dom, int u, double theta0, double width) {
  const EmbeddedGraph& g = dom.g();
  std::vector<int> E;
  for (int j = 0; j < dom.num_boundary(); ++j)
    if (in_sector(g.pos[dom.bd_ext(j)] - g.pos[u], theta0, width)) E.push_back(j);
  return E;
}

}  // namespace

bool EmpiricalEstimate::within(double target, double k, double floor) const {
  return std::abs(estimate - target) <= k * std::max(std_error, floor);
}

int TransitionTable::step(int node, CounterRng& rng) const {
  const auto& c = cumulative[node];
  const double x = rng.uniform() * c.back();
  const auto it = std::upper_bound(c.begin(), c.end(), x);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - c.begin()), c.size() - 1);
  return target[node][k];
}

namespace {

// Outgoing (target, varpi) lists of every node.
std::vector<std::vector<std::pair<int, double>>> out_steps(const Network& net) {
  std::vector<std::vector<std::pair<int, double>>> out(net.n);
  for (int e = 0; e < net.num_edges(); ++e) {
    out[net.eu[e]].push_back({net.ev[e], net.ew[e] / net.mu[net.eu[e]]});
    out[net.ev[e]].push_back({net.eu[e], net.ew[e] / net.mu[net.ev[e]]});
  }
  for (int j = 0; j < net.num_boundary(); ++j)
    out[net.bd[j].node].push_back({-1 - j, net.bd[j].w / net.mu[net.bd[j].node]});
  return out;
}

TransitionTable table_from(const std::vector<std::vector<std::pair<int, double>>>& rows) {
  TransitionTable t;
  t.cumulative.resize(rows.size());
  t.target.resize(rows.size());
  for (std::size_t v = 0; v < rows.size(); ++v) {
    double s = 0.0;
    for (const auto& [w, p] : rows[v]) s += p;
    t.normalisation_defect = std::max(t.normalisation_defect, std::abs(s - 1.0));
    double acc = 0.0;
    for (const auto& [w, p] : rows[v]) {
      if (p <= 0.0) continue;
      acc += p / s;
      t.cumulative[v].push_back(acc);
      t.target[v].push_back(w);
    }
    if (t.target[v].empty()) throw SolverError("node without admissible transitions");
  }
  return t;
}

}  // namespace

TransitionTable free_table(const Network& net) { return table_from(out_steps(net)); }

TransitionTable conditioned_table(const Network& net, const std::vector<double>& h, int b) {
  auto rows = out_steps(net);
  for (int v = 0; v < net.n; ++v) {
    if (!(h[v] > 0.0)) throw SolverError("h-transform needs a positive harmonic function");
    for (auto& [w, p] : rows[v]) {
      const double hw = w >= 0 ? h[w] : (-1 - w == b ? 1.0 / net.bd[b].mu_ext : 0.0);
      p = p * hw / h[v];
    }
  }
  return table_from(rows);
}

double conditioned_table_error(const Network& net, const std::vector<double>& h, int b, const TransitionTable& t) {
  const auto rows = out_steps(net);
  double err = 0.0;
  for (int v = 0; v < net.n; ++v) {
    double s = 0.0;
    for (const auto& [w, p] : rows[v]) s += p * (w >= 0 ? h[w] : (-1 - w == b ? 1.0 / net.bd[b].mu_ext : 0.0));
    double prev = 0.0;
    for (std::size_t k = 0; k < t.target[v].size(); ++k) {
      const int w = t.target[v][k];
      const double pk = t.cumulative[v][k] - prev;
      prev = t.cumulative[v][k];
      double expected = 0.0;
      for (const auto& [w2, p] : rows[v])
        if (w2 == w) expected += p * (w >= 0 ? h[w] : (-1 - w == b ? 1.0 / net.bd[b].mu_ext : 0.0)) / s;
      err = std::max(err, std::abs(pk - expected));
    }
    err = std::max(err, std::abs(t.cumulative[v].back() - 1.0));
  }
  return err;
}

WalkSample sample_walk(const DiscreteDomain& dom, const TransitionTable& t, int start, CounterRng& rng,
                       bool record_path) {
  if (!dom.is_interior(start)) throw DomainError("walk must start at an interior vertex");
  const EmbeddedGraph& g = dom.g();
  WalkSample s;
  int v = dom.local[start];
  for (;;) {
    const int x = dom.interior[v];
    if (record_path) s.path.push_back(x);
    const double rv = local_scale(g, x);
    s.occupation += rv * rv;
    s.occupation_weighted += rv * rv / g.mu[x];
    const int w = t.step(v, rng);
    ++s.steps;
    if (w < 0) {
      s.exit = -1 - w;
      if (record_path) s.path.push_back(dom.bd_ext(s.exit));
      return s;
    }
    v = w;
    if (s.steps >= kStepCap) throw SolverError("random walk exceeded the step cap");
  }
}

WalkSample sample_walk(const DiscreteDomain& dom, int start, CounterRng& rng, bool record_path) {
  return sample_walk(dom, free_table(network_of(dom)), start, rng, record_path);
}

EmpiricalEstimate estimate_hm(const DiscreteDomain& dom, int u, const std::vector<int>& E, long n,
                              std::uint64_t seed) {
  if (n < 1) throw DomainError("need at least one sample");
  const TransitionTable t = free_table(network_of(dom));
  std::vector<char> inE(dom.num_boundary(), 0);
  for (int j : E) inE.at(j) = 1;
  std::vector<double> hits(n);
  parallel_for(n, [&](long i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i), kFree);
    hits[i] = inE[sample_walk(dom, t, u, rng, false).exit] ? 1.0 : 0.0;
  });
  return indicator_estimate(hits, seed);
}

EmpiricalEstimate estimate_occupation(const DiscreteDomain& dom, int u, long n, std::uint64_t seed) {
  if (n < 2) throw DomainError("need at least two samples");
  const TransitionTable t = free_table(network_of(dom));
  std::vector<double> occ(n);
  parallel_for(n, [&](long i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i), kOcc);
    occ[i] = sample_walk(dom, t, u, rng, false).occupation_weighted;
  });
  return mean_estimate(occ, seed);
}

WalkSample sample_conditioned(const DiscreteDomain& dom, const TransitionTable& t, int a, CounterRng& rng) {
  WalkSample s = sample_walk(dom, t, dom.bd_int(a), rng, true);
  s.path.insert(s.path.begin(), dom.bd_ext(a));
  ++s.steps;
  return s;
}

WalkSample sample_conditioned(const DiscreteDomain& dom, int a, int b, CounterRng& rng) {
  if (a == b) throw DomainError("conditioned walk needs distinct boundary edges");
  const Network net = network_of(dom);
  const PotentialContext ctx(net);
  return sample_conditioned(dom, conditioned_table(net, ctx.z_field({b}), b), a, rng);
}

std::vector<int> loop_erasure(const std::vector<int>& path) {
  std::vector<int> out;
  std::map<int, std::size_t> at;
  for (int v : path) {
    auto it = at.find(v);
    if (it == at.end()) {
      at[v] = out.size();
      out.push_back(v);
      continue;
    }
    for (std::size_t k = it->second + 1; k < out.size(); ++k) at.erase(out[k]);
    out.resize(it->second + 1);
  }
  return out;
}

EmpiricalEstimate intersection_probability(const DiscreteDomain& dom, int a1, int b1, int a2, int b2, long n,
                                           std::uint64_t seed, Meeting how) {
  if (n < 1) throw DomainError("need at least one sample");
  const Network net = network_of(dom);
  const PotentialContext ctx(net);
  const TransitionTable t1 = conditioned_table(net, ctx.z_field({b1}), b1);
  const TransitionTable t2 = conditioned_table(net, ctx.z_field({b2}), b2);
  std::vector<double> hits(n);
  parallel_for(n, [&](long i) {
    CounterRng r1(seed, static_cast<std::uint64_t>(i), kPairFirst), r2(seed, static_cast<std::uint64_t>(i), kPairSecond);
    const WalkSample w1 = sample_conditioned(dom, t1, a1, r1);
    const WalkSample w2 = sample_conditioned(dom, t2, a2, r2);
    std::vector<char> seen(dom.num_interior(), 0);
    const std::vector<int> inner(w1.path.begin() + 1, w1.path.end() - 1);
    for (int v : how == Meeting::LoopErased ? loop_erasure(inner) : inner) seen[dom.local[v]] = 1;
    bool meet = false;
    for (std::size_t k = 1; k + 1 < w2.path.size() && !meet; ++k) meet = seen[dom.local[w2.path[k]]];
    hits[i] = meet ? 1.0 : 0.0;
  });
  return indicator_estimate(hits, seed);
}

EmpiricalEstimate intersection_probability(const Quadrilateral& q, long n, std::uint64_t seed, Meeting how) {
  return intersection_probability(*q.dom, q.a, q.d, q.b, q.c, n, seed, how);
}

EmpiricalEstimate intersection_ball_probability(const DiscreteDomain& dom, int a, int b, int u, long n,
                                                std::uint64_t seed) {
  if (n < 1) throw DomainError("need at least one sample");
  std::vector<char> ball(dom.g().num_vertices(), 0);
  for (int v : inner_disc(dom, u)) ball[v] = 1;
  const Network net = network_of(dom);
  const PotentialContext ctx(net);
  const TransitionTable t = conditioned_table(net, ctx.z_field({b}), b);
  std::vector<double> hits(n);
  parallel_for(n, [&](long i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i), kBall);
    const WalkSample w = sample_conditioned(dom, t, a, rng);
    bool meet = false;
    for (std::size_t k = 1; k + 1 < w.path.size() && !meet; ++k) meet = ball[w.path[k]];
    hits[i] = meet ? 1.0 : 0.0;
  });
  return indicator_estimate(hits, seed);
}

// ---------------------------------------------------------------------------------------------

double test_property_S(const EmbeddedGraph& g, int u, double r, double theta0, double width) {
  const DiscreteDomain dom = disc_domain(g, u, r);
  const auto E = sector_links(dom, u, theta0, width);
  if (E.empty()) return 0.0;
  return harmonic_measure(dom, u, E);
}

double property_S_min(const EmbeddedGraph& g, int u, double r, double width, int directions) {
  const DiscreteDomain dom = disc_domain(g, u, r);
  const PotentialContext ctx(dom);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < directions; ++k) {
    const auto E = sector_links(dom, u, 2.0 * std::numbers::pi * k / directions, width);
    best = std::min(best, E.empty() ? 0.0 : ctx.hm_field(E)[dom.local[u]]);
  }
  return best;
}

double test_property_T(const EmbeddedGraph& g, int u, double r) {
  if (r < local_scale(g, u)) throw DomainError("Property (T) needs r >= r_u");
  const DiscreteDomain dom = disc_domain(g, u, r);
  const GreenField G = PotentialContext(dom).green(dom.local[u]);
  double s = 0.0;
  for (int i = 0; i < dom.num_interior(); ++i) {
    const double rv = local_scale(g, dom.interior[i]);
    s += rv * rv * G.values[i];
  }
  return s / (r * r);
}

double test_harnack(const EmbeddedGraph& g, int u, double r, double rho, int sectors) {
  if (!(rho > 1.0)) throw DomainError("Harnack test needs rho > 1");
  const DiscreteDomain big = disc_domain(g, u, rho * r);
  const auto small = discrete_disc(g, u, r).interior;
  const PotentialContext ctx(big);
  const double width = 2.0 * std::numbers::pi / sectors;
  double worst = 1.0;
  for (int k = 0; k < sectors; ++k) {
    const auto E = sector_links(big, u, k * width, width);
    if (E.empty()) continue;
    const auto h = ctx.hm_field(E);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int v : small) {
      lo = std::min(lo, h[big.local[v]]);
      hi = std::max(hi, h[big.local[v]]);
    }
    if (hi > 0.0) worst = std::min(worst, lo / hi);
  }
  return worst;
}

double test_annulus_crossing(const EmbeddedGraph& g, int u, double r, double rho) {
  if (!(rho > 1.0)) throw DomainError("annulus crossing needs rho > 1");
  const DiscPair disc = discrete_disc(g, u, r);
  auto nearest = [&](Vec2 p) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int v : disc.interior) {
      const double d = norm(g.pos[v] - p);
      if (d < bd) {
        bd = d;
        best = v;
      }
    }
    return best;
  };
  const Vec2 c = g.pos[u];
  double worst = 0.0;
  for (Vec2 dir : {Vec2{1, 0}, Vec2{0, 1}, Vec2{-1, 0}, Vec2{0, -1}}) {
    const int v_in = nearest(c + (r / rho) * dir), v_out = nearest(c + r * dir);
    if (v_in == v_out || v_in == u) continue;
    std::vector<char> barrier(g.num_vertices(), 0);
    for (int v : connector_path(g, v_in, v_out).path) barrier[v] = 1;
    std::vector<int> rest;
    for (int v : disc.interior)
      if (!barrier[v]) rest.push_back(v);
    std::vector<int> comp;
    for (auto& cc : components(g, rest))
      if (std::find(cc.begin(), cc.end(), u) != cc.end()) comp = cc;
    if (comp.empty()) continue;
    const DiscreteDomain dom = make_domain(borrow(g), comp);
    std::vector<int> E;
    for (int j = 0; j < dom.num_boundary(); ++j)
      if (!barrier[dom.bd_ext(j)]) E.push_back(j);
    worst = std::max(worst, E.empty() ? 0.0 : harmonic_measure(dom, u, E));
  }
  return worst;
}

double intrinsic_distance(const DiscreteDomain& dom, int u, const std::vector<int>& E) {
  if (!dom.is_interior(u)) throw DomainError("vertex is not interior");
  if (E.empty()) throw DomainError("empty target set");
  const EmbeddedGraph& g = dom.g();
  std::vector<double> key(dom.num_interior(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  key[dom.local[u]] = 0.0;
  pq.push({0.0, dom.local[u]});
  while (!pq.empty()) {
    auto [k, i] = pq.top();
    pq.pop();
    if (k > key[i]) continue;
    for (const auto& nb : g.rotation[dom.interior[i]]) {
      if (!dom.is_interior(nb.vertex)) continue;
      const int j = dom.local[nb.vertex];
      const double kj = std::max(k, norm(g.pos[nb.vertex] - g.pos[u]));
      if (kj < key[j]) {
        key[j] = kj;
        pq.push({kj, j});
      }
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (int j : E)
    best = std::min(best, std::max(key[dom.local[dom.bd_int(j)]], norm(g.pos[dom.bd_ext(j)] - g.pos[u])));
  return best;
}

BeurlingPoint test_beurling(const DiscreteDomain& dom, int u, const std::vector<int>& E) {
  BeurlingPoint p;
  p.omega = harmonic_measure(dom, u, E);
  p.distance_ratio = intrinsic_distance(dom, u, E) / distance_to_boundary(dom, u);
  return p;
}

double beurling_exponent(const std::vector<BeurlingPoint>& pts) {
  if (pts.size() < 2) throw DomainError("exponent fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (const auto& p : pts) {
    const double x = std::log(p.distance_ratio), y = -std::log(p.omega);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw DomainError("exponent fit needs distinct distance ratios");
  return (n * sxy - sx * sy) / den;
}

}  // namespace dpt
