#include "dpt/potential.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace dpt {

namespace {

std::atomic<bool> g_reference_check{false};

constexpr double kResidualTol = 1e-10;

std::vector<char> all_active(const Network& net) { return std::vector<char>(net.num_boundary(), 1); }

}  // namespace

void set_reference_check(bool on) { g_reference_check = on; }
bool reference_check() { return g_reference_check; }

void require_disjoint(const std::vector<int>& A, const std::vector<int>& B) {
  std::set<int> a(A.begin(), A.end());
  for (int x : B)
    if (a.count(x)) throw DomainError("boundary sets overlap at index " + std::to_string(x));
}

Network network_of(const DiscreteDomain& dom) {
  const EmbeddedGraph& g = dom.g();
  Network net;
  net.n = dom.num_interior();
  net.vertex_of = dom.interior;
  net.mu.resize(net.n);
  for (int i = 0; i < net.n; ++i) net.mu[i] = g.mu[dom.interior[i]];
  for (int e : dom.interior_edges) {
    net.eu.push_back(dom.local[g.edges[e].u]);
    net.ev.push_back(dom.local[g.edges[e].v]);
    net.ew.push_back(g.edges[e].w);
  }
  for (int i = 0; i < dom.num_boundary(); ++i) {
    const int d = dom.boundary[i];
    net.bd.push_back({dom.local[g.tail(d)], g.weight(d), g.mu[g.head(d)], g.head(d)});
  }
  return net;
}

// ---------------------------------------------------------------------------------------------

struct LaplaceSolver::Impl {
  Eigen::SparseMatrix<double> K;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

LaplaceSolver::LaplaceSolver(const Network& net, std::vector<char> active)
    : LaplaceSolver(std::make_shared<const Network>(net), std::move(active)) {}

LaplaceSolver::LaplaceSolver(std::shared_ptr<const Network> netp, std::vector<char> active)
    : net_(std::move(netp)), active_(std::move(active)) {
  const Network& net = *net_;
  if (active_.empty()) active_ = all_active(net);
  if (static_cast<int>(active_.size()) != net.num_boundary())
    throw SolverError("active mask size does not match the boundary");
  if (net.n == 0) throw SolverError("network has no unknowns");

  // every node must reach an active link, otherwise the system is singular
  {
    std::vector<std::vector<int>> adj(net.n);
    for (int e = 0; e < net.num_edges(); ++e) {
      adj[net.eu[e]].push_back(net.ev[e]);
      adj[net.ev[e]].push_back(net.eu[e]);
    }
    std::vector<char> seen(net.n, 0);
    std::vector<int> stack;
    for (int j = 0; j < net.num_boundary(); ++j)
      if (active_[j] && !seen[net.bd[j].node]) {
        seen[net.bd[j].node] = 1;
        stack.push_back(net.bd[j].node);
      }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    for (int i = 0; i < net.n; ++i)
      if (!seen[i])
        throw SolverError("node " + std::to_string(i) + " is cut off from every Dirichlet boundary edge");
  }

  auto impl = std::make_shared<Impl>();
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<double> diag(net.n, 0.0);
  trip.reserve(4 * net.num_edges() + net.n);
  for (int e = 0; e < net.num_edges(); ++e) {
    const int a = net.eu[e], b = net.ev[e];
    const double w = net.ew[e];
    trip.emplace_back(a, b, -w);
    trip.emplace_back(b, a, -w);
    diag[a] += w;
    diag[b] += w;
  }
  for (int j = 0; j < net.num_boundary(); ++j)
    if (active_[j]) diag[net.bd[j].node] += net.bd[j].w;
  for (int i = 0; i < net.n; ++i) trip.emplace_back(i, i, diag[i]);
  impl->K.resize(net.n, net.n);
  impl->K.setFromTriplets(trip.begin(), trip.end());
  impl->K.makeCompressed();
  impl->ldlt.compute(impl->K);
  if (impl->ldlt.info() != Eigen::Success) throw SolverError("conductance matrix factorisation failed");
  impl_ = std::move(impl);
}

std::vector<double> LaplaceSolver::solve(const std::vector<double>& rhs, double* residual) const {
  if (!impl_) throw SolverError("solver not initialised");
  const int n = net_->n;
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
  const double bn = b.norm();
  std::vector<double> out(n, 0.0);
  if (bn == 0.0) {
    if (residual) *residual = 0.0;
    return out;
  }
  Eigen::VectorXd x = impl_->ldlt.solve(b);
  double rel = (impl_->K * x - b).norm() / bn;
  for (int it = 0; it < 4 && rel > 1e-14; ++it) {
    Eigen::VectorXd r = b - impl_->K * x;
    x += impl_->ldlt.solve(r);
    const double nrel = (impl_->K * x - b).norm() / bn;
    if (nrel >= rel) {
      rel = std::min(rel, nrel);
      break;
    }
    rel = nrel;
  }
  if (!(rel <= kResidualTol)) throw SolverError("linear solve residual " + std::to_string(rel) + " exceeds 1e-10");
  if (residual) *residual = rel;
  Eigen::Map<Eigen::VectorXd>(out.data(), n) = x;
  return out;
}

std::vector<double> LaplaceSolver::extend(const std::vector<double>& data, double* residual) const {
  const Network& net = *net_;
  if (static_cast<int>(data.size()) != net.num_boundary()) throw SolverError("boundary data size mismatch");
  std::vector<double> rhs(net.n, 0.0);
  for (int j = 0; j < net.num_boundary(); ++j)
    if (active_[j]) rhs[net.bd[j].node] += net.bd[j].w * data[j];
  return solve(rhs, residual);
}

std::vector<double> dense_extend(const Network& net, const std::vector<double>& data,
                                 const std::vector<char>& active_in) {
  const std::vector<char> active = active_in.empty() ? all_active(net) : active_in;
  const int n = net.n;
  std::vector<double> m(n, 0.0);
  for (int e = 0; e < net.num_edges(); ++e) {
    m[net.eu[e]] += net.ew[e];
    m[net.ev[e]] += net.ew[e];
  }
  for (int j = 0; j < net.num_boundary(); ++j)
    if (active[j]) m[net.bd[j].node] += net.bd[j].w;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int e = 0; e < net.num_edges(); ++e) {
    const int a = net.eu[e], b = net.ev[e];
    A(a, b) -= net.ew[e] / m[a];
    A(b, a) -= net.ew[e] / m[b];
  }
  for (int j = 0; j < net.num_boundary(); ++j)
    if (active[j]) rhs(net.bd[j].node) += net.bd[j].w / m[net.bd[j].node] * data[j];
  Eigen::VectorXd x = A.partialPivLu().solve(rhs);
  return std::vector<double>(x.data(), x.data() + n);
}

std::vector<double> dense_green(const Network& net, int pole) {
  const int n = net.n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
  for (int e = 0; e < net.num_edges(); ++e) {
    const int a = net.eu[e], b = net.ev[e];
    A(a, b) -= net.ew[e] / net.mu[a];
    A(b, a) -= net.ew[e] / net.mu[b];
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(pole) = 1.0 / net.mu[pole];
  Eigen::VectorXd x = A.partialPivLu().solve(rhs);
  return std::vector<double>(x.data(), x.data() + n);
}

// ---------------------------------------------------------------------------------------------

PotentialContext::PotentialContext(Network net)
    : net_(std::make_shared<const Network>(std::move(net))), solver_(net_, all_active(*net_)) {}

HarmonicField PotentialContext::dirichlet(const std::vector<double>& data) const {
  HarmonicField f;
  f.bd_data = data;
  f.values = solver_.extend(data, &f.residual);
  last_residual_ = f.residual;
  if (!data.empty()) {
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    const double tol = 1e-10 * std::max({1.0, std::abs(*lo), std::abs(*hi)});
    for (double v : f.values)
      if (v < *lo - tol || v > *hi + tol) throw SolverError("maximum principle violated by a solve");
  }
  if (reference_check() && net_->n <= 500) {
    const auto ref = dense_extend(*net_, data);
    double scale = 0.0;
    for (double v : data) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < net_->n; ++i)
      if (std::abs(ref[i] - f.values[i]) > 1e-10 * std::max(1.0, scale))
        throw SolverError("sparse solve disagrees with the dense reference");
  }
  return f;
}

std::vector<double> PotentialContext::hm_field(const std::vector<int>& E) const {
  std::vector<double> data(net_->num_boundary(), 0.0);
  for (int j : E) data.at(j) = 1.0;
  return dirichlet(data).values;
}

std::vector<double> PotentialContext::z_field(const std::vector<int>& B) const {
  std::vector<double> data(net_->num_boundary(), 0.0);
  for (int j : B) data.at(j) = 1.0 / net_->bd[j].mu_ext;
  return dirichlet(data).values;
}

GreenField PotentialContext::green(int node) const {
  if (node < 0 || node >= net_->n) throw SolverError("green pole out of range");
  std::vector<double> rhs(net_->n, 0.0);
  rhs[node] = 1.0;
  GreenField gf;
  gf.pole = net_->vertex_of.empty() ? node : net_->vertex_of[node];
  gf.values = solver_.solve(rhs, &gf.residual);
  last_residual_ = gf.residual;
  for (double v : gf.values)
    if (v < -1e-14) throw SolverError("negative Green's function value");
  if (reference_check() && net_->n <= 500) {
    const auto ref = dense_green(*net_, node);
    for (int i = 0; i < net_->n; ++i)
      if (std::abs(ref[i] - gf.values[i]) > 1e-10 * std::max(1.0, gf.values[node]))
        throw SolverError("sparse Green's function disagrees with the dense reference");
  }
  return gf;
}

double PotentialContext::Z_node_link(int node, int b) const { return z_field({b}).at(node); }

double PotentialContext::Z_link_link(int a, int b) const {
  return net_->varpi_out(a) * z_field({b})[net_->bd.at(a).node];
}

double PotentialContext::Z_sets(const std::vector<int>& A, const std::vector<int>& B) const {
  require_disjoint(A, B);
  return Z_sets(A, z_field(B));
}

double PotentialContext::Z_sets(const std::vector<int>& A, const std::vector<double>& zB) const {
  double s = 0.0;
  for (int x : A) s += net_->varpi_out(x) * zB[net_->bd.at(x).node];
  return s;
}

// ---------------------------------------------------------------------------------------------

HarmonicField solve_dirichlet(const DiscreteDomain& dom, const std::vector<double>& data) {
  return PotentialContext(dom).dirichlet(data);
}

double harmonic_measure(const DiscreteDomain& dom, int u, const std::vector<int>& E) {
  if (!dom.is_interior(u)) throw DomainError("vertex " + std::to_string(u) + " is not interior");
  return PotentialContext(dom).hm_field(E)[dom.local[u]];
}

GreenField greens_function(const DiscreteDomain& dom, int u) {
  if (!dom.is_interior(u)) throw DomainError("vertex " + std::to_string(u) + " is not interior");
  return PotentialContext(dom).green(dom.local[u]);
}

PartitionValue partition_Z(const DiscreteDomain& dom, Endpoint x, Endpoint y) {
  auto check = [&](Endpoint p) {
    if (p.kind == Endpoint::Vertex && !dom.is_interior(p.id))
      throw DomainError("vertex " + std::to_string(p.id) + " is not interior");
    if (p.kind == Endpoint::Boundary && (p.id < 0 || p.id >= dom.num_boundary()))
      throw DomainError("boundary index out of range");
  };
  check(x);
  check(y);
  PotentialContext ctx(dom);
  PartitionValue out;
  if (x.kind == Endpoint::Vertex && y.kind == Endpoint::Vertex) {
    out.value = ctx.green(dom.local[y.id]).values[dom.local[x.id]];
  } else if (x.kind == Endpoint::Vertex || y.kind == Endpoint::Vertex) {
    const Endpoint v = x.kind == Endpoint::Vertex ? x : y;
    const Endpoint b = x.kind == Endpoint::Vertex ? y : x;
    out.value = ctx.Z_node_link(dom.local[v.id], b.id);
  } else {
    out.loop_convention = x.id == y.id;
    out.value = ctx.Z_link_link(x.id, y.id);
  }
  return out;
}

PartitionValue partition_Z_arcs(const DiscreteDomain& dom, const std::vector<int>& A,
                                const std::vector<int>& B) {
  PartitionValue out;
  out.value = PotentialContext(dom).Z_sets(A, B);
  return out;
}

double ratio_R(const DiscreteDomain& dom, int x, const std::vector<int>& A, const std::vector<int>& B) {
  require_disjoint(A, B);
  require_disjoint({x}, A);
  require_disjoint({x}, B);
  PotentialContext ctx(dom);
  const double za = ctx.Z_sets({x}, A), zb = ctx.Z_sets({x}, B);
  if (!(zb > 0.0)) throw SolverError("ratio R has a zero denominator");
  return za / zb;
}

AnchorResult find_interior_anchor(const DiscreteDomain& dom, int a, int b, int c) {
  PotentialContext ctx(dom);
  const auto h1 = ctx.hm_field(arc(dom, a, b).members);
  const auto h2 = ctx.hm_field(arc(dom, b, c).members);
  const auto h3 = ctx.hm_field(arc(dom, c, a).members);
  AnchorResult best;
  best.sigma = -1.0;
  for (int i = 0; i < dom.num_interior(); ++i) {
    const double s = std::min({h1[i], h2[i], h3[i]});
    if (s > best.sigma) {
      best.sigma = s;
      best.vertex = dom.interior[i];
    }
  }
  return best;
}

}  // namespace dpt
