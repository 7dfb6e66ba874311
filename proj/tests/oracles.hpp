#pragma once
// Independent reference computations used by the tests. None of these call the sparse solver.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dpt/domain.hpp"
#include "dpt/generators.hpp"
#include "dpt/potential.hpp"

namespace oracle {

// Sum of path weights w(γ) = Π w_e / Π μ_v grouped by length, from a start distribution over
// interior nodes, truncated when the geometric tail bound drops below `tail`.
// f0[i] is the weight of the length-0 prefix ending at interior node i.
// Returns F[i] = total weight of all paths from the start that end at node i.
inline std::vector<double> path_sums(const dpt::Network& net, std::vector<double> f, double tail = 1e-14) {
  std::vector<double> total(f), next(net.n);
  double prev_norm = 0.0;
  for (int step = 1; step < 1000000; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int e = 0; e < net.num_edges(); ++e) {
      const int u = net.eu[e], v = net.ev[e];
      next[v] += f[u] * net.ew[e] / net.mu[v];
      next[u] += f[v] * net.ew[e] / net.mu[u];
    }
    f.swap(next);
    double norm = 0.0, tot = 0.0;
    for (int i = 0; i < net.n; ++i) {
      total[i] += f[i];
      norm += f[i];
      tot += total[i];
    }
    if (norm == 0.0) break;
    // geometric tail bound from the observed contraction rate
    if (step > 2 && prev_norm > 0.0) {
      const double rate = norm / prev_norm;
      if (rate < 1.0 && norm * rate / (1.0 - rate) <= tail * std::max(tot, 1e-300)) break;
    }
    prev_norm = norm;
  }
  return total;
}

// Z between interior vertex x (node) and everything.
inline std::vector<double> z_from_node(const dpt::Network& net, int x) {
  std::vector<double> f(net.n, 0.0);
  f[x] = 1.0 / net.mu[x];
  return path_sums(net, f);
}

// Z from boundary link a: the path starts at the exterior vertex and steps into a_int.
inline std::vector<double> z_from_link(const dpt::Network& net, int a) {
  std::vector<double> f(net.n, 0.0);
  const auto& l = net.bd[a];
  f[l.node] = (1.0 / l.mu_ext) * l.w / net.mu[l.node];
  return path_sums(net, f);
}

// Close a node-ending path sum with the final step to the exterior vertex of link b.
inline double close_at_link(const dpt::Network& net, const std::vector<double>& F, int b) {
  const auto& l = net.bd[b];
  return F[l.node] * l.w / l.mu_ext;
}

inline double Z_link_link(const dpt::Network& net, int a, int b) { return close_at_link(net, z_from_link(net, a), b); }
inline double Z_node_link(const dpt::Network& net, int x, int b) { return close_at_link(net, z_from_node(net, x), b); }
inline double Z_node_node(const dpt::Network& net, int x, int y) { return z_from_node(net, x)[y]; }

// Explicit enumeration of all paths up to `max_len` steps (tiny fixtures only).
inline double enumerate_link_link(const dpt::Network& net, int a, int b, int max_len) {
  std::vector<std::vector<std::pair<int, double>>> adj(net.n);
  for (int e = 0; e < net.num_edges(); ++e) {
    adj[net.eu[e]].push_back({net.ev[e], net.ew[e]});
    adj[net.ev[e]].push_back({net.eu[e], net.ew[e]});
  }
  double sum = 0.0;
  std::function<void(int, double, int)> walk = [&](int v, double w, int len) {
    if (net.bd[b].node == v) sum += w * net.bd[b].w / net.bd[b].mu_ext;
    if (len == max_len) return;
    for (auto [u, we] : adj[v]) walk(u, w * we / net.mu[u], len + 1);
  };
  const auto& l = net.bd[a];
  walk(l.node, (1.0 / l.mu_ext) * l.w / net.mu[l.node], 0);
  return sum;
}

// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(A[r][c]) > std::abs(A[p][c])) p = r;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    if (A[c][c] == 0.0) throw std::runtime_error("singular");
    for (int r = c + 1; r < n; ++r) {
      const double f = A[r][c] / A[c][c];
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= A[r][k] * x[k];
    x[r] = s / A[r][r];
  }
  return x;
}

// Harmonic extension of link data via the conductance matrix, solved densely.
inline std::vector<double> dense_harmonic(const dpt::Network& net, const std::vector<double>& data) {
  std::vector<std::vector<double>> K(net.n, std::vector<double>(net.n, 0.0));
  std::vector<double> rhs(net.n, 0.0);
  for (int e = 0; e < net.num_edges(); ++e) {
    const int u = net.eu[e], v = net.ev[e];
    K[u][u] += net.ew[e];
    K[v][v] += net.ew[e];
    K[u][v] -= net.ew[e];
    K[v][u] -= net.ew[e];
  }
  for (int j = 0; j < net.num_boundary(); ++j) {
    K[net.bd[j].node][net.bd[j].node] += net.bd[j].w;
    rhs[net.bd[j].node] += net.bd[j].w * data[j];
  }
  return dense_solve(K, rhs);
}

// Dense Z(A;B) from the harmonic extension of mu_y^-1 on B.
inline double dense_Z_sets(const dpt::Network& net, const std::vector<int>& A, const std::vector<int>& B) {
  std::vector<double> data(net.num_boundary(), 0.0);
  for (int j : B) data[j] = 1.0 / net.bd[j].mu_ext;
  const auto h = dense_harmonic(net, data);
  double z = 0.0;
  for (int i : A) z += net.varpi_out(i) * h[net.bd[i].node];
  return z;
}

}  // namespace oracle
