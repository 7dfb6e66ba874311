#pragma once

#include <memory>
#include <vector>

#include "dpt/domain.hpp"

namespace dpt {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Abstract conductance network of a discrete domain: unknowns are interior nodes, boundary links
// are the oriented boundary edges (a_int -> a), each with its own Dirichlet slot.
struct BoundaryLink {
  int node = 0;          // interior node a_int
  double w = 1.0;        // edge weight
  double mu_ext = 1.0;   // mass of the exterior endpoint a in the ambient graph
  int ext_vertex = -1;   // ambient vertex id of a (provenance only)
};

struct Network {
  int n = 0;
  std::vector<double> mu;  // full mass of each node (all incident edges)
  std::vector<int> eu, ev;
  std::vector<double> ew;  // interior edges
  std::vector<BoundaryLink> bd;
  std::vector<int> vertex_of;  // ambient vertex per node
  int num_edges() const { return static_cast<int>(ew.size()); }
  int num_boundary() const { return static_cast<int>(bd.size()); }
  double varpi_out(int i) const { return bd[i].w / bd[i].mu_ext; }  // step a -> a_int
};

// Node i <-> dom.interior[i], link j <-> dom.boundary[j].
Network network_of(const DiscreteDomain& dom);

// Factorised conductance matrix. Links with active[j]==0 are deleted (Neumann condition).
class LaplaceSolver {
 public:
  LaplaceSolver() = default;
  explicit LaplaceSolver(const Network& net, std::vector<char> active = {});
  LaplaceSolver(std::shared_ptr<const Network> net, std::vector<char> active);
  // K x = rhs, with iterative refinement to relative residual <= 1e-10
  std::vector<double> solve(const std::vector<double>& rhs, double* residual = nullptr) const;
  // harmonic extension of data given on active links
  std::vector<double> extend(const std::vector<double>& bd_data, double* residual = nullptr) const;
  const std::vector<char>& active() const { return active_; }
  const Network& network() const { return *net_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  std::shared_ptr<const Network> net_;
  std::vector<char> active_;
};

// Independent reference: dense LU of the row-stochastic form (I - P) h = P_bd data.
std::vector<double> dense_extend(const Network& net, const std::vector<double>& bd_data,
                                 const std::vector<char>& active = {});
std::vector<double> dense_green(const Network& net, int pole);

// When enabled, every solve on <= 500 unknowns is cross-checked against the dense reference.
void set_reference_check(bool on);
bool reference_check();

struct HarmonicField {
  std::vector<double> values;   // per interior node
  std::vector<double> bd_data;  // per boundary link
  double residual = 0.0;
};

struct GreenField {
  int pole = -1;  // ambient vertex id
  std::vector<double> values;
  double residual = 0.0;
};

// Network plus a cached Dirichlet factorisation; all partition functions of one domain.
class PotentialContext {
 public:
  explicit PotentialContext(Network net);
  explicit PotentialContext(const DiscreteDomain& dom) : PotentialContext(network_of(dom)) {}

  const Network& net() const { return *net_; }
  HarmonicField dirichlet(const std::vector<double>& bd_data) const;
  // omega(.; E) on every node
  std::vector<double> hm_field(const std::vector<int>& E) const;
  // Z(.; B) on every node: Dirichlet data mu_y^-1 on B
  std::vector<double> z_field(const std::vector<int>& B) const;
  GreenField green(int node) const;

  double Z_node_link(int node, int b) const;
  double Z_link_link(int a, int b) const;
  double Z_sets(const std::vector<int>& A, const std::vector<int>& B) const;
  double Z_sets(const std::vector<int>& A, const std::vector<double>& zB) const;
  double last_residual() const { return last_residual_; }

 private:
  std::shared_ptr<const Network> net_;
  LaplaceSolver solver_;
  mutable double last_residual_ = 0.0;
};

// ----- domain-level operations -----
HarmonicField solve_dirichlet(const DiscreteDomain& dom, const std::vector<double>& bd_data);
double harmonic_measure(const DiscreteDomain& dom, int u, const std::vector<int>& E);
GreenField greens_function(const DiscreteDomain& dom, int u);

// Endpoint of a partition function: an interior vertex or a boundary edge index.
struct Endpoint {
  enum Kind { Vertex, Boundary } kind = Vertex;
  int id = 0;
  static Endpoint vertex(int v) { return {Vertex, v}; }
  static Endpoint boundary(int i) { return {Boundary, i}; }
};

struct PartitionValue {
  double value = 0.0;
  bool loop_convention = false;  // Z(a;a) for a single boundary edge
};

PartitionValue partition_Z(const DiscreteDomain& dom, Endpoint x, Endpoint y);
PartitionValue partition_Z_arcs(const DiscreteDomain& dom, const std::vector<int>& A,
                                const std::vector<int>& B);
double ratio_R(const DiscreteDomain& dom, int x, const std::vector<int>& A, const std::vector<int>& B);

struct AnchorResult {
  int vertex = -1;
  double sigma = 0.0;
};
AnchorResult find_interior_anchor(const DiscreteDomain& dom, int a, int b, int c);

// Throws unless A and B are disjoint.
void require_disjoint(const std::vector<int>& A, const std::vector<int>& B);

}  // namespace dpt
