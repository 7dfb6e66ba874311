#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dpt/potential.hpp"

namespace dpt {

struct CrossRatios {
  double X = 0.0, Y = 0.0;
  double Zab = 0.0, Zac = 0.0, Zad = 0.0, Zbc = 0.0, Zbd = 0.0, Zcd = 0.0;
};

// Uses four solves on the given context (one per target mark).
CrossRatios cross_ratios(const PotentialContext& ctx, int a, int b, int c, int d);
CrossRatios cross_ratios(const Quadrilateral& q);

double xy_relation_ratio(const CrossRatios& cr);           // X^-1 / (1 + Y^-1)
std::pair<double, double> sandwich_check(const Quadrilateral& q);  // (Z/X, Z/Y)
double z_log_y_ratio(const Quadrilateral& q);               // Z / log(1+Y)

// Dirichlet-Neumann potential: V = 0 on A, V = 1 on B, free links deleted.
struct DNField {
  std::vector<double> V;          // per node
  std::vector<double> link_value;  // value at the exterior end of each link (V(x_int) on free links)
  std::vector<int> A, B;
  double current_A = 0.0, current_B = 0.0;
  double residual = 0.0;
  double current() const { return 0.5 * (current_A + current_B); }
};

struct EdgeMetric {
  std::vector<double> edge;  // per interior edge of the network
  std::vector<double> link;  // per boundary link
};

struct ExtremalLengthResult {
  double EL = 0.0;
  DNField field;
  double dual_EL = std::numeric_limits<double>::quiet_NaN();
};

ExtremalLengthResult extremal_length(const Network& net, const std::vector<int>& A, const std::vector<int>& B);
ExtremalLengthResult extremal_length(const DiscreteDomain& dom, const std::vector<int>& A,
                                     const std::vector<int>& B);

EdgeMetric extremal_metric(const Network& net, const ExtremalLengthResult& res);
// Shortest g-length of node paths starting with a link of A and ending with a link of B.
double metric_length(const Network& net, const EdgeMetric& g, const std::vector<int>& A,
                     const std::vector<int>& B);
double metric_area(const Network& net, const EdgeMetric& g);

struct ConjugateField {
  std::vector<double> value;  // per graph face, NaN where undefined
  double closedness_residual = 0.0;
  double monodromy = 0.0;  // largest inconsistency found around non-tree dual cycles
};

// V* with V*(f_left) - V*(f_right) = w (V(v') - V(v)) across every edge of the domain.
ConjugateField harmonic_conjugate(const DiscreteDomain& dom, const std::vector<double>& V,
                                  const std::vector<double>& link_value);

// Exact dual: faces as nodes, weights 1/w, electrodes = corner faces along (b c) and (d a).
double dual_extremal_length(const DiscreteDomain& dom, int a, int b, int c, int d);
// faces between consecutive boundary edges i and i+1 (left face of edge i)
int corner_face(const DiscreteDomain& dom, int i);

double duality_product(const Quadrilateral& q);
double z_el_bound(const Quadrilateral& q);

struct InvariantReport {
  int a = 0, b = 0, c = 0, d = 0;
  double Z = 0, X = 0, Y = 0, EL = 0;
  double Z_dual = 0, X_dual = 0, Y_dual = 0, EL_dual = 0;
  double EL_dual_network = 0;  // exact dual extremal length of (AB;CD)
  double flux_mismatch = 0;    // |I_A - I_B| / I
  double max_residual = 0;
  std::map<std::string, double> ratios;
  std::map<std::string, bool> flags;
};

InvariantReport invariant_report(const Quadrilateral& q);

}  // namespace dpt
