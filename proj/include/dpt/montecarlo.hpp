#pragma once

#include <cstdint>
#include <vector>

#include "dpt/invariants.hpp"
#include "dpt/rng.hpp"

namespace dpt {

struct WalkSample {
  std::vector<int> path;  // ambient vertex ids; starts at the first interior vertex, ends at the exit vertex
  int exit = -1;          // boundary index of the exit edge
  long steps = 0;
  double occupation = 0.0;           // sum of r_v^2 over visited interior vertices (with multiplicity)
  double occupation_weighted = 0.0;  // sum of r_v^2 / mu_v, the unbiased estimator of sum r_v^2 G(v;u)
};

struct EmpiricalEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long n = 0;
  std::uint64_t seed = 0;
  // |estimate - target| <= k * max(std_error, floor)
  bool within(double target, double k = 4.0, double floor = 1e-12) const;
};

// Cumulative transition table of the walk killed on the boundary; targets >= 0 are nodes,
// targets < 0 encode boundary link -1-j.
struct TransitionTable {
  std::vector<std::vector<double>> cumulative;
  std::vector<std::vector<int>> target;
  // largest |sum of probabilities - 1| before normalisation
  double normalisation_defect = 0.0;
  int step(int node, CounterRng& rng) const;
};

TransitionTable free_table(const Network& net);
// Doob transform with h = Z(.; b): p(v -> v') proportional to varpi_{vv'} h(v').
TransitionTable conditioned_table(const Network& net, const std::vector<double>& h, int b);

// Exact check of a conditioned table: returns the largest deviation of the row sums from 1 and of
// the probabilities from varpi h(v') / sum.
double conditioned_table_error(const Network& net, const std::vector<double>& h, int b, const TransitionTable& t);

WalkSample sample_walk(const DiscreteDomain& dom, int start, CounterRng& rng, bool record_path = true);
WalkSample sample_walk(const DiscreteDomain& dom, const TransitionTable& t, int start, CounterRng& rng,
                       bool record_path = true);

EmpiricalEstimate estimate_hm(const DiscreteDomain& dom, int u, const std::vector<int>& E, long n,
                              std::uint64_t seed);

// Occupation estimate of sum r_v^2 G(v;u) from walks started at u.
EmpiricalEstimate estimate_occupation(const DiscreteDomain& dom, int u, long n, std::uint64_t seed);

// Conditioned walk from boundary edge a to boundary edge b; path starts at a's exterior vertex.
WalkSample sample_conditioned(const DiscreteDomain& dom, int a, int b, CounterRng& rng);
WalkSample sample_conditioned(const DiscreteDomain& dom, const TransitionTable& t, int a, CounterRng& rng);

// Vertex: the two walks share an interior vertex. LoopErased: the second walk meets the loop
// erasure of the first.
enum class Meeting { Vertex, LoopErased };

std::vector<int> loop_erasure(const std::vector<int>& path);

// Probability that independent conditioned walks a1->b1 and a2->b2 meet.
EmpiricalEstimate intersection_probability(const DiscreteDomain& dom, int a1, int b1, int a2, int b2, long n,
                                           std::uint64_t seed, Meeting how = Meeting::Vertex);
// Walks a->d and b->c of the quadrilateral.
EmpiricalEstimate intersection_probability(const Quadrilateral& q, long n, std::uint64_t seed,
                                           Meeting how = Meeting::Vertex);
// Probability that a conditioned a->b walk meets the inner disc around u.
EmpiricalEstimate intersection_ball_probability(const DiscreteDomain& dom, int a, int b, int u, long n,
                                                std::uint64_t seed);

// ----- exact checks on discs of the ambient graph -----
// Exit probability of B_r(u) through boundary vertices in the direction sector [theta0, theta0 + width).
double test_property_S(const EmbeddedGraph& g, int u, double r, double theta0, double width);
// Minimum over `directions` equally spaced sectors.
double property_S_min(const EmbeddedGraph& g, int u, double r, double width, int directions = 16);
// sum_{v in Int B_r(u)} r_v^2 G_{B_r(u)}(v;u) / r^2
double test_property_T(const EmbeddedGraph& g, int u, double r);
// Worst min/max ratio on Int B_r(u) over harmonic measures of `sectors` direction sectors of B_{rho r}(u).
double test_harnack(const EmbeddedGraph& g, int u, double r, double rho, int sectors = 8);
// Largest probability, over four axis-aligned radial barriers, that the walk from u leaves B_r(u)
// without touching a barrier spanning the annulus between r/rho and r.
double test_annulus_crossing(const EmbeddedGraph& g, int u, double r, double rho);

struct BeurlingPoint {
  double omega = 0.0;
  double distance_ratio = 0.0;  // dist_Omega(u;E) / dist(u; boundary)
};
BeurlingPoint test_beurling(const DiscreteDomain& dom, int u, const std::vector<int>& E);
// Least-squares slope of log omega against -log(distance ratio).
double beurling_exponent(const std::vector<BeurlingPoint>& pts);

// dist_Omega(u;E): smallest r such that u and E are connected inside Omega ∩ B_r(u).
double intrinsic_distance(const DiscreteDomain& dom, int u, const std::vector<int>& E);

}  // namespace dpt
