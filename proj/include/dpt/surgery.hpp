#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpt/invariants.hpp"

namespace dpt {

// Network on a subset of the interior of a domain. Links are either original boundary links
// (origin = boundary index) or cut edges towards removed interior vertices (origin = -1 - edge id).
struct SubNetwork {
  Network net;
  std::vector<int> link_origin;
  std::vector<int> cut_links() const;
  std::vector<int> links_from(const std::vector<int>& boundary_indices) const;
};

SubNetwork sub_network(const DiscreteDomain& dom, const std::vector<int>& verts);

// ----- separators -----
struct SeparatorSplit {
  double k = 1.0;
  std::vector<int> part_A, part_B;  // vertex ids
  std::vector<int> slit;            // interior edge ids with one endpoint in each part
  bool connected_A = false, connected_B = false;
  // every interior end of A lies in part A, likewise for B
  bool holds_A = false, holds_B = false;
  std::vector<double> ratio;  // R(u) = Z(u;A)/Z(u;B) per interior node
  std::vector<int> A, B;
  // outer boundary indices next to the slit: (x_A, x_B) and (y_B, y_A) in ccw order
  int x_A = -1, x_B = -1, y_A = -1, y_B = -1;
  bool usable() const { return connected_A && connected_B && holds_A && holds_B; }
};

// Threshold tolerance: u goes to part A when R(u) >= k (1 - 1e-12).
SeparatorSplit separator_split(const DiscreteDomain& dom, const std::vector<int>& A, const std::vector<int>& B,
                               double k);
SeparatorSplit separator_split(const DiscreteDomain& dom, const PotentialContext& ctx, const std::vector<int>& A,
                               const std::vector<int>& B, double k);

struct SeparatorRatios {
  double Z = 0, Z_A = 0, Z_B = 0;
  double factorization = 0;  // Z / (Z_A Z_B)
  double balance = 0;        // (Z_A / Z_B) / k
};

// Throws DomainError when either part is disconnected or empty.
SeparatorRatios separator_verify(const DiscreteDomain& dom, const SeparatorSplit& split);

// Inclusion chain for separators defined through the level of a boundary point x.
bool separator_inclusion_check(const DiscreteDomain& dom, const std::vector<int>& A, const std::vector<int>& B,
                               const std::vector<int>& C, int x);

// ----- annulus -----
struct AnnulusDomain {
  const DiscreteDomain* base = nullptr;
  int u = -1;
  double rho0 = 0.25;
  double radius = 0.0;
  std::vector<int> disc;  // removed vertices
  DiscreteDomain dom;     // annulus, or the fallback component
  std::vector<int> C;     // boundary indices of dom pointing into the removed disc
  std::vector<int> omega_link;  // per link of dom: boundary index in the base domain, or -1 for C
  bool doubly_connected = false;
  bool fallback = false;
  double green_min = 0.0, green_max = 0.0;  // G(v;u) over the C vertices
  // links of dom corresponding to base boundary indices (those present)
  std::vector<int> map_links(const std::vector<int>& base_indices) const;
};

// When `arc` is given, the fallback component is the one reached by most of its links.
AnnulusDomain annulus(const DiscreteDomain& dom, int u, double rho0 = 0.25,
                      const std::vector<int>& arc = {});

struct HmAnnulus {
  double omega = 0, Z = 0, ratio = 0;
};
HmAnnulus hm_via_annulus(const DiscreteDomain& dom, int u, const std::vector<int>& arc, double rho0 = 0.25);

struct LogHmEl {
  double log_hm = 0, EL = 0, ratio = 0;
  bool fallback = false;
};
LogHmEl log_hm_vs_el(const DiscreteDomain& dom, int u, const std::vector<int>& arc, double rho0 = 0.25);

// ----- cutting -----
struct CutDomain {
  Network net;
  std::vector<int> gamma;        // slit vertices (ambient ids), from C side to outer side
  std::vector<int> gamma_left, gamma_right;  // node ids of the two copies
  std::vector<int> left_bd, right_bd;        // links across the slit
  std::vector<int> C, outer;                  // links into the disc / onto the base boundary
  std::vector<int> outer_base;                // per outer link: base boundary index
  std::vector<int> provenance;                // node -> ambient vertex
  std::vector<int> links_of(const std::vector<int>& base_indices) const;
};

// gamma: interior path of the annulus from a C-neighbour to a vertex adjacent to the outer boundary.
// The outer endpoint d is taken outside `arc` when given.
CutDomain cut_annulus(const AnnulusDomain& ann, const std::vector<int>& gamma, const std::vector<int>& arc = {});

struct Sandwich {
  double lower = 0, middle = 0, upper = 0;  // Z_cut(C;ab), Z_ann(C;ab), Z_cut(left ∪ C ∪ right;ab)
  bool holds(double slack = 1e-10) const {
    return lower <= middle * (1 + slack) && middle <= upper * (1 + slack);
  }
};
Sandwich cut_sandwich(const AnnulusDomain& ann, const CutDomain& cut, const std::vector<int>& arc);

enum class SlitMode { ConjugateSign, LevelSet };

struct SlitResult {
  std::vector<int> gamma;
  bool found = false;
  std::string branch;  // "conjugate_sign", "level_path", "near_arc"
  double EL = 0;       // EL(A; C, ab)
  double EL_cut = 0;   // post-cut extremal length of the relevant family
  double EL_outer = 0; // EL(A; C, whole outer boundary) for the near_arc branch
  double bound = 0;    // right-hand side of the asserted inequality
  bool inequality_holds = false;
};

// Throws DomainError unless the annulus is doubly connected.
SlitResult find_slit(const AnnulusDomain& ann, const std::vector<int>& arc, SlitMode mode, double q = 2.0);

}  // namespace dpt
