#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "dpt/domain.hpp"

namespace dpt {

struct GenSpec {
  std::string family;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
};

struct Generated {
  DiscreteDomain dom;
  GenSpec spec;
  std::map<std::string, std::pair<int, int>> arcs;  // named boundary arcs (start, end)
  std::map<std::string, int> points;                // named interior vertices
  std::array<int, 4> quad{};                        // default quadrilateral marks a,b,c,d
  Quadrilateral quadrilateral() const { return make_quad(dom, quad[0], quad[1], quad[2], quad[3]); }
};

// Families: plus, rect(m,n), square_sym(k), fjord(width,length,mouth), bottleneck(w),
// perturbed_grid(m,n,amplitude,weight_jitter), spiral(turns,width).
Generated generate(const GenSpec& spec);
Generated generate(const std::string& family, const std::map<std::string, double>& params,
                   std::uint64_t seed = 0);

// "m=3,n=2" -> {m:3, n:2}
std::map<std::string, double> parse_params(const std::string& text);

}  // namespace dpt
