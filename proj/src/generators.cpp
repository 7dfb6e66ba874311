#include "dpt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dpt/rng.hpp"

namespace dpt {

namespace {

using Cell = std::pair<int, int>;

struct Lattice {
  std::map<Cell, int> id;
  std::vector<Cell> coord;
};

double param(const GenSpec& s, const std::string& key, double fallback) {
  auto it = s.params.find(key);
  return it == s.params.end() ? fallback : it->second;
}

int iparam(const GenSpec& s, const std::string& key, int fallback) {
  const double v = param(s, key, fallback);
  if (v != std::floor(v)) throw DomainError("parameter " + key + " must be an integer");
  return static_cast<int>(v);
}

Generated from_cells(const GenSpec& spec, const std::set<Cell>& cells, Lattice& lat,
                     double amplitude = 0.0, double weight_jitter = 0.0, int margin = 2) {
  if (cells.empty()) throw DomainError("generator produced an empty interior");
  if (weight_jitter < 0.0 || weight_jitter >= 1.0) throw DomainError("weight_jitter must lie in [0,1)");
  std::set<Cell> verts;
  for (const auto& [x, y] : cells)
    for (int dy = -margin; dy <= margin; ++dy)
      for (int dx = -margin; dx <= margin; ++dx) verts.insert({x + dx, y + dy});
  std::vector<Cell> order(verts.begin(), verts.end());
  std::sort(order.begin(), order.end(), [](const Cell& a, const Cell& b) {
    return a.second < b.second || (a.second == b.second && a.first < b.first);
  });
  lat.coord = order;
  for (std::size_t i = 0; i < order.size(); ++i) lat.id[order[i]] = static_cast<int>(i);

  CounterRng pos_rng(spec.seed, 0, 1), w_rng(spec.seed, 0, 2);
  std::vector<Vec2> pts;
  pts.reserve(order.size());
  for (const auto& [x, y] : order) {
    Vec2 off{0.0, 0.0};
    if (amplitude > 0.0) {
      off = {amplitude * (2.0 * pos_rng.uniform() - 1.0), amplitude * (2.0 * pos_rng.uniform() - 1.0)};
      const double len = norm(off);
      if (len > 0.25) off = (0.25 / len) * off;  // lattice spacing is 1
    }
    pts.push_back({x + off.x, y + off.y});
  }
  std::vector<EdgeInput> es;
  for (const auto& c : order) {
    const int i = lat.id[c];
    for (const Cell& nb : {Cell{c.first + 1, c.second}, Cell{c.first, c.second + 1}}) {
      auto it = lat.id.find(nb);
      if (it == lat.id.end()) continue;
      double w = 1.0;
      if (weight_jitter > 0.0) w = 1.0 + weight_jitter * (2.0 * w_rng.uniform() - 1.0);
      es.push_back({i, it->second, w});
    }
  }
  auto g = std::make_shared<EmbeddedGraph>(build_graph(pts, es));
  if (amplitude > 0.0) {
    const StructureReport rep = validate_assumptions(*g, 0);
    if (!rep.satisfied_b) throw DomainError("perturbation violates the no-flat-angle assumption");
  }
  std::vector<int> interior;
  for (const auto& c : cells) interior.push_back(lat.id.at(c));
  Generated out;
  out.spec = spec;
  out.dom = make_domain(g, interior);
  if (!out.dom.simply_connected) throw DomainError("generated domain is not simply connected");
  return out;
}

// boundary-edge selector in lattice coordinates: (int cell, ext cell)
using DartPred = std::function<bool(Cell, Cell)>;

std::pair<int, int> lattice_arc(const Generated& gen, const Lattice& lat, const DartPred& pred) {
  return run_arc(gen.dom, [&](int i) {
    return pred(lat.coord[gen.dom.bd_int(i)], lat.coord[gen.dom.bd_ext(i)]);
  });
}

void set_quad(Generated& gen, const std::string& first, const std::string& second) {
  const auto& A = gen.arcs.at(first);
  const auto& B = gen.arcs.at(second);
  gen.quad = {A.first, A.second, B.first, B.second};
  (void)gen.quadrilateral();
}

void add_rect_arcs(Generated& gen, const Lattice& lat, int x0, int x1, int y0, int y1) {
  gen.arcs["left"] = lattice_arc(gen, lat, [=](Cell c, Cell e) { return c.first == x0 && e.first < x0; });
  gen.arcs["right"] = lattice_arc(gen, lat, [=](Cell c, Cell e) { return c.first == x1 && e.first > x1; });
  gen.arcs["bottom"] = lattice_arc(gen, lat, [=](Cell c, Cell e) { return c.second == y0 && e.second < y0; });
  gen.arcs["top"] = lattice_arc(gen, lat, [=](Cell c, Cell e) { return c.second == y1 && e.second > y1; });
}

Generated gen_rect(const GenSpec& spec, double amplitude, double wj) {
  const int m = iparam(spec, "m", 3), n = iparam(spec, "n", 2);
  if (m < 1 || n < 1) throw DomainError("rect needs m,n >= 1");
  std::set<Cell> cells;
  for (int y = 1; y <= n; ++y)
    for (int x = 1; x <= m; ++x) cells.insert({x, y});
  Lattice lat;
  Generated gen = from_cells(spec, cells, lat, amplitude, wj);
  add_rect_arcs(gen, lat, 1, m, 1, n);
  gen.points["center"] = lat.id.at({(m + 1) / 2, (n + 1) / 2});
  if (n >= 2) {
    set_quad(gen, "left", "right");
  } else {
    // single-edge sides: marks on the four sides instead
    gen.quad = {gen.arcs["left"].first, gen.arcs["bottom"].first, gen.arcs["right"].first, gen.arcs["top"].first};
    (void)gen.quadrilateral();
  }
  return gen;
}

Generated gen_plus(const GenSpec& spec) {
  Lattice lat;
  Generated gen = from_cells(spec, {{0, 0}}, lat);
  gen.points["center"] = lat.id.at({0, 0});
  const int n = gen.dom.num_boundary();
  gen.quad = {0, 1, 2, 3};
  for (int i = 0; i < n; ++i) gen.arcs["arm" + std::to_string(i)] = {i, i};
  return gen;
}

Generated gen_square_sym(const GenSpec& spec) {
  const int k = iparam(spec, "k", 5);
  if (k < 1 || k % 2 == 0) throw DomainError("square_sym needs an odd k >= 1");
  const int h = k / 2;
  std::set<Cell> cells;
  for (int y = -h; y <= h; ++y)
    for (int x = -h; x <= h; ++x) cells.insert({x, y});
  Lattice lat;
  Generated gen = from_cells(spec, cells, lat);
  add_rect_arcs(gen, lat, -h, h, -h, h);
  auto mark = [&](Cell c, Cell e) { return gen.dom.boundary_index(lat.id.at(c), lat.id.at(e)); };
  gen.quad = {mark({h, 0}, {h + 1, 0}), mark({0, h}, {0, h + 1}), mark({-h, 0}, {-h - 1, 0}),
              mark({0, -h}, {0, -h - 1})};
  (void)gen.quadrilateral();
  gen.points["center"] = lat.id.at({0, 0});
  return gen;
}

Generated gen_fjord(const GenSpec& spec) {
  const int width = iparam(spec, "width", 1), length = iparam(spec, "length", 10);
  const int mouth = iparam(spec, "mouth", width);
  const int bw = iparam(spec, "base_w", 6), bh = iparam(spec, "base_h", 6);
  if (width < 1 || length < 1 || bw < 1 || bh < width || mouth < 1 || mouth > width)
    throw DomainError("fjord needs 1 <= mouth <= width <= base_h and length >= 1");
  std::set<Cell> cells;
  for (int y = 1; y <= bh; ++y)
    for (int x = 1; x <= bw; ++x) cells.insert({x, y});
  const int y0 = (bh - width) / 2 + 1;
  for (int j = 0; j < length; ++j) {
    const int rows = j == 0 ? mouth : width;
    const int r0 = y0 + (width - rows) / 2;
    for (int r = 0; r < rows; ++r) cells.insert({bw + 1 + j, r0 + r});
  }
  Lattice lat;
  Generated gen = from_cells(spec, cells, lat);
  const int xt = bw + length;
  gen.arcs["tip"] = lattice_arc(gen, lat, [=](Cell c, Cell) { return c.first == xt; });
  gen.arcs["base_left"] = lattice_arc(gen, lat, [](Cell c, Cell e) { return c.first == 1 && e.first < 1; });
  gen.points["tip"] = lat.id.at({xt, y0 + (width - 1) / 2});
  gen.points["base_center"] = lat.id.at({(bw + 1) / 2, (bh + 1) / 2});
  gen.points["base_far"] = lat.id.at({1, (bh + 1) / 2});
  set_quad(gen, "tip", "base_left");
  return gen;
}

Generated gen_bottleneck(const GenSpec& spec) {
  const int w = iparam(spec, "w", 2), box = iparam(spec, "box", 8);
  if (w < 1 || w > box) throw DomainError("bottleneck needs 1 <= w <= box");
  std::set<Cell> cells;
  for (int y = 1; y <= box; ++y) {
    for (int x = 1; x <= box; ++x) cells.insert({x, y});
    for (int x = box + 2; x <= 2 * box + 1; ++x) cells.insert({x, y});
  }
  const int o0 = (box - w) / 2 + 1;
  for (int r = 0; r < w; ++r) cells.insert({box + 1, o0 + r});
  Lattice lat;
  Generated gen = from_cells(spec, cells, lat);
  const int xr = 2 * box + 1;
  gen.arcs["left"] = lattice_arc(gen, lat, [](Cell c, Cell e) { return c.first == 1 && e.first < 1; });
  gen.arcs["right"] = lattice_arc(gen, lat, [=](Cell c, Cell e) { return c.first == xr && e.first > xr; });
  gen.points["left_center"] = lat.id.at({(box + 1) / 2, (box + 1) / 2});
  gen.points["right_center"] = lat.id.at({box + 1 + (box + 1) / 2, (box + 1) / 2});
  gen.points["neck"] = lat.id.at({box + 1, o0});
  set_quad(gen, "left", "right");
  return gen;
}

Generated gen_spiral(const GenSpec& spec) {
  const int turns = iparam(spec, "turns", 2), width = iparam(spec, "width", 1);
  if (turns < 1 || width < 1) throw DomainError("spiral needs turns >= 1 and width >= 1");
  const int p = width + 1;
  std::vector<Cell> coarse{{0, 0}};
  const int dirs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int s = 0; s < 4 * turns; ++s) {
    const int len = s / 2 + 1;
    for (int k = 0; k < len; ++k)
      coarse.push_back({coarse.back().first + dirs[s % 4][0], coarse.back().second + dirs[s % 4][1]});
  }
  std::set<Cell> cells;
  auto block = [&](Cell c, std::set<Cell>& out) {
    for (int y = 0; y < width; ++y)
      for (int x = 0; x < width; ++x) out.insert({c.first * p + x, c.second * p + y});
  };
  for (const auto& c : coarse) block(c, cells);
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    const Cell a = coarse[i], b = coarse[i + 1];
    const Cell lo = std::min(a, b);
    for (int t = 0; t < width; ++t) {
      if (a.second == b.second)
        cells.insert({lo.first * p + width, a.second * p + t});
      else
        cells.insert({a.first * p + t, std::min(a.second, b.second) * p + width});
    }
  }
  Lattice lat;
  Generated gen = from_cells(spec, cells, lat);
  std::set<Cell> first, last;
  block(coarse.front(), first);
  block(coarse.back(), last);
  gen.arcs["inner"] = lattice_arc(gen, lat, [&](Cell c, Cell) { return first.count(c) > 0; });
  gen.arcs["outer"] = lattice_arc(gen, lat, [&](Cell c, Cell) { return last.count(c) > 0; });
  gen.points["inner"] = lat.id.at({0, 0});
  gen.points["outer"] = lat.id.at({coarse.back().first * p, coarse.back().second * p});
  set_quad(gen, "inner", "outer");
  return gen;
}

}  // namespace

Generated generate(const GenSpec& spec) {
  const std::string& f = spec.family;
  if (f == "plus") return gen_plus(spec);
  if (f == "rect") return gen_rect(spec, 0.0, 0.0);
  if (f == "square_sym") return gen_square_sym(spec);
  if (f == "fjord") return gen_fjord(spec);
  if (f == "bottleneck") return gen_bottleneck(spec);
  if (f == "perturbed_grid") {
    GenSpec s = spec;
    if (!s.params.count("m")) s.params["m"] = 10;
    if (!s.params.count("n")) s.params["n"] = 10;
    return gen_rect(s, param(s, "amplitude", 0.1), param(s, "weight_jitter", 0.0));
  }
  if (f == "spiral") return gen_spiral(spec);
  throw DomainError("unknown generator family '" + f + "'");
}

Generated generate(const std::string& family, const std::map<std::string, double>& params,
                   std::uint64_t seed) {
  return generate(GenSpec{family, params, seed});
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  std::string item;
  auto trim = [](std::string t) {
    const auto b = t.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return t.substr(b, t.find_last_not_of(" \t") - b + 1);
  };
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("parameter '" + item + "' is not key=value");
    std::size_t used = 0;
    const std::string val = trim(item.substr(eq + 1));
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      throw DomainError("parameter '" + item + "' has a non-numeric value");
    }
    if (used != val.size() || !std::isfinite(v)) throw DomainError("parameter '" + item + "' is malformed");
    const std::string key = trim(item.substr(0, eq));
    if (key.empty()) throw DomainError("parameter '" + item + "' has an empty key");
    out[key] = v;
  }
  return out;
}

}  // namespace dpt
