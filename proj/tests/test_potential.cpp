#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "dpt/generators.hpp"
#include "dpt/potential.hpp"
#include "oracles.hpp"

using namespace dpt;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Small fixtures with at most 8 interior vertices.
std::vector<Generated> small_fixtures() {
  return {generate("plus", {}),
          generate("rect", {{"m", 2}, {"n", 2}}),
          generate("rect", {{"m", 3}, {"n", 2}}),
          generate("rect", {{"m", 4}, {"n", 2}}),
          generate("rect", {{"m", 8}, {"n", 1}}),
          generate("perturbed_grid", {{"m", 2}, {"n", 3}, {"amplitude", 0.2}, {"weight_jitter", 0.5}}, 5)};
}

}  // namespace

TEST_CASE("plus fixture values") {
  const auto gen = generate("plus", {});
  const auto& dom = gen.dom;
  const int u = gen.points.at("center");
  for (int b = 0; b < 4; ++b) {
    CHECK(harmonic_measure(dom, u, {b}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(partition_Z(dom, Endpoint::vertex(u), Endpoint::boundary(b)).value == doctest::Approx(1.0 / 16).epsilon(1e-14));
    for (int a = 0; a < 4; ++a) {
      const auto z = partition_Z(dom, Endpoint::boundary(a), Endpoint::boundary(b));
      CHECK(z.value == doctest::Approx(1.0 / 64).epsilon(1e-14));
      CHECK(z.loop_convention == (a == b));
    }
  }
  CHECK(partition_Z(dom, Endpoint::vertex(u), Endpoint::vertex(u)).value == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(greens_function(dom, u).values[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(partition_Z_arcs(dom, {0, 1}, {2, 3}).value == doctest::Approx(4.0 / 64).epsilon(1e-14));
  CHECK(ratio_R(dom, 0, {1}, {2, 3}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("partition functions agree with brute-force path sums") {
  for (const auto& gen : small_fixtures()) {
    const auto& dom = gen.dom;
    REQUIRE(dom.num_interior() <= 8);
    const Network net = network_of(dom);
    const PotentialContext ctx(net);
    CAPTURE(gen.spec.family);
    for (int a = 0; a < net.num_boundary(); ++a)
      for (int b = 0; b < net.num_boundary(); ++b)
        CHECK(rel(ctx.Z_link_link(a, b), oracle::Z_link_link(net, a, b)) < 1e-10);
    for (int x = 0; x < net.n; ++x) {
      const auto G = ctx.green(x).values;
      for (int y = 0; y < net.n; ++y) CHECK(rel(G[y], oracle::Z_node_node(net, x, y)) < 1e-10);
      for (int b = 0; b < net.num_boundary(); ++b)
        CHECK(rel(ctx.Z_node_link(x, b), oracle::Z_node_link(net, x, b)) < 1e-10);
    }
  }
}

TEST_CASE("explicit enumeration converges to the plus value") {
  const auto gen = generate("rect", {{"m", 2}, {"n", 1}});
  const Network net = network_of(gen.dom);
  const PotentialContext ctx(net);
  // two-node network: path weights decay by 1/16 per back-and-forth, 40 steps are plenty
  for (int a = 0; a < net.num_boundary(); ++a)
    for (int b = 0; b < net.num_boundary(); ++b)
      CHECK(rel(ctx.Z_link_link(a, b), oracle::enumerate_link_link(net, a, b, 40)) < 1e-12);
}

TEST_CASE("sparse and dense solvers agree") {
  for (const auto& gen : {generate("rect", {{"m", 12}, {"n", 9}}),
                          generate("perturbed_grid", {{"m", 10}, {"n", 8}, {"amplitude", 0.2}, {"weight_jitter", 0.6}}, 9),
                          generate("spiral", {{"turns", 2}, {"width", 2}})}) {
    const Network net = network_of(gen.dom);
    const LaplaceSolver solver(net);
    std::vector<double> data(net.num_boundary());
    for (int j = 0; j < net.num_boundary(); ++j) data[j] = std::sin(0.7 * j) + 1.5;
    double res = 1.0;
    const auto h = solver.extend(data, &res);
    CHECK(res <= 1e-10);
    const auto ref = dense_extend(net, data);
    const auto ref2 = oracle::dense_harmonic(net, data);
    for (int i = 0; i < net.n; ++i) {
      CHECK(std::abs(h[i] - ref[i]) <= 1e-10);
      CHECK(std::abs(h[i] - ref2[i]) <= 1e-10);
    }
    const auto g = PotentialContext(net).green(net.n / 2).values;
    const auto gd = dense_green(net, net.n / 2);
    for (int i = 0; i < net.n; ++i) CHECK(std::abs(g[i] - gd[i]) <= 1e-10 * gd[net.n / 2]);
  }
}

TEST_CASE("Neumann links are deleted") {
  const auto gen = generate("rect", {{"m", 3}, {"n", 2}});
  const Network net = network_of(gen.dom);
  std::vector<char> active(net.num_boundary(), 0);
  const auto A = gen.dom.num_boundary();
  (void)A;
  const auto left = arc(gen.dom, gen.arcs.at("left").first, gen.arcs.at("left").second).members;
  const auto right = arc(gen.dom, gen.arcs.at("right").first, gen.arcs.at("right").second).members;
  std::vector<double> data(net.num_boundary(), 0.0);
  for (int j : left) active[j] = 1;
  for (int j : right) {
    active[j] = 1;
    data[j] = 1.0;
  }
  const LaplaceSolver s(net, active);
  const auto h = s.extend(data);
  const auto ref = dense_extend(net, data, active);
  for (int i = 0; i < net.n; ++i) CHECK(h[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  // a strip with insulated top and bottom: the potential is linear in x with 4 unit steps
  for (int i = 0; i < net.n; ++i) {
    const double x = gen.dom.g().pos[net.vertex_of[i]].x;
    CHECK(h[i] == doctest::Approx(x / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("additivity and harmonic measure identities") {
  const auto gen = generate("rect", {{"m", 5}, {"n", 4}});
  const auto& dom = gen.dom;
  const PotentialContext ctx(dom);
  const int nb = dom.num_boundary();
  std::vector<int> all(nb);
  for (int i = 0; i < nb; ++i) all[i] = i;
  const auto total = ctx.hm_field(all);
  for (double v : total) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<int> A{0, 1, 2}, B{6, 7}, AB{0, 1, 2, 6, 7};
  CHECK(ctx.Z_sets({10, 11}, AB) == doctest::Approx(ctx.Z_sets({10, 11}, A) + ctx.Z_sets({10, 11}, B)).epsilon(1e-12));
  CHECK(ctx.Z_sets(AB, std::vector<int>{12}) == doctest::Approx(ctx.Z_sets(A, std::vector<int>{12}) + ctx.Z_sets(B, std::vector<int>{12})).epsilon(1e-12));
  // symmetry
  for (int a = 0; a < nb; a += 3)
    for (int b = 0; b < nb; b += 2) CHECK(ctx.Z_link_link(a, b) == doctest::Approx(ctx.Z_link_link(b, a)).epsilon(1e-12));
  // harmonic measure = sum over E of mu_y Z(u;y)
  const int u = gen.points.at("center");
  double s = 0.0;
  for (int b : A) s += ctx.net().bd[b].mu_ext * ctx.Z_node_link(dom.local[u], b);
  CHECK(harmonic_measure(dom, u, A) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("maximum principle and positivity") {
  const auto gen = generate("spiral", {{"turns", 2}, {"width", 1}});
  const PotentialContext ctx(gen.dom);
  const auto h = ctx.hm_field({0, 1, 2});
  for (double v : h) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("input validation") {
  const auto gen = generate("rect", {{"m", 3}, {"n", 2}});
  const auto& dom = gen.dom;
  CHECK_THROWS_AS(require_disjoint({1, 2}, {2, 3}), DomainError);
  CHECK_THROWS_AS(ratio_R(dom, 1, {1}, {5}), DomainError);
  CHECK_THROWS_AS(partition_Z(dom, Endpoint::boundary(99), Endpoint::boundary(0)), DomainError);
  CHECK_THROWS_AS(partition_Z(dom, Endpoint::vertex(0), Endpoint::boundary(0)), DomainError);
  CHECK_THROWS_AS(harmonic_measure(dom, 0, {0}), DomainError);
  CHECK_THROWS_AS(PotentialContext(dom).green(-1), SolverError);
}

TEST_CASE("reference cross-check mode") {
  set_reference_check(true);
  CHECK(reference_check());
  const auto gen = generate("rect", {{"m", 6}, {"n", 5}});
  CHECK_NOTHROW(PotentialContext(gen.dom).z_field({0, 1}));
  set_reference_check(false);
  CHECK_FALSE(reference_check());
}

TEST_CASE("interior anchor is balanced") {
  const auto gen = generate("square_sym", {{"k", 9}});
  const auto q = gen.quadrilateral();
  const auto anc = find_interior_anchor(gen.dom, q.a, q.b, q.c);
  CHECK(gen.dom.is_interior(anc.vertex));
  CHECK(anc.sigma > 0.1);
  const auto h1 = harmonic_measure(gen.dom, anc.vertex, arc(gen.dom, q.a, q.b).members);
  const auto h2 = harmonic_measure(gen.dom, anc.vertex, arc(gen.dom, q.b, q.c).members);
  const auto h3 = harmonic_measure(gen.dom, anc.vertex, arc(gen.dom, q.c, q.a).members);
  CHECK(anc.sigma == doctest::Approx(std::min({h1, h2, h3})).epsilon(1e-12));
  // the three arcs overlap only at their endpoints
  CHECK(h1 + h2 + h3 >= 1.0 - 1e-12);
  CHECK(anc.sigma < 0.5);
}
