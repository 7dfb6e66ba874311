#include <cmath>

#include "doctest.h"
#include "dpt/generators.hpp"
#include "dpt/invariants.hpp"
#include "dpt/rng.hpp"

using namespace dpt;

namespace {

std::vector<int> named(const Generated& gen, const std::string& name) {
  const auto [s, e] = gen.arcs.at(name);
  return arc(gen.dom, s, e).members;
}

}  // namespace

TEST_CASE("rectangle extremal length between the short sides") {
  for (int m = 1; m <= 8; ++m)
    for (int n = 1; n <= 6; ++n) {
      const auto gen = generate("rect", {{"m", m}, {"n", n}});
      const auto r = extremal_length(gen.dom, named(gen, "left"), named(gen, "right"));
      CHECK(r.EL == doctest::Approx(static_cast<double>(m + 1) / n).epsilon(1e-12));
      CHECK(r.field.current_A == doctest::Approx(r.field.current_B).epsilon(1e-10));
      CHECK(r.field.residual <= 1e-10);
    }
}

TEST_CASE("extremal metric on the 3x2 rectangle") {
  const auto gen = generate("rect", {{"m", 3}, {"n", 2}});
  const Network net = network_of(gen.dom);
  const auto L = named(gen, "left"), R = named(gen, "right");
  const auto res = extremal_length(net, L, R);
  REQUIRE(res.EL == doctest::Approx(2.0).epsilon(1e-12));
  const auto g = extremal_metric(net, res);
  for (int e = 0; e < net.num_edges(); ++e) {
    const bool horizontal = gen.dom.g().pos[net.vertex_of[net.eu[e]]].y == gen.dom.g().pos[net.vertex_of[net.ev[e]]].y;
    CHECK(g.edge[e] == doctest::Approx(horizontal ? 0.25 : 0.0).epsilon(1e-12));
  }
  CHECK(metric_area(net, g) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(metric_length(net, g, L, R) == doctest::Approx(1.0).epsilon(1e-12));

  EdgeMetric uni{std::vector<double>(net.num_edges(), 1.0), std::vector<double>(net.num_boundary(), 1.0)};
  CHECK(metric_length(net, uni, L, R) == doctest::Approx(4.0));
  CHECK(metric_area(net, uni) == doctest::Approx(net.num_edges() + net.num_boundary()));
  uni.edge[0] = -1.0;
  CHECK_THROWS_AS(metric_length(net, uni, L, R), DomainError);
}

TEST_CASE("random metrics never beat the extremal length") {
  CounterRng rng(42);
  for (const auto& gen : {generate("rect", {{"m", 5}, {"n", 3}}),
                          generate("perturbed_grid", {{"m", 6}, {"n", 5}, {"amplitude", 0.2}, {"weight_jitter", 0.5}}, 4)}) {
    const Network net = network_of(gen.dom);
    const auto q = gen.quadrilateral();
    const auto res = extremal_length(net, q.AB(), q.CD());
    const auto opt = extremal_metric(net, res);
    const double Lopt = metric_length(net, opt, q.AB(), q.CD());
    CHECK(Lopt * Lopt / metric_area(net, opt) == doctest::Approx(res.EL).epsilon(1e-9));
    for (int t = 0; t < 50; ++t) {
      EdgeMetric g{std::vector<double>(net.num_edges()), std::vector<double>(net.num_boundary())};
      for (auto& x : g.edge) x = rng.uniform();
      for (auto& x : g.link) x = rng.uniform();
      const double L = metric_length(net, g, q.AB(), q.CD());
      CHECK(L * L / metric_area(net, g) <= res.EL * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("exact duality of extremal lengths") {
  for (const auto& gen : {generate("rect", {{"m", 3}, {"n", 2}}), generate("rect", {{"m", 7}, {"n", 4}}),
                          generate("fjord", {{"width", 2}, {"length", 6}}),
                          generate("perturbed_grid", {{"m", 6}, {"n", 6}, {"amplitude", 0.2}, {"weight_jitter", 0.4}}, 2),
                          generate("spiral", {{"turns", 1}, {"width", 2}})}) {
    const auto q = gen.quadrilateral();
    const double el = extremal_length(*q.dom, q.AB(), q.CD()).EL;
    const double dual = dual_extremal_length(*q.dom, q.a, q.b, q.c, q.d);
    CHECK(el * dual == doctest::Approx(1.0).epsilon(1e-9));
  }
  const auto gen = generate("rect", {{"m", 3}, {"n", 2}});
  const auto q = gen.quadrilateral();
  CHECK(dual_extremal_length(gen.dom, q.a, q.b, q.c, q.d) == doctest::Approx(0.5).epsilon(1e-12));
  // conjugate quadrilateral: EL(AB;CD) EL(BC;DA) is not 1 on a lattice but stays close
  CHECK(duality_product(q) > 0.25);
  CHECK(duality_product(q) < 4.0);
}

TEST_CASE("harmonic conjugate is single valued on a simply connected domain") {
  const auto gen = generate("perturbed_grid", {{"m", 7}, {"n", 5}, {"amplitude", 0.2}, {"weight_jitter", 0.3}}, 8);
  const auto q = gen.quadrilateral();
  const auto res = extremal_length(gen.dom, q.AB(), q.CD());
  const auto conj = harmonic_conjugate(gen.dom, res.field.V, res.field.link_value);
  CHECK(conj.closedness_residual <= 1e-9);
  CHECK(conj.monodromy <= 1e-9);
  // the conjugate drops by the total current across the domain
  double lo = 1e300, hi = -1e300;
  for (double v : conj.value)
    if (!std::isnan(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  CHECK(hi - lo == doctest::Approx(res.field.current()).epsilon(1e-9));
  CHECK_THROWS_AS(harmonic_conjugate(gen.dom, {1.0}, res.field.link_value), DomainError);
}

TEST_CASE("cross ratios on the plus quadrilateral") {
  const auto gen = generate("plus", {});
  const auto q = make_quad(gen.dom, 0, 1, 2, 3);
  const auto cr = cross_ratios(q);
  CHECK(cr.X == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cr.Y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(xy_relation_ratio(cr) == doctest::Approx(0.5).epsilon(1e-12));
  const auto [zx, zy] = sandwich_check(q);
  // AB = {0,1} and CD = {2,3}: four one-vertex paths of weight 1/64
  CHECK(zx == doctest::Approx(1.0 / 16).epsilon(1e-12));
  CHECK(zy == doctest::Approx(1.0 / 16).epsilon(1e-12));
  CHECK(z_log_y_ratio(q) == doctest::Approx((1.0 / 16) / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("cross ratio identities") {
  const auto gen = generate("rect", {{"m", 9}, {"n", 4}});
  const auto q = gen.quadrilateral();
  const auto cr = cross_ratios(q);
  CHECK(cr.X <= 1.0);
  CHECK(cr.X <= cr.Y);
  // rotating the marks: X' = X / Y and Y' = 1 / Y
  const auto r = cross_ratios(q.rotated());
  CHECK(r.X == doctest::Approx(cr.X / cr.Y).epsilon(1e-12));
  CHECK(r.Y == doctest::Approx(1.0 / cr.Y).epsilon(1e-12));
  CHECK(cr.X == doctest::Approx(std::sqrt(cr.Zac * cr.Zbd / (cr.Zab * cr.Zcd))).epsilon(1e-14));
  CHECK(cr.Y == doctest::Approx(std::sqrt(cr.Zad * cr.Zbc / (cr.Zab * cr.Zcd))).epsilon(1e-14));
}

TEST_CASE("invariant report is self-consistent") {
  const auto gen = generate("rect", {{"m", 6}, {"n", 3}});
  const auto q = gen.quadrilateral();
  const auto r = invariant_report(q);
  CHECK(r.EL == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
  CHECK(r.EL * r.EL_dual_network == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.flux_mismatch <= 1e-9);
  CHECK(r.max_residual <= 1e-9);
  CHECK(r.X <= 1.0);
  CHECK(r.X <= r.Y);
  CHECK(r.Z > 0.0);
  CHECK(r.Z * r.EL == doctest::Approx(z_el_bound(q)).epsilon(1e-12));
  const auto cr = cross_ratios(q);
  CHECK(r.X == doctest::Approx(cr.X).epsilon(1e-12));
}
