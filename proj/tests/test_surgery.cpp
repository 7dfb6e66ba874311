#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "dpt/generators.hpp"
#include "dpt/surgery.hpp"

using namespace dpt;

namespace {

std::vector<int> named(const Generated& gen, const std::string& name) {
  const auto [s, e] = gen.arcs.at(name);
  return arc(gen.dom, s, e).members;
}

}  // namespace

TEST_CASE("sub-network of the full interior reproduces the domain network") {
  const auto gen = generate("rect", {{"m", 5}, {"n", 4}});
  const auto sub = sub_network(gen.dom, gen.dom.interior);
  CHECK(sub.cut_links().empty());
  CHECK(sub.net.num_boundary() == gen.dom.num_boundary());
  const PotentialContext a(gen.dom), b(sub.net);
  const auto la = sub.links_from({0, 1, 2});
  const auto lb = sub.links_from({9, 10});
  CHECK(b.Z_sets(la, lb) == doctest::Approx(a.Z_sets(std::vector<int>{0, 1, 2}, std::vector<int>{9, 10})).epsilon(1e-12));
}

TEST_CASE("sub-network on a half creates cut links") {
  const auto gen = generate("rect", {{"m", 6}, {"n", 3}});
  std::vector<int> half;
  for (int v : gen.dom.interior)
    if (gen.dom.g().pos[v].x <= 3.0) half.push_back(v);
  const auto sub = sub_network(gen.dom, half);
  CHECK(sub.net.n == 9);
  CHECK(sub.cut_links().size() == 3);
  for (int j : sub.cut_links()) CHECK(sub.link_origin[j] < 0);
}

TEST_CASE("separator splits partition the interior") {
  const auto gen = generate("rect", {{"m", 8}, {"n", 4}});
  const auto A = named(gen, "left"), B = named(gen, "right");
  std::size_t prev_A = gen.dom.interior.size() + 1;
  for (double k : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    CAPTURE(k);
    const auto s = separator_split(gen.dom, A, B, k);
    CHECK(s.part_A.size() + s.part_B.size() == gen.dom.interior.size());
    std::set<int> pa(s.part_A.begin(), s.part_A.end());
    for (int v : s.part_B) CHECK(pa.count(v) == 0);
    CHECK(s.part_A.size() <= prev_A);
    prev_A = s.part_A.size();
    for (int e : s.slit) {
      const auto& ed = gen.dom.g().edges[e];
      CHECK(pa.count(ed.u) + pa.count(ed.v) == 1);
    }
    REQUIRE(s.usable());
    const auto r = separator_verify(gen.dom, s);
    CHECK(r.factorization == doctest::Approx(r.Z / (r.Z_A * r.Z_B)));
    CHECK(r.balance == doctest::Approx(r.Z_A / r.Z_B / k));
    CHECK(r.factorization > 0.25);
    CHECK(r.factorization < 64.0);
  }
  // by symmetry the k = 1 split is balanced exactly
  const auto mid = separator_verify(gen.dom, separator_split(gen.dom, A, B, 1.0));
  CHECK(mid.balance == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("unusable splits are rejected") {
  const auto gen = generate("rect", {{"m", 8}, {"n", 4}});
  const auto A = named(gen, "left"), B = named(gen, "right");
  const auto s = separator_split(gen.dom, A, B, 1e6);
  CHECK_FALSE(s.usable());
  CHECK_THROWS_AS(separator_verify(gen.dom, s), DomainError);
}

TEST_CASE("separator inclusion chain") {
  const auto gen = generate("rect", {{"m", 9}, {"n", 5}});
  const auto q = gen.quadrilateral();
  const auto A = q.AB(), CD = q.CD();
  const std::vector<int> B(CD.begin(), CD.begin() + static_cast<long>(CD.size() / 2));
  const std::vector<int> C(CD.begin() + static_cast<long>(CD.size() / 2), CD.end());
  const auto BC = q.BC();
  for (std::size_t i = 1; i + 1 < BC.size(); ++i) CHECK(separator_inclusion_check(gen.dom, A, B, C, BC[i]));
}

TEST_CASE("annulus around the centre of a square") {
  const auto gen = generate("rect", {{"m", 9}, {"n", 9}});
  const int u = gen.points.at("center");
  const auto E = named(gen, "right");
  const auto ann = annulus(gen.dom, u, 0.25, E);
  CHECK(ann.doubly_connected);
  CHECK_FALSE(ann.fallback);
  CHECK(std::find(ann.disc.begin(), ann.disc.end(), u) != ann.disc.end());
  CHECK(ann.disc.size() == 5);
  CHECK(ann.C.size() == 12);
  CHECK(ann.dom.num_interior() + static_cast<int>(ann.disc.size()) == gen.dom.num_interior());
  CHECK(ann.green_min > 0.0);
  CHECK(ann.green_min <= ann.green_max);
  CHECK(ann.map_links(E).size() == E.size());

  const auto hm = hm_via_annulus(gen.dom, u, E);
  CHECK(hm.omega == doctest::Approx(0.25).epsilon(1e-10));  // symmetry of the four sides
  CHECK(hm.ratio == doctest::Approx(hm.omega / hm.Z));
  const auto le = log_hm_vs_el(gen.dom, u, E);
  CHECK(le.log_hm == doctest::Approx(std::log(5.0)).epsilon(1e-10));
  CHECK(le.EL > 0.0);
  CHECK_FALSE(le.fallback);
}

TEST_CASE("cut sandwich and slits") {
  for (const auto& gen : {generate("rect", {{"m", 9}, {"n", 9}}), generate("rect", {{"m", 15}, {"n", 11}}),
                          generate("square_sym", {{"k", 11}})}) {
    const int u = gen.points.at("center");
    const auto E = named(gen, gen.arcs.count("right") ? "right" : gen.arcs.begin()->first);
    const auto ann = annulus(gen.dom, u, 0.25, E);
    REQUIRE(ann.doubly_connected);
    for (auto mode : {SlitMode::ConjugateSign, SlitMode::LevelSet}) {
      const auto s = find_slit(ann, E, mode);
      REQUIRE(s.found);
      CHECK(s.inequality_holds);
      if (s.branch == "conjugate_sign") CHECK(s.EL_cut <= s.bound + 1e-9);
      if (s.branch == "level_path") CHECK(s.EL_cut >= s.bound - 1e-9);
      const auto cut = cut_annulus(ann, s.gamma, E);
      CHECK(cut.gamma_left.size() == s.gamma.size());
      CHECK(cut.gamma_right.size() == s.gamma.size());
      CHECK(cut.net.n == ann.dom.num_interior() + static_cast<int>(s.gamma.size()));
      const auto sw = cut_sandwich(ann, cut, E);
      CHECK(sw.holds());
      CHECK(sw.lower > 0.0);
    }
  }
}

TEST_CASE("degenerate annuli") {
  const auto plus = generate("plus", {});
  CHECK_THROWS_AS(annulus(plus.dom, plus.points.at("center"), 0.25, {0}), DomainError);
  // a centre one step from the boundary: the disc touches the outside
  const auto gen = generate("rect", {{"m", 3}, {"n", 3}});
  const auto E = named(gen, "right");
  const int u = gen.points.at("center");
  const auto ann = annulus(gen.dom, u, 0.25, E);
  if (!ann.doubly_connected) {
    CHECK(ann.fallback);
    CHECK_THROWS_AS(find_slit(ann, E, SlitMode::ConjugateSign), DomainError);
  }
}
