#include "dpt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "dpt/invariants.hpp"
#include "dpt/io.hpp"
#include "dpt/parallel.hpp"
#include "dpt/potential.hpp"
#include "dpt/rng.hpp"
#include "dpt/surgery.hpp"

namespace dpt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string params_text(const std::map<std::string, double>& p) {
  std::string s;
  for (const auto& [k, v] : p) {
    if (!s.empty()) s += ';';
    s += k + "=" + fmt_short(v);
  }
  return s;
}

// Values summarised over the corpus, in CSV column order after the marks.
const std::vector<std::string>& value_columns() {
  static const std::vector<std::string> cols{
      "Z", "X", "Y", "EL", "Z_dual", "X_dual", "Y_dual", "EL_dual", "EL_dual_network",
      "zfact", "xy_relation", "z_over_x", "z_over_y", "z_log_y", "el_product", "z_el", "log_yinv_over_el",
      "exact_dual_product", "y_product", "neg_log_z", "flux_mismatch", "max_residual",
      "sep_factorization_min", "sep_factorization_max", "sep_balance_min", "sep_balance_max",
      "omega", "Z_annulus", "hm_annulus", "log_hm", "EL_annulus", "log_hm_el", "green_min", "green_max",
      "sandwich_lower", "sandwich_middle", "sandwich_upper", "slit_EL", "slit_EL_cut"};
  return cols;
}

// Columns that are ratios of the double-sided estimates (summarised with a geometric mean).
const std::vector<std::string>& ratio_columns() {
  static const std::vector<std::string> cols{
      "zfact", "xy_relation", "z_over_x", "z_over_y", "z_log_y", "el_product", "z_el", "log_yinv_over_el",
      "sep_factorization_min", "sep_factorization_max", "sep_balance_min", "sep_balance_max", "hm_annulus",
      "log_hm_el"};
  return cols;
}

struct Checker {
  const CorpusSpec& spec;
  ConfigRecord& rec;

  const Bracket& bracket(const std::string& name) const {
    auto it = spec.brackets.find(name);
    if (it == spec.brackets.end()) throw SpecError("no bracket named '" + name + "'");
    return it->second;
  }
  void add(const std::string& check, double value, bool pass, std::string detail = {}, bool applicable = true) {
    CheckResult c;
    c.check = check;
    auto it = CorpusSpec::statements().find(check);
    c.statement = it == CorpusSpec::statements().end() ? std::string() : it->second;
    c.detail = std::move(detail);
    c.value = value;
    c.applicable = applicable;
    c.pass = !applicable || pass;
    rec.checks.push_back(std::move(c));
  }
  void in(const std::string& check, double value, std::string detail = {}) {
    add(check, value, std::isfinite(value) && bracket(check).contains(value), std::move(detail));
  }
  void skip(const std::string& check, double value, std::string detail) {
    add(check, value, true, std::move(detail), false);
  }
};

std::vector<int> arc_members(const Generated& gen, const std::string& name) {
  auto it = gen.arcs.find(name);
  if (it == gen.arcs.end()) throw SpecError("generator has no arc named '" + name + "'");
  return arc(gen.dom, it->second.first, it->second.second).members;
}

int named_point(const Generated& gen, const std::string& name) {
  auto it = gen.points.find(name);
  if (it == gen.points.end()) throw SpecError("generator has no point named '" + name + "'");
  return it->second;
}

void quad_checks(const CorpusSpec& spec, Checker& ck, const Quadrilateral& q) {
  ConfigRecord& rec = ck.rec;
  const InvariantReport r = invariant_report(q);
  auto& v = rec.values;
  v["Z"] = r.Z;
  v["X"] = r.X;
  v["Y"] = r.Y;
  v["EL"] = r.EL;
  v["Z_dual"] = r.Z_dual;
  v["X_dual"] = r.X_dual;
  v["Y_dual"] = r.Y_dual;
  v["EL_dual"] = r.EL_dual;
  v["EL_dual_network"] = r.EL_dual_network;
  v["flux_mismatch"] = r.flux_mismatch;
  v["max_residual"] = r.max_residual;
  for (const auto& [k, x] : r.ratios) v[k] = x;
  rec.flags = r.flags;

  ck.add("cross_ratio_order", r.X, r.X <= 1.0 + 1e-12 && r.X <= r.Y * (1.0 + 1e-12));
  ck.add("y_reciprocity", r.ratios.at("y_product"), std::abs(r.ratios.at("y_product") - 1.0) <= 1e-10);
  ck.add("exact_duality", r.ratios.at("exact_dual_product"),
         std::abs(r.ratios.at("exact_dual_product") - 1.0) <= 1e-8);
  ck.add("flux_balance", r.flux_mismatch, r.flux_mismatch <= 1e-9);

  {
    // R = Z(x;AB)/Z(x;CD) is nonincreasing along (bc) and nondecreasing along (da)
    const PotentialContext ctx(*q.dom);
    const auto zA = ctx.z_field(q.AB()), zB = ctx.z_field(q.CD());
    auto R = [&](int x) { return zA[q.dom->local[q.dom->bd_int(x)]] / zB[q.dom->local[q.dom->bd_int(x)]]; };
    double worst = 0.0;
    for (const auto& [side, sign] : {std::pair{q.BC(), 1.0}, std::pair{q.DA(), -1.0}})
      for (std::size_t i = 1; i + 2 < side.size(); ++i) {
        const double r0 = R(side[i]), r1 = R(side[i + 1]);
        worst = std::max(worst, sign * (r1 - r0) / std::max(r0, r1));
      }
    ck.add("ratio_monotone", worst, worst <= 1e-12, "largest relative increase");
  }
  ck.in("three_point_factorization", r.ratios.at("zfact"));
  ck.in("cross_ratio_relation", r.ratios.at("xy_relation"));
  const Bracket& sq = ck.bracket("z_squeeze");
  ck.add("z_squeeze", r.ratios.at("z_over_x"), r.ratios.at("z_over_x") >= sq.lo, "Z/X lower");
  ck.add("z_squeeze", r.ratios.at("z_over_y"), r.ratios.at("z_over_y") <= sq.hi, "Z/Y upper");
  if (r.EL_dual <= spec.z_log_y_el_cap)
    ck.in("z_log_y", r.ratios.at("z_log_y"));
  else
    ck.skip("z_log_y", r.ratios.at("z_log_y"), "EL(BC;DA) above cap");
  ck.in("el_duality", r.ratios.at("el_product"));
  ck.in("z_el_upper", r.ratios.at("z_el"));
  if (r.EL <= spec.z_el_two_sided_cap)
    ck.in("z_el_two_sided", r.ratios.at("z_el"));
  else
    ck.skip("z_el_two_sided", r.ratios.at("z_el"), "EL above cap");
  if (r.EL >= spec.el_gate) {
    ck.in("large_el_regime", r.ratios.at("log_yinv_over_el"));
  } else {
    ck.skip("large_el_regime", r.ratios.at("log_yinv_over_el"), "EL below gate");
  }
}

void separator_checks(const CorpusSpec& spec, Checker& ck, const Quadrilateral& q) {
  const DiscreteDomain& dom = *q.dom;
  const auto A = q.AB(), B = q.CD();
  const PotentialContext ctx(dom);
  const double Z = ctx.Z_sets(A, ctx.z_field(B));
  double fmin = std::numeric_limits<double>::infinity(), fmax = -fmin, bmin = fmin, bmax = -fmin;
  for (double k : spec.ks) {
    const std::string tag = "k=" + fmt_short(k);
    const bool hyp = Z <= spec.K && k >= 1.0 / spec.K && k <= spec.K;
    const SeparatorSplit split = separator_split(dom, ctx, A, B, k);
    if (!split.usable()) {
      ck.skip("separator_factorization", 0.0, tag + " split unusable");
      ck.skip("separator_balance", 0.0, tag + " split unusable");
      continue;
    }
    const SeparatorRatios sr = separator_verify(dom, split);
    fmin = std::min(fmin, sr.factorization);
    fmax = std::max(fmax, sr.factorization);
    bmin = std::min(bmin, sr.balance);
    bmax = std::max(bmax, sr.balance);
    if (hyp) {
      ck.in("separator_factorization", sr.factorization, tag);
      ck.in("separator_balance", sr.balance, tag);
    } else {
      ck.skip("separator_factorization", sr.factorization, tag + " outside hypotheses");
      ck.skip("separator_balance", sr.balance, tag + " outside hypotheses");
    }
  }
  if (fmax >= fmin) {
    ck.rec.values["sep_factorization_min"] = fmin;
    ck.rec.values["sep_factorization_max"] = fmax;
    ck.rec.values["sep_balance_min"] = bmin;
    ck.rec.values["sep_balance_max"] = bmax;
  }
}

// A = [ab], B ∪ C = [cd] split in the middle; every x strictly inside (bc) and (da).
void inclusion_checks(Checker& ck, const Quadrilateral& q) {
  const DiscreteDomain& dom = *q.dom;
  const auto A = q.AB(), CD = q.CD();
  if (CD.size() < 2) {
    ck.skip("separator_inclusion", 0.0, "arc CD too short to split");
    return;
  }
  const std::size_t h = CD.size() / 2;
  const std::vector<int> B(CD.begin(), CD.begin() + static_cast<long>(h)), C(CD.begin() + static_cast<long>(h), CD.end());
  std::vector<int> xs;
  for (const auto& side : {q.BC(), q.DA()})
    for (std::size_t i = 1; i + 1 < side.size(); ++i) xs.push_back(side[i]);
  if (xs.empty()) {
    ck.skip("separator_inclusion", 0.0, "no free boundary edge");
    return;
  }
  int bad = 0;
  for (int x : xs)
    if (!separator_inclusion_check(dom, A, B, C, x)) ++bad;
  ck.add("separator_inclusion", bad, bad == 0, std::to_string(xs.size()) + " reference edges");
}

void annulus_checks(const CorpusSpec& spec, Checker& ck, const Generated& gen, const ConfigSpec& cfg) {
  const int u = named_point(gen, cfg.annulus_point);
  const auto E = arc_members(gen, cfg.annulus_arc);
  const AnnulusDomain ann = annulus(gen.dom, u, spec.rho0, E);
  auto& v = ck.rec.values;
  v["green_min"] = ann.green_min;
  v["green_max"] = ann.green_max;
  const HmAnnulus hm = hm_via_annulus(gen.dom, u, E, spec.rho0);
  v["omega"] = hm.omega;
  v["Z_annulus"] = hm.Z;
  v["hm_annulus"] = hm.ratio;
  ck.in("hm_annulus", hm.ratio);
  const LogHmEl le = log_hm_vs_el(gen.dom, u, E, spec.rho0);
  v["log_hm"] = le.log_hm;
  v["EL_annulus"] = le.EL;
  v["log_hm_el"] = le.ratio;
  ck.in("log_hm_el", le.ratio, le.fallback ? "fallback component" : "annulus");
  if (!spec.slits) return;
  if (!ann.doubly_connected) {
    ck.skip("cut_sandwich", 0.0, "annulus not doubly connected");
    ck.skip("slit_extremal_length", 0.0, "annulus not doubly connected");
    return;
  }
  const SlitResult s = find_slit(ann, E, SlitMode::ConjugateSign);
  if (!s.found) {
    ck.skip("cut_sandwich", 0.0, "no slit");
    ck.skip("slit_extremal_length", 0.0, "no slit");
    return;
  }
  v["slit_EL"] = s.EL;
  v["slit_EL_cut"] = s.EL_cut;
  ck.add("slit_extremal_length", s.EL_cut / s.EL, s.EL_cut <= 2.0 * s.EL + 1e-9, "EL_cut/EL");
  const CutDomain cut = cut_annulus(ann, s.gamma, E);
  const Sandwich sw = cut_sandwich(ann, cut, E);
  v["sandwich_lower"] = sw.lower;
  v["sandwich_middle"] = sw.middle;
  v["sandwich_upper"] = sw.upper;
  ck.add("cut_sandwich", sw.middle, sw.holds(1e-10));
}

void summarise(RatioReport& rep) {
  for (const auto& col : ratio_columns()) {
    RatioSummary s;
    double logsum = 0.0;
    for (const auto& r : rep.records) {
      auto it = r.values.find(col);
      if (!r.ok || it == r.values.end() || !std::isfinite(it->second) || it->second <= 0.0) continue;
      const double x = it->second;
      s.min = s.count ? std::min(s.min, x) : x;
      s.max = s.count ? std::max(s.max, x) : x;
      logsum += std::log(x);
      ++s.count;
    }
    if (s.count) {
      s.geomean = std::exp(logsum / s.count);
      rep.summary[col] = s;
    }
  }
}

nlohmann::json bracket_json(const Bracket& b) {
  nlohmann::json j = {b.lo, b.hi};
  if (b.lo_open) return {{"lo", b.lo}, {"hi", b.hi}, {"lo_open", true}};
  return j;
}

Bracket bracket_from_json(const std::string& name, const nlohmann::json& j) {
  Bracket b;
  if (j.is_array() && j.size() == 2) {
    b.lo = j[0].get<double>();
    b.hi = j[1].get<double>();
  } else if (j.is_object()) {
    b.lo = j.at("lo").get<double>();
    b.hi = j.at("hi").get<double>();
    b.lo_open = j.value("lo_open", false);
  } else {
    throw SpecError("bracket '" + name + "' must be [lo, hi] or {lo, hi, lo_open}");
  }
  if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo < 0.0 || (b.lo == 0.0 && !b.lo_open) ||
      b.hi < b.lo)
    throw SpecError("bracket '" + name + "' needs finite bounds with 0 < lo <= hi");
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

int ConfigRecord::failures() const {
  int n = ok ? 0 : 1;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

int RatioReport::failures() const {
  int n = static_cast<int>(missing_coverage.size());
  for (const auto& r : records) n += r.failures();
  for (const auto& f : fits) n += f.pass ? 0 : 1;
  return n;
}

const std::map<std::string, std::string>& CorpusSpec::statements() {
  static const std::map<std::string, std::string> s{
      {"three_point_factorization", "three-point factorization Z(a;[bc]) ~ sqrt(Z(a;b)Z(a;c)/Z(b;c))"},
      {"cross_ratio_relation", "X^-1 ~ 1 + Y^-1"},
      {"z_squeeze", "X <~ Z([ab];[cd]) <~ Y"},
      {"z_log_y", "Z([ab];[cd]) ~ log(1+Y)"},
      {"el_duality", "EL([ab];[cd]) EL([bc];[da]) ~ 1"},
      {"z_el_upper", "Z <~ 1/EL"},
      {"z_el_two_sided", "Z ~ 1/EL when EL is bounded"},
      {"large_el_regime", "log(1+1/Y) ~ EL when EL is bounded below"},
      {"separator_factorization", "Z(A;B) ~ Z_A(A;L_k) Z_B(L_k;B)"},
      {"separator_balance", "Z_A(A;L_k) / Z_B(L_k;B) ~ k"},
      {"separator_inclusion", "monotone inclusion of separator domains (exact)"},
      {"hm_annulus", "omega(u;[ab]) ~ Z over the annulus from the inner boundary to [ab]"},
      {"log_hm_el", "log(1+1/omega) ~ EL(annulus; inner boundary, [ab])"},
      {"cut_sandwich", "Z_cut(C) <= Z_annulus(C) <= Z_cut(slit sides and C) (exact)"},
      {"slit_extremal_length", "EL after a conjugate-sign slit <= 2 EL (exact)"},
      {"cross_ratio_order", "X <= 1 and X <= Y (exact)"},
      {"ratio_monotone", "R(x) = Z(x;AB)/Z(x;CD) monotone along the free arcs (exact)"},
      {"y_reciprocity", "Y(a,b;c,d) Y(b,c;d,a) = 1"},
      {"exact_duality", "EL times dual-network EL = 1"},
      {"flux_balance", "current agrees at both electrodes"},
      {"exponential_fit", "-log Z affine in EL with positive slope"}};
  return s;
}

std::map<std::string, Bracket> CorpusSpec::default_brackets() {
  return {{"three_point_factorization", {1.0 / 64, 64}},
          {"cross_ratio_relation", {1.0 / 8, 8}},
          {"z_squeeze", {1.0 / 64, 64}},
          // lower ends carry the factor 1/16 = 1/(mu_a mu_b) of the lattice normalisation of Z
          {"z_log_y", {1.0 / 512, 32}},
          {"el_duality", {1.0 / 16, 16}},
          {"z_el_upper", {0.0, 8, true}},
          {"z_el_two_sided", {1.0 / 128, 8}},
          {"large_el_regime", {1.0 / 16, 16}},
          {"separator_factorization", {1.0 / 32, 32}},
          {"separator_balance", {1.0 / 32, 32}},
          {"hm_annulus", {1.0 / 64, 64}},
          {"log_hm_el", {1.0 / 16, 16}}};
}

CorpusSpec CorpusSpec::default_spec() {
  CorpusSpec s;
  s.brackets = default_brackets();
  auto add = [&](std::string id, std::string family, std::map<std::string, double> params, std::uint64_t seed = 0,
                 std::string point = {}, std::string arc = {}, std::string group = {}) {
    ConfigSpec c;
    c.id = std::move(id);
    c.gen = GenSpec{std::move(family), std::move(params), seed};
    c.annulus_point = std::move(point);
    c.annulus_arc = std::move(arc);
    c.group = std::move(group);
    s.configs.push_back(std::move(c));
  };
  add("plus", "plus", {});
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {3, 2}, {6, 3}, {8, 4}, {4, 8}, {12, 6}, {20, 5}, {5, 20},
                                                       {9, 9}, {15, 11}, {30, 30}, {49, 50}, {60, 40}, {99, 99}})
    add("rect_" + std::to_string(m) + "x" + std::to_string(n), "rect", {{"m", m}, {"n", n}}, 0,
        m >= 5 && n >= 5 ? "center" : "", m >= 5 && n >= 5 ? "right" : "");
  for (int m : {2, 4, 6, 8, 10, 12})
    add("rect_m2_" + std::to_string(m), "rect", {{"m", m}, {"n", 2}}, 0, "", "", "rect_m2");
  for (int k : {3, 5, 9, 15, 25, 41}) add("square_sym_" + std::to_string(k), "square_sym", {{"k", k}}, 0,
                                          k >= 5 ? "center" : "", k >= 5 ? "right" : "");
  for (int l : {5, 10, 20, 40})
    add("fjord_1_" + std::to_string(l), "fjord", {{"width", 1}, {"length", l}}, 0, "base_center", "tip", "fjord_1");
  for (int l : {5, 10, 20, 40})
    add("fjord_3_" + std::to_string(l), "fjord", {{"width", 3}, {"length", l}, {"base_w", 10}, {"base_h", 10}}, 0,
        "base_center", "tip", "fjord_3");
  add("fjord_3_mouth1", "fjord", {{"width", 3}, {"length", 12}, {"mouth", 1}}, 0, "base_center", "tip");
  for (int w : {1, 2, 4})
    for (int box : {8, 16})
      add("bottleneck_" + std::to_string(w) + "_" + std::to_string(box), "bottleneck", {{"w", w}, {"box", box}}, 0,
          "left_center", "right");
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const double amp = seed % 2 ? 0.15 : 0.3, jitter = seed <= 4 ? 0.0 : 0.5;
    const int m = 8 + 4 * static_cast<int>(seed % 3), n = 6 + 3 * static_cast<int>(seed % 4);
    add("perturbed_" + std::to_string(seed), "perturbed_grid",
        {{"m", m}, {"n", n}, {"amplitude", amp}, {"weight_jitter", jitter}}, seed, "center", "right");
  }
  for (int turns : {1, 2, 3})
    for (int width : {1, 2})
      add("spiral_" + std::to_string(turns) + "_" + std::to_string(width), "spiral",
          {{"turns", turns}, {"width", width}}, 0, "outer", "inner");
  s.fits = {{"fjord_1", 0.1}, {"fjord_3", 0.1}, {"rect_m2", 0.1}};
  return s;
}

// ---------------------------------------------------------------------------------------------

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw SpecError("fit needs paired values");
  FitResult f;
  f.points = static_cast<int>(x.size());
  if (f.points < 4) throw SpecError("insufficient points for a fit (need at least 4)");
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (!(*hi - *lo > 1e-9 * std::max(1.0, std::abs(*hi)))) throw SpecError("insufficient spread in the fit abscissa");
  double mx = 0, my = 0;
  for (int i = 0; i < f.points; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= f.points;
  my /= f.points;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < f.points; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rr = 0;
  for (int i = 0; i < f.points; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    rr += r * r;
  }
  f.residual = syy > 0 ? std::sqrt(rr / syy) : 0.0;
  return f;
}

FitResult fit_exponential(const RatioReport& report, const std::string& group, double residual_cap) {
  std::vector<double> x, y;
  for (const auto& r : report.records) {
    if (!r.ok || r.spec.group != group) continue;
    x.push_back(r.values.at("EL"));
    y.push_back(-std::log(r.values.at("Z")));
  }
  FitResult f;
  try {
    f = fit_line(x, y);
    f.pass = f.slope > 0.0 && f.residual < residual_cap;
    if (!f.pass)
      f.error = f.slope <= 0.0 ? "non-positive slope" : "relative residual " + fmt_short(f.residual) + " above cap";
  } catch (const SpecError& e) {
    f = FitResult{};
    f.points = static_cast<int>(x.size());
    f.error = e.what();
  }
  f.group = group;
  return f;
}

// ---------------------------------------------------------------------------------------------

ConfigRecord run_config(const CorpusSpec& spec, const ConfigSpec& cfg) {
  const auto t0 = Clock::now();
  ConfigRecord rec;
  rec.id = cfg.id;
  rec.spec = cfg;
  Checker ck{spec, rec};
  try {
    const Generated gen = generate(cfg.gen);
    rec.num_vertices = gen.dom.g().num_vertices();
    rec.num_interior = gen.dom.num_interior();
    rec.num_boundary = gen.dom.num_boundary();
    const auto m = cfg.quad.value_or(gen.quad);
    const Quadrilateral q = make_quad(gen.dom, m[0], m[1], m[2], m[3]);
    rec.marks = m;
    quad_checks(spec, ck, q);
    if (cfg.separators) separator_checks(spec, ck, q);
    if (cfg.inclusions) inclusion_checks(ck, q);
    if (!cfg.annulus_point.empty()) annulus_checks(spec, ck, gen, cfg);
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  rec.seconds = seconds_since(t0);
  return rec;
}

RatioReport run_corpus(const CorpusSpec& spec) {
  const auto t0 = Clock::now();
  {
    std::set<std::string> ids;
    for (const auto& c : spec.configs)
      if (!ids.insert(c.id).second) throw SpecError("duplicate configuration id '" + c.id + "'");
  }
  RatioReport rep;
  rep.records.resize(spec.configs.size());
  parallel_for(static_cast<long>(spec.configs.size()),
               [&](long i) { rep.records[i] = run_config(spec, spec.configs[i]); });
  for (const auto& f : spec.fits) rep.fits.push_back(fit_exponential(rep, f.group, f.residual_cap));
  summarise(rep);
  std::set<std::string> seen;
  for (const auto& r : rep.records)
    for (const auto& c : r.checks)
      if (c.applicable) seen.insert(c.check);
  for (const auto& [name, _] : CorpusSpec::statements())
    if (name != "exponential_fit" && !seen.count(name)) rep.missing_coverage.push_back(name);
  if (spec.fits.empty()) rep.missing_coverage.push_back("exponential_fit");
  rep.seconds = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------------------------

std::vector<std::string> csv_columns() {
  std::vector<std::string> cols{"id", "family", "params", "seed", "ok", "num_vertices", "num_interior",
                                "num_boundary", "a", "b", "c", "d"};
  for (const auto& c : value_columns()) cols.push_back(c);
  for (const auto& c : {"checks", "failures", "error"}) cols.push_back(c);
  return cols;
}

std::string report_csv(const RatioReport& report) {
  std::ostringstream out;
  const auto cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  auto quoted = [](std::string s) {
    std::string o = "\"";
    for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return o + "\"";
  };
  for (const auto& r : report.records) {
    out << r.id << ',' << r.spec.gen.family << ',' << quoted(params_text(r.spec.gen.params)) << ','
        << r.spec.gen.seed << ',' << (r.ok ? 1 : 0) << ',' << r.num_vertices << ',' << r.num_interior << ','
        << r.num_boundary;
    for (int m : r.marks) out << ',' << m;
    for (const auto& c : value_columns()) {
      out << ',';
      auto it = r.values.find(c);
      if (it != r.values.end()) out << fmt(it->second);
    }
    out << ',' << r.checks.size() << ',' << r.failures() << ',' << quoted(r.error) << '\n';
  }
  return out.str();
}

nlohmann::json config_to_json(const ConfigSpec& c) {
  nlohmann::json j = {{"id", c.id}, {"family", c.gen.family}, {"params", c.gen.params}, {"seed", c.gen.seed}};
  if (c.quad) j["quad"] = *c.quad;
  if (!c.group.empty()) j["group"] = c.group;
  if (!c.separators) j["separators"] = false;
  if (!c.inclusions) j["inclusions"] = false;
  if (!c.annulus_point.empty()) j["annulus"] = {{"point", c.annulus_point}, {"arc", c.annulus_arc}};
  return j;
}

ConfigSpec config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("configuration must be an object");
  ConfigSpec c;
  try {
    c.gen = genspec_from_json(j);
  } catch (const IoError& e) {
    throw SpecError(e.what());
  }
  c.id = j.value("id", std::string());
  if (c.id.empty()) c.id = c.gen.family + "_" + params_text(c.gen.params);
  if (j.contains("quad")) {
    const auto& qj = j.at("quad");
    if (!qj.is_array() || qj.size() != 4) throw SpecError("quad must list four boundary indices");
    c.quad = std::array<int, 4>{qj[0].get<int>(), qj[1].get<int>(), qj[2].get<int>(), qj[3].get<int>()};
  }
  c.group = j.value("group", std::string());
  c.separators = j.value("separators", true);
  c.inclusions = j.value("inclusions", true);
  if (j.contains("annulus")) {
    const auto& a = j.at("annulus");
    c.annulus_point = a.value("point", std::string());
    c.annulus_arc = a.value("arc", std::string());
    if (c.annulus_point.empty() || c.annulus_arc.empty()) throw SpecError("annulus needs 'point' and 'arc' names");
  }
  return c;
}

nlohmann::json spec_to_json(const CorpusSpec& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  j["K"] = s.K;
  j["ks"] = s.ks;
  j["el_gate"] = s.el_gate;
  j["z_log_y_el_cap"] = s.z_log_y_el_cap;
  j["z_el_two_sided_cap"] = s.z_el_two_sided_cap;
  j["rho0"] = s.rho0;
  j["slits"] = s.slits;
  nlohmann::json b = nlohmann::json::object();
  for (const auto& [k, v] : s.brackets) b[k] = bracket_json(v);
  j["brackets"] = b;
  j["configs"] = nlohmann::json::array();
  for (const auto& c : s.configs) j["configs"].push_back(config_to_json(c));
  j["fits"] = nlohmann::json::array();
  for (const auto& f : s.fits) j["fits"].push_back({{"group", f.group}, {"residual_cap", f.residual_cap}});
  return j;
}

CorpusSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  try {
    CorpusSpec s;
    const CorpusSpec d;
    s.seed = j.value("seed", d.seed);
    s.K = j.value("K", d.K);
    s.ks = j.value("ks", d.ks);
    s.el_gate = j.value("el_gate", d.el_gate);
    s.z_log_y_el_cap = j.value("z_log_y_el_cap", d.z_log_y_el_cap);
    s.z_el_two_sided_cap = j.value("z_el_two_sided_cap", d.z_el_two_sided_cap);
    s.rho0 = j.value("rho0", d.rho0);
    s.slits = j.value("slits", d.slits);
    if (!(s.K >= 1.0) || !(s.rho0 > 0.0 && s.rho0 < 1.0)) throw SpecError("spec needs K >= 1 and 0 < rho0 < 1");
    for (double k : s.ks)
      if (!(k > 0.0) || !std::isfinite(k)) throw SpecError("separator levels must be positive");
    s.brackets = CorpusSpec::default_brackets();
    if (j.contains("brackets"))
      for (const auto& [k, v] : j.at("brackets").items()) {
        if (!s.brackets.count(k)) throw SpecError("unknown bracket '" + k + "'");
        s.brackets[k] = bracket_from_json(k, v);
      }
    if (j.value("corpus", std::string()) == "default") s.configs = CorpusSpec::default_spec().configs;
    if (j.contains("configs")) {
      // configurations without a seed draw one from the global seed
      std::uint64_t idx = 0;
      for (const auto& c : j.at("configs")) {
        ConfigSpec cfg = config_from_json(c);
        if (!c.contains("seed")) cfg.gen.seed = splitmix64(s.seed ^ splitmix64(idx)) % 1000003;
        s.configs.push_back(std::move(cfg));
        ++idx;
      }
    }
    if (j.contains("fits")) {
      for (const auto& f : j.at("fits"))
        s.fits.push_back({f.at("group").get<std::string>(), f.value("residual_cap", 0.1)});
    } else if (j.value("corpus", std::string()) == "default") {
      s.fits = CorpusSpec::default_spec().fits;
    }
    if (s.configs.empty()) throw SpecError("spec has no configurations");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed spec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------------------------

nlohmann::json report_body_json(const RatioReport& report) {
  using nlohmann::json;
  json recs = json::array();
  for (const auto& r : report.records) {
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"check", c.check}, {"statement", c.statement}, {"detail", c.detail}, {"value", c.value},
                        {"applicable", c.applicable}, {"pass", c.pass}});
    json j = {{"id", r.id}, {"ok", r.ok}, {"num_vertices", r.num_vertices}, {"num_interior", r.num_interior},
              {"num_boundary", r.num_boundary}, {"marks", r.marks}, {"values", r.values}, {"flags", r.flags},
              {"checks", checks}, {"failures", r.failures()}};
    if (!r.ok) j["error"] = r.error;
    // failing records carry their full configuration for replay
    if (r.failures()) j["config"] = config_to_json(r.spec);
    recs.push_back(j);
  }
  json fits = json::array();
  for (const auto& f : report.fits) {
    json j = {{"group", f.group}, {"points", f.points}, {"slope", f.slope}, {"intercept", f.intercept},
              {"residual", f.residual}, {"pass", f.pass}};
    if (!f.error.empty()) j["error"] = f.error;
    fits.push_back(j);
  }
  json summary = json::object();
  for (const auto& [k, s] : report.summary)
    summary[k] = {{"min", s.min}, {"max", s.max}, {"geomean", s.geomean}, {"count", s.count}};
  return {{"records", recs}, {"fits", fits}, {"summary", summary}, {"missing_coverage", report.missing_coverage},
          {"failures", report.failures()}, {"passed", report.passed()}};
}

nlohmann::json report_json(const RatioReport& report) {
  nlohmann::json j = report_body_json(report);
  nlohmann::json t = nlohmann::json::object();
  for (const auto& r : report.records) t[r.id] = r.seconds;
  j["timings"] = {{"total_seconds", report.seconds}, {"per_config_seconds", t}};
  return j;
}

std::string report_summary(const RatioReport& report) {
  std::ostringstream out;
  int checks = 0, applicable = 0;
  for (const auto& r : report.records)
    for (const auto& c : r.checks) {
      ++checks;
      applicable += c.applicable ? 1 : 0;
    }
  out << "configurations: " << report.records.size() << ", checks: " << applicable << " evaluated (" << checks
      << " total), failures: " << report.failures() << ", time: " << fmt_short(report.seconds) << " s\n";
  for (const auto& [k, s] : report.summary)
    out << "  " << k << ": min " << fmt_short(s.min) << ", max " << fmt_short(s.max) << ", geomean "
        << fmt_short(s.geomean) << " (" << s.count << ")\n";
  for (const auto& f : report.fits)
    out << "  fit " << f.group << ": slope " << fmt_short(f.slope) << ", residual " << fmt_short(f.residual)
        << (f.pass ? " ok" : " FAILED " + f.error) << '\n';
  for (const auto& r : report.records) {
    if (!r.ok) out << "  ERROR " << r.id << ": " << r.error << '\n';
    for (const auto& c : r.checks)
      if (!c.pass)
        out << "  FAIL " << r.id << " " << c.check << (c.detail.empty() ? "" : " [" + c.detail + "]") << ": observed "
            << fmt_short(c.value) << '\n';
  }
  for (const auto& m : report.missing_coverage) out << "  NOT COVERED " << m << '\n';
  return out.str();
}

}  // namespace dpt
