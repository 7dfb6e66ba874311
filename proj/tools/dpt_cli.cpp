// Command-line front end: validate, gen, solve, invariants, separator, annulus-el, mc, verify.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpt/generators.hpp"
#include "dpt/harness.hpp"
#include "dpt/invariants.hpp"
#include "dpt/io.hpp"
#include "dpt/montecarlo.hpp"
#include "dpt/surgery.hpp"

using namespace dpt;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum Exit { kOk = 0, kBracket = 1, kUsage = 2 };

struct Output {
  std::string path;
  bool json_stdout = false;
  void add(CLI::App* app) {
    app->add_option("--out", path, "Write the JSON result to this file");
    app->add_flag("--json", json_stdout, "Print the JSON result to standard output instead of the summary");
  }
  void emit(const json& j, const std::string& summary) const {
    if (!path.empty()) write_json_file(path, j);
    if (json_stdout)
      std::cout << j.dump(2) << '\n';
    else
      std::cout << summary;
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("'" + text + "' is not a comma-separated list of integers");
    }
    if (used != item.size()) throw UsageError("'" + text + "' is not a comma-separated list of integers");
    out.push_back(v);
  }
  return out;
}

Generated load(const std::string& path) {
  if (path.empty()) throw UsageError("--domain is required");
  return load_domain_file(path);
}

// "i,j" (ccw run of boundary indices) or an arc name stored in the domain file.
std::vector<int> resolve_arc(const Generated& gen, const std::string& text) {
  if (auto it = gen.arcs.find(text); it != gen.arcs.end())
    return arc(gen.dom, it->second.first, it->second.second).members;
  const auto v = parse_ints(text);
  if (v.size() != 2 && v.size() != 1) throw UsageError("arc '" + text + "' must be 'i,j' or a named arc");
  for (int i : v)
    if (i < 0 || i >= gen.dom.num_boundary()) throw UsageError("boundary index " + std::to_string(i) + " out of range");
  return arc(gen.dom, v.front(), v.back()).members;
}

// Vertex id or a point name stored in the domain file.
int resolve_point(const Generated& gen, const std::string& text) {
  if (auto it = gen.points.find(text); it != gen.points.end()) return it->second;
  const auto v = parse_ints(text);
  if (v.size() != 1) throw UsageError("vertex '" + text + "' must be an id or a named point");
  if (!gen.dom.is_interior(v[0])) throw UsageError("vertex " + text + " is not interior");
  return v[0];
}

Quadrilateral resolve_quad(const Generated& gen, const std::string& text) {
  std::array<int, 4> m = gen.quad;
  if (!text.empty()) {
    const auto v = parse_ints(text);
    if (v.size() != 4) throw UsageError("--quad needs four boundary indices a,b,c,d");
    m = {v[0], v[1], v[2], v[3]};
  }
  if (m[0] < 0) throw UsageError("domain has no marks; pass --quad a,b,c,d");
  return make_quad(gen.dom, m[0], m[1], m[2], m[3]);
}

void require_simply_connected(const Generated& gen) {
  if (!gen.dom.simply_connected)
    throw UsageError("domain is not simply connected; quadrilateral invariants need a simply connected domain");
}

json estimate_json(const EmpiricalEstimate& e) {
  return {{"estimate", e.estimate}, {"stderr", e.std_error}, {"n", e.n}, {"seed", e.seed}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete potential theory toolbox"};
  app.require_subcommand(1);
  app.fallthrough(false);

  // validate
  auto* v_cmd = app.add_subcommand("validate", "Check a graph or domain file and report structural constants");
  std::string v_domain, v_graph;
  Output v_out;
  v_cmd->add_option("--domain", v_domain, "Domain JSON file");
  v_cmd->add_option("--graph", v_graph, "Graph JSON file");
  v_out.add(v_cmd);

  // gen
  auto* g_cmd = app.add_subcommand("gen", "Generate a domain from a family and parameters");
  std::string g_family, g_params, g_spec;
  std::uint64_t g_seed = 0;
  Output g_out;
  g_cmd->add_option("--family", g_family,
                    "plus | rect | square_sym | fjord | bottleneck | perturbed_grid | spiral");
  g_cmd->add_option("--params", g_params, "Comma-separated key=value list, e.g. m=3,n=2");
  g_cmd->add_option("--seed", g_seed, "Generator seed");
  g_cmd->add_option("--spec", g_spec, "Generator spec JSON {family, params, seed}");
  g_out.add(g_cmd);

  // solve
  auto* s_cmd = app.add_subcommand("solve", "Harmonic measure, Green's function, partition function or ratio R");
  std::string s_domain, s_op, s_u, s_arc, s_A, s_B, s_x, s_y;
  Output s_out;
  s_cmd->add_option("--domain", s_domain, "Domain JSON file")->required();
  s_cmd->add_option("--op", s_op, "hm | green | Z | R")->required()->check(CLI::IsMember({"hm", "green", "Z", "R"}));
  s_cmd->add_option("--u", s_u, "Interior vertex id or named point");
  s_cmd->add_option("--arc", s_arc, "Boundary arc i,j or name (hm)");
  s_cmd->add_option("--A", s_A, "First boundary arc i,j or name (Z, R)");
  s_cmd->add_option("--B", s_B, "Second boundary arc i,j or name (Z, R)");
  s_cmd->add_option("--x", s_x, "Z endpoint vertex:ID or edge:INDEX; boundary edge for R");
  s_cmd->add_option("--y", s_y, "Z endpoint: vertex:ID or edge:INDEX");
  s_out.add(s_cmd);

  // invariants
  auto* i_cmd = app.add_subcommand("invariants", "Cross-ratios, extremal lengths and ratio report of a quadrilateral");
  std::string i_domain, i_quad;
  Output i_out;
  i_cmd->add_option("--domain", i_domain, "Domain JSON file")->required();
  i_cmd->add_option("--quad", i_quad, "Marks a,b,c,d (boundary indices); defaults to the file's marks");
  i_out.add(i_cmd);

  // separator
  auto* p_cmd = app.add_subcommand("separator", "Separator split at level k and its ratios");
  std::string p_domain, p_A, p_B;
  double p_k = 1.0;
  Output p_out;
  p_cmd->add_option("--domain", p_domain, "Domain JSON file")->required();
  p_cmd->add_option("--A", p_A, "Arc A as i,j or name")->required();
  p_cmd->add_option("--B", p_B, "Arc B as i,j or name")->required();
  p_cmd->add_option("--k", p_k, "Level k > 0")->check(CLI::PositiveNumber);
  p_out.add(p_cmd);

  // annulus-el
  auto* a_cmd = app.add_subcommand("annulus-el", "Harmonic measure against annulus extremal length around u");
  std::string a_domain, a_u, a_arc;
  double a_rho0 = 0.25;
  Output a_out;
  a_cmd->add_option("--domain", a_domain, "Domain JSON file")->required();
  a_cmd->add_option("--u", a_u, "Centre vertex id or named point")->required();
  a_cmd->add_option("--arc", a_arc, "Target arc i,j or name")->required();
  a_cmd->add_option("--rho0", a_rho0, "Inner radius factor in (0,1)")->check(CLI::Range(0.0, 1.0));
  a_out.add(a_cmd);

  // mc
  auto* m_cmd = app.add_subcommand("mc", "Monte Carlo estimates with standard errors");
  std::string m_domain, m_op, m_u, m_arc, m_quad, m_meeting = "vertex";
  long m_n = 100000;
  std::uint64_t m_seed = 7;
  int m_a = -1, m_b = -1;
  Output m_out;
  m_cmd->add_option("--domain", m_domain, "Domain JSON file")->required();
  m_cmd->add_option("--op", m_op, "hm | xsq | ball")->required()->check(CLI::IsMember({"hm", "xsq", "ball"}));
  m_cmd->add_option("--n", m_n, "Number of samples")->check(CLI::PositiveNumber);
  m_cmd->add_option("--seed", m_seed, "Seed");
  m_cmd->add_option("--u", m_u, "Start vertex (hm) or ball centre (ball)");
  m_cmd->add_option("--arc", m_arc, "Target arc for hm");
  m_cmd->add_option("--quad", m_quad, "Marks a,b,c,d for xsq");
  m_cmd->add_option("--meeting", m_meeting, "xsq meeting rule: vertex | loop-erased")
      ->check(CLI::IsMember({"vertex", "loop-erased"}));
  m_cmd->add_option("--a", m_a, "Start boundary edge (ball)");
  m_cmd->add_option("--b", m_b, "Target boundary edge (ball)");
  m_out.add(m_cmd);

  // verify
  auto* r_cmd = app.add_subcommand("verify", "Run the bracket suite over a corpus spec");
  std::string r_spec, r_csv, r_write;
  Output r_out;
  r_cmd->add_option("--spec", r_spec, "Corpus spec JSON, or 'default' for the built-in corpus");
  r_cmd->add_option("--csv", r_csv, "Write the per-configuration CSV here");
  r_cmd->add_option("--write-default", r_write, "Write the built-in spec to this file and exit");
  r_out.add(r_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*v_cmd) {
      if (v_domain.empty() == v_graph.empty()) throw UsageError("pass exactly one of --domain or --graph");
      json j;
      std::ostringstream s;
      std::shared_ptr<const EmbeddedGraph> g;
      if (!v_domain.empty()) {
        const Generated gen = load(v_domain);
        g = gen.dom.graph;
        j["domain"] = {{"interior", gen.dom.num_interior()},
                       {"boundary_edges", gen.dom.num_boundary()},
                       {"contours", gen.dom.contour_start.size()},
                       {"simply_connected", gen.dom.simply_connected}};
        s << "domain: " << gen.dom.num_interior() << " interior vertices, " << gen.dom.num_boundary()
          << " boundary edges, " << gen.dom.contour_start.size() << " contour(s), "
          << (gen.dom.simply_connected ? "simply connected" : "not simply connected") << '\n';
      } else {
        g = std::make_shared<EmbeddedGraph>(graph_from_json(read_json_file(v_graph)));
      }
      const StructureReport r = validate_assumptions(*g);
      j["graph"] = {{"vertices", g->num_vertices()}, {"edges", g->num_edges()},   {"varpi0", r.varpi0},
                    {"eta0", r.eta0},                {"kappa0", r.kappa0},        {"nu0", r.nu0},
                    {"max_degree", r.max_degree},    {"max_face_degree", r.max_face_degree},
                    {"transitions_bounded_below", r.satisfied_a}, {"angle_gap", r.satisfied_b},
                    {"finite_scale_ratios", r.satisfied_c}};
      s << "graph: " << g->num_vertices() << " vertices, " << g->num_edges() << " edges; varpi0 " << num(r.varpi0)
        << ", eta0 " << num(r.eta0) << ", kappa0 " << num(r.kappa0) << ", nu0 " << num(r.nu0) << '\n';
      v_out.emit(j, s.str());
      return kOk;
    }

    if (*g_cmd) {
      GenSpec spec;
      if (!g_spec.empty()) {
        if (!g_family.empty()) throw UsageError("pass either --spec or --family");
        spec = genspec_from_json(read_json_file(g_spec));
      } else {
        if (g_family.empty()) throw UsageError("--family or --spec is required");
        spec = GenSpec{g_family, parse_params(g_params), g_seed};
      }
      const Generated gen = generate(spec);
      const json j = domain_to_json(gen);
      std::ostringstream s;
      s << spec.family << ": " << gen.dom.g().num_vertices() << " vertices, " << gen.dom.num_interior()
        << " interior, " << gen.dom.num_boundary() << " boundary edges; marks " << gen.quad[0] << ',' << gen.quad[1]
        << ',' << gen.quad[2] << ',' << gen.quad[3] << '\n';
      if (g_out.path.empty() && !g_out.json_stdout)
        std::cout << j.dump() << '\n';
      else
        g_out.emit(j, s.str());
      return kOk;
    }

    if (*s_cmd) {
      const Generated gen = load(s_domain);
      const DiscreteDomain& dom = gen.dom;
      json j;
      std::ostringstream s;
      if (s_op == "hm") {
        if (s_arc.empty()) throw UsageError("hm needs --arc");
        const auto E = resolve_arc(gen, s_arc);
        const PotentialContext ctx(dom);
        const auto field = ctx.hm_field(E);
        if (!s_u.empty()) {
          const int u = resolve_point(gen, s_u);
          j["value"] = field[dom.local[u]];
          s << "omega(" << u << "; arc) = " << num(field[dom.local[u]]) << '\n';
        } else {
          j["values"] = field;
          s << "harmonic measure on " << field.size() << " interior vertices\n";
        }
        j["vertices"] = dom.interior;
        j["residual"] = ctx.last_residual();
      } else if (s_op == "green") {
        if (s_u.empty()) throw UsageError("green needs --u");
        const GreenField gf = greens_function(dom, resolve_point(gen, s_u));
        j = {{"pole", gf.pole}, {"values", gf.values}, {"vertices", dom.interior}, {"residual", gf.residual}};
        s << "G(u;u) = " << num(gf.values[dom.local[gf.pole]]) << ", residual " << num(gf.residual) << '\n';
      } else if (s_op == "Z") {
        PartitionValue pv;
        if (!s_A.empty() || !s_B.empty()) {
          if (s_A.empty() || s_B.empty()) throw UsageError("Z between arcs needs --A and --B");
          pv = partition_Z_arcs(dom, resolve_arc(gen, s_A), resolve_arc(gen, s_B));
        } else {
          auto endpoint = [&](const std::string& t) {
            const auto colon = t.find(':');
            if (colon == std::string::npos) throw UsageError("endpoint '" + t + "' must be vertex:ID or edge:INDEX");
            const std::string kind = t.substr(0, colon), rest = t.substr(colon + 1);
            if (kind == "vertex") return Endpoint::vertex(resolve_point(gen, rest));
            const auto v = parse_ints(rest);
            if (kind != "edge" || v.size() != 1) throw UsageError("endpoint '" + t + "' must be vertex:ID or edge:INDEX");
            if (v[0] < 0 || v[0] >= dom.num_boundary()) throw UsageError("boundary index out of range");
            return Endpoint::boundary(v[0]);
          };
          if (s_x.empty() || s_y.empty()) throw UsageError("Z needs --x and --y, or --A and --B");
          pv = partition_Z(dom, endpoint(s_x), endpoint(s_y));
        }
        j = {{"value", pv.value}, {"loop_convention", pv.loop_convention}};
        s << "Z = " << num(pv.value) << (pv.loop_convention ? " (loop convention)" : "") << '\n';
      } else {
        if (s_x.empty() || s_A.empty() || s_B.empty()) throw UsageError("R needs --x, --A and --B");
        const std::string xs = s_x.rfind("edge:", 0) == 0 ? s_x.substr(5) : s_x;
        const auto x = parse_ints(xs);
        if (x.size() != 1 || x[0] < 0 || x[0] >= dom.num_boundary()) throw UsageError("--x must be a boundary index");
        const double r = ratio_R(dom, x[0], resolve_arc(gen, s_A), resolve_arc(gen, s_B));
        j = {{"value", r}};
        s << "R = " << num(r) << '\n';
      }
      s_out.emit(j, s.str());
      return kOk;
    }

    if (*i_cmd) {
      const Generated gen = load(i_domain);
      require_simply_connected(gen);
      const Quadrilateral q = resolve_quad(gen, i_quad);
      const InvariantReport r = invariant_report(q);
      json j = {{"marks", {r.a, r.b, r.c, r.d}},
                {"Z", r.Z},
                {"X", r.X},
                {"Y", r.Y},
                {"EL", r.EL},
                {"Z_dual", r.Z_dual},
                {"X_dual", r.X_dual},
                {"Y_dual", r.Y_dual},
                {"EL_dual", r.EL_dual},
                {"EL_dual_network", r.EL_dual_network},
                {"flux_mismatch", r.flux_mismatch},
                {"max_residual", r.max_residual},
                {"ratios", r.ratios},
                {"flags", r.flags}};
      std::ostringstream s;
      s << "Z " << num(r.Z) << ", X " << num(r.X) << ", Y " << num(r.Y) << ", EL " << num(r.EL) << '\n'
        << "Z' " << num(r.Z_dual) << ", Y' " << num(r.Y_dual) << ", EL' " << num(r.EL_dual)
        << ", EL * dual-network EL " << num(r.ratios.at("exact_dual_product")) << '\n';
      for (const auto& [k, x] : r.ratios) s << "  " << k << " = " << num(x) << '\n';
      i_out.emit(j, s.str());
      return kOk;
    }

    if (*p_cmd) {
      const Generated gen = load(p_domain);
      const auto A = resolve_arc(gen, p_A), B = resolve_arc(gen, p_B);
      const SeparatorSplit sp = separator_split(gen.dom, A, B, p_k);
      json j = {{"k", p_k},
                {"part_A", sp.part_A},
                {"part_B", sp.part_B},
                {"slit_edges", sp.slit},
                {"connected_A", sp.connected_A},
                {"connected_B", sp.connected_B},
                {"usable", sp.usable()},
                {"x_A", sp.x_A},
                {"x_B", sp.x_B},
                {"y_A", sp.y_A},
                {"y_B", sp.y_B}};
      std::ostringstream s;
      s << "k " << num(p_k) << ": |A part| " << sp.part_A.size() << ", |B part| " << sp.part_B.size() << ", slit "
        << sp.slit.size() << " edges" << (sp.usable() ? "" : " (unusable split)") << '\n';
      if (sp.usable() && !sp.slit.empty()) {
        const SeparatorRatios r = separator_verify(gen.dom, sp);
        j["Z"] = r.Z;
        j["Z_A"] = r.Z_A;
        j["Z_B"] = r.Z_B;
        j["factorization"] = r.factorization;
        j["balance"] = r.balance;
        s << "Z " << num(r.Z) << ", Z_A " << num(r.Z_A) << ", Z_B " << num(r.Z_B) << ", Z/(Z_A Z_B) "
          << num(r.factorization) << ", (Z_A/Z_B)/k " << num(r.balance) << '\n';
      }
      p_out.emit(j, s.str());
      return kOk;
    }

    if (*a_cmd) {
      const Generated gen = load(a_domain);
      const int u = resolve_point(gen, a_u);
      const auto E = resolve_arc(gen, a_arc);
      const AnnulusDomain ann = annulus(gen.dom, u, a_rho0, E);
      const HmAnnulus hm = hm_via_annulus(gen.dom, u, E, a_rho0);
      const LogHmEl le = log_hm_vs_el(gen.dom, u, E, a_rho0);
      json j = {{"u", u},
                {"rho0", a_rho0},
                {"radius", ann.radius},
                {"disc", ann.disc},
                {"doubly_connected", ann.doubly_connected},
                {"fallback", ann.fallback},
                {"green_min", ann.green_min},
                {"green_max", ann.green_max},
                {"omega", hm.omega},
                {"Z_annulus", hm.Z},
                {"omega_over_Z", hm.ratio},
                {"log_hm", le.log_hm},
                {"EL", le.EL},
                {"log_hm_over_EL", le.ratio}};
      std::ostringstream s;
      s << (ann.doubly_connected ? "doubly connected annulus" : "fallback component") << ", disc of "
        << ann.disc.size() << " vertices\n"
        << "omega " << num(hm.omega) << ", Z annulus " << num(hm.Z) << ", ratio " << num(hm.ratio) << '\n'
        << "log(1+1/omega) " << num(le.log_hm) << ", EL " << num(le.EL) << ", ratio " << num(le.ratio) << '\n';
      if (ann.doubly_connected) {
        const SlitResult sl = find_slit(ann, E, SlitMode::ConjugateSign);
        if (sl.found) {
          const CutDomain cut = cut_annulus(ann, sl.gamma, E);
          const Sandwich sw = cut_sandwich(ann, cut, E);
          j["slit"] = {{"gamma", sl.gamma},        {"EL", sl.EL},
                       {"EL_cut", sl.EL_cut},      {"inequality_holds", sl.inequality_holds},
                       {"sandwich", {sw.lower, sw.middle, sw.upper}}, {"sandwich_holds", sw.holds()}};
          s << "slit of " << sl.gamma.size() << " vertices: EL after cut " << num(sl.EL_cut) << " (<= 2 EL "
            << (sl.inequality_holds ? "holds" : "FAILS") << "), sandwich " << (sw.holds() ? "holds" : "FAILS") << '\n';
        }
      }
      a_out.emit(j, s.str());
      return kOk;
    }

    if (*m_cmd) {
      const Generated gen = load(m_domain);
      const DiscreteDomain& dom = gen.dom;
      json j;
      std::ostringstream s;
      if (m_op == "hm") {
        if (m_u.empty() || m_arc.empty()) throw UsageError("hm needs --u and --arc");
        const int u = resolve_point(gen, m_u);
        const auto E = resolve_arc(gen, m_arc);
        const auto e = estimate_hm(dom, u, E, m_n, m_seed);
        const double exact = harmonic_measure(dom, u, E);
        j = estimate_json(e);
        j["exact"] = exact;
        s << "estimate " << num(e.estimate) << " +- " << num(e.std_error) << ", solver " << num(exact) << '\n';
      } else if (m_op == "xsq") {
        require_simply_connected(gen);
        const Quadrilateral q = resolve_quad(gen, m_quad);
        const Meeting how = m_meeting == "vertex" ? Meeting::Vertex : Meeting::LoopErased;
        const auto e = intersection_probability(q, m_n, m_seed, how);
        const CrossRatios cr = cross_ratios(q);
        j = estimate_json(e);
        j["X"] = cr.X;
        j["Y"] = cr.Y;
        j["X_squared"] = cr.X * cr.X;
        j["X_over_Y_squared"] = (cr.X / cr.Y) * (cr.X / cr.Y);
        j["meeting"] = m_meeting;
        s << "estimate " << num(e.estimate) << " +- " << num(e.std_error) << "; X^2 " << num(cr.X * cr.X)
          << ", (X/Y)^2 " << num((cr.X / cr.Y) * (cr.X / cr.Y)) << '\n';
      } else {
        if (m_u.empty() || m_a < 0 || m_b < 0) throw UsageError("ball needs --u, --a and --b");
        if (m_a >= dom.num_boundary() || m_b >= dom.num_boundary()) throw UsageError("boundary index out of range");
        const int u = resolve_point(gen, m_u);
        const auto e = intersection_ball_probability(dom, m_a, m_b, u, m_n, m_seed);
        const double ratio = partition_Z(dom, Endpoint::vertex(u), Endpoint::boundary(m_a)).value *
                             partition_Z(dom, Endpoint::vertex(u), Endpoint::boundary(m_b)).value /
                             partition_Z(dom, Endpoint::boundary(m_a), Endpoint::boundary(m_b)).value;
        j = estimate_json(e);
        j["Z_ratio"] = ratio;
        s << "estimate " << num(e.estimate) << " +- " << num(e.std_error) << "; Z(u;a)Z(u;b)/Z(a;b) " << num(ratio)
          << '\n';
      }
      m_out.emit(j, s.str());
      return kOk;
    }

    if (*r_cmd) {
      if (!r_write.empty()) {
        write_json_file(r_write, spec_to_json(CorpusSpec::default_spec()));
        std::cout << "wrote " << r_write << '\n';
        return kOk;
      }
      if (r_spec.empty()) throw UsageError("--spec is required");
      const CorpusSpec spec = r_spec == "default" ? CorpusSpec::default_spec() : spec_from_json(read_json_file(r_spec));
      const RatioReport rep = run_corpus(spec);
      if (!r_csv.empty()) {
        std::ofstream out(r_csv);
        if (!out) throw IoError("cannot write " + r_csv);
        out << report_csv(rep);
      }
      r_out.emit(report_json(rep), report_summary(rep));
      return rep.passed() ? kOk : kBracket;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBracket;
  }
  return kUsage;
}
