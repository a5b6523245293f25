#include "toricmono/cli.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "toricmono/curves.hpp"
#include "toricmono/hypotheses.hpp"
#include "toricmono/monodromy.hpp"
#include "toricmono/obstruction.hpp"
#include "toricmono/patchwork.hpp"
#include "toricmono/polygon_io.hpp"
#include "toricmono/version.hpp"

namespace toricmono {

namespace {

using json = nlohmann::ordered_json;

json point_json(LatticePoint p) { return json::array({p.x, p.y}); }
json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json fibers_json(const FiberPartition& part) {
  json f = json::object();
  for (std::size_t i = 0; i < part.fibers.size(); ++i) {
    std::ostringstream key;
    key << "(" << part.fiber_reps[i].x << "," << part.fiber_reps[i].y << ")";
    json pts = json::array();
    for (int idx : part.fibers[i]) pts.push_back(point_json(part.domain[idx]));
    f[key.str()] = pts;
  }
  return f;
}

struct CommonOpts {
  double tol = 1e-9;
  std::uint64_t seed = 20160;
  std::string format = "json";
  std::string out;
  std::size_t max_domain = 1000;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--tol", o.tol, "numeric tolerance");
  cmd->add_option("--seed", o.seed, "seed for randomized searches");
  cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
  cmd->add_option("--max-domain", o.max_domain, "interior-point cap for group computations");
}

json config_json(const CommonOpts& o) {
  json c;
  c["tol"] = o.tol;
  c["seed"] = o.seed;
  c["max_domain"] = o.max_domain;
  return c;
}

json report_shell(const std::string& command, const CommonOpts& o) {
  json r;
  r["version"] = kVersion;
  r["command"] = command;
  r["config"] = config_json(o);
  return r;
}

void render_text(const json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || (it.value().is_array() && it.value().size() > 8)) {
        os << pad << it.key() << ":\n";
        render_text(it.value(), os, indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object()) {
        os << pad << "-\n";
        render_text(v, os, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

std::string render(const json& j, const CommonOpts& o) {
  if (o.format == "text") {
    std::ostringstream os;
    render_text(j, os);
    return os.str();
  }
  return j.dump(2) + "\n";
}

std::vector<cplx> parse_params(const std::vector<std::string>& raw) {
  std::vector<cplx> out;
  for (const auto& s : raw) {
    double re = 0, im = 0;
    char comma = 0;
    std::istringstream is(s);
    is >> re;
    if (is >> comma >> im) {
    }
    out.push_back({re, im});
  }
  return out;
}

json analyze_report(const LatticePolygon& poly, const CommonOpts& o) {
  json r = report_shell("analyze", o);
  json verts = json::array();
  for (auto& v : poly.vertices()) verts.push_back(point_json(v + poly.original_offset()));
  r["vertices"] = verts;
  r["notes"] = poly.notes();
  json edges = json::array();
  for (auto& e : poly.edges()) {
    json je;
    je["index"] = e.index;
    je["primitive"] = point_json(e.primitive);
    je["length"] = e.length;
    edges.push_back(je);
  }
  r["edges"] = edges;
  r["interior_count"] = poly.node_count();
  r["boundary_count"] = poly.boundary_points().size();

  auto target = obstruction_target(poly.boundary_points());
  FiberPartition part = psi_boundary(poly);
  r["index"] = target.index();
  r["index_vertex_gcd"] = vertex_determinant_gcd(poly);
  r["classes"] = target.class_count();
  r["fibers"] = fibers_json(part);
  r["aut_order"] = aut_order(part).str();
  auto cert = nonsurjectivity_certificate(poly);
  if (cert.has_value()) {
    json c;
    c["index"] = cert->index;
    if (cert->witness.has_value()) c["witness"] = point_json(*cert->witness);
    r["nonsurjective"] = c;
  } else {
    r["nonsurjective"] = nullptr;
  }
  auto kite = detect_kite(poly);
  r["kite"] = kite.has_value();
  return r;
}

json triangle_nodes_report(const TriangleParam& tri, const CommonOpts& o) {
  json r = report_shell("triangle-nodes", o);
  r["ell"] = tri.ell;
  r["p"] = tri.p;
  r["q"] = tri.q;
  json params = json::array();
  for (cplx a : tri.a) params.push_back(cplx_json(a));
  r["a"] = params;
  TriangleNodes tn = triangle_nodes(tri, o.tol);
  json classes = json::object();
  for (const auto& cls : tn.classes) {
    json jc;
    json roots = json::array();
    for (cplx t : cls.roots) roots.push_back(cplx_json(t));
    jc["roots"] = roots;
    jc["expected"] = cls.expected;
    jc["found"] = cls.roots.size();
    jc["residual_max"] = cls.max_identity_residual;
    jc["regime"] = (cls.regime == NodeRegime::halved) ? "halved" : "generic";
    classes[std::to_string(cls.k)] = jc;
  }
  r["classes"] = classes;
  r["total_expected"] = tn.total_expected;
  r["total_found"] = tn.total_found;
  return r;
}

ParamLoop parse_loop(const std::string& spec, const TriangleParam& tri, int k,
                     const CommonOpts& o) {
  if (spec == "phase") return phase_loop(tri.a);
  if (spec == "constant") return constant_loop(tri.a);
  if (spec == "discriminant") return discriminant_loop(tri, k, o.seed);
  if (spec.rfind("circle:", 0) == 0) {
    double cre = 0, cim = 0, radius = 0.1;
    std::size_t param = tri.a.size() - 1;
    std::string body = spec.substr(7);
    std::istringstream is(body);
    std::string item;
    while (std::getline(is, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        if (item.rfind("center", 0) != 0) throw CLI::ValidationError("--loop", "bad circle spec");
        continue;
      }
      std::string key = item.substr(0, eq);
      std::string val = item.substr(eq + 1);
      if (key == "center") {
        cre = std::stod(val);
      } else if (key == "centerim") {
        cim = std::stod(val);
      } else if (key == "radius") {
        radius = std::stod(val);
      } else if (key == "param") {
        param = std::stoul(val);
      } else {
        throw CLI::ValidationError("--loop", "unknown circle field: " + key);
      }
    }
    return lasso_loop(tri.a, param, cplx(cre, cim), radius);
  }
  throw CLI::ValidationError("--loop", "expected circle:..., phase, constant or discriminant");
}

}  // namespace

RunResult run(const std::vector<std::string>& argv) {
  CLI::App app{"node monodromy toolkit for rational curves on toric surfaces"};
  app.require_subcommand(1);

  CommonOpts o;

  std::string polygon_path;
  auto* analyze = app.add_subcommand("analyze", "lattice and obstruction report for a polygon");
  analyze->add_option("polygon", polygon_path, "polygon JSON file")->required();
  add_common(analyze, o);

  long long ell = 5, p = 7, q = 6;
  int kclass = 1;
  std::vector<std::string> raw_params;
  auto* tnodes = app.add_subcommand("triangle-nodes", "node polynomials and node count checks");
  tnodes->add_option("--ell", ell)->required();
  tnodes->add_option("--p", p)->required();
  tnodes->add_option("--q", q)->required();
  tnodes->add_option("--a", raw_params, "parameters as re or re,im");
  add_common(tnodes, o);

  std::string loop_spec = "discriminant";
  int steps = 256;
  auto* trace = app.add_subcommand("trace", "track node-polynomial roots along a parameter loop");
  trace->add_option("--ell", ell)->required();
  trace->add_option("--p", p)->required();
  trace->add_option("--q", q)->required();
  trace->add_option("--k", kclass, "obstruction class to track")->required();
  trace->add_option("--a", raw_params, "parameters as re or re,im");
  trace->add_option("--loop", loop_spec, "circle:center=..,radius=..[,param=j] | phase | discriminant");
  trace->add_option("--steps", steps, "initial loop discretization");
  add_common(trace, o);

  std::string wedge_spec;
  std::string span_spec;
  double zmin = 1e-4;
  std::string inner_spec = "none";
  auto* patch = app.add_subcommand("patchwork", "degeneration onto a wedge subdivision");
  patch->add_option("polygon", polygon_path)->required();
  patch->add_option("--wedge", wedge_spec, "j:vx,vy (edge index and apex)")->required();
  patch->add_option("--span", span_spec, "start:ell for a partial edge run");
  patch->add_option("--zmin", zmin, "final height of the schedule");
  patch->add_option("--inner-loop", inner_spec, "none | discriminant:k");
  add_common(patch, o);

  auto* hyp = app.add_subcommand("check-hypotheses", "wedge hypothesis report");
  hyp->add_option("polygon", polygon_path)->required();
  add_common(hyp, o);

  auto* theorem = app.add_subcommand("theorem-check", "wedge groups against the boundary deck group");
  theorem->add_option("polygon", polygon_path)->required();
  add_common(theorem, o);

  double spacing = 1.0;
  auto* kite = app.add_subcommand("kite", "kite detection, nodes and decoration");
  kite->add_option("polygon", polygon_path)->required();
  kite->add_option("--spacing", spacing, "parameter spacing of the real curve");
  add_common(kite, o);

  auto* demo = app.add_subcommand("demo-figure1", "the worked triangle example");
  add_common(demo, o);

  std::vector<const char*> cargs;
  cargs.push_back("toricmono");
  for (const auto& a : argv) cargs.push_back(a.c_str());

  RunResult result;
  json rep;
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    result.exit_code = (app.exit(e, os, os) == 0) ? 0 : 1;
    result.report = os.str();
    return result;
  }

  try {
    if (*analyze) {
      rep = analyze_report(polygon_from_file(polygon_path), o);
    } else if (*tnodes) {
      std::vector<cplx> a = parse_params(raw_params);
      if (a.empty()) {
        for (long long j = 1; j <= ell; ++j) a.push_back(cplx(static_cast<double>(j)));
      }
      rep = triangle_nodes_report(TriangleParam(ell, p, q, a), o);
    } else if (*trace) {
      std::vector<cplx> a = parse_params(raw_params);
      if (a.empty()) {
        for (long long j = 1; j <= ell; ++j) a.push_back(cplx(static_cast<double>(j)));
      }
      TriangleParam tri(ell, p, q, a);
      ParamLoop loop = parse_loop(loop_spec, tri, kclass, o);
      TrackSettings settings;
      settings.steps = steps;
      TrackedPermutation tp = track_roots(tri, loop, kclass, o.tol, settings);
      rep = report_shell("trace", o);
      rep["k"] = kclass;
      rep["loop"] = loop.description;
      rep["permutation"] = tp.perm.images();
      rep["residual"] = tp.match_residual;
      rep["steps_used"] = tp.steps_used;
    } else if (*patch) {
      LatticePolygon poly = polygon_from_file(polygon_path);
      auto colon = wedge_spec.find(':');
      auto comma = wedge_spec.find(',', colon);
      if (colon == std::string::npos || comma == std::string::npos) {
        throw std::invalid_argument("wedge spec must be j:vx,vy");
      }
      int j = std::stoi(wedge_spec.substr(0, colon));
      LatticePoint apex{std::stoll(wedge_spec.substr(colon + 1, comma - colon - 1)),
                        std::stoll(wedge_spec.substr(comma + 1))};
      apex = apex - poly.original_offset();  // input coordinates -> normalized
      Wedge w;
      if (span_spec.empty()) {
        w = full_edge_wedge(poly, j, apex);
      } else {
        auto c2 = span_spec.find(':');
        if (c2 == std::string::npos) throw std::invalid_argument("span spec must be start:ell");
        w = partial_wedge(poly, j, std::stoll(span_spec.substr(0, c2)),
                          std::stoll(span_spec.substr(c2 + 1)), apex);
      }
      WedgeSubdivision sub = subdivide(poly, w);
      DegenerationFamily fam = DegenerationFamily::harnack(sub, 1.0);
      rep = report_shell("patchwork", o);
      rep["adapted"] = {{"ell", sub.ell}, {"p", sub.p}, {"q", sub.q}};
      rep["height_bound"] = sub.height_bound;
      rep["glue_left_interior"] = sub.glue_left_pts.size();
      rep["glue_right_interior"] = sub.glue_right_pts.size();

      std::vector<double> schedule;
      int nsteps = 10;
      for (int i = 0; i <= nsteps; ++i) schedule.push_back(std::pow(zmin, i / double(nsteps)));
      if (inner_spec == "none") {
        DegenerationTrack track = track_degeneration_nodes(fam, schedule, o.tol);
        json nodes = json::array();
        const char* names[] = {"triangle", "left", "right", "glue_left", "glue_right", "unresolved"};
        for (const auto& n : track.nodes) {
          json jn;
          jn["t"] = cplx_json(n.start.t1);
          jn["t_partner"] = cplx_json(n.start.t2);
          jn["class"] = names[static_cast<int>(n.cls)];
          nodes.push_back(jn);
        }
        rep["nodes"] = nodes;
        rep["counts"] = {{"triangle", track.count_triangle},
                         {"left", track.count_left},
                         {"right", track.count_right},
                         {"glue_left", track.count_glue_left},
                         {"glue_right", track.count_glue_right}};
        rep["all_resolved"] = track.all_resolved;
      } else {
        if (inner_spec.rfind("discriminant:", 0) != 0) {
          throw std::invalid_argument("inner loop spec must be none or discriminant:k");
        }
        int k = std::stoi(inner_spec.substr(13));
        TriangleParam tri = fam.limit_triangle();
        ParamLoop inner = discriminant_loop(tri, k, o.seed);
        PatchLoopResult pl = patch_loop(fam, inner, zmin, o.tol);
        rep["permutation"] = pl.perm.images();
        rep["fixes_nodes_off_triangle"] = pl.fixes_nodes_off_triangle;
        rep["triangle_action_matches"] = pl.triangle_action_matches;
      }
    } else if (*hyp) {
      LatticePolygon poly = polygon_from_file(polygon_path);
      HypothesisReport hr = check_hypotheses(poly);
      rep = report_shell("check-hypotheses", o);
      rep["A"] = hr.A;
      rep["B"] = hr.B;
      rep["C"] = hr.C;
      rep["q_list"] = hr.q_list;
      rep["q"] = hr.q;
      rep["min_edge_length"] = hr.min_edge_length;
      rep["required_length"] = hr.required_length;
      rep["ell_constant"] = ell_constant(poly);
      json af = json::array();
      for (auto& f : hr.a_failures) {
        af.push_back({{"edge", f.j}, {"class", point_json(f.class_rep)}, {"reason", f.reason}});
      }
      rep["a_failures"] = af;
      json cf = json::array();
      for (auto& f : hr.c_failures) {
        cf.push_back({{"edge", f.j},
                      {"apex_a", point_json(f.apex_a)},
                      {"apex_b", point_json(f.apex_b)},
                      {"class", point_json(f.class_rep)}});
      }
      rep["c_failures"] = cf;
    } else if (*theorem) {
      LatticePolygon poly = polygon_from_file(polygon_path);
      TheoremCheck tc = verify_theorem_combinatorics(poly, o.max_domain);
      rep = report_shell("theorem-check", o);
      rep["hypotheses_met"] = tc.hypotheses_met;
      if (!tc.hypotheses_met) {
        rep["result"] = "hypotheses unmet";
        result.exit_code = 2;
      } else {
        rep["verified"] = tc.verified;
        rep["generated_order"] = tc.generated_order.str();
        rep["deck_order"] = tc.deck_order.str();
        if (!tc.verified) result.exit_code = 1;
      }
    } else if (*kite) {
      LatticePolygon poly = polygon_from_file(polygon_path);
      auto kn = detect_kite(poly);
      rep = report_shell("kite", o);
      if (!kn.has_value()) {
        rep["kite"] = false;
        result.exit_code = 1;
      } else {
        rep["kite"] = true;
        rep["interior_count"] = kn->interior_count;
        CurveParam curve = harnack_parameters(poly, spacing);
        SelfIntersections nodes = self_intersections(curve, o.tol);
        rep["nodes_found"] = nodes.pairs.size();
        rep["degenerate"] = nodes.degenerate;
        KiteDecoration dec = kite_decoration(curve, *kn, nodes, std::max(o.tol, 1e-8));
        rep["alpha_over_beta"] = cplx_json(dec.alpha_over_beta);
        rep["decoration"] = dec.sign;
        json blocks = json::array();
        for (auto& b : dec.blocks) blocks.push_back(b);
        rep["blocks"] = blocks;
        rep["decoration_residual"] = dec.max_residual;
      }
    } else if (*demo) {
      TriangleParam tri(5, 7, 6, std::vector<cplx>(5, cplx(1.0)));
      rep = triangle_nodes_report(tri, o);
      rep["command"] = "demo-figure1";
      json lines = json::object();
      for (int k = 1; k <= 3; ++k) {
        double ang = -std::numbers::pi * 7.0 * k / 6.0;
        NodePolynomial np = node_polynomial(tri, k);
        RootsResult rr = roots_in_cstar(np, o.tol);
        double worst = 0;
        for (cplx t : rr.roots) {
          worst = std::max(worst, std::abs(std::imag(t * std::polar(1.0, -ang))));
        }
        json jl;
        jl["angle"] = ang;
        jl["max_line_distance"] = worst;
        lines[std::to_string(k)] = jl;
      }
      rep["root_lines"] = lines;
      FiberPartition part = TriangleParam(5, 7, 6, std::vector<cplx>(5, cplx(1.0))).psi_triangle();
      rep["fiber_sizes"] = part.fiber_sizes();
    }
  } catch (const HypothesisViolation& e) {
    rep = report_shell("error", o);
    rep["error"] = e.what();
    result.exit_code = 2;
  } catch (const std::exception& e) {
    rep = report_shell("error", o);
    rep["error"] = e.what();
    result.exit_code = 1;
  }

  result.report = render(rep, o);
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    f << result.report;
  }
  return result;
}

}  // namespace toricmono
