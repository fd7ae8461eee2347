#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "vecflow/decomposition.hpp"
#include "vecflow/errors.hpp"
#include "vecflow/generators.hpp"
#include "vecflow/group_flow.hpp"
#include "vecflow/immersion.hpp"
#include "vecflow/json_io.hpp"
#include "vecflow/rank_algebra.hpp"

namespace vecflow {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string out, manifest;
  std::string graph, host, guest, flow, host_flow, guest_flow, group_flow, immersion, parts;
  std::string family, group = "z6", kind, construction;
  int a = 0, b = 0, p = 0, n = 0, k = 0, m = 0;
  int v = -1, w = -1;
  int samples = 0, dim = 0, multiplicity = 0;
  long long budget_ms = -1;
  std::vector<int> pairing;
};

struct Session {
  Options opt;
  std::map<std::string, std::string> input_hashes;
};

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(Session& s, const std::string& path) {
  if (path.empty()) throw PreconditionError("missing_input", "a required input file was not given");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("io", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  s.input_hashes[path] = hex(fnv1a(buf.str()));
  return buf.str();
}

Json read_json(Session& s, const std::string& path) { return parse_json(read_file(s, path)); }

struct LoadedGraph {
  Multigraph graph;
  Orientation orientation;
};

LoadedGraph load_graph(Session& s, const std::string& path) {
  const Json j = read_json(s, path);
  LoadedGraph out{graph_from_json(j), {}};
  auto o = orientation_from_json(j);
  out.orientation = o ? *o : Orientation::from_graph(out.graph);
  check_orientation(out.graph, out.orientation);
  return out;
}

std::chrono::milliseconds budget(const Options& opt) {
  if (opt.budget_ms >= 0) return std::chrono::milliseconds{opt.budget_ms};
  if (const char* env = std::getenv("VECFLOW_BUDGET_MS")) {
    char* end = nullptr;
    const long long ms = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && ms >= 0) return std::chrono::milliseconds{ms};
    throw PreconditionError("bad_budget", "VECFLOW_BUDGET_MS must be a non-negative integer");
  }
  return std::chrono::milliseconds{10000};
}

void require_vertex(const Options& opt, int x, const char* name) {
  (void)opt;
  if (x < 0) throw PreconditionError("missing_input", std::string("--") + name + " is required");
}

Json report_json(const VectorFlowReport& r) {
  return {{"max_kcl_residual", r.max_kcl_residual},
          {"max_norm_deviation", r.max_norm_deviation},
          {"zero_edges", r.zero_edges}};
}

void require_verified(const Multigraph& g, const VectorFlow& f) {
  const auto r = verify_vector_flow(g, f);
  if (!r.ok(f.tol)) throw TheoremViolation("output flow failed self-verification");
}

Json polylines_json(const Immersion& imm, int samples) {
  Json j = Json::object();
  for (const auto& [id, line] : polylines(imm, samples)) {
    Json pts = Json::array();
    for (const auto& x : line) pts.push_back(to_json(Eigen::VectorXd(x)));
    j[std::to_string(id)] = pts;
  }
  return j;
}

Json trace_json(const EdgeTrace& t) {
  Json edges = Json::object();
  for (const auto& [id, path] : t.edges) {
    Json steps = Json::array();
    for (const auto& step : path) steps.push_back({{"edge", step.source}, {"sign", step.sign}});
    edges[std::to_string(id)] = steps;
  }
  Json vertices = Json::object();
  for (const auto& [x, src] : t.vertices) vertices[std::to_string(x)] = src;
  return {{"edges", edges}, {"vertices", vertices}};
}

Json injection_json(const Injection& inj) {
  Json gv = Json::object(), ge = Json::object(), br = Json::array();
  for (const auto& [a, b] : inj.guest_vertices) gv[std::to_string(a)] = b;
  for (const auto& [a, b] : inj.guest_edges) ge[std::to_string(a)] = b;
  for (const auto& x : inj.bridges) br.push_back({{"id", x.id}, {"host_edge", x.host_edge}, {"guest_edge", x.guest_edge}});
  return {{"graph", to_json(inj.graph)}, {"guest_vertices", gv}, {"guest_edges", ge}, {"bridges", br}};
}

Json int_vector_json(const IntVector& x) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(x[i]);
  return a;
}

Json certificate_json(const KleinFlowCertificate& cert) {
  Json c = Json::object();
  for (const auto& [id, x] : cert.flow.values) c[std::to_string(id)] = x;
  return {{"b", cert.matrix.b()},
          {"rank_q", cert.rank},
          {"dim_s_prime", cert.s_prime.dim()},
          {"dim_w", cert.w.dim()},
          {"x", bits_to_string(cert.pair.x, cert.matrix.b())},
          {"y", bits_to_string(cert.pair.y, cert.matrix.b())},
          {"certificate", c},
          {"flow", to_json(cert.flow)}};
}

struct Result {
  Json output;
  int code = 0;
  std::string outcome = "ok";
};

using Handler = std::function<Result(Session&)>;

// ---------------------------------------------------------------------------
// Commands

Result cmd_gen(Session& s) {
  const Options& o = s.opt;
  Multigraph g;
  if (o.family == "quasi-petersen") g = quasi_petersen(o.a, o.b, o.p);
  else if (o.family == "generalized-petersen") g = generalized_petersen(o.n, o.k);
  else if (o.family == "complete") g = complete_graph(o.n);
  else if (o.family == "complete-bipartite") g = complete_bipartite(o.m, o.n);
  else if (o.family == "k33") g = complete_bipartite(3, 3);
  else if (o.family == "cube") g = cube_graph();
  else if (o.family == "prism") g = prism_graph();
  else if (o.family == "cycle") g = cycle_graph(o.n);
  else if (o.family == "bridged-triangles") g = bridged_triangles();
  else throw PreconditionError("unknown_family", "unknown family '" + o.family + "'");
  return {to_json(g, Orientation::from_graph(g))};
}

Result cmd_reduce(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  const Reduction r = reduce_to_cubic(in.graph);
  std::map<EdgeId, int> seen;
  for (const auto& [id, path] : r.trace.edges)
    for (const auto& step : path) ++seen[step.source];
  for (const auto& [id, _] : in.graph.edge_map())
    if (seen[id] != 1) throw TheoremViolation("reduction trace does not cover every edge once");
  return {{{"graph", to_json(r.graph, Orientation::from_graph(r.graph))}, {"trace", trace_json(r.trace)}}};
}

Result cmd_solve_group(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  const AbelianGroup group = AbelianGroup::parse(s.opt.group);
  const GroupSolve res = solve_flow_exhaustive(in.graph, group, budget(s.opt));
  // "none" is only reported after the whole cotree space was searched.
  const std::string verdict = res.verdict == Verdict::none ? "proven_none" : to_string(res.verdict);
  Json j{{"verdict", verdict}, {"group", group.name()}, {"nodes", res.nodes}};
  if (res.flow) {
    if (!verify_circulation(in.graph, *res.flow).nowhere_zero()) throw TheoremViolation("solver output failed verification");
    j["flow"] = to_json(*res.flow);
  }
  Result r{j};
  if (res.verdict == Verdict::budget) r.code = 3, r.outcome = "budget";
  else r.outcome = verdict;
  return r;
}

Result cmd_solve_vector(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  Json j;
  VectorFlow f;
  if (s.opt.kind == "s0") {
    f = s0_flow_even_graph(in.graph);
  } else if (s.opt.kind == "s1") {
    f = s1_flow_R3(in.graph);
  } else if (s.opt.kind == "s6") {
    const S6Result r = s6_pipeline(in.graph, budget(s.opt));
    f = r.flow;
    Json parts = Json::array();
    for (const auto& part : r.parts) parts.push_back(std::vector<EdgeId>(part.begin(), part.end()));
    j["parts"] = parts;
  } else {
    throw PreconditionError("unknown_kind", "--kind must be s0, s1 or s6");
  }
  if (s.opt.dim > 0) f = embed(f, s.opt.dim);
  require_verified(in.graph, f);
  Json out = to_json(f);
  for (auto& [key, value] : j.items()) out[key] = value;
  return {out};
}

Result cmd_immerse(Session& s) {
  const Options& o = s.opt;
  Multigraph g;
  Immersion imm;
  std::vector<double> theta;
  if (o.construction == "two-point" || o.construction == "one-point") {
    g = load_graph(s, o.graph).graph;
    imm = o.construction == "two-point" ? two_point_immersion(g) : one_point_immersion(g);
  } else if (o.construction == "k4") {
    auto c = k4_immersion();
    g = c.graph, imm = c.immersion, theta = c.theta;
  } else if (o.construction == "quasi-petersen") {
    auto c = quasi_petersen_immersion(o.a, o.b, o.p);
    g = c.graph, imm = c.immersion, theta = c.theta;
  } else {
    throw PreconditionError("unknown_construction", "unknown construction '" + o.construction + "'");
  }
  const auto rep = check_equiangular(g, imm);
  if (rep.max_deviation > 1e-8 || rep.max_endpoint_error > 1e-8) throw TheoremViolation("constructed immersion is not equiangular");
  Json j{{"graph", to_json(g)}, {"immersion", to_json(imm)}, {"max_deviation", rep.max_deviation}};
  if (!theta.empty()) j["theta"] = theta;
  if (o.samples > 0) j["polylines"] = polylines_json(imm, o.samples);
  return {j};
}

Result cmd_flow_from_immersion(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  const Immersion imm = immersion_from_json(read_json(s, s.opt.immersion), in.orientation);
  const VectorFlow f = immersion_to_flow(in.graph, imm);
  require_verified(in.graph, f);
  return {to_json(f)};
}

Result cmd_immersion_from_flow(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  const VectorFlow f = vector_flow_from_json(read_json(s, s.opt.flow), in.orientation);
  const Immersion imm = flow_to_immersion(in.graph, f);
  return {{{"immersion", to_json(imm)}, {"max_deviation", check_equiangular(in.graph, imm).max_deviation}}};
}

Result cmd_inject(Session& s) {
  require_vertex(s.opt, s.opt.v, "v");
  require_vertex(s.opt, s.opt.w, "w");
  const auto host = load_graph(s, s.opt.host), guest = load_graph(s, s.opt.guest);
  const Injection inj = inject(guest.graph, s.opt.w, host.graph, s.opt.v, s.opt.pairing);
  const std::size_t k = inj.bridges.size();
  if (inj.graph.num_vertices() != host.graph.num_vertices() + guest.graph.num_vertices() - 2 ||
      inj.graph.num_edges() != host.graph.num_edges() + guest.graph.num_edges() - k)
    throw TheoremViolation("injection has the wrong size");
  return {injection_json(inj)};
}

Result cmd_inject_flow(Session& s) {
  require_vertex(s.opt, s.opt.v, "v");
  require_vertex(s.opt, s.opt.w, "w");
  const auto host = load_graph(s, s.opt.host), guest = load_graph(s, s.opt.guest);
  const VectorFlow hf = vector_flow_from_json(read_json(s, s.opt.host_flow), host.orientation);
  const VectorFlow gf = vector_flow_from_json(read_json(s, s.opt.guest_flow), guest.orientation);
  const InjectedFlow r = injection_flow_transfer(host.graph, hf, s.opt.v, guest.graph, gf, s.opt.w, s.opt.pairing);
  Json j = injection_json(r.injection);
  j["flow"] = to_json(r.flow);
  j["report"] = report_json(verify_vector_flow(r.injection.graph, r.flow));
  return {j};
}

Result cmd_blowup(Session& s) {
  require_vertex(s.opt, s.opt.v, "v");
  const auto in = load_graph(s, s.opt.graph);
  if (!s.opt.flow.empty()) {
    const VectorFlow f = vector_flow_from_json(read_json(s, s.opt.flow), in.orientation);
    const BlownUpFlow r = blow_up_triangle_flow(in.graph, f, s.opt.v);
    return {{{"graph", to_json(r.blowup.graph)},
             {"triangle", r.blowup.triangle},
             {"flow", to_json(r.flow)},
             {"report", report_json(verify_vector_flow(r.blowup.graph, r.flow))}}};
  }
  const BlowUp b = blow_up_triangle(in.graph, s.opt.v);
  if (!is_cubic(b.graph)) throw TheoremViolation("blow-up of a cubic graph is not cubic");
  return {{{"graph", to_json(b.graph)}, {"triangle", b.triangle}}};
}

Result cmd_compose(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  const Json parts_json = read_json(s, s.opt.parts);
  if (!parts_json.is_array()) throw PreconditionError("malformed_json", "parts file must be an array");
  std::vector<DecompositionPart> parts;
  for (const Json& pj : parts_json) {
    if (!pj.is_object() || !pj.contains("edges") || !pj.contains("flow"))
      throw PreconditionError("malformed_json", "each part needs 'edges' and 'flow'");
    DecompositionPart part;
    try {
      for (const Json& e : pj.at("edges")) part.edges.insert(e.get<int>());
    } catch (const Json::exception& e) {
      throw PreconditionError("malformed_json", e.what());
    }
    Orientation fallback;
    for (EdgeId id : part.edges) {
      if (!in.orientation.contains(id)) throw PreconditionError("unknown_edge", "part names unknown edge " + std::to_string(id));
      fallback.set(id, in.orientation.at(id));
    }
    part.flow = vector_flow_from_json(pj.at("flow"), fallback);
    parts.push_back(std::move(part));
  }
  const VectorFlow f = compose_decomposition(in.graph, parts, s.opt.multiplicity);
  require_verified(in.graph, f);
  return {to_json(f)};
}

Result cmd_rank(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  const VectorFlow f = vector_flow_from_json(read_json(s, s.opt.flow), in.orientation);
  const auto rep = verify_vector_flow(in.graph, f);
  if (!rep.ok(f.tol)) throw PreconditionError("unverified_flow", "input flow does not verify");
  const FlowValueIndex index = build_value_index(f);
  const BalancedMatrix bm = balanced_matrix(in.graph, index);
  const int rank = rank_Q(bm.rows);
  const auto odd = odd_coordinate_free(bm.rows);
  Json values = Json::array();
  for (const auto& x : index.values) values.push_back(to_json(x));
  Json j{{"b", bm.b()},
         {"rank_q", rank},
         {"dim_s_prime", mod2_rowspace(bm.rows).dim()},
         {"odd_coordinate_free", odd.free},
         {"values", values},
         {"balanced_residual", balanced_residual(in.graph, index)}};
  if (odd.witness) j["witness"] = int_vector_json(*odd.witness);
  if (rank <= 2 && odd.free) j["certificate"] = certificate_json(synthesize_4flow(in.graph, f));
  return {j};
}

Result cmd_four_flow(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  const VectorFlow f = vector_flow_from_json(read_json(s, s.opt.flow), in.orientation);
  const KleinFlowCertificate cert = synthesize_4flow(in.graph, f);
  if (!verify_circulation(in.graph, cert.flow).nowhere_zero()) throw TheoremViolation("certificate failed verification");
  return {certificate_json(cert)};
}

Result cmd_verify(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  Json j;
  bool valid = false;
  if (!s.opt.group_flow.empty()) {
    const GroupFlow f = group_flow_from_json(read_json(s, s.opt.group_flow), in.orientation);
    const auto r = verify_circulation(in.graph, f);
    valid = r.nowhere_zero();
    j = {{"kind", "group"}, {"kcl_violations", r.kcl_violations}, {"zeros", r.zeros}};
  } else if (!s.opt.flow.empty()) {
    const VectorFlow f = vector_flow_from_json(read_json(s, s.opt.flow), in.orientation);
    const auto r = verify_vector_flow(in.graph, f);
    valid = r.ok(f.tol);
    j = report_json(r);
    j["kind"] = "vector";
  } else if (!s.opt.immersion.empty()) {
    const Immersion imm = immersion_from_json(read_json(s, s.opt.immersion), in.orientation);
    const auto r = check_equiangular(in.graph, imm);
    valid = r.max_deviation <= 1e-8 && r.max_endpoint_error <= 1e-8;
    j = {{"kind", "immersion"}, {"max_deviation", r.max_deviation}, {"max_endpoint_error", r.max_endpoint_error}};
  } else {
    throw PreconditionError("missing_input", "verify needs --flow, --group-flow or --immersion");
  }
  j["valid"] = valid;
  Result r{j};
  if (!valid) r.code = 2, r.outcome = "invalid";
  return r;
}

Result cmd_export(Session& s) {
  const auto in = load_graph(s, s.opt.graph);
  if (s.opt.immersion.empty()) return {to_json(in.graph, in.orientation)};
  const Immersion imm = immersion_from_json(read_json(s, s.opt.immersion), in.orientation);
  return {{{"polylines", polylines_json(imm, std::max(2, s.opt.samples))}}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("io", "cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session s;
  Options& o = s.opt;
  CLI::App app{"Unit-vector flows, group flows and equiangular immersions on multigraphs", "vecflow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::map<std::string, Handler> handlers;
  auto command = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--out", o.out, "Write JSON here instead of stdout");
    sub->add_option("--manifest", o.manifest, "Write a run manifest here");
    handlers[name] = std::move(h);
    return sub;
  };

  auto* gen = command("gen", "Generate a graph", cmd_gen);
  gen->add_option("--family", o.family, "quasi-petersen|generalized-petersen|complete|complete-bipartite|k33|cube|prism|cycle|bridged-triangles")->required();
  gen->add_option("--a", o.a);
  gen->add_option("--b", o.b);
  gen->add_option("--p", o.p);
  gen->add_option("--n", o.n);
  gen->add_option("--k", o.k);
  gen->add_option("--m", o.m);

  command("reduce", "Reduce to a cubic graph with an edge trace", cmd_reduce)->add_option("--graph", o.graph)->required();

  auto* sg = command("solve-group", "Exhaustive nowhere-zero group flow search", cmd_solve_group);
  sg->add_option("--graph", o.graph)->required();
  sg->add_option("--group", o.group, "z6|z4|z2xz2|z3|zN|zAxzB");
  sg->add_option("--budget", o.budget_ms, "Time budget in ms (default VECFLOW_BUDGET_MS or 10000)");

  auto* sv = command("solve-vector", "Construct an S0, S1 or S6 flow", cmd_solve_vector);
  sv->add_option("--graph", o.graph)->required();
  sv->add_option("--kind", o.kind, "s0|s1|s6")->required();
  sv->add_option("--dim", o.dim, "Pad values with zeros to this ambient dimension");
  sv->add_option("--budget", o.budget_ms);

  auto* im = command("immerse", "Build an equiangular S2-immersion", cmd_immerse);
  im->add_option("--construction", o.construction, "two-point|one-point|k4|quasi-petersen")->required();
  im->add_option("--graph", o.graph);
  im->add_option("--a", o.a);
  im->add_option("--b", o.b);
  im->add_option("--p", o.p);
  im->add_option("--export-polylines", o.samples, "Samples per arc");

  auto* ffi = command("flow-from-immersion", "Extract the S2-flow of an immersion", cmd_flow_from_immersion);
  ffi->add_option("--graph", o.graph)->required();
  ffi->add_option("--immersion", o.immersion)->required();

  auto* iff = command("immersion-from-flow", "Build an immersion from an S2-flow", cmd_immersion_from_flow);
  iff->add_option("--graph", o.graph)->required();
  iff->add_option("--flow", o.flow)->required();

  auto* inj = command("inject", "Inject a guest graph into a host vertex", cmd_inject);
  inj->add_option("--host", o.host)->required();
  inj->add_option("--v", o.v)->required();
  inj->add_option("--guest", o.guest)->required();
  inj->add_option("--w", o.w)->required();
  inj->add_option("--pairing", o.pairing)->delimiter(',');

  auto* injf = command("inject-flow", "Inject a guest S2-flow into a host S2-flow", cmd_inject_flow);
  injf->add_option("--host", o.host)->required();
  injf->add_option("--host-flow", o.host_flow)->required();
  injf->add_option("--v", o.v)->required();
  injf->add_option("--guest", o.guest)->required();
  injf->add_option("--guest-flow", o.guest_flow)->required();
  injf->add_option("--w", o.w)->required();
  injf->add_option("--pairing", o.pairing)->delimiter(',');

  auto* bu = command("blowup", "Replace a cubic vertex by a triangle", cmd_blowup);
  bu->add_option("--graph", o.graph)->required();
  bu->add_option("--v", o.v)->required();
  bu->add_option("--flow", o.flow, "Also carry an S2-flow across");

  auto* co = command("compose", "Concatenate part flows of an l-fold cover", cmd_compose);
  co->add_option("--graph", o.graph)->required();
  co->add_option("--parts", o.parts)->required();
  co->add_option("--multiplicity", o.multiplicity)->required();

  auto* rk = command("rank", "Balanced-vector rank and odd-coordinate test", cmd_rank);
  rk->add_option("--graph", o.graph)->required();
  rk->add_option("--flow", o.flow)->required();

  auto* ff = command("four-flow", "Z2xZ2 certificate from a rank <= 2 S2-flow", cmd_four_flow);
  ff->add_option("--graph", o.graph)->required();
  ff->add_option("--flow", o.flow)->required();

  auto* ve = command("verify", "Verify a flow or immersion", cmd_verify);
  ve->add_option("--graph", o.graph)->required();
  ve->add_option("--flow", o.flow);
  ve->add_option("--group-flow", o.group_flow);
  ve->add_option("--immersion", o.immersion);

  auto* ex = command("export", "Canonical graph JSON or immersion polylines", cmd_export);
  ex->add_option("--graph", o.graph)->required();
  ex->add_option("--immersion", o.immersion);
  ex->add_option("--samples", o.samples);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << Json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto started = std::chrono::steady_clock::now();
  Result result;
  std::string error_kind;
  try {
    result = handlers.at(sub->get_name())(s);
  } catch (const PreconditionError& e) {
    result.code = 2, result.outcome = "precondition", error_kind = e.kind();
    err << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
  } catch (const BudgetExhausted& e) {
    result.code = 3, result.outcome = "budget", error_kind = "budget";
    err << Json{{"error", "budget"}, {"message", e.what()}}.dump() << "\n";
  } catch (const TheoremViolation& e) {
    result.code = 1, result.outcome = "theorem_violation", error_kind = "theorem_violation";
    err << Json{{"error", "theorem_violation"}, {"message", e.what()}}.dump() << "\n";
  } catch (const std::overflow_error& e) {
    result.code = 2, result.outcome = "overflow", error_kind = "overflow";
    err << Json{{"error", "overflow"}, {"message", e.what()}}.dump() << "\n";
  }

  std::string text;
  if (!result.output.is_null()) {
    text = dump(result.output);
    try {
      if (o.out.empty()) out << text;
      else write_text(o.out, text);
    } catch (const PreconditionError& e) {
      err << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
      return 2;
    }
  }

  if (!o.manifest.empty()) {
    Json params = Json::object();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      const auto& res = opt->results();
      params[opt->get_name()] = res.size() == 1 ? Json(res.front()) : Json(res);
    }
    Json hashes = Json::object();
    for (const auto& [path, h] : s.input_hashes) hashes[path] = h;
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    Json manifest{{"command", sub->get_name()},
                  {"version", kVersion},
                  {"parameters", params},
                  {"input_hashes", hashes},
                  {"tolerance", {{"eps_unit", 1e-9}, {"eps_kcl", 1e-9}, {"cluster", 1e-7}}},
                  {"outcome", result.outcome},
                  {"exit_code", result.code},
                  {"output_hash", text.empty() ? Json(nullptr) : Json(hex(fnv1a(text)))},
                  {"wall_time_ms", ms}};
    if (!error_kind.empty()) manifest["error"] = error_kind;
    try {
      write_text(o.manifest, dump(manifest));
    } catch (const PreconditionError& e) {
      err << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
      return 2;
    }
  }
  return result.code;
}

}  // namespace vecflow
