#include "tfmst/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <limits>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <sstream>

#include "tfmst/cer_graph.hpp"
#include "tfmst/dsl.hpp"
#include "tfmst/st_analysis.hpp"
#include "tfmst/usecase_sim.hpp"
#include "tfmst/validate.hpp"

namespace tfmst::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string model_file;
  std::string cer = "union";
  std::string format = "text";
  std::size_t cycle_limit = kDefaultCycleLimit;
  std::string kind = "weak";
  std::string from;
  std::vector<std::string> forbid;
  std::string path;
  std::string name;
  bool all = false;
  std::string init;
  std::string trace;
  bool write = false;
};

/// Bad flag values discovered after argument parsing (unknown ids etc).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  std::string model_file;
  Json findings = Json::object();
  std::ostringstream text;
  bool has_errors = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string bracket(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i];
  return out + "]";
}

std::string bracket(const NameSet& ids) { return bracket(std::vector<std::string>(ids.begin(), ids.end())); }

CerMode cer_mode(const std::string& name) {
  if (name == "declared") return CerMode::kDeclared;
  if (name == "inferred") return CerMode::kInferred;
  return CerMode::kUnion;
}

void require_feature(const Model& model, const std::string& id, const std::string& flag) {
  if (!model.find_feature(id)) throw UsageError(flag + ": unknown feature '" + id + "'");
}

Json diagnostics_json(const std::vector<Diagnostic>& diags) {
  Json arr = Json::array();
  for (const auto& d : diags)
    arr.push_back({{"severity", to_string(d.severity)}, {"location", d.location}, {"message", d.message}});
  return arr;
}

void write_diagnostics(Report& r, const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) r.text << to_string(d.severity) << ": " << d.location << ": " << d.message << "\n";
}

Json steps_json(const std::vector<TraceStep>& steps) {
  Json arr = Json::array();
  for (const auto& s : steps)
    arr.push_back({{"feature", s.feature},
                   {"missing_pre", s.missing_pre},
                   {"state_after", s.state_after.true_set}});
  return arr;
}

void write_steps(Report& r, const std::vector<TraceStep>& steps, const std::string& indent) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    r.text << indent << std::setw(3) << i + 1 << ". " << s.feature;
    if (s.missing_pre.empty()) r.text << "  ok";
    else r.text << "  MISSING " << bracket(s.missing_pre);
    r.text << "  -> " << bracket(s.state_after.true_set) << "\n";
  }
}

Json flow_json(const FlowReport& flow) {
  Json links = Json::array();
  for (const auto& [a, b] : flow.missing_links) links.push_back({a, b});
  return {{"events", flow.events},
          {"path_ok", flow.path_ok},
          {"missing_links", links},
          {"missing_initial", flow.missing_initial},
          {"steps", steps_json(flow.steps)}};
}

void write_flow(Report& r, const FlowReport& flow, const std::string& indent) {
  r.text << indent << "events: " << bracket(flow.events) << "\n";
  r.text << indent << "path: " << (flow.path_ok ? "ok" : "BROKEN");
  for (const auto& [a, b] : flow.missing_links) r.text << "  (no edge " << a << " -> " << b << ")";
  r.text << "\n";
  r.text << indent << "missing initial preconditions: "
         << (flow.missing_initial.empty() ? "none" : bracket(flow.missing_initial)) << "\n";
  write_steps(r, flow.steps, indent);
}

// --- commands ---------------------------------------------------------------

void cmd_matrix(Report& r, const Model&, const CerGraph& g) {
  Json rows = Json::array();
  std::size_t width = 1;
  for (const auto& id : g.nodes()) width = std::max(width, id.size());
  r.text << std::left << std::setw(static_cast<int>(width)) << "";
  for (const auto& id : g.nodes()) r.text << " " << std::setw(static_cast<int>(width)) << id;
  r.text << "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    Json row = Json::array();
    r.text << std::setw(static_cast<int>(width)) << g.node(i);
    for (std::size_t j = 0; j < g.size(); ++j) {
      row.push_back(g.has_edge(i, j) ? 1 : 0);
      r.text << " " << std::setw(static_cast<int>(width)) << (g.has_edge(i, j) ? "1" : "0");
    }
    r.text << "\n";
    rows.push_back(row);
  }
  r.findings["nodes"] = g.nodes();
  r.findings["matrix"] = rows;
}

void cmd_cycles(Report& r, const Model&, const CerGraph& g, const Options& opt) {
  r.findings["cycle_limit"] = opt.cycle_limit;
  try {
    auto cycles = find_functioning_cycles(g, opt.cycle_limit);
    r.findings["cycles"] = cycles;
    r.text << "functioning cycles: " << cycles.size() << "\n";
    for (const auto& c : cycles) r.text << "  " << bracket(c) << "\n";
  } catch (const CycleLimitExceeded& e) {
    r.has_errors = true;
    r.findings["error"] = e.what();
    r.text << "error: " << e.what() << "\n";
  }
}

void cmd_subsystems(Report& r, const Model&, const CerGraph& g, const Options& opt) {
  auto kind = opt.kind == "strong" ? SubsystemKind::kStrong : SubsystemKind::kWeak;
  auto subs = find_subsystems(g, kind);
  Json arr = Json::array();
  r.text << to_string(kind) << "s: " << subs.size() << "\n";
  for (const auto& s : subs) {
    arr.push_back({{"kind", to_string(s.kind)}, {"members", s.members}});
    r.text << "  " << bracket(s.members) << "\n";
  }
  r.findings["kind"] = to_string(kind);
  r.findings["subsystems"] = arr;
}

void cmd_reach(Report& r, const Model& m, const CerGraph& g, const Options& opt) {
  require_feature(m, opt.from, "--from");
  auto reached = reachable_from(g, opt.from);
  r.findings["from"] = opt.from;
  r.findings["reachable"] = reached;
  r.text << "reachable from " << opt.from << ": " << bracket(reached) << "\n";
}

void cmd_interactions(Report& r, const Model& m, const CerGraph& g, const Options& opt) {
  std::set<CerPair> forbidden;
  for (const auto& spec : opt.forbid) {
    auto parts = split_list(spec);
    if (parts.size() != 2) throw UsageError("--forbid expects A,B but got '" + spec + "'");
    require_feature(m, parts[0], "--forbid");
    require_feature(m, parts[1], "--forbid");
    forbidden.emplace(parts[0], parts[1]);
  }
  auto violations = check_interactions(g, forbidden);
  Json forb = Json::array();
  for (const auto& [a, b] : forbidden) forb.push_back({a, b});
  Json arr = Json::array();
  r.text << "forbidden pairs: " << forbidden.size() << ", violations: " << violations.size() << "\n";
  for (const auto& v : violations) {
    arr.push_back({{"pair", {v.pair.first, v.pair.second}}, {"witness", v.witness}});
    r.text << "  error: " << v.pair.first << " can lead to " << v.pair.second
           << " via " << bracket(v.witness) << "\n";
  }
  r.findings["forbidden"] = forb;
  r.findings["violations"] = arr;
  r.has_errors = !violations.empty();
}

void cmd_durations(Report& r, const Model& m, const Options& opt) {
  auto path = split_list(opt.path);
  for (const auto& id : path) require_feature(m, id, "--path");
  auto d = path_duration(m, path);
  r.findings["path"] = path;
  r.findings["dmin_total"] = d.dmin_total.to_string();
  r.findings["dmax_total"] = d.dmax_total.to_string();
  r.text << "path " << bracket(path) << ": duration " << d.dmin_total << ".." << d.dmax_total << "\n";
}

void cmd_periods(Report& r, const Model& m, const CerGraph& g, const Options& opt) {
  r.findings["cycle_limit"] = opt.cycle_limit;
  try {
    auto verdicts = check_cycle_periods(m, g, opt.cycle_limit);
    Json arr = Json::array();
    r.text << "periodic cycle members checked: " << verdicts.size() << "\n";
    for (const auto& v : verdicts) {
      arr.push_back({{"cycle", v.cycle},
                     {"feature", v.feature},
                     {"verdict", to_string(v.verdict)},
                     {"dmin_total", v.cycle_duration.dmin_total.to_string()},
                     {"dmax_total", v.cycle_duration.dmax_total.to_string()},
                     {"period", v.period ? Json(v.period->to_string()) : Json()}});
      r.text << "  " << bracket(v.cycle) << " " << v.feature << ": " << to_string(v.verdict)
             << " (dmax_total " << v.cycle_duration.dmax_total << (v.verdict == Verdict::kFeasible ? " <= " : " > ")
             << "period " << (v.period ? v.period->to_string() : "-") << ")\n";
      if (v.verdict == Verdict::kInfeasible) r.has_errors = true;
    }
    r.findings["verdicts"] = arr;
  } catch (const CycleLimitExceeded& e) {
    r.has_errors = true;
    r.findings["error"] = e.what();
    r.text << "error: " << e.what() << "\n";
  }
}

void cmd_spatial(Report& r, const Model& m, const CerGraph& g) {
  auto flags = check_spatial_consistency(m, g);
  Json arr = Json::array();
  r.text << "spatially inconsistent edges: " << flags.size() << "\n";
  for (const auto& f : flags) {
    arr.push_back({{"edge", {f.edge.first, f.edge.second}}, {"reason", f.reason}});
    r.text << "  error: " << f.edge.first << " -> " << f.edge.second << ": " << f.reason << "\n";
  }
  r.findings["spatial"] = arr;
  r.has_errors = !flags.empty();
}

void cmd_usecase(Report& r, const Model& m, const CerGraph& g, const Options& opt) {
  std::vector<std::string> names;
  if (opt.all) {
    for (const auto& uc : m.use_cases) names.push_back(uc.name);
  } else {
    if (!m.find_use_case(opt.name)) throw UsageError("--name: unknown use case '" + opt.name + "'");
    names.push_back(opt.name);
  }
  Json arr = Json::array();
  for (const auto& name : names) {
    auto rep = validate_use_case(m, g, name);
    Json alts = Json::array();
    r.text << "usecase " << rep.use_case << ": " << (rep.ok() ? "ok" : "FAILED") << "\n";
    write_flow(r, rep.main, "  ");
    for (const auto& alt : rep.alt_reports) {
      alts.push_back({{"at_index", alt.at_index}, {"flow", flow_json(alt.flow)}});
      r.text << "  alt " << alt.at_index << ": " << (alt.flow.ok() ? "ok" : "FAILED") << "\n";
      write_flow(r, alt.flow, "    ");
    }
    arr.push_back({{"use_case", rep.use_case},
                   {"ok", rep.ok()},
                   {"path_ok", rep.path_ok()},
                   {"missing_initial", rep.missing_initial()},
                   {"main", flow_json(rep.main)},
                   {"alt_reports", alts}});
    if (!rep.ok()) r.has_errors = true;
  }
  r.findings["use_cases"] = arr;
}

void cmd_simulate(Report& r, const Model& m, const Options& opt) {
  auto init_list = split_list(opt.init);
  NameSet initial(init_list.begin(), init_list.end());
  for (const auto& c : initial)
    if (!m.find_condition(c)) throw UsageError("--init: unknown condition '" + c + "'");
  auto trace = split_list(opt.trace);
  for (const auto& id : trace) require_feature(m, id, "--trace");
  std::vector<TraceStep> steps;
  try {
    steps = check_trace(m, initial, trace);
  } catch (const Error& e) {
    throw UsageError(std::string("--init: ") + e.what());
  }
  const NameSet& final_state = steps.empty() ? initial : steps.back().state_after.true_set;
  std::size_t violations = 0;
  for (const auto& s : steps) violations += s.missing_pre.empty() ? 0 : 1;
  r.findings["initial"] = initial;
  r.findings["trace"] = trace;
  r.findings["steps"] = steps_json(steps);
  r.findings["final_state"] = final_state;
  r.text << "initial: " << bracket(initial) << "\n";
  write_steps(r, steps, "");
  r.text << "final: " << bracket(final_state) << "\n";
  r.text << "steps with missing preconditions: " << violations << "\n";
  r.has_errors = violations != 0;
}

void cmd_dot(Report& r, const Model& m, const CerGraph& g) {
  auto dot = export_dot(g, m);
  r.findings["dot"] = dot;
  r.text << dot;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Options& opt, bool graph_flags) {
  sub->add_option("model", opt.model_file, "Path to a .tfm model")->required();
  sub->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  if (graph_flags) {
    sub->add_option("--cer", opt.cer, "Edge source")
        ->check(CLI::IsMember({"declared", "inferred", "union"}))
        ->capture_default_str();
    sub->add_option("--cycle-limit", opt.cycle_limit, "Maximum number of enumerated cycles")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
  }
}

int emit(const Report& r, const Options& opt, std::ostream& out) {
  const int code = r.has_errors ? kExitFindings : kExitOk;
  if (opt.format == "json") {
    Json doc = {{"schema_version", kReportSchemaVersion},
                {"command", r.command},
                {"model_file", r.model_file},
                {"exit_code", code},
                {"findings", r.findings}};
    out << doc.dump(2) << "\n";
  } else {
    out << r.text.str();
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Analyse spatio-temporal topological functioning models", "tfmst"};
  app.require_subcommand(1);

  struct Spec {
    const char* name;
    const char* help;
    bool graph_flags;
  };
  const Spec specs[] = {
      {"check", "Validate the model", false},
      {"fmt", "Print the model in canonical form", false},
      {"matrix", "Print the CER adjacency matrix", true},
      {"cycles", "List functioning cycles", true},
      {"subsystems", "List weakly or strongly connected subsystems", true},
      {"reach", "Features reachable from one feature", true},
      {"interactions", "Check forbidden feature interactions", true},
      {"durations", "Duration bounds of a feature path", false},
      {"periods", "Check cycle durations against periodic timing", true},
      {"spatial", "Check location compatibility along CER edges", true},
      {"usecase", "Validate use cases by replaying their event flows", true},
      {"simulate", "Replay a feature trace over the condition state", false},
      {"dot", "Export the CER graph as Graphviz text", true},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, opt, s.graph_flags);
    subs[s.name] = sub;
  }
  subs["fmt"]->add_flag("-w,--write", opt.write, "Rewrite the file in place");
  subs["subsystems"]->add_option("--kind", opt.kind, "weak or strong")
      ->check(CLI::IsMember({"weak", "strong"}))
      ->capture_default_str();
  subs["reach"]->add_option("--from", opt.from, "Start feature id")->required();
  subs["interactions"]->add_option("--forbid", opt.forbid, "Forbidden pair A,B (repeatable)");
  subs["durations"]->add_option("--path", opt.path, "Comma-separated feature ids")->required();
  auto* uc = subs["usecase"];
  auto* name_opt = uc->add_option("--name", opt.name, "Use case name");
  auto* all_opt = uc->add_flag("--all", opt.all, "Validate every use case");
  name_opt->excludes(all_opt);
  subs["simulate"]->add_option("--init", opt.init, "Comma-separated initially true conditions");
  subs["simulate"]->add_option("--trace", opt.trace, "Comma-separated feature ids")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;
  if (command == "usecase" && !opt.all && opt.name.empty()) {
    err << "tfmst usecase: one of --name or --all is required\n";
    return kExitUsage;
  }

  std::ifstream in(opt.model_file, std::ios::binary);
  if (!in) {
    err << "tfmst: cannot read model file '" << opt.model_file << "'\n";
    return kExitUsage;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    err << "tfmst: cannot read model file '" << opt.model_file << "'\n";
    return kExitUsage;
  }
  in.close();

  Report report;
  report.command = command;
  report.model_file = opt.model_file;

  auto parsed = parse_model(buffer.str(), opt.model_file);
  if (!parsed) {
    Json arr = Json::array();
    for (const auto& e : parsed.errors()) {
      arr.push_back({{"file", e.span.file},
                     {"line", e.span.line},
                     {"column", e.span.column},
                     {"expected", e.expected},
                     {"found", e.found},
                     {"message", e.message()}});
      report.text << "error: " << e.message() << "\n";
    }
    report.findings["parse_errors"] = arr;
    report.has_errors = true;
    return emit(report, opt, out);
  }

  if (command == "fmt") {
    const std::string text = serialize_model(parsed.model());
    if (opt.write) {
      std::ofstream os(opt.model_file, std::ios::binary | std::ios::trunc);
      if (!(os << text)) {
        err << "tfmst: cannot write model file '" << opt.model_file << "'\n";
        return kExitUsage;
      }
    }
    report.findings["text"] = text;
    report.text << text;
    return emit(report, opt, out);
  }

  const Model model = close_relations(std::move(parsed.model()));
  const auto validation = validate_model(model);
  if (command == "check") {
    std::size_t errors = 0;
    for (const auto& d : validation.diagnostics) errors += d.severity == Severity::kError ? 1 : 0;
    report.findings["diagnostics"] = diagnostics_json(validation.diagnostics);
    report.text << opt.model_file << ": " << errors << " error(s), "
                << validation.diagnostics.size() - errors << " warning(s)\n";
    write_diagnostics(report, validation.diagnostics);
    report.has_errors = errors != 0;
    return emit(report, opt, out);
  }
  if (validation.has_errors()) {
    std::vector<Diagnostic> errors;
    for (const auto& d : validation.diagnostics)
      if (d.severity == Severity::kError) errors.push_back(d);
    report.findings["diagnostics"] = diagnostics_json(errors);
    report.text << opt.model_file << ": model is invalid, fix these first\n";
    write_diagnostics(report, errors);
    report.has_errors = true;
    return emit(report, opt, out);
  }

  const CerMode mode = cer_mode(opt.cer);
  const CerGraph graph = build_cer_graph(model, mode);
  const bool uses_graph =
      std::find_if(std::begin(specs), std::end(specs), [&](const Spec& s) {
        return s.name == command && s.graph_flags;
      }) != std::end(specs);
  if (uses_graph) report.findings["cer_mode"] = to_string(mode);
  if (uses_graph && command != "dot" && command != "matrix") {
    report.text << "# " << command << " " << opt.model_file << " (cer: " << to_string(mode) << ")\n";
  }

  try {
    if (command == "matrix") cmd_matrix(report, model, graph);
    else if (command == "cycles") cmd_cycles(report, model, graph, opt);
    else if (command == "subsystems") cmd_subsystems(report, model, graph, opt);
    else if (command == "reach") cmd_reach(report, model, graph, opt);
    else if (command == "interactions") cmd_interactions(report, model, graph, opt);
    else if (command == "durations") cmd_durations(report, model, opt);
    else if (command == "periods") cmd_periods(report, model, graph, opt);
    else if (command == "spatial") cmd_spatial(report, model, graph);
    else if (command == "usecase") cmd_usecase(report, model, graph, opt);
    else if (command == "simulate") cmd_simulate(report, model, opt);
    else if (command == "dot") cmd_dot(report, model, graph);
  } catch (const UsageError& e) {
    err << "tfmst " << command << ": " << e.what() << "\n";
    return kExitUsage;
  }
  return emit(report, opt, out);
}

}  // namespace tfmst::cli
