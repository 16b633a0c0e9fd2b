#include "openrewrite/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "openrewrite/canonical.hpp"
#include "openrewrite/discretize.hpp"
#include "openrewrite/dot.hpp"
#include "openrewrite/json_io.hpp"
#include "openrewrite/oracle.hpp"

namespace openrewrite {

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kCheckFailed = 2;
constexpr int kUnknown = 3;

struct RunConfig {
  std::size_t max_depth = 3;
  std::size_t max_size = 24;
  std::size_t max_squares = 2000;
  std::uint64_t seed = 42;
  bool mono_only = true;
};

std::uint64_t parse_seed(const std::string& text, const char* source) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(text, &used, 10);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DomainError(std::string(source) + ": not an unsigned integer: '" + text + "'");
  }
}

/// Built-in defaults, then the environment, then the config file.
RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (const char* env = std::getenv("OPENREWRITE_SEED"); env != nullptr && *env != '\0')
    cfg.seed = parse_seed(env, "OPENREWRITE_SEED");
  if (path.empty()) return cfg;
  const Json j = read_json_file(path);
  if (!j.is_object()) throw ParseError(path + ": config must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "max_depth") cfg.max_depth = value.get<std::size_t>();
      else if (key == "max_size") cfg.max_size = value.get<std::size_t>();
      else if (key == "max_squares") cfg.max_squares = value.get<std::size_t>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "mono_only") cfg.mono_only = value.get<bool>();
      else if (key != "format_version") throw ParseError(path + ": unknown config key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (cfg.max_depth == 0 || cfg.max_size == 0 || cfg.max_squares == 0)
    throw DomainError(path + ": bounds must be positive");
  return cfg;
}

class Output {
 public:
  Output(std::ostream& fallback, std::string path) : fallback_(fallback), path_(std::move(path)) {}

  void write(const std::string& text) const {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + path_ + "'");
    f << text;
  }

 private:
  std::ostream& fallback_;
  std::string path_;
};

Json gluing_to_json(const GluingReport& g) {
  Json out = Json::object();
  out["identification_ok"] = g.identification_ok;
  out["dangling_ok"] = g.dangling_ok;
  out["offenders"] = g.offenders;
  return out;
}

Trace single_step_trace(DerivationStep step) {
  Trace t;
  t.start_form = canonical_form(*step.graph);
  t.end_form = canonical_form(*step.result);
  t.steps.push_back(std::move(step));
  return t;
}

std::string validate_document(const Json& j, Json& report) {
  const DocumentKind kind = detect_kind(j);
  report["kind"] = to_string(kind);
  const TypeGraphRegistry types = type_graphs_from_json(j);
  std::vector<std::string> violations;
  auto check_graph = [&](const Graph& g, const std::string& where) {
    for (const auto& v : validate_graph(g, types.empty() ? nullptr : &types)) violations.push_back(where + ": " + v);
  };
  switch (kind) {
    case DocumentKind::graph:
      check_graph(*graph_from_json(j), "/");
      break;
    case DocumentKind::rule: {
      Rule r = rule_from_json(j);
      check_graph(*r.left, "/left");
      check_graph(*r.interface, "/interface");
      check_graph(*r.right, "/right");
      break;
    }
    case DocumentKind::grammar:
      for (const Rule& r : grammar_from_json(j).rules) {
        check_graph(*r.left, "/rules/" + r.name + "/left");
        check_graph(*r.interface, "/rules/" + r.name + "/interface");
        check_graph(*r.right, "/rules/" + r.name + "/right");
      }
      break;
    case DocumentKind::cospan:
      cospan_from_json(j);
      break;
    case DocumentKind::cospan_rule:
      cospan_rule_from_json(j);
      break;
    case DocumentKind::cospan_grammar:
      cospan_grammar_from_json(j);
      break;
    case DocumentKind::trace:
      trace_from_json(j);
      break;
    case DocumentKind::check_report:
      report_from_json(j);
      break;
    case DocumentKind::hom:
    case DocumentKind::unknown:
      violations.emplace_back("unrecognised document: expected a graph, rule, grammar, open graph, cospan rule, "
                              "trace or check report");
      break;
  }
  report["violations"] = violations;
  return violations.empty() ? "" : violations.front();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph and open-graph rewriting with double pushouts", "openrewrite"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  std::optional<std::uint64_t> seed_flag;
  std::string output_path;
  app.add_option("--config", config_path, "JSON file with max_depth, max_size, max_squares, seed, mono_only");
  app.add_option("--seed", seed_flag, "Seed; overrides the config file and OPENREWRITE_SEED");
  app.add_option("-o,--output", output_path, "Write the result here instead of stdout");

  std::string file;
  std::string file2;
  std::string rule_path;
  std::string graph_path;
  std::string grammar_path;
  std::string from_path;
  std::string to_path;
  std::string match_choice = "0";
  std::optional<std::size_t> max_depth;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> max_squares;
  bool general_matches = false;
  std::string check_name;
  std::size_t trials = 50;
  std::size_t check_depth = 2;
  bool inject_faults = false;
  std::vector<std::string> seed_cospans;

  auto* validate = app.add_subcommand("validate", "Check a JSON document against its schema and invariants");
  validate->add_option("file", file, "Document to validate")->required();

  auto* match = app.add_subcommand("match", "List the matches of a rule in a graph");
  match->add_option("-r,--rule", rule_path, "Rule file")->required();
  match->add_option("-g,--graph", graph_path, "Graph file")->required();
  match->add_flag("--general", general_matches, "Include non-injective matches");

  auto* apply = app.add_subcommand("apply", "Apply a rule at a match and emit the trace");
  apply->add_option("-r,--rule", rule_path, "Rule file")->required();
  apply->add_option("-g,--graph", graph_path, "Graph file")->required();
  apply->add_option("--match", match_choice, "Match index, or 'all' for every applicable match");
  apply->add_flag("--general", general_matches, "Include non-injective matches");

  auto* reach = app.add_subcommand("reach", "Search for a derivation from one graph to another");
  reach->add_option("-G,--grammar", grammar_path, "Grammar file")->required();
  reach->add_option("--from", from_path, "Start graph")->required();
  reach->add_option("--to", to_path, "Goal graph")->required();
  reach->add_option("--max-depth", max_depth, "Longest derivation searched");
  reach->add_option("--max-size", max_size, "Largest graph (nodes + edges) explored");
  reach->add_flag("--general", general_matches, "Include non-injective matches");

  auto* compose = app.add_subcommand("compose", "Compose two open graphs along their shared interface");
  compose->add_option("first", file, "Open graph whose outputs are glued")->required();
  compose->add_option("second", file2, "Open graph whose inputs are glued")->required();

  auto* discretize = app.add_subcommand("discretize", "Replace every rule interface by its nodes");
  discretize->add_option("-G,--grammar", grammar_path, "Grammar file")->required();

  auto* hat = app.add_subcommand("hat", "Decomposition squares of a grammar with discrete interfaces");
  hat->add_option("-G,--grammar", grammar_path, "Grammar file")->required();

  auto* lang = app.add_subcommand("lang", "Squares generated by a cospan grammar over seed open graphs");
  lang->add_option("-C,--cospan-grammar", grammar_path, "Cospan grammar file")->required();
  lang->add_option("--seed-cospan", seed_cospans, "Open graph files whose derived rules are generators");
  lang->add_option("--max-depth", max_depth, "Rounds of composition");
  lang->add_option("--max-size", max_size, "Largest apex (nodes + edges) kept");
  lang->add_option("--max-squares", max_squares, "Stop after this many squares");

  auto* check = app.add_subcommand("check", "Run a randomized theorem check");
  check->add_option("name", check_name, "thm54, thm62, additivity or interchange")
      ->required()
      ->check(CLI::IsMember({"thm54", "thm62", "additivity", "interchange"}));
  check->add_option("--trials", trials, "Number of trials");
  check->add_option("--depth", check_depth, "Derivation depth per trial");
  check->add_option("--max-size", max_size, "Largest graph (nodes + edges) explored");
  check->add_flag("--inject-faults", inject_faults, "Corrupt pushouts at random to show the check can fail");

  auto* export_dot = app.add_subcommand("export-dot", "Render a graph, open graph or trace as Graphviz DOT");
  export_dot->add_option("file", file, "Document to render")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kDomainError;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (seed_flag) cfg.seed = *seed_flag;
    if (max_depth) cfg.max_depth = *max_depth;
    if (max_size) cfg.max_size = *max_size;
    if (max_squares) cfg.max_squares = *max_squares;
    if (general_matches) cfg.mono_only = false;
    const Output sink(out, output_path);
    auto emit = [&](Json j) { sink.write(dump_json(versioned(std::move(j)))); };

    if (*validate) {
      Json report = Json::object();
      std::string first;
      try {
        first = validate_document(read_json_file(file), report);
      } catch (const DomainError& e) {
        report["violations"] = Json::array({e.what()});
        first = e.what();
      }
      report["valid"] = first.empty();
      emit(report);
      return first.empty() ? kOk : kDomainError;
    }

    if (*match) {
      const Rule rule = rule_from_json(read_json_file(rule_path));
      const GraphPtr g = graph_from_json(read_json_file(graph_path));
      Json matches = Json::array();
      std::size_t i = 0;
      for (const Match& m : find_matches(rule, g, cfg.mono_only)) {
        Json entry = Json::object();
        entry["index"] = i++;
        entry["hom"] = hom_to_json(m.hom);
        entry["applicable"] = m.applicable;
        entry["gluing"] = gluing_to_json(m.gluing);
        matches.push_back(std::move(entry));
      }
      emit(Json{{"rule", rule.name}, {"matches", matches}});
      return kOk;
    }

    if (*apply) {
      const Rule rule = rule_from_json(read_json_file(rule_path));
      const GraphPtr g = graph_from_json(read_json_file(graph_path));
      const std::vector<Match> matches = find_matches(rule, g, cfg.mono_only);
      if (match_choice == "all") {
        Json traces = Json::array();
        for (const Match& m : matches)
          if (m.applicable) traces.push_back(trace_to_json(single_step_trace(apply_rule(rule, g, m.hom))));
        emit(Json{{"traces", traces}});
        return kOk;
      }
      const std::uint64_t index = parse_seed(match_choice, "--match");
      if (index >= matches.size())
        throw DomainError("--match " + match_choice + ": only " + std::to_string(matches.size()) + " matches");
      emit(trace_to_json(single_step_trace(apply_rule(rule, g, matches[index].hom))));
      return kOk;
    }

    if (*reach) {
      const Grammar grammar = grammar_from_json(read_json_file(grammar_path));
      const GraphPtr from = graph_from_json(read_json_file(from_path));
      const GraphPtr to = graph_from_json(read_json_file(to_path));
      const ReachResult r = reachable(grammar, from, to, SearchBounds{cfg.max_depth, cfg.max_size, cfg.mono_only});
      Json result = Json::object();
      result["status"] = to_string(r.status);
      result["max_depth"] = cfg.max_depth;
      result["max_size"] = cfg.max_size;
      if (r.trace) result["trace"] = trace_to_json(*r.trace);
      emit(result);
      return r.status == Reachability::reachable ? kOk : kUnknown;
    }

    if (*compose) {
      const StructuredCospan a = cospan_from_json(read_json_file(file));
      const StructuredCospan b = cospan_from_json(read_json_file(file2));
      emit(cospan_to_json(compose_cospans(a, b)));
      return kOk;
    }

    if (*discretize) {
      emit(grammar_to_json(discretize_grammar(grammar_from_json(read_json_file(grammar_path)))));
      return kOk;
    }

    if (*hat) {
      emit(cospan_grammar_to_json(hat_grammar(grammar_from_json(read_json_file(grammar_path)))));
      return kOk;
    }

    if (*lang) {
      const CospanGrammar grammar = cospan_grammar_from_json(read_json_file(grammar_path));
      std::vector<StructuredCospan> seeds;
      for (const auto& path : seed_cospans) seeds.push_back(cospan_from_json(read_json_file(path)));
      LangBounds bounds;
      bounds.depth = max_depth.value_or(2);
      bounds.max_size = cfg.max_size;
      bounds.max_squares = cfg.max_squares;
      bounds.mono_only = cfg.mono_only;
      const LangClosure closure = lang_closure(grammar, seeds, bounds);
      Json squares = Json::array();
      for (std::size_t i = 0; i < closure.squares.size(); ++i) {
        Json s = cospan_rule_to_json(closure.squares[i]);
        s["level"] = closure.level[i];
        squares.push_back(std::move(s));
      }
      emit(Json{{"exhausted", closure.exhausted}, {"count", closure.squares.size()}, {"squares", squares}});
      return closure.exhausted ? kUnknown : kOk;
    }

    if (*check) {
      CheckConfig c;
      c.trials = trials;
      c.seed = cfg.seed;
      c.depth = check_depth;
      if (max_size) c.max_size = *max_size;
      c.inject_faults = inject_faults;
      CheckReport report;
      if (check_name == "thm54") report = check_thm54(c);
      else if (check_name == "thm62") report = check_thm62(c);
      else if (check_name == "additivity") report = check_additivity(c);
      else report = check_interchange(c);
      emit(report_to_json(report));
      return report.passed() ? kOk : kCheckFailed;
    }

    if (*export_dot) {
      const Json j = read_json_file(file);
      switch (detect_kind(j)) {
        case DocumentKind::graph:
          sink.write(graph_to_dot(*graph_from_json(j)));
          return kOk;
        case DocumentKind::cospan:
          sink.write(cospan_to_dot(cospan_from_json(j)));
          return kOk;
        case DocumentKind::trace:
          sink.write(trace_to_dot(trace_from_json(j)));
          return kOk;
        default:
          throw DomainError("export-dot: expected a graph, open graph or trace");
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kDomainError;
}

}  // namespace openrewrite
