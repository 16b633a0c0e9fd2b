#include "openrewrite/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "openrewrite/canonical.hpp"
#include "openrewrite/discretize.hpp"

namespace openrewrite {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t draw(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

}  // namespace

Rng trial_rng(std::uint64_t seed, std::size_t trial) { return Rng(splitmix64(splitmix64(seed) + trial)); }

GraphPtr random_graph(Rng& rng, std::size_t max_nodes, std::size_t max_edges, const GraphPtr& types) {
  const std::size_t n = max_nodes == 0 ? 0 : 1 + draw(rng, max_nodes);
  const std::size_t m = n == 0 ? 0 : draw(rng, max_edges + 1);
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    std::string type;
    if (types && types->node_count() > 0) type = types->nodes()[draw(rng, types->node_count())].id;
    nodes.emplace_back("n" + std::to_string(i), std::move(type));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    Edge e{"e" + std::to_string(i), {}, {}, {}};
    if (types) {
      if (types->edge_count() == 0) break;
      const std::size_t te = draw(rng, types->edge_count());
      const std::string& src_type = types->nodes()[types->src(te)].id;
      const std::string& tgt_type = types->nodes()[types->tgt(te)].id;
      std::vector<std::size_t> srcs;
      std::vector<std::size_t> tgts;
      for (std::size_t v = 0; v < n; ++v) {
        if (nodes[v].type == src_type) srcs.push_back(v);
        if (nodes[v].type == tgt_type) tgts.push_back(v);
      }
      if (srcs.empty() || tgts.empty()) continue;
      e.src = nodes[srcs[draw(rng, srcs.size())]].id;
      e.tgt = nodes[tgts[draw(rng, tgts.size())]].id;
      e.type = types->edges()[te].id;
    } else {
      e.src = nodes[draw(rng, n)].id;
      e.tgt = nodes[draw(rng, n)].id;
    }
    edges.push_back(std::move(e));
  }
  std::optional<std::string> type_graph;
  if (types) type_graph = "T";
  return make_graph(std::move(nodes), std::move(edges), type_graph);
}

GraphPtr random_graph(std::uint64_t seed, std::size_t max_nodes, std::size_t max_edges, const GraphPtr& types) {
  Rng rng(splitmix64(seed));
  return random_graph(rng, max_nodes, max_edges, types);
}

Rule random_rule(Rng& rng, const std::string& name, std::size_t max_nodes) {
  GraphPtr left = random_graph(rng, max_nodes, max_nodes);
  Subgraph k = Subgraph::empty(left);
  for (std::size_t v = 0; v < left->node_count(); ++v) k.nodes[v] = draw(rng, 2) == 0;
  for (std::size_t e = 0; e < left->edge_count(); ++e)
    k.edges[e] = k.nodes[left->src(e)] && k.nodes[left->tgt(e)] && draw(rng, 2) == 0;
  GraphPtr interface = k.to_graph();

  std::vector<Node> nodes = interface->nodes();
  std::vector<Edge> edges = interface->edges();
  const std::size_t room = max_nodes > nodes.size() ? max_nodes - nodes.size() : 0;
  const std::size_t extra_nodes = draw(rng, std::min<std::size_t>(room, 2) + 1);
  for (std::size_t i = 0; i < extra_nodes; ++i) nodes.emplace_back("m" + std::to_string(i));
  if (!nodes.empty()) {
    const std::size_t extra_edges = draw(rng, 3);
    for (std::size_t i = 0; i < extra_edges; ++i)
      edges.push_back(Edge{"f" + std::to_string(i), nodes[draw(rng, nodes.size())].id,
                           nodes[draw(rng, nodes.size())].id, {}});
  }
  GraphPtr right = make_graph(std::move(nodes), std::move(edges));
  return Rule::from_inclusions(name, left, interface, right);
}

GraphPtr random_host(Rng& rng, const Grammar& g, std::size_t max_nodes, std::size_t max_edges) {
  std::vector<const Rule*> fitting;
  for (const Rule& r : g.rules)
    if (r.left->node_count() <= max_nodes && r.left->node_count() > 0 && r.left->edge_count() <= max_edges)
      fitting.push_back(&r);
  if (fitting.empty()) return random_graph(rng, max_nodes, max_edges);
  const Graph& left = *fitting[draw(rng, fitting.size())]->left;
  const std::size_t n = left.node_count() + draw(rng, max_nodes - left.node_count() + 1);
  const std::size_t m = left.edge_count() + draw(rng, max_edges - left.edge_count() + 1);
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.emplace_back("n" + std::to_string(i));
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < left.edge_count(); ++e)
    edges.push_back(Edge{"e" + std::to_string(e), nodes[left.src(e)].id, nodes[left.tgt(e)].id, {}});
  for (std::size_t e = left.edge_count(); e < m; ++e)
    edges.push_back(Edge{"e" + std::to_string(e), nodes[draw(rng, n)].id, nodes[draw(rng, n)].id, {}});
  return make_graph(std::move(nodes), std::move(edges));
}

Grammar random_grammar(Rng& rng, std::size_t max_rules, std::size_t max_nodes) {
  Grammar g;
  const std::size_t n = 1 + draw(rng, std::max<std::size_t>(max_rules, 1));
  for (std::size_t i = 0; i < n; ++i) g.rules.push_back(random_rule(rng, "r" + std::to_string(i), max_nodes));
  return g;
}

StructuredCospan random_open_graph(Rng& rng, const std::vector<std::string>& inputs,
                                   const std::vector<std::string>& outputs, std::size_t max_nodes,
                                   std::size_t max_edges) {
  StructuredCospan c;
  c.apex = random_graph(rng, std::max<std::size_t>(max_nodes, 1), max_edges);
  c.inputs = inputs;
  c.outputs = outputs;
  std::sort(c.inputs.begin(), c.inputs.end());
  std::sort(c.outputs.begin(), c.outputs.end());
  for (std::size_t i = 0; i < c.inputs.size(); ++i) c.input_map.push_back(draw(rng, c.apex->node_count()));
  for (std::size_t i = 0; i < c.outputs.size(); ++i) c.output_map.push_back(draw(rng, c.apex->node_count()));
  return c;
}

Rule loop_rule() {
  GraphPtr loop = make_graph({"x"}, {Edge{"l", "x", "x", {}}});
  GraphPtr point = make_graph({"x"}, {});
  return Rule::from_inclusions("drop-loop", loop, point, point);
}

Json report_to_json(const CheckReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(Json{{"trial", f.trial}, {"message", f.message}, {"counterexample", f.counterexample}});
  Json out = Json::object();
  out["check"] = r.check;
  out["passed"] = r.passed();
  out["trials"] = r.trials;
  out["seed"] = r.seed;
  out["bounds"] = r.bounds;
  out["fault_injection"] = r.fault_injection;
  out["faults_injected"] = r.faults_injected;
  out["nontrivial_trials"] = r.nontrivial_trials;
  out["failures"] = std::move(failures);
  out["wall_seconds"] = r.wall_seconds;
  return out;
}

CheckReport report_from_json(const Json& j) {
  CheckReport r;
  try {
    r.check = j.at("check").get<std::string>();
    r.trials = j.at("trials").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.bounds = j.at("bounds");
    r.fault_injection = j.at("fault_injection").get<bool>();
    r.faults_injected = j.at("faults_injected").get<std::size_t>();
    r.nontrivial_trials = j.at("nontrivial_trials").get<std::size_t>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    for (const auto& f : j.at("failures"))
      r.failures.push_back(
          CheckFailure{f.at("trial").get<std::size_t>(), f.at("message").get<std::string>(), f.at("counterexample")});
  } catch (const Json::exception& e) {
    throw ParseError(std::string("check report: ") + e.what());
  }
  return r;
}

namespace {

/// Returns a failure message, and sets `fired` when some rewrite step applied.
using Trial = std::function<std::optional<std::string>(Rng&, Json&, bool&)>;

Json common_bounds(const CheckConfig& cfg) {
  Json b = Json::object();
  b["depth"] = cfg.depth;
  b["max_graph_nodes"] = cfg.max_graph_nodes;
  b["max_rule_nodes"] = cfg.max_rule_nodes;
  b["max_rules"] = cfg.max_rules;
  b["max_size"] = cfg.max_size;
  b["fixed_grammar"] = cfg.grammar.has_value();
  b["fixed_start"] = cfg.start != nullptr;
  return b;
}

CheckReport run_check(const std::string& name, const CheckConfig& cfg, Json bounds, const Trial& trial) {
  const auto started = std::chrono::steady_clock::now();
  CheckReport report;
  report.check = name;
  report.trials = cfg.trials;
  report.seed = cfg.seed;
  report.bounds = std::move(bounds);
  report.fault_injection = cfg.inject_faults;
  std::optional<ScopedFaultInjection> faults;
  if (cfg.inject_faults) faults.emplace(cfg.seed, cfg.fault_rate_percent);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng = trial_rng(cfg.seed, t);
    Json ctx = Json::object();
    bool fired = false;
    try {
      if (auto message = trial(rng, ctx, fired)) report.failures.push_back(CheckFailure{t, *message, std::move(ctx)});
    } catch (const std::exception& e) {
      report.failures.push_back(CheckFailure{t, std::string("exception: ") + e.what(), std::move(ctx)});
    }
    if (fired) ++report.nontrivial_trials;
  }
  if (faults) report.faults_injected = faults->faults();
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

Grammar trial_grammar(const CheckConfig& cfg, Rng& rng) {
  return cfg.grammar ? *cfg.grammar : random_grammar(rng, cfg.max_rules, cfg.max_rule_nodes);
}

/// Three trials in four plant a match of some rule.
GraphPtr trial_graph(const CheckConfig& cfg, const Grammar& g, Rng& rng, std::size_t max_nodes) {
  if (cfg.start) return cfg.start;
  if (draw(rng, 4) == 0) return random_graph(rng, max_nodes, max_nodes + 1);
  return random_host(rng, g, max_nodes, max_nodes + 1);
}

std::vector<std::string> set_difference(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

CheckReport check_thm54(const CheckConfig& cfg) {
  return run_check("thm54", cfg, common_bounds(cfg), [&](Rng& rng, Json& ctx, bool& fired) -> std::optional<std::string> {
    const Grammar grammar = trial_grammar(cfg, rng);
    const GraphPtr start = trial_graph(cfg, grammar, rng, cfg.max_graph_nodes);
    ctx["grammar"] = grammar_to_json(grammar);
    ctx["start"] = graph_to_json(*start);
    const SearchBounds bounds{cfg.depth, cfg.max_size, true};
    const Closure plain = derive_closure(grammar, start, bounds);
    const Closure flat = derive_closure(discretize_grammar(grammar), start, bounds);
    const auto a = plain.forms();
    const auto b = flat.forms();
    fired = plain.entries.size() > 1 || flat.entries.size() > 1;
    if (a == b) return std::nullopt;
    ctx["only_plain"] = set_difference(a, b);
    ctx["only_discrete"] = set_difference(b, a);
    return "closures differ: " + std::to_string(a.size()) + " classes under the grammar, " +
           std::to_string(b.size()) + " under its discrete grammar";
  });
}

CheckReport check_additivity(const CheckConfig& cfg) {
  return run_check("additivity", cfg, common_bounds(cfg), [&](Rng& rng, Json& ctx, bool& fired) -> std::optional<std::string> {
    const Grammar grammar = trial_grammar(cfg, rng);
    const GraphPtr x = trial_graph(cfg, grammar, rng, cfg.max_graph_nodes);
    const GraphPtr x2 = trial_graph(cfg, grammar, rng, cfg.max_graph_nodes);
    ctx["grammar"] = grammar_to_json(grammar);
    ctx["x"] = graph_to_json(*x);
    ctx["x_prime"] = graph_to_json(*x2);
    const SearchBounds bounds{cfg.depth, cfg.max_size, true};
    const Closure cx = derive_closure(grammar, x, bounds);
    const Closure cx2 = derive_closure(grammar, x2, bounds);
    auto pick = [&](const Closure& c) -> const ClosureEntry& {
      return c.entries.size() == 1 ? c.entries[0] : c.entries[1 + draw(rng, c.entries.size() - 1)];
    };
    const ClosureEntry& y = pick(cx);
    const ClosureEntry& y2 = pick(cx2);
    ctx["y"] = graph_to_json(*y.graph);
    ctx["y_prime"] = graph_to_json(*y2.graph);
    const GraphPtr sum = coproduct(x, x2).object();
    const GraphPtr target = coproduct(y.graph, y2.graph).object();
    const std::size_t depth = y.depth + y2.depth;
    fired = depth > 0;
    ctx["depth"] = depth;
    const ReachResult r = reachable(grammar, sum, target, SearchBounds{depth, 2 * cfg.max_size, true});
    if (r.status == Reachability::reachable) return std::nullopt;
    return std::string("x + x' does not reach y + y' within ") + std::to_string(depth) + " steps (" +
           to_string(r.status) + ")";
  });
}

CheckReport check_thm62(const CheckConfig& cfg) {
  Json bounds = common_bounds(cfg);
  bounds["composition_depth"] = 2 * cfg.depth;
  return run_check("thm62", cfg, std::move(bounds), [&](Rng& rng, Json& ctx, bool& fired) -> std::optional<std::string> {
    const Grammar grammar = trial_grammar(cfg, rng);
    const GraphPtr start = trial_graph(cfg, grammar, rng, cfg.max_graph_nodes);
    const GraphPtr probe = random_graph(rng, cfg.max_graph_nodes, cfg.max_graph_nodes + 1);
    ctx["grammar"] = grammar_to_json(grammar);
    ctx["start"] = graph_to_json(*start);
    ctx["probe"] = graph_to_json(*probe);
    const Grammar flat = discretize_grammar(grammar);
    const CospanGrammar hat = hat_grammar(flat);

    const Closure operational = derive_closure(flat, start, SearchBounds{cfg.depth, cfg.max_size, true});
    const ClosedSquareSearch squares = closed_square_search(hat, start, cfg.depth, cfg.max_size);

    const std::string top_cert = cospan_certificate(closed(start));
    for (std::size_t i = 0; i < squares.squares.size(); ++i) {
      const Square& s = squares.squares[i];
      if (cospan_certificate(s.top) != top_cert) return "a constructed square does not start at closed(g)";
      if (!s.bottom.inputs.empty() || !s.bottom.outputs.empty()) return "a constructed square has a nonempty interface";
      if (canonical_form(*s.bottom.apex) != squares.bottom_forms[i]) return "a square's bottom form is stale";
    }

    fired = operational.entries.size() > 1 || squares.squares.size() > 1;
    auto a = operational.forms();
    auto b = squares.bottom_forms;
    std::sort(b.begin(), b.end());
    if (a != b) {
      ctx["only_operational"] = set_difference(a, b);
      ctx["only_squares"] = set_difference(b, a);
      return "reachable graphs (" + std::to_string(a.size()) + ") and square bottoms (" + std::to_string(b.size()) +
             ") differ";
    }
    const ReachResult r = reachable(flat, start, probe, SearchBounds{cfg.depth, cfg.max_size, true});
    const bool has_square = std::binary_search(b.begin(), b.end(), canonical_form(*probe));
    if ((r.status == Reachability::reachable) != has_square)
      return std::string("probe graph: reachability says ") + to_string(r.status) + " but a square " +
             (has_square ? "exists" : "does not exist");
    return std::nullopt;
  });
}

namespace {

CospanRule closed_rule(const Rule& r) {
  CospanRule s;
  s.name = r.name;
  s.top = closed(r.left);
  s.middle = closed(r.interface);
  s.bottom = closed(r.right);
  s.up.g = r.to_left;
  s.down.g = r.to_right;
  return s;
}

std::vector<std::string> feet(Rng& rng, const char* prefix) {
  std::vector<std::string> out;
  const std::size_t n = draw(rng, 3);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Square random_square_on(Rng& rng, const std::vector<CospanRule>& rules, const StructuredCospan& target,
                        bool& fired) {
  std::vector<std::pair<const CospanRule*, CospanMorphism>> options;
  for (const CospanRule& r : rules)
    for (const CospanMatch& m : find_cospan_matches(r, target))
      if (m.applicable) options.emplace_back(&r, m.morphism);
  if (options.empty() || draw(rng, 4) == 0) return identity_square(target);
  const auto& [rule, match] = options[draw(rng, options.size())];
  fired = true;
  return apply_cospan_rule(*rule, target, match).derived;
}

StructuredCospan planted_open_graph(Rng& rng, const Grammar& g, const std::vector<std::string>& inputs,
                                    const std::vector<std::string>& outputs) {
  StructuredCospan c;
  c.apex = draw(rng, 4) == 0 ? random_graph(rng, 4, 4) : random_host(rng, g, 4, 4);
  c.inputs = inputs;
  c.outputs = outputs;
  for (std::size_t i = 0; i < c.inputs.size(); ++i) c.input_map.push_back(draw(rng, c.apex->node_count()));
  for (std::size_t i = 0; i < c.outputs.size(); ++i) c.output_map.push_back(draw(rng, c.apex->node_count()));
  return c;
}

}  // namespace

CheckReport check_interchange(const CheckConfig& cfg) {
  return run_check("interchange", cfg, common_bounds(cfg), [&](Rng& rng, Json& ctx, bool& fired) -> std::optional<std::string> {
    const Grammar grammar = trial_grammar(cfg, rng);
    std::vector<CospanRule> rules;
    for (const Rule& r : grammar.rules) rules.push_back(closed_rule(r));
    const auto a_feet = feet(rng, "a");
    const auto b_feet = feet(rng, "b");
    const auto c_feet = feet(rng, "c");
    const StructuredCospan x = planted_open_graph(rng, grammar, a_feet, b_feet);
    const StructuredCospan y = planted_open_graph(rng, grammar, b_feet, c_feet);
    ctx["grammar"] = grammar_to_json(grammar);
    ctx["x"] = cospan_to_json(x);
    ctx["y"] = cospan_to_json(y);
    const Square a = random_square_on(rng, rules, x, fired);
    const Square b = random_square_on(rng, rules, y, fired);
    const Square c = random_square_on(rng, rules, a.bottom, fired);
    const Square d = random_square_on(rng, rules, b.bottom, fired);
    ctx["squares"] = Json::array({cospan_rule_to_json(a), cospan_rule_to_json(b), cospan_rule_to_json(c),
                                  cospan_rule_to_json(d)});
    if (interchange_check(a, b, c, d)) return std::nullopt;
    return "rows-first and columns-first composites are not isomorphic";
  });
}

}  // namespace openrewrite
