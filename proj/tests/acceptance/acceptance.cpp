// End-to-end acceptance suite. Prints one PASS or FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "fixtures.hpp"
#include "openrewrite/canonical.hpp"
#include "openrewrite/colimits.hpp"
#include "openrewrite/json_io.hpp"
#include "openrewrite/oracle.hpp"

using namespace openrewrite;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

// ---------------------------------------------------------------------------
// 1. DPO worked example

Outcome dpo_worked_example() {
  const Rule rule = fixtures::drop_loop();
  const GraphPtr g = fixtures::g3();
  const auto matches = find_matches(rule, g, true);
  if (matches.size() != 1) return {false, std::to_string(matches.size()) + " mono matches, expected 1"};
  if (!matches[0].applicable) return {false, "the match is not applicable"};
  if (g->nodes()[matches[0].hom.node(0)].id != "c") return {false, "the match does not hit node c"};
  const DerivationStep step = apply_rule(rule, g, matches[0].hom);
  if (step.complement->node_count() != 3 || step.complement->edge_count() != 2)
    return {false, "complement has " + std::to_string(step.complement->node_count()) + " nodes and " +
                       std::to_string(step.complement->edge_count()) + " edges"};
  if (!find_isomorphism(step.result, fixtures::h3())) return {false, "result is not isomorphic to H3"};
  return {true, "1 match, complement 3 nodes / 2 edges, result isomorphic to H3"};
}

// ---------------------------------------------------------------------------
// 2. Open-graph composition

Outcome composition_example() {
  const StructuredCospan c = compose_cospans(fixtures::example_x1(), fixtures::example_x2());
  if (!validate_cospan(c).empty()) return {false, "composite is not a valid open graph"};
  if (c.apex->node_count() != 6 || c.apex->edge_count() != 9)
    return {false, "apex has " + std::to_string(c.apex->node_count()) + " nodes and " +
                       std::to_string(c.apex->edge_count()) + " edges"};
  if (c.inputs != std::vector<std::string>{"a", "c", "d"}) return {false, "inputs differ from {a,c,d}"};
  if (c.outputs != std::vector<std::string>{"e", "f"}) return {false, "outputs differ from {e,f}"};
  const auto in = c.input_ids();
  const auto out = c.output_ids();
  if (in.at("a") != "a" || in.at("c") != "c" || in.at("d") != "d" || out.at("e") != "e" || out.at("f") != "f")
    return {false, "feet land on the wrong apex nodes"};
  return {true, "6 nodes, 9 edges, inputs {a,c,d}, outputs {e,f}"};
}

// ---------------------------------------------------------------------------
// 3. Universal-property oracle

GraphHom random_hom(Rng& rng, const GraphPtr& from, const GraphPtr& to) {
  std::vector<GraphHom> homs = enumerate_homs(from, to);
  return homs.at(rng() % homs.size());
}

std::optional<Span> random_span(Rng& rng) {
  const GraphPtr k = random_graph(rng, 2, 1);
  const GraphPtr l = random_graph(rng, 3, 3);
  const GraphPtr r = random_graph(rng, 3, 3);
  if (count_homs(*k, *l, {}, 1) == 0 || count_homs(*k, *r, {}, 1) == 0) return std::nullopt;
  return Span{k, random_hom(rng, k, l), random_hom(rng, k, r)};
}

/// The cocone pushed forward along a non-iso map out of the pushout object.
SquareHoms corrupted(Rng& rng, const Span& span, const PushoutResult& po, int kind) {
  const Graph& q = *po.object();
  std::vector<Node> nodes = q.nodes();
  std::vector<Edge> edges = q.edges();
  std::vector<std::size_t> node_map(q.node_count());
  std::vector<std::size_t> edge_map(q.edge_count());
  for (std::size_t i = 0; i < node_map.size(); ++i) node_map[i] = i;
  for (std::size_t i = 0; i < edge_map.size(); ++i) edge_map[i] = i;
  GraphPtr bigger;
  if (kind == 0) {
    nodes.emplace_back("~extra");
    bigger = make_graph(nodes, edges);
  } else if (kind == 1) {
    const std::size_t v = rng() % q.node_count();
    edges.push_back(Edge{"~extra", q.nodes()[v].id, q.nodes()[v].id, {}});
    bigger = make_graph(nodes, edges);
  } else {
    // Doubles an edge's image count by adding a parallel copy, so the
    // comparison map stays injective but misses an element.
    const std::size_t e = rng() % std::max<std::size_t>(q.edge_count(), 1);
    if (q.edge_count() == 0) {
      nodes.emplace_back("~extra");
    } else {
      edges.push_back(Edge{"~extra", q.edges()[e].src, q.edges()[e].tgt, {}});
    }
    bigger = make_graph(nodes, edges);
  }
  for (std::size_t i = 0; i < node_map.size(); ++i) node_map[i] = bigger->node_index(q.nodes()[i].id);
  for (std::size_t i = 0; i < edge_map.size(); ++i) edge_map[i] = bigger->edge_index(q.edges()[i].id);
  const GraphHom into(po.object(), bigger, node_map, edge_map);
  return SquareHoms{span.left, span.right, compose_homs(po.inj_left(), into), compose_homs(po.inj_right(), into)};
}

/// The cocone pushed along a quotient of the pushout object that merges two
/// nodes, which is not an isomorphism.
std::optional<SquareHoms> merged(Rng& rng, const Span& span, const PushoutResult& po) {
  const Graph& q = *po.object();
  if (q.node_count() < 2) return std::nullopt;
  const std::size_t a = rng() % q.node_count();
  std::size_t b = rng() % (q.node_count() - 1);
  if (b >= a) ++b;
  const std::string keep = q.nodes()[std::min(a, b)].id;
  const std::string drop = q.nodes()[std::max(a, b)].id;
  auto rename = [&](const std::string& id) { return id == drop ? keep : id; };
  std::vector<Node> nodes;
  for (const Node& n : q.nodes())
    if (n.id != drop) nodes.push_back(n);
  std::vector<Edge> edges;
  for (const Edge& e : q.edges()) edges.push_back(Edge{e.id, rename(e.src), rename(e.tgt), e.type});
  GraphPtr smaller = make_graph(nodes, edges);
  std::vector<std::size_t> node_map(q.node_count());
  std::vector<std::size_t> edge_map(q.edge_count());
  for (std::size_t i = 0; i < node_map.size(); ++i) node_map[i] = smaller->node_index(rename(q.nodes()[i].id));
  for (std::size_t i = 0; i < edge_map.size(); ++i) edge_map[i] = smaller->edge_index(q.edges()[i].id);
  const GraphHom onto(po.object(), smaller, node_map, edge_map);
  return SquareHoms{span.left, span.right, compose_homs(po.inj_left(), onto), compose_homs(po.inj_right(), onto)};
}

Outcome pushout_oracle() {
  Rng rng(20240601);
  std::size_t certified = 0;
  std::size_t rejected = 0;
  std::size_t misclassified = 0;
  while (certified < 200) {
    auto span = random_span(rng);
    if (!span) continue;
    const PushoutResult po = pushout(*span);
    const SquareHoms sq{span->left, span->right, po.inj_left(), po.inj_right()};
    if (!verify_pushout(sq) || !is_pushout_square(sq)) ++misclassified;
    ++certified;
  }
  std::size_t kind = 0;
  while (rejected < 50) {
    auto span = random_span(rng);
    if (!span) continue;
    const PushoutResult po = pushout(*span);
    std::optional<SquareHoms> sq;
    if (kind % 4 == 3) {
      sq = merged(rng, *span, po);
      if (!sq) continue;
    } else {
      sq = corrupted(rng, *span, po, static_cast<int>(kind % 4));
    }
    ++kind;
    if (!square_commutes(*sq)) return {false, "a corrupted square does not commute"};
    if (is_pushout_square(*sq)) continue;
    if (verify_pushout(*sq)) ++misclassified;
    ++rejected;
  }
  return {misclassified == 0, std::to_string(certified) + " pushouts certified, " + std::to_string(rejected) +
                                  " non-pushouts tested, " + std::to_string(misclassified) + " misclassified"};
}

// ---------------------------------------------------------------------------
// 4. Pushout-complement uniqueness

std::vector<GraphPtr> all_graphs(std::size_t max_nodes, std::size_t max_edges) {
  std::vector<GraphPtr> out;
  std::unordered_set<std::string> seen;
  for (std::size_t n = 0; n <= max_nodes; ++n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) pairs.emplace_back(s, t);
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < chosen.size(); ++i)
        edges.push_back(Edge{"e" + std::to_string(i), ids[pairs[chosen[i]].first], ids[pairs[chosen[i]].second], {}});
      std::vector<Node> nodes(ids.begin(), ids.end());
      GraphPtr g = make_graph(nodes, edges);
      if (seen.insert(canonical_form(*g)).second) out.push_back(g);
      if (chosen.size() == max_edges) return;
      for (std::size_t p = from; p < pairs.size(); ++p) {
        chosen.push_back(p);
        rec(p);
        chosen.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

Outcome complement_uniqueness() {
  const auto lefts = all_graphs(2, 2);
  const auto ambients = all_graphs(4, 5);
  std::size_t rules = 0;
  std::size_t cases = 0;
  std::size_t complements = 0;
  std::size_t failures = 0;
  std::string first_failure;
  for (const GraphPtr& l : lefts) {
    for (const Subgraph& k_sub : all_subgraphs(l)) {
      ++rules;
      const GraphHom l_inc = k_sub.inclusion();
      for (const GraphPtr& g : ambients) {
        for (const GraphHom& m : enumerate_homs(l, g, false)) {
          ++cases;
          const bool glues = gluing_check(l_inc, m).ok();
          std::optional<PushoutComplement> formula;
          if (glues) formula = pushout_complement(l_inc, m);
          // Pushout injections are jointly surjective and the complement leg
          // is mono, so every complement is a subgraph of g lying between
          // the part outside m(ℓ) together with m(k), and all of g.
          const GraphHom mk = compose_homs(l_inc, m);
          Subgraph base = Subgraph::image(mk);
          const Subgraph image = Subgraph::image(m);
          for (std::size_t v = 0; v < g->node_count(); ++v)
            if (!image.nodes[v]) base.nodes[v] = true;
          for (std::size_t e = 0; e < g->edge_count(); ++e)
            if (!image.edges[e]) base.edges[e] = true;
          std::vector<std::size_t> free_nodes;
          std::vector<std::size_t> free_edges;
          for (std::size_t v = 0; v < g->node_count(); ++v)
            if (!base.nodes[v]) free_nodes.push_back(v);
          for (std::size_t e = 0; e < g->edge_count(); ++e)
            if (!base.edges[e]) free_edges.push_back(e);
          const std::size_t options = free_nodes.size() + free_edges.size();
          std::size_t valid = 0;
          for (std::size_t mask = 0; mask < (std::size_t{1} << options); ++mask) {
            Subgraph d = base;
            for (std::size_t i = 0; i < free_nodes.size(); ++i) d.nodes[free_nodes[i]] = (mask >> i) & 1U;
            for (std::size_t i = 0; i < free_edges.size(); ++i)
              d.edges[free_edges[i]] = (mask >> (free_nodes.size() + i)) & 1U;
            if (!d.valid()) continue;
            const GraphHom d_inc = d.inclusion();
            std::vector<std::size_t> back_nodes(g->node_count(), npos);
            std::vector<std::size_t> back_edges(g->edge_count(), npos);
            for (std::size_t i = 0; i < d_inc.node_map().size(); ++i) back_nodes[d_inc.node(i)] = i;
            for (std::size_t i = 0; i < d_inc.edge_map().size(); ++i) back_edges[d_inc.edge(i)] = i;
            std::vector<std::size_t> kn;
            std::vector<std::size_t> ke;
            for (std::size_t v : mk.node_map()) kn.push_back(back_nodes[v]);
            for (std::size_t e : mk.edge_map()) ke.push_back(back_edges[e]);
            const GraphHom k_to_d(l_inc.source(), d_inc.source(), kn, ke);
            if (!is_pushout_square({l_inc, k_to_d, m, d_inc})) continue;
            ++valid;
            ++complements;
            const bool same = formula && Subgraph::image(formula->kprime_to_g) == d &&
                              find_isomorphism(formula->kprime, d_inc.source()).has_value();
            if (!same) {
              ++failures;
              if (first_failure.empty()) first_failure = "complement differs from the formula";
            }
          }
          if (glues && valid != 1) {
            ++failures;
            if (first_failure.empty()) first_failure = std::to_string(valid) + " complements where gluing holds";
          }
          if (!glues && valid != 0) {
            ++failures;
            if (first_failure.empty()) first_failure = "a complement exists although gluing fails";
          }
        }
      }
    }
  }
  std::string detail = std::to_string(rules) + " rules, " + std::to_string(ambients.size()) + " ambient graphs, " +
                       std::to_string(cases) + " matches, " + std::to_string(complements) + " complements, " +
                       std::to_string(failures) + " failures";
  if (!first_failure.empty()) detail += " (first: " + first_failure + ")";
  return {failures == 0, detail};
}

// ---------------------------------------------------------------------------
// 5-8. Randomized suites

std::string summary(const CheckReport& r) {
  std::string s = r.check + ": " + std::to_string(r.trials) + " trials (" + std::to_string(r.nontrivial_trials) +
                  " with rewriting), " + std::to_string(r.failures.size()) + " failures";
  if (!r.failures.empty()) s += " (first: " + r.failures.front().message + ")";
  return s;
}

Outcome thm54_suite() {
  CheckConfig cfg;
  cfg.trials = 100;
  cfg.seed = 42;
  cfg.depth = 3;
  cfg.max_graph_nodes = 5;
  cfg.max_size = 24;
  const CheckReport clean = check_thm54(cfg);
  cfg.inject_faults = true;
  const CheckReport faulty = check_thm54(cfg);
  const bool ok = clean.passed() && !faulty.passed();
  return {ok, summary(clean) + "; with injected faults: " + std::to_string(faulty.failures.size()) +
                  " counterexamples from " + std::to_string(faulty.faults_injected) + " corrupted pushouts"};
}

Outcome additivity_suite() {
  CheckConfig cfg;
  cfg.trials = 50;
  cfg.seed = 42;
  cfg.depth = 2;
  cfg.max_graph_nodes = 5;
  cfg.max_size = 24;
  const CheckReport r = check_additivity(cfg);
  return {r.passed(), summary(r)};
}

Outcome thm62_suite() {
  CheckConfig cfg;
  cfg.trials = 50;
  cfg.seed = 42;
  cfg.depth = 2;
  cfg.max_graph_nodes = 5;
  cfg.max_size = 24;
  const CheckReport r = check_thm62(cfg);
  return {r.passed(), summary(r)};
}

Outcome interchange_suite() {
  CheckConfig cfg;
  cfg.trials = 50;
  cfg.seed = 42;
  const CheckReport r = check_interchange(cfg);
  return {r.passed(), summary(r)};
}

// ---------------------------------------------------------------------------
// 9. Structural invariants

InvariantTally tally_before;

Outcome structural_invariants() {
  const InvariantTally now = invariant_tally();
  const std::size_t checked = now.checked - tally_before.checked;
  const std::size_t violated = now.violated - tally_before.violated;
  return {checked > 0 && violated == 0,
          std::to_string(checked) + " derived rules re-validated inline, " + std::to_string(violated) + " violations"};
}

// ---------------------------------------------------------------------------
// 10. CLI determinism

void write_file(const fs::path& p, const Json& j) {
  std::ofstream(p) << dump_json(versioned(j));
}

struct Run {
  int code;
  std::string out;
};

Run run_cli_binary(const std::string& args, const fs::path& dir, const std::string& tag) {
  const fs::path out = dir / (tag + ".out");
  const std::string cmd = std::string("\"") + OPENREWRITE_CLI + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  int code = status;
#ifdef WEXITSTATUS
  if (status != -1) code = WEXITSTATUS(status);
#endif
  return {code, buf.str()};
}

std::string strip_timing(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line))
    if (line.find("\"wall_seconds\"") == std::string::npos) out += line + "\n";
  return out;
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "openrewrite_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_file(dir / "G3.json", graph_to_json(*fixtures::g3()));
  write_file(dir / "H3.json", graph_to_json(*fixtures::h3()));
  write_file(dir / "loop.json", rule_to_json(fixtures::drop_loop()));
  write_file(dir / "loop_grammar.json", grammar_to_json(fixtures::loop_grammar()));
  write_file(dir / "mixed_grammar.json",
             grammar_to_json(Grammar{{fixtures::drop_loop(), fixtures::grow_loop_on_target()}}));
  write_file(dir / "x1.json", cospan_to_json(fixtures::example_x1()));
  write_file(dir / "x2.json", cospan_to_json(fixtures::example_x2()));
  write_file(dir / "open_loop.json", cospan_grammar_to_json(CospanGrammar{{fixtures::open_loop_rule()}}));
  const auto pieces = fixtures::worked_square_pieces();
  write_file(dir / "piece1.json", cospan_to_json(pieces[0]));
  write_file(dir / "piece3.json", cospan_to_json(pieces[2]));
  const std::string d = "\"" + dir.string() + "/";

  struct Command {
    std::string args;
    int expected;
  };
  const std::vector<Command> commands = {
      {"validate " + d + "G3.json\"", 0},
      {"validate " + d + "loop_grammar.json\"", 0},
      {"match -r " + d + "loop.json\" -g " + d + "G3.json\"", 0},
      {"apply -r " + d + "loop.json\" -g " + d + "G3.json\" --match 0", 0},
      {"apply -r " + d + "loop.json\" -g " + d + "G3.json\" --match all", 0},
      {"reach -G " + d + "loop_grammar.json\" --from " + d + "G3.json\" --to " + d + "H3.json\" --max-depth 2", 0},
      {"reach -G " + d + "loop_grammar.json\" --from " + d + "H3.json\" --to " + d + "G3.json\" --max-depth 5", 3},
      {"compose " + d + "x1.json\" " + d + "x2.json\"", 0},
      {"discretize -G " + d + "mixed_grammar.json\"", 0},
      {"hat -G " + d + "loop_grammar.json\"", 0},
      {"lang -C " + d + "open_loop.json\" --seed-cospan " + d + "piece1.json\" --seed-cospan " + d +
           "piece3.json\" --max-depth 1",
       0},
      {"check thm54 --trials 5 --seed 7", 0},
      {"check thm62 --trials 5 --seed 7", 0},
      {"check additivity --trials 5 --seed 7", 0},
      {"check interchange --trials 5 --seed 7", 0},
      {"check thm54 --trials 20 --seed 7 --inject-faults", 2},
      {"export-dot " + d + "G3.json\"", 0},
      {"export-dot " + d + "x1.json\"", 0},
  };
  std::size_t index = 0;
  for (const Command& c : commands) {
    const Run first = run_cli_binary(c.args, dir, "run" + std::to_string(index) + "a");
    const Run second = run_cli_binary(c.args, dir, "run" + std::to_string(index) + "b");
    ++index;
    if (first.code != c.expected)
      return {false, "'" + c.args + "' exited " + std::to_string(first.code) + ", expected " +
                         std::to_string(c.expected) + ": " + first.out.substr(0, 200)};
    if (strip_timing(first.out) != strip_timing(second.out)) return {false, "'" + c.args + "' is not deterministic"};
  }
  // The trace written by apply renders as DOT identically too.
  run_cli_binary("apply -r " + d + "loop.json\" -g " + d + "G3.json\" --match 0 -o " + d + "trace.json\"", dir, "t");
  const Run a = run_cli_binary("export-dot " + d + "trace.json\"", dir, "dot_a");
  const Run b = run_cli_binary("export-dot " + d + "trace.json\"", dir, "dot_b");
  if (a.code != 0 || a.out != b.out) return {false, "trace export is not deterministic"};
  return {true, std::to_string(commands.size() + 1) + " commands byte-identical across two runs"};
}

}  // namespace

int main() {
  tally_before = invariant_tally();
  const std::vector<Criterion> criteria = {
      {1, "DPO worked example", 1.0, dpo_worked_example},
      {2, "open-graph composition example", 1.0, composition_example},
      {3, "pushout universal-property oracle", 120.0, pushout_oracle},
      {4, "pushout-complement uniqueness", 300.0, complement_uniqueness},
      {5, "discrete grammar closure suite", 600.0, thm54_suite},
      {6, "additivity suite", 300.0, additivity_suite},
      {7, "square existence suite", 900.0, thm62_suite},
      {8, "interchange suite", 300.0, interchange_suite},
      {9, "derived rules stay rules", 1.0, structural_invariants},
      {10, "CLI determinism", 600.0, cli_determinism},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    all = all && o.pass;
    std::printf("%s criterion %2d  %-36s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
