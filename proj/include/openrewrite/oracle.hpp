#pragma once

// Seeded random instances and the suites that check the main results on them.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "openrewrite/cospan.hpp"
#include "openrewrite/double_lang.hpp"
#include "openrewrite/dpo.hpp"
#include "openrewrite/json_io.hpp"

namespace openrewrite {

using Rng = std::mt19937_64;

/// Independent stream for one trial of a seeded run.
Rng trial_rng(std::uint64_t seed, std::size_t trial);

/// Between 1 and max_nodes nodes (none when max_nodes is 0), up to
/// max_edges edges with uniformly drawn endpoints. Typed over `types` when
/// given (recorded under the type graph name "T"), with each edge drawn over
/// a random edge of the type graph.
GraphPtr random_graph(Rng& rng, std::size_t max_nodes, std::size_t max_edges, const GraphPtr& types = nullptr);
GraphPtr random_graph(std::uint64_t seed, std::size_t max_nodes, std::size_t max_edges,
                      const GraphPtr& types = nullptr);

/// ℓ random, k a random subgraph of ℓ, r = k plus random additions; at most
/// max_nodes nodes in each component.
Rule random_rule(Rng& rng, const std::string& name, std::size_t max_nodes);
Grammar random_grammar(Rng& rng, std::size_t max_rules, std::size_t max_nodes);

/// A random graph with a copy of the left side of a random rule of `g` in
/// it, so that at least one match exists. Falls back to random_graph when
/// no left side fits within the bounds.
GraphPtr random_host(Rng& rng, const Grammar& g, std::size_t max_nodes, std::size_t max_edges);
/// A random open graph over the given feet; feet land on random apex nodes.
StructuredCospan random_open_graph(Rng& rng, const std::vector<std::string>& inputs,
                                   const std::vector<std::string>& outputs, std::size_t max_nodes,
                                   std::size_t max_edges);

struct CheckFailure {
  std::size_t trial = 0;
  std::string message;
  Json counterexample;
};

struct CheckReport {
  std::string check;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Json bounds;
  std::vector<CheckFailure> failures;
  std::size_t nontrivial_trials = 0;  // trials in which some rewrite step fired
  std::size_t faults_injected = 0;
  bool fault_injection = false;
  double wall_seconds = 0.0;

  bool passed() const { return failures.empty(); }
};

Json report_to_json(const CheckReport& r);
CheckReport report_from_json(const Json& j);

struct CheckConfig {
  std::size_t trials = 50;
  std::uint64_t seed = 42;
  std::size_t depth = 2;
  std::size_t max_graph_nodes = 5;  // start graphs
  std::size_t max_rule_nodes = 4;   // each graph of a rule
  std::size_t max_rules = 2;
  std::size_t max_size = 40;        // nodes + edges of explored graphs
  bool inject_faults = false;
  unsigned fault_rate_percent = 50;
  /// When set, every trial uses this grammar instead of a random one.
  std::optional<Grammar> grammar;
  /// When set, every trial starts from this graph instead of a random one.
  GraphPtr start;
};

/// Closures under P and under its discrete grammar agree at the depth bound.
CheckReport check_thm54(const CheckConfig& cfg);

/// x ⇝* y and x′ ⇝* y′ give x + x′ ⇝* y + y′ within the summed depth.
CheckReport check_additivity(const CheckConfig& cfg);

/// Operational reachability under the discrete grammar agrees with the
/// existence of a square from closed(g) to closed(h) over its decomposition
/// squares, searched to twice the depth in compositions.
CheckReport check_thm62(const CheckConfig& cfg);

/// Quadruples of derived and identity squares over random open graphs
/// satisfy the interchange law.
CheckReport check_interchange(const CheckConfig& cfg);

/// The loop-removal rule: one node with a loop, down to the bare node.
Rule loop_rule();

}  // namespace openrewrite
