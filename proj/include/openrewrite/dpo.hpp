#pragma once

// Double-pushout rewriting: rules, matches, derivation steps, and bounded
// exploration of the rewrite relation.

#include <optional>
#include <string>
#include <vector>

#include "openrewrite/colimits.hpp"
#include "openrewrite/graph.hpp"

namespace openrewrite {

/// ℓ <- k -> r with both legs mono.
struct Rule {
  std::string name;
  GraphPtr left;
  GraphPtr interface;
  GraphPtr right;
  GraphHom to_left;
  GraphHom to_right;

  /// Rule whose legs are inclusions of `interface` by node/edge id.
  static Rule from_inclusions(std::string name, GraphPtr left, GraphPtr interface, GraphPtr right);
};

std::vector<std::string> validate_rule(const Rule& r);

struct Grammar {
  std::vector<Rule> rules;

  const Rule* find(const std::string& name) const;
};

std::vector<std::string> validate_grammar(const Grammar& g);

struct Match {
  GraphHom hom;
  bool applicable = false;
  GluingReport gluing;
};

/// All homs ℓ→g (monos only by default), each with its gluing report.
std::vector<Match> find_matches(const Rule& rule, const GraphPtr& g, bool mono_only = true);

struct DerivationStep {
  std::string rule;
  GraphHom match;          // ℓ -> g
  GraphPtr graph;          // g
  GraphPtr complement;     // k'
  GraphPtr result;         // h
  GraphHom k_to_complement;
  GraphHom r_to_result;
  GraphHom complement_to_graph;   // k' -> g
  GraphHom complement_to_result;  // k' -> h

  /// g <- k' -> h
  Rule derived_rule() const;
};

struct ApplyOptions {
  /// Certify both squares with verify_pushout (skipped when a graph exceeds
  /// the verification bounds).
  bool certify = true;
};

/// Raised when a step fails its own postconditions; indicates a bug.
class CertificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Running totals of the inline rule checks on derived rules, across threads.
struct InvariantTally {
  std::size_t checked = 0;
  std::size_t violated = 0;
};

InvariantTally invariant_tally();
/// Counts one inline check; returns `ok`.
bool record_invariant(bool ok);

/// Pushout complement, then pushout with r. Context elements keep their ids
/// in the result; elements created by r take r's id, primed on collision.
DerivationStep apply_rule(const Rule& rule, const GraphPtr& g, const GraphHom& match,
                          const ApplyOptions& opts = {});

struct Trace {
  std::vector<DerivationStep> steps;
  std::string start_form;
  std::string end_form;
};

struct SearchBounds {
  std::size_t max_depth = 3;
  std::size_t max_size = 24;  // nodes + edges of any explored graph
  bool mono_only = true;
};

struct ClosureEntry {
  std::string form;
  GraphPtr graph;
  std::size_t depth = 0;
  std::size_t parent = npos;
  std::optional<DerivationStep> step;  // the step from the parent
};

struct Closure {
  std::vector<ClosureEntry> entries;  // discovery order; entry 0 is the start
  bool depth_exhausted = false;       // a new class lies just past max_depth
  bool size_exhausted = false;        // a step was discarded by max_size

  bool partial() const { return depth_exhausted || size_exhausted; }
  std::vector<std::string> forms() const;  // sorted
  std::optional<std::size_t> find(const std::string& form) const;
  Trace trace_to(std::size_t entry) const;
};

/// Breadth-first closure of the rewrite relation from g, deduplicated by
/// canonical form, keeping the first (shortest) trace found.
Closure derive_closure(const Grammar& grammar, const GraphPtr& g, const SearchBounds& bounds);

enum class Reachability { reachable, unreachable, unknown };

struct ReachResult {
  Reachability status = Reachability::unknown;
  std::optional<Trace> trace;
};

/// Unreachable only when the closure was explored completely within bounds.
ReachResult reachable(const Grammar& grammar, const GraphPtr& from, const GraphPtr& to,
                      const SearchBounds& bounds);

const char* to_string(Reachability r);

}  // namespace openrewrite
