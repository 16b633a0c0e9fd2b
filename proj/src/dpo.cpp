#include "openrewrite/dpo.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "openrewrite/canonical.hpp"

namespace openrewrite {

namespace {

GraphHom inclusion_by_id(const GraphPtr& sub, const GraphPtr& super) {
  std::map<std::string, std::string> nodes;
  std::map<std::string, std::string> edges;
  for (const Node& n : sub->nodes()) nodes.emplace(n.id, n.id);
  for (const Edge& e : sub->edges()) edges.emplace(e.id, e.id);
  return GraphHom::from_ids(sub, super, nodes, edges);
}

}  // namespace

Rule Rule::from_inclusions(std::string name, GraphPtr left, GraphPtr interface, GraphPtr right) {
  Rule r;
  r.name = std::move(name);
  r.to_left = inclusion_by_id(interface, left);
  r.to_right = inclusion_by_id(interface, right);
  r.left = std::move(left);
  r.interface = std::move(interface);
  r.right = std::move(right);
  return r;
}

std::vector<std::string> validate_rule(const Rule& r) {
  std::vector<std::string> report;
  if (!r.left || !r.interface || !r.right) {
    report.push_back("rule '" + r.name + "' is missing a graph");
    return report;
  }
  for (const auto& v : validate_graph(*r.left)) report.push_back("left: " + v);
  for (const auto& v : validate_graph(*r.interface)) report.push_back("interface: " + v);
  for (const auto& v : validate_graph(*r.right)) report.push_back("right: " + v);
  if (!report.empty()) return report;
  if (!same_graph(r.to_left.source(), r.interface) || !same_graph(r.to_left.target(), r.left))
    report.emplace_back("to_left does not run from interface to left");
  if (!same_graph(r.to_right.source(), r.interface) || !same_graph(r.to_right.target(), r.right))
    report.emplace_back("to_right does not run from interface to right");
  if (!report.empty()) return report;
  for (const auto& v : validate_hom(r.to_left)) report.push_back("to_left: " + v);
  for (const auto& v : validate_hom(r.to_right)) report.push_back("to_right: " + v);
  if (!report.empty()) return report;
  if (!is_mono(r.to_left)) report.emplace_back("to_left is not mono");
  if (!is_mono(r.to_right)) report.emplace_back("to_right is not mono");
  return report;
}

const Rule* Grammar::find(const std::string& name) const {
  for (const Rule& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<std::string> validate_grammar(const Grammar& g) {
  std::vector<std::string> report;
  std::set<std::string> names;
  for (const Rule& r : g.rules) {
    if (!names.insert(r.name).second) report.push_back("duplicate rule name '" + r.name + "'");
    for (const auto& v : validate_rule(r)) report.push_back("rule '" + r.name + "': " + v);
  }
  return report;
}

std::vector<Match> find_matches(const Rule& rule, const GraphPtr& g, bool mono_only) {
  std::vector<Match> out;
  for (GraphHom& hom : enumerate_homs(rule.left, g, mono_only)) {
    Match m;
    m.gluing = gluing_check(rule.to_left, hom);
    m.applicable = m.gluing.ok();
    m.hom = std::move(hom);
    out.push_back(std::move(m));
  }
  return out;
}

Rule DerivationStep::derived_rule() const {
  Rule r;
  r.name = rule + "@derived";
  r.left = graph;
  r.interface = complement;
  r.right = result;
  r.to_left = complement_to_graph;
  r.to_right = complement_to_result;
  return r;
}

namespace {

std::atomic<std::size_t> invariants_checked{0};
std::atomic<std::size_t> invariants_violated{0};

}  // namespace

InvariantTally invariant_tally() { return InvariantTally{invariants_checked.load(), invariants_violated.load()}; }

bool record_invariant(bool ok) {
  ++invariants_checked;
  if (!ok) ++invariants_violated;
  return ok;
}

namespace {

// Renames the pushout object so context elements keep their complement ids
// and elements created by the rule take the rule's ids.
struct Renamed {
  GraphPtr graph;
  GraphHom rename;  // pushout object -> graph (an isomorphism)
};

Renamed rename_result(const PushoutResult& po) {
  const Graph& obj = *po.object();
  const Graph& context = *po.inj_left().source();
  const Graph& created = *po.inj_right().source();
  std::vector<std::string> node_name(obj.node_count());
  std::vector<std::string> edge_name(obj.edge_count());
  std::set<std::string> node_used;
  std::set<std::string> edge_used;
  for (std::size_t i = 0; i < context.node_count(); ++i) {
    node_name[po.inj_left().node(i)] = context.nodes()[i].id;
    node_used.insert(context.nodes()[i].id);
  }
  for (std::size_t i = 0; i < context.edge_count(); ++i) {
    edge_name[po.inj_left().edge(i)] = context.edges()[i].id;
    edge_used.insert(context.edges()[i].id);
  }
  auto fresh = [](std::set<std::string>& used, std::string id) {
    while (used.count(id) != 0) id += "'";
    used.insert(id);
    return id;
  };
  for (std::size_t i = 0; i < created.node_count(); ++i) {
    std::string& slot = node_name[po.inj_right().node(i)];
    if (slot.empty()) slot = fresh(node_used, created.nodes()[i].id);
  }
  for (std::size_t i = 0; i < created.edge_count(); ++i) {
    std::string& slot = edge_name[po.inj_right().edge(i)];
    if (slot.empty()) slot = fresh(edge_used, created.edges()[i].id);
  }
  for (std::size_t i = 0; i < obj.node_count(); ++i)
    if (node_name[i].empty()) node_name[i] = fresh(node_used, obj.nodes()[i].id);
  for (std::size_t i = 0; i < obj.edge_count(); ++i)
    if (edge_name[i].empty()) edge_name[i] = fresh(edge_used, obj.edges()[i].id);

  std::vector<Node> nodes;
  for (std::size_t i = 0; i < obj.node_count(); ++i) nodes.emplace_back(node_name[i], obj.nodes()[i].type);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < obj.edge_count(); ++i)
    edges.push_back(Edge{edge_name[i], node_name[obj.src(i)], node_name[obj.tgt(i)], obj.edges()[i].type});
  GraphPtr g = make_graph(std::move(nodes), std::move(edges), obj.type_graph());
  std::vector<std::size_t> nmap(obj.node_count());
  std::vector<std::size_t> emap(obj.edge_count());
  for (std::size_t i = 0; i < nmap.size(); ++i) nmap[i] = g->node_index(node_name[i]);
  for (std::size_t i = 0; i < emap.size(); ++i) emap[i] = g->edge_index(edge_name[i]);
  return Renamed{g, GraphHom(po.object(), g, std::move(nmap), std::move(emap))};
}

void certify_square(const SquareHoms& sq, const char* which) {
  try {
    if (!verify_pushout(sq)) throw CertificationFailure(std::string(which) + " square is not a pushout");
  } catch (const VerifyBoundExceeded&) {
    // too large to certify by enumeration; the structural check still applies
    if (!is_pushout_square(sq)) throw CertificationFailure(std::string(which) + " square is not a pushout");
  }
}

}  // namespace

DerivationStep apply_rule(const Rule& rule, const GraphPtr& g, const GraphHom& match, const ApplyOptions& opts) {
  if (!same_graph(match.source(), rule.left) || !same_graph(match.target(), g))
    throw DomainError("apply_rule: match does not run from the rule's left side to the graph");
  if (auto problems = validate_hom(match); !problems.empty())
    throw DomainError("apply_rule: match is not a homomorphism: " + problems.front());

  PushoutComplement pc = pushout_complement(rule.to_left, match);
  PushoutResult po = pushout(Span{rule.interface, pc.k_to_kprime, rule.to_right});
  Renamed named = rename_result(po);

  DerivationStep step;
  step.rule = rule.name;
  step.match = match;
  step.graph = g;
  step.complement = pc.kprime;
  step.result = named.graph;
  step.k_to_complement = pc.k_to_kprime;
  step.complement_to_graph = pc.kprime_to_g;
  step.complement_to_result = compose_homs(po.inj_left(), named.rename);
  step.r_to_result = compose_homs(po.inj_right(), named.rename);

  // Derived rules are rules: both derived legs must be mono.
  if (!record_invariant(is_mono(step.complement_to_graph) && is_mono(step.complement_to_result)))
    throw CertificationFailure("derived rule of '" + rule.name + "' has a non-mono leg");

  if (opts.certify) {
    certify_square({rule.to_left, pc.k_to_kprime, match, pc.kprime_to_g}, "left");
    certify_square({pc.k_to_kprime, rule.to_right, step.complement_to_result, step.r_to_result}, "right");
  }
  return step;
}

std::vector<std::string> Closure::forms() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.push_back(e.form);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> Closure::find(const std::string& form) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].form == form) return i;
  return std::nullopt;
}

Trace Closure::trace_to(std::size_t entry) const {
  Trace t;
  t.end_form = entries.at(entry).form;
  std::vector<const DerivationStep*> chain;
  for (std::size_t i = entry; entries[i].parent != npos; i = entries[i].parent) chain.push_back(&*entries[i].step);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) t.steps.push_back(**it);
  t.start_form = entries.front().form;
  return t;
}

namespace {

struct Explorer {
  const Grammar& grammar;
  const SearchBounds& bounds;
  const std::string* target;
  Closure closure;
  std::unordered_map<std::string, std::size_t> known;
  std::optional<std::size_t> hit;

  std::vector<const Rule*> ordered_rules() const {
    std::vector<const Rule*> rules;
    for (const Rule& r : grammar.rules) rules.push_back(&r);
    std::stable_sort(rules.begin(), rules.end(), [](const Rule* a, const Rule* b) { return a->name < b->name; });
    return rules;
  }

  void add(ClosureEntry entry) {
    known.emplace(entry.form, closure.entries.size());
    if (target != nullptr && entry.form == *target) hit = closure.entries.size();
    closure.entries.push_back(std::move(entry));
  }

  void run(const GraphPtr& start) {
    add(ClosureEntry{canonical_form(*start), start, 0, npos, std::nullopt});
    if (hit) return;
    const auto rules = ordered_rules();
    std::vector<std::size_t> frontier = {0};
    for (std::size_t depth = 0; !frontier.empty(); ++depth) {
      const bool probing = depth == bounds.max_depth;
      std::vector<std::size_t> next;
      for (std::size_t idx : frontier) {
        const GraphPtr graph = closure.entries[idx].graph;
        for (const Rule* rule : rules) {
          for (const Match& m : find_matches(*rule, graph, bounds.mono_only)) {
            if (!m.applicable) continue;
            DerivationStep step = apply_rule(*rule, graph, m.hom, ApplyOptions{false});
            if (step.result->size() > bounds.max_size) {
              closure.size_exhausted = true;
              continue;
            }
            std::string form = canonical_form(*step.result);
            if (known.count(form) != 0) continue;
            if (probing) {
              closure.depth_exhausted = true;
              return;
            }
            next.push_back(closure.entries.size());
            add(ClosureEntry{std::move(form), step.result, depth + 1, idx, std::move(step)});
            if (hit) return;
          }
        }
      }
      if (probing) return;
      frontier = std::move(next);
    }
  }
};

}  // namespace

Closure derive_closure(const Grammar& grammar, const GraphPtr& g, const SearchBounds& bounds) {
  Explorer ex{grammar, bounds, nullptr, {}, {}, std::nullopt};
  ex.run(g);
  return std::move(ex.closure);
}

ReachResult reachable(const Grammar& grammar, const GraphPtr& from, const GraphPtr& to, const SearchBounds& bounds) {
  const std::string target = canonical_form(*to);
  Explorer ex{grammar, bounds, &target, {}, {}, std::nullopt};
  ex.run(from);
  ReachResult result;
  if (ex.hit) {
    result.status = Reachability::reachable;
    result.trace = ex.closure.trace_to(*ex.hit);
  } else {
    result.status = ex.closure.partial() ? Reachability::unknown : Reachability::unreachable;
  }
  return result;
}

const char* to_string(Reachability r) {
  switch (r) {
    case Reachability::reachable:
      return "reachable";
    case Reachability::unreachable:
      return "unreachable";
    case Reachability::unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace openrewrite
