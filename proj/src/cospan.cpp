#include "openrewrite/cospan.hpp"

#include <algorithm>
#include <set>

namespace openrewrite {

namespace {

std::size_t foot_index(const std::vector<std::string>& feet, const std::string& name) {
  auto it = std::lower_bound(feet.begin(), feet.end(), name);
  if (it == feet.end() || *it != name) throw DomainError("unknown interface element '" + name + "'");
  return static_cast<std::size_t>(it - feet.begin());
}

std::map<std::string, std::string> foot_ids(const std::vector<std::string>& feet,
                                            const std::vector<std::size_t>& map, const Graph& apex) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < feet.size(); ++i) out.emplace(feet[i], apex.nodes()[map[i]].id);
  return out;
}

GraphHom foot_leg(const GraphPtr& foot, const std::vector<std::size_t>& map, const GraphPtr& apex) {
  return GraphHom(foot, apex, map, {});
}

}  // namespace

StructuredCospan StructuredCospan::make(GraphPtr apex, const std::map<std::string, std::string>& inputs,
                                        const std::map<std::string, std::string>& outputs) {
  StructuredCospan c;
  c.apex = std::move(apex);
  for (const auto& [foot, node] : inputs) {
    c.inputs.push_back(foot);
    c.input_map.push_back(c.apex->node_index(node));
  }
  for (const auto& [foot, node] : outputs) {
    c.outputs.push_back(foot);
    c.output_map.push_back(c.apex->node_index(node));
  }
  return c;
}

std::size_t StructuredCospan::input_index(const std::string& name) const { return foot_index(inputs, name); }
std::size_t StructuredCospan::output_index(const std::string& name) const { return foot_index(outputs, name); }
std::map<std::string, std::string> StructuredCospan::input_ids() const { return foot_ids(inputs, input_map, *apex); }
std::map<std::string, std::string> StructuredCospan::output_ids() const { return foot_ids(outputs, output_map, *apex); }

GraphPtr StructuredCospan::input_foot() const { return discrete_graph(inputs); }
GraphPtr StructuredCospan::output_foot() const { return discrete_graph(outputs); }
GraphHom StructuredCospan::input_leg() const { return foot_leg(input_foot(), input_map, apex); }
GraphHom StructuredCospan::output_leg() const { return foot_leg(output_foot(), output_map, apex); }

std::vector<std::string> validate_cospan(const StructuredCospan& c) {
  std::vector<std::string> report;
  if (!c.apex) {
    report.emplace_back("cospan has no apex");
    return report;
  }
  for (const auto& v : validate_graph(*c.apex)) report.push_back("apex: " + v);
  auto check_feet = [&](const std::vector<std::string>& feet, const std::vector<std::size_t>& map,
                        const char* side) {
    if (!std::is_sorted(feet.begin(), feet.end()) ||
        std::adjacent_find(feet.begin(), feet.end()) != feet.end())
      report.push_back(std::string(side) + " set is not sorted and duplicate-free");
    if (map.size() != feet.size()) {
      report.push_back(std::string(side) + " map is not total");
      return;
    }
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] >= c.apex->node_count())
        report.push_back(std::string(side) + " '" + feet[i] + "' maps outside the apex");
  };
  check_feet(c.inputs, c.input_map, "input");
  check_feet(c.outputs, c.output_map, "output");
  if (c.apex->typed()) report.emplace_back("interfaces are sets; typed apexes are not supported for cospans");
  return report;
}

CospanMorphism CospanMorphism::identity(const StructuredCospan& c) {
  CospanMorphism m;
  m.f.resize(c.inputs.size());
  m.h.resize(c.outputs.size());
  for (std::size_t i = 0; i < m.f.size(); ++i) m.f[i] = i;
  for (std::size_t i = 0; i < m.h.size(); ++i) m.h[i] = i;
  m.g = GraphHom::identity(c.apex);
  return m;
}

std::vector<std::string> validate_cospan_morphism(const StructuredCospan& from, const CospanMorphism& m,
                                                  const StructuredCospan& to) {
  std::vector<std::string> report;
  if (!same_graph(m.g.source(), from.apex) || !same_graph(m.g.target(), to.apex)) {
    report.emplace_back("apex map does not run between the two apexes");
    return report;
  }
  for (const auto& v : validate_hom(m.g)) report.push_back("apex map: " + v);
  if (!report.empty()) return report;
  if (m.f.size() != from.inputs.size()) report.emplace_back("input map is not total");
  if (m.h.size() != from.outputs.size()) report.emplace_back("output map is not total");
  if (!report.empty()) return report;
  for (std::size_t i = 0; i < m.f.size(); ++i) {
    if (m.f[i] >= to.inputs.size()) {
      report.push_back("input '" + from.inputs[i] + "' maps outside the target inputs");
    } else if (m.g.node(from.input_map[i]) != to.input_map[m.f[i]]) {
      report.push_back("input square does not commute at '" + from.inputs[i] + "'");
    }
  }
  for (std::size_t i = 0; i < m.h.size(); ++i) {
    if (m.h[i] >= to.outputs.size()) {
      report.push_back("output '" + from.outputs[i] + "' maps outside the target outputs");
    } else if (m.g.node(from.output_map[i]) != to.output_map[m.h[i]]) {
      report.push_back("output square does not commute at '" + from.outputs[i] + "'");
    }
  }
  return report;
}

CospanMorphism compose_cospan_morphisms(const CospanMorphism& first, const CospanMorphism& second) {
  CospanMorphism m;
  m.f.resize(first.f.size());
  m.h.resize(first.h.size());
  for (std::size_t i = 0; i < m.f.size(); ++i) m.f[i] = second.f[first.f[i]];
  for (std::size_t i = 0; i < m.h.size(); ++i) m.h[i] = second.h[first.h[i]];
  m.g = compose_homs(first.g, second.g);
  return m;
}

CospanComposite compose_cospans_detailed(const StructuredCospan& c1, const StructuredCospan& c2) {
  if (c1.outputs != c2.inputs)
    throw DomainError("compose_cospans: outputs of the first cospan differ from inputs of the second");
  GraphPtr shared = c1.output_foot();
  PushoutResult po = pushout(Span{shared, GraphHom(shared, c1.apex, c1.output_map, {}),
                                  GraphHom(shared, c2.apex, c2.input_map, {})});
  Renaming named = untag(po.object());
  StructuredCospan out;
  out.apex = named.graph;
  out.inputs = c1.inputs;
  out.outputs = c2.outputs;
  for (std::size_t v : c1.input_map) out.input_map.push_back(named.iso.node(po.inj_left().node(v)));
  for (std::size_t v : c2.output_map) out.output_map.push_back(named.iso.node(po.inj_right().node(v)));
  return CospanComposite{std::move(out), std::move(po), std::move(named.iso)};
}

StructuredCospan compose_cospans(const StructuredCospan& c1, const StructuredCospan& c2) {
  return compose_cospans_detailed(c1, c2).cospan;
}

StructuredCospan identity_cospan(const std::vector<std::string>& feet) {
  std::vector<std::string> sorted = feet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("identity_cospan: duplicate interface element");
  StructuredCospan c;
  c.apex = discrete_graph(sorted);
  c.inputs = sorted;
  c.outputs = sorted;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    c.input_map.push_back(i);
    c.output_map.push_back(i);
  }
  return c;
}

StructuredCospan closed(const GraphPtr& g) {
  StructuredCospan c;
  c.apex = g;
  return c;
}

namespace {

void relabel(std::vector<std::string>& feet, std::vector<std::size_t>& map,
             const std::map<std::string, std::string>& renaming) {
  if (renaming.size() != feet.size()) throw DomainError("relabel: renaming is not a bijection on the interface");
  std::vector<std::pair<std::string, std::size_t>> pairs;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < feet.size(); ++i) {
    auto it = renaming.find(feet[i]);
    if (it == renaming.end()) throw DomainError("relabel: '" + feet[i] + "' is not renamed");
    if (!seen.insert(it->second).second) throw DomainError("relabel: renaming is not injective");
    pairs.emplace_back(it->second, map[i]);
  }
  std::sort(pairs.begin(), pairs.end());
  feet.clear();
  map.clear();
  for (auto& [name, v] : pairs) {
    feet.push_back(name);
    map.push_back(v);
  }
}

}  // namespace

StructuredCospan relabel_inputs(const StructuredCospan& c, const std::map<std::string, std::string>& renaming) {
  StructuredCospan out = c;
  relabel(out.inputs, out.input_map, renaming);
  return out;
}

StructuredCospan relabel_outputs(const StructuredCospan& c, const std::map<std::string, std::string>& renaming) {
  StructuredCospan out = c;
  relabel(out.outputs, out.output_map, renaming);
  return out;
}

ColoredDigraph encode_cospan(const StructuredCospan& c) {
  ColoredDigraph d;
  const Graph& g = *c.apex;
  for (const Node& n : g.nodes()) d.add_vertex("n:" + n.type);
  for (std::size_t e = 0; e < g.edge_count(); ++e) d.add_arc(g.src(e), g.tgt(e), "e:" + g.edges()[e].type);
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    std::size_t v = d.add_vertex("in:" + c.inputs[i]);
    d.add_arc(v, c.input_map[i], "in");
  }
  for (std::size_t i = 0; i < c.outputs.size(); ++i) {
    std::size_t v = d.add_vertex("out:" + c.outputs[i]);
    d.add_arc(v, c.output_map[i], "out");
  }
  return d;
}

std::string cospan_certificate(const StructuredCospan& c) {
  return "cospan|" + canonical_certificate(encode_cospan(c));
}

std::optional<GraphHom> find_cospan_isomorphism(const StructuredCospan& c1, const StructuredCospan& c2) {
  if (c1.inputs != c2.inputs || c1.outputs != c2.outputs) return std::nullopt;
  const Graph& a = *c1.apex;
  const Graph& b = *c2.apex;
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return std::nullopt;
  HomSearch opts;
  opts.mono_only = true;
  opts.fixed_nodes.assign(a.node_count(), npos);
  auto pin = [&](std::size_t from, std::size_t to) {
    if (opts.fixed_nodes[from] != npos && opts.fixed_nodes[from] != to) return false;
    opts.fixed_nodes[from] = to;
    return true;
  };
  for (std::size_t i = 0; i < c1.inputs.size(); ++i)
    if (!pin(c1.input_map[i], c2.input_map[i])) return std::nullopt;
  for (std::size_t i = 0; i < c1.outputs.size(); ++i)
    if (!pin(c1.output_map[i], c2.output_map[i])) return std::nullopt;
  std::optional<GraphHom> found;
  search_homs(a, b, opts, [&](std::span<const std::size_t> nodes, std::span<const std::size_t> edges) {
    found.emplace(c1.apex, c2.apex, std::vector<std::size_t>(nodes.begin(), nodes.end()),
                  std::vector<std::size_t>(edges.begin(), edges.end()));
    return false;
  });
  return found;
}

bool cospans_isomorphic(const StructuredCospan& c1, const StructuredCospan& c2) {
  return find_cospan_isomorphism(c1, c2).has_value();
}

}  // namespace openrewrite
