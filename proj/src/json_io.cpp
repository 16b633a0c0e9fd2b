#include "openrewrite/json_io.hpp"

#include <fstream>
#include <sstream>

namespace openrewrite {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing '") + key + "'");
  return *it;
}

std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  return string_at(field(j, key, where), where + "/" + key);
}

std::map<std::string, std::string> string_map(const Json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out.emplace(k, string_at(v, where + "/" + k));
  return out;
}

Json string_map_to_json(const std::map<std::string, std::string>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

template <class F>
auto wrap_domain(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    schema_error(where, e.what());
  }
}

std::map<std::string, std::string> foot_map_ids(const std::vector<std::string>& from,
                                                const std::vector<std::size_t>& map,
                                                const std::vector<std::string>& to) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < from.size(); ++i) out.emplace(from[i], to[map[i]]);
  return out;
}

std::vector<std::size_t> foot_map_from_json(const Json& j, const std::vector<std::string>& from,
                                            const std::vector<std::string>& to, const std::string& where) {
  auto ids = string_map(j, where);
  if (ids.size() != from.size()) schema_error(where, "interface map is not total");
  std::vector<std::size_t> out;
  for (const auto& name : from) {
    auto it = ids.find(name);
    if (it == ids.end()) schema_error(where, "interface element '" + name + "' is not mapped");
    auto pos = std::lower_bound(to.begin(), to.end(), it->second);
    if (pos == to.end() || *pos != it->second) schema_error(where, "unknown interface element '" + it->second + "'");
    out.push_back(static_cast<std::size_t>(pos - to.begin()));
  }
  return out;
}

Json morphism_to_json(const CospanMorphism& m, const StructuredCospan& from, const StructuredCospan& to) {
  Json out = Json::object();
  out["f"] = string_map_to_json(foot_map_ids(from.inputs, m.f, to.inputs));
  out["g"] = hom_to_json(m.g);
  out["h"] = string_map_to_json(foot_map_ids(from.outputs, m.h, to.outputs));
  return out;
}

CospanMorphism morphism_from_json(const Json& j, const StructuredCospan& from, const StructuredCospan& to,
                                  const std::string& where) {
  CospanMorphism m;
  m.f = foot_map_from_json(field(j, "f", where), from.inputs, to.inputs, where + "/f");
  m.g = hom_from_json(field(j, "g", where), from.apex, to.apex, where + "/g");
  m.h = foot_map_from_json(field(j, "h", where), from.outputs, to.outputs, where + "/h");
  return m;
}

}  // namespace

Json parse_json_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (j.is_object()) {
    auto it = j.find("format_version");
    if (it != j.end() && !(it->is_string() && it->get<std::string>() == kFormatVersion))
      throw ParseError("/format_version: unsupported format version " + it->dump());
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json versioned(Json j) {
  Json out = Json::object();
  out["format_version"] = kFormatVersion;
  for (auto& [k, v] : j.items())
    if (k != "format_version") out[k] = std::move(v);
  return out;
}

Json graph_to_json(const Graph& g) {
  Json out = Json::object();
  Json nodes = Json::array();
  for (const Node& n : g.nodes()) nodes.push_back(n.id);
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(Json{{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}});
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  if (g.typed()) {
    Json node_types = Json::object();
    for (const Node& n : g.nodes()) node_types[n.id] = n.type;
    Json edge_types = Json::object();
    for (const Edge& e : g.edges()) edge_types[e.id] = e.type;
    out["typing"] = Json{{"type_graph", *g.type_graph()}, {"node_types", node_types}, {"edge_types", edge_types}};
  }
  return out;
}

GraphPtr graph_from_json(const Json& j, const std::string& where) {
  const Json& nodes = field(j, "nodes", where);
  if (!nodes.is_array()) schema_error(where + "/nodes", "expected an array");
  const Json& edges = field(j, "edges", where);
  if (!edges.is_array()) schema_error(where + "/edges", "expected an array");
  std::optional<std::string> type_graph;
  std::map<std::string, std::string> node_types;
  std::map<std::string, std::string> edge_types;
  if (auto it = j.find("typing"); it != j.end()) {
    const std::string at = where + "/typing";
    type_graph = string_field(*it, "type_graph", at);
    node_types = string_map(field(*it, "node_types", at), at + "/node_types");
    edge_types = string_map(field(*it, "edge_types", at), at + "/edge_types");
  }
  std::vector<Node> out_nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string id = string_at(nodes[i], where + "/nodes/" + std::to_string(i));
    std::string type;
    if (type_graph) {
      auto t = node_types.find(id);
      if (t == node_types.end()) schema_error(where + "/typing/node_types", "node '" + id + "' has no type");
      type = t->second;
    }
    out_nodes.emplace_back(std::move(id), std::move(type));
  }
  std::vector<Edge> out_edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string at = where + "/edges/" + std::to_string(i);
    Edge e{string_field(edges[i], "id", at), string_field(edges[i], "src", at), string_field(edges[i], "tgt", at), {}};
    if (type_graph) {
      auto t = edge_types.find(e.id);
      if (t == edge_types.end()) schema_error(where + "/typing/edge_types", "edge '" + e.id + "' has no type");
      e.type = t->second;
    }
    out_edges.push_back(std::move(e));
  }
  GraphPtr g = make_graph(std::move(out_nodes), std::move(out_edges), std::move(type_graph));
  if (!g->well_formed()) {
    auto report = validate_graph(*g);
    schema_error(where, report.empty() ? "malformed graph" : report.front());
  }
  return g;
}

Json hom_to_json(const GraphHom& h) {
  Json out = Json::object();
  out["nodes"] = string_map_to_json(h.node_ids());
  out["edges"] = string_map_to_json(h.edge_ids());
  return out;
}

GraphHom hom_from_json(const Json& j, const GraphPtr& source, const GraphPtr& target, const std::string& where) {
  auto nodes = string_map(field(j, "nodes", where), where + "/nodes");
  auto edges = string_map(field(j, "edges", where), where + "/edges");
  GraphHom h = wrap_domain(where, [&] { return GraphHom::from_ids(source, target, nodes, edges); });
  if (auto report = validate_hom(h); !report.empty()) schema_error(where, "not a homomorphism: " + report.front());
  return h;
}

Json rule_to_json(const Rule& r) {
  Json out = Json::object();
  out["name"] = r.name;
  out["left"] = graph_to_json(*r.left);
  out["interface"] = graph_to_json(*r.interface);
  out["right"] = graph_to_json(*r.right);
  out["to_left"] = hom_to_json(r.to_left);
  out["to_right"] = hom_to_json(r.to_right);
  return out;
}

Rule rule_from_json(const Json& j, const std::string& where) {
  Rule r;
  r.name = string_field(j, "name", where);
  r.left = graph_from_json(field(j, "left", where), where + "/left");
  r.interface = graph_from_json(field(j, "interface", where), where + "/interface");
  r.right = graph_from_json(field(j, "right", where), where + "/right");
  r.to_left = hom_from_json(field(j, "to_left", where), r.interface, r.left, where + "/to_left");
  r.to_right = hom_from_json(field(j, "to_right", where), r.interface, r.right, where + "/to_right");
  if (auto report = validate_rule(r); !report.empty()) schema_error(where, report.front());
  return r;
}

Json grammar_to_json(const Grammar& g) {
  Json rules = Json::array();
  for (const Rule& r : g.rules) rules.push_back(rule_to_json(r));
  return Json{{"rules", rules}};
}

Grammar grammar_from_json(const Json& j, const std::string& where) {
  if (j.is_object() && !j.contains("rules") && j.contains("left")) return Grammar{{rule_from_json(j, where)}};
  const Json& rules = field(j, "rules", where);
  if (!rules.is_array()) schema_error(where + "/rules", "expected an array");
  Grammar g;
  for (std::size_t i = 0; i < rules.size(); ++i) g.rules.push_back(rule_from_json(rules[i], where + "/rules/" + std::to_string(i)));
  if (auto report = validate_grammar(g); !report.empty()) schema_error(where, report.front());
  return g;
}

Json cospan_to_json(const StructuredCospan& c) {
  Json out = Json::object();
  out["apex"] = graph_to_json(*c.apex);
  out["inputs"] = string_map_to_json(c.input_ids());
  out["outputs"] = string_map_to_json(c.output_ids());
  return out;
}

StructuredCospan cospan_from_json(const Json& j, const std::string& where) {
  GraphPtr apex = graph_from_json(field(j, "apex", where), where + "/apex");
  auto inputs = string_map(field(j, "inputs", where), where + "/inputs");
  auto outputs = string_map(field(j, "outputs", where), where + "/outputs");
  StructuredCospan c = wrap_domain(where, [&] { return StructuredCospan::make(apex, inputs, outputs); });
  if (auto report = validate_cospan(c); !report.empty()) schema_error(where, report.front());
  return c;
}

Json cospan_rule_to_json(const CospanRule& r) {
  Json out = Json::object();
  out["name"] = r.name;
  out["top"] = cospan_to_json(r.top);
  out["middle"] = cospan_to_json(r.middle);
  out["bottom"] = cospan_to_json(r.bottom);
  out["up"] = morphism_to_json(r.up, r.middle, r.top);
  out["down"] = morphism_to_json(r.down, r.middle, r.bottom);
  return out;
}

CospanRule cospan_rule_from_json(const Json& j, const std::string& where) {
  CospanRule r;
  r.name = string_field(j, "name", where);
  r.top = cospan_from_json(field(j, "top", where), where + "/top");
  r.middle = cospan_from_json(field(j, "middle", where), where + "/middle");
  r.bottom = cospan_from_json(field(j, "bottom", where), where + "/bottom");
  r.up = morphism_from_json(field(j, "up", where), r.middle, r.top, where + "/up");
  r.down = morphism_from_json(field(j, "down", where), r.middle, r.bottom, where + "/down");
  if (auto report = validate_cospan_rule(r); !report.empty()) schema_error(where, report.front());
  return r;
}

Json cospan_grammar_to_json(const CospanGrammar& g) {
  Json rules = Json::array();
  for (const CospanRule& r : g.rules) rules.push_back(cospan_rule_to_json(r));
  return Json{{"rules", rules}};
}

CospanGrammar cospan_grammar_from_json(const Json& j, const std::string& where) {
  const Json& rules = field(j, "rules", where);
  if (!rules.is_array()) schema_error(where + "/rules", "expected an array");
  CospanGrammar g;
  for (std::size_t i = 0; i < rules.size(); ++i)
    g.rules.push_back(cospan_rule_from_json(rules[i], where + "/rules/" + std::to_string(i)));
  if (auto report = validate_cospan_grammar(g); !report.empty()) schema_error(where, report.front());
  return g;
}

Json step_to_json(const DerivationStep& s) {
  Json out = Json::object();
  out["rule"] = s.rule;
  out["left"] = graph_to_json(*s.match.source());
  out["interface"] = graph_to_json(*s.k_to_complement.source());
  out["right"] = graph_to_json(*s.r_to_result.source());
  out["graph"] = graph_to_json(*s.graph);
  out["match"] = hom_to_json(s.match);
  out["complement"] = graph_to_json(*s.complement);
  out["k_to_complement"] = hom_to_json(s.k_to_complement);
  out["complement_to_graph"] = hom_to_json(s.complement_to_graph);
  out["result"] = graph_to_json(*s.result);
  out["r_to_result"] = hom_to_json(s.r_to_result);
  out["complement_to_result"] = hom_to_json(s.complement_to_result);
  return out;
}

Json trace_to_json(const Trace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(step_to_json(s));
  Json out = Json::object();
  out["start_form"] = t.start_form;
  out["end_form"] = t.end_form;
  out["steps"] = std::move(steps);
  return out;
}

Trace trace_from_json(const Json& j, const std::string& where) {
  Trace t;
  t.start_form = string_field(j, "start_form", where);
  t.end_form = string_field(j, "end_form", where);
  const Json& steps = field(j, "steps", where);
  if (!steps.is_array()) schema_error(where + "/steps", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string at = where + "/steps/" + std::to_string(i);
    const Json& s = steps[i];
    DerivationStep step;
    step.rule = string_field(s, "rule", at);
    GraphPtr left = graph_from_json(field(s, "left", at), at + "/left");
    GraphPtr interface = graph_from_json(field(s, "interface", at), at + "/interface");
    GraphPtr right = graph_from_json(field(s, "right", at), at + "/right");
    step.graph = graph_from_json(field(s, "graph", at), at + "/graph");
    step.complement = graph_from_json(field(s, "complement", at), at + "/complement");
    step.result = graph_from_json(field(s, "result", at), at + "/result");
    step.match = hom_from_json(field(s, "match", at), left, step.graph, at + "/match");
    step.k_to_complement = hom_from_json(field(s, "k_to_complement", at), interface, step.complement, at + "/k_to_complement");
    step.complement_to_graph =
        hom_from_json(field(s, "complement_to_graph", at), step.complement, step.graph, at + "/complement_to_graph");
    step.r_to_result = hom_from_json(field(s, "r_to_result", at), right, step.result, at + "/r_to_result");
    step.complement_to_result =
        hom_from_json(field(s, "complement_to_result", at), step.complement, step.result, at + "/complement_to_result");
    if (!t.steps.empty() && !(*t.steps.back().result == *step.graph))
      schema_error(at, "step does not start where the previous step ended");
    t.steps.push_back(std::move(step));
  }
  return t;
}

TypeGraphRegistry type_graphs_from_json(const Json& j) {
  TypeGraphRegistry out;
  if (!j.is_object()) return out;
  auto it = j.find("type_graphs");
  if (it == j.end()) return out;
  if (!it->is_object()) schema_error("/type_graphs", "expected an object");
  for (const auto& [name, g] : it->items()) out.emplace(name, graph_from_json(g, "/type_graphs/" + name));
  return out;
}

DocumentKind detect_kind(const Json& j) {
  if (!j.is_object()) return DocumentKind::unknown;
  if (j.contains("check") && j.contains("failures")) return DocumentKind::check_report;
  if (j.contains("steps")) return DocumentKind::trace;
  if (j.contains("rules")) {
    const Json& rules = j["rules"];
    if (rules.is_array() && !rules.empty() && rules[0].is_object() && rules[0].contains("top"))
      return DocumentKind::cospan_grammar;
    return DocumentKind::grammar;
  }
  if (j.contains("top")) return DocumentKind::cospan_rule;
  if (j.contains("left")) return DocumentKind::rule;
  if (j.contains("apex")) return DocumentKind::cospan;
  if (j.contains("nodes") && j["nodes"].is_array()) return DocumentKind::graph;
  if (j.contains("nodes") && j["nodes"].is_object()) return DocumentKind::hom;
  return DocumentKind::unknown;
}

const char* to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::graph:
      return "graph";
    case DocumentKind::hom:
      return "hom";
    case DocumentKind::rule:
      return "rule";
    case DocumentKind::grammar:
      return "grammar";
    case DocumentKind::cospan:
      return "cospan";
    case DocumentKind::cospan_rule:
      return "cospan-rule";
    case DocumentKind::cospan_grammar:
      return "cospan-grammar";
    case DocumentKind::trace:
      return "trace";
    case DocumentKind::check_report:
      return "check-report";
    case DocumentKind::unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace openrewrite
