#include "openrewrite/dot.hpp"

#include <sstream>

namespace openrewrite {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string label(const std::string& id, const std::string& type) { return type.empty() ? id : id + ":" + type; }

void write_body(std::ostringstream& out, const Graph& g, const std::string& prefix, const std::string& indent) {
  for (const Node& n : g.nodes())
    out << indent << quote(prefix + n.id) << " [label=" << quote(label(n.id, n.type)) << "];\n";
  for (const Edge& e : g.edges())
    out << indent << quote(prefix + e.src) << " -> " << quote(prefix + e.tgt) << " [label=" << quote(label(e.id, e.type))
        << "];\n";
}

void write_cluster(std::ostringstream& out, const Graph& g, const std::string& cluster, const std::string& title,
                   const std::string& prefix) {
  out << "  subgraph " << quote("cluster_" + cluster) << " {\n";
  out << "    label=" << quote(title) << ";\n    style=rounded;\n";
  write_body(out, g, prefix, "    ");
  out << "  }\n";
}

}  // namespace

std::string graph_to_dot(const Graph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n";
  write_body(out, g, "", "  ");
  out << "}\n";
  return out.str();
}

std::string cospan_to_dot(const StructuredCospan& c, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=LR;\n  compound=true;\n";
  auto feet = [&](const std::vector<std::string>& names, const char* cluster, const char* title) {
    out << "  subgraph " << quote(std::string("cluster_") + cluster) << " {\n";
    out << "    label=" << quote(title) << ";\n    style=rounded;\n";
    for (const auto& f : names) out << "    " << quote(std::string(cluster) + ":" + f) << " [label=" << quote(f) << "];\n";
    out << "  }\n";
  };
  feet(c.inputs, "inputs", "inputs");
  write_cluster(out, *c.apex, "apex", "apex", "apex:");
  feet(c.outputs, "outputs", "outputs");
  for (std::size_t i = 0; i < c.inputs.size(); ++i)
    out << "  " << quote("inputs:" + c.inputs[i]) << " -> " << quote("apex:" + c.apex->nodes()[c.input_map[i]].id)
        << " [style=dashed];\n";
  for (std::size_t i = 0; i < c.outputs.size(); ++i)
    out << "  " << quote("outputs:" + c.outputs[i]) << " -> " << quote("apex:" + c.apex->nodes()[c.output_map[i]].id)
        << " [style=dashed];\n";
  out << "}\n";
  return out.str();
}

std::string trace_to_dot(const Trace& t, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=LR;\n  compound=true;\n";
  if (!t.steps.empty()) {
    write_cluster(out, *t.steps.front().graph, "g0", "start", "g0:");
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const std::string cur = "g" + std::to_string(i + 1);
      write_cluster(out, *t.steps[i].result, cur, "after " + t.steps[i].rule, cur + ":");
    }
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const Graph& from = *t.steps[i].graph;
      const Graph& to = *t.steps[i].result;
      if (from.node_count() == 0 || to.node_count() == 0) continue;
      const std::string a = "g" + std::to_string(i);
      const std::string b = "g" + std::to_string(i + 1);
      out << "  " << quote(a + ":" + from.nodes().front().id) << " -> " << quote(b + ":" + to.nodes().front().id)
          << " [ltail=" << quote("cluster_" + a) << ", lhead=" << quote("cluster_" + b) << ", label="
          << quote(t.steps[i].rule) << ", style=bold];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace openrewrite
