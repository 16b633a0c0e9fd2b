#include "openrewrite/discretize.hpp"

#include <numeric>

namespace openrewrite {

FlatResult flatten(const GraphPtr& g) {
  std::vector<Node> nodes = g->nodes();
  GraphPtr flat = make_graph(std::move(nodes), {}, g->type_graph());
  std::vector<std::size_t> nmap(g->node_count());
  std::iota(nmap.begin(), nmap.end(), std::size_t{0});
  return FlatResult{flat, GraphHom(flat, g, std::move(nmap), {})};
}

GraphHom flat_map(const GraphHom& f, const FlatResult& source, const FlatResult& target) {
  return GraphHom(source.flat, target.flat, f.node_map(), {});
}

Rule discretize_rule(const Rule& r) {
  FlatResult k = flatten(r.interface);
  Rule out;
  out.name = r.name;
  out.left = r.left;
  out.interface = k.flat;
  out.right = r.right;
  out.to_left = compose_homs(k.counit, r.to_left);
  out.to_right = compose_homs(k.counit, r.to_right);
  return out;
}

Grammar discretize_grammar(const Grammar& g) {
  Grammar out;
  for (const Rule& r : g.rules) {
    out.rules.push_back(discretize_rule(r));
    out.rules.back().name += "-flat";
  }
  return out;
}

WComplement w_complement(const Subgraph& k_img) {
  if (!k_img.valid()) throw DomainError("w_complement: not a valid subgraph");
  const GraphPtr& d = k_img.ambient;
  WComplement out;
  out.w = Subgraph::full(d);
  for (std::size_t e = 0; e < d->edge_count(); ++e) out.w.edges[e] = !k_img.edges[e];
  out.flat_k = k_img;
  out.flat_k.edges.assign(d->edge_count(), false);

  if (!(lattice_join(out.w, k_img) == Subgraph::full(d)))
    throw CertificationFailure("w_complement: w joined with k is not the whole graph");
  if (!(lattice_meet(out.w, k_img) == out.flat_k))
    throw CertificationFailure("w_complement: w met with k is not the flat part of k");

  GraphPtr flat = out.flat_k.to_graph();
  GraphPtr w = out.w.to_graph();
  GraphPtr k = k_img.to_graph();
  auto by_id = [](const GraphPtr& from, const GraphPtr& to) {
    std::map<std::string, std::string> nodes;
    std::map<std::string, std::string> edges;
    for (const Node& n : from->nodes()) nodes.emplace(n.id, n.id);
    for (const Edge& e : from->edges()) edges.emplace(e.id, e.id);
    return GraphHom::from_ids(from, to, nodes, edges);
  };
  SquareHoms sq{by_id(flat, w), by_id(flat, k), by_id(w, d), by_id(k, d)};
  bool ok = false;
  try {
    ok = verify_pushout(sq);
  } catch (const VerifyBoundExceeded&) {
    ok = is_pushout_square(sq);
  }
  if (!ok) throw CertificationFailure("w_complement: the square over d is not a pushout");
  return out;
}

CospanGrammar hat_grammar(const Grammar& discrete) {
  CospanGrammar out;
  for (const Rule& r : discrete.rules) {
    if (r.interface->edge_count() != 0)
      throw DomainError("hat_grammar: rule '" + r.name + "' has a non-discrete interface");
    std::vector<std::string> feet;
    for (const Node& n : r.interface->nodes()) feet.push_back(n.id);
    std::vector<std::size_t> ident(feet.size());
    std::iota(ident.begin(), ident.end(), std::size_t{0});

    CospanRule s;
    s.name = r.name;
    s.top.apex = r.left;
    s.top.outputs = feet;
    s.top.output_map = r.to_left.node_map();
    s.middle.apex = r.interface;
    s.middle.outputs = feet;
    s.middle.output_map = ident;
    s.bottom.apex = r.right;
    s.bottom.outputs = feet;
    s.bottom.output_map = r.to_right.node_map();
    s.up.g = r.to_left;
    s.up.h = ident;
    s.down.g = r.to_right;
    s.down.h = ident;
    if (auto report = validate_cospan_rule(s); !report.empty())
      throw DomainError("hat_grammar: rule '" + r.name + "': " + report.front());
    out.rules.push_back(std::move(s));
  }
  return out;
}

}  // namespace openrewrite
