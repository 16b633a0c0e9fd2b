#include "openrewrite/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace openrewrite {

namespace {

template <typename T>
std::optional<std::size_t> find_sorted(const std::vector<T>& items, std::string_view id) {
  auto it = std::lower_bound(items.begin(), items.end(), id,
                             [](const T& item, std::string_view key) { return item.id < key; });
  if (it == items.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - items.begin());
}

}  // namespace

Graph::Graph(std::vector<Node> nodes, std::vector<Edge> edges, std::optional<std::string> type_graph)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), type_graph_(std::move(type_graph)) {
  std::stable_sort(nodes_.begin(), nodes_.end(),
                   [](const Node& a, const Node& b) { return a.id < b.id; });
  std::stable_sort(edges_.begin(), edges_.end(),
                   [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (nodes_[i].id == nodes_[i - 1].id) well_formed_ = false;
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].id == edges_[i - 1].id) well_formed_ = false;
  src_.resize(edges_.size());
  tgt_.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    src_[e] = find_node(edges_[e].src).value_or(npos);
    tgt_[e] = find_node(edges_[e].tgt).value_or(npos);
    if (src_[e] == npos || tgt_[e] == npos) well_formed_ = false;
  }
}

std::optional<std::size_t> Graph::find_node(std::string_view id) const {
  return find_sorted(nodes_, id);
}

std::optional<std::size_t> Graph::find_edge(std::string_view id) const {
  return find_sorted(edges_, id);
}

std::size_t Graph::node_index(std::string_view id) const {
  if (auto i = find_node(id)) return *i;
  throw DomainError("unknown node '" + std::string(id) + "'");
}

std::size_t Graph::edge_index(std::string_view id) const {
  if (auto i = find_edge(id)) return *i;
  throw DomainError("unknown edge '" + std::string(id) + "'");
}

GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

GraphPtr discrete_graph(const std::vector<std::string>& ids) {
  std::vector<Node> nodes(ids.begin(), ids.end());
  return make_graph(std::move(nodes), {});
}

std::vector<std::string> validate_graph(const Graph& g, const TypeGraphRegistry* types) {
  std::vector<std::string> report;
  for (std::size_t i = 1; i < g.node_count(); ++i)
    if (g.nodes()[i].id == g.nodes()[i - 1].id)
      report.push_back("duplicate node id '" + g.nodes()[i].id + "'");
  for (std::size_t i = 1; i < g.edge_count(); ++i)
    if (g.edges()[i].id == g.edges()[i - 1].id)
      report.push_back("duplicate edge id '" + g.edges()[i].id + "'");
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    if (g.src(e) == npos)
      report.push_back("edge '" + edge.id + "': source '" + edge.src + "' missing");
    if (g.tgt(e) == npos)
      report.push_back("edge '" + edge.id + "': target '" + edge.tgt + "' missing");
  }

  if (!g.typed()) {
    for (const Node& n : g.nodes())
      if (!n.type.empty()) report.push_back("node '" + n.id + "' has a type but graph is untyped");
    for (const Edge& e : g.edges())
      if (!e.type.empty()) report.push_back("edge '" + e.id + "' has a type but graph is untyped");
    return report;
  }

  const Graph* tg = nullptr;
  if (types != nullptr) {
    auto it = types->find(*g.type_graph());
    if (it == types->end())
      report.push_back("unknown type graph '" + *g.type_graph() + "'");
    else
      tg = it->second.get();
  }
  for (const Node& n : g.nodes()) {
    if (n.type.empty())
      report.push_back("node '" + n.id + "' is untyped");
    else if (tg != nullptr && !tg->find_node(n.type))
      report.push_back("node '" + n.id + "': type '" + n.type + "' not in type graph");
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    if (edge.type.empty()) {
      report.push_back("edge '" + edge.id + "' is untyped");
      continue;
    }
    if (tg == nullptr) continue;
    auto te = tg->find_edge(edge.type);
    if (!te) {
      report.push_back("edge '" + edge.id + "': type '" + edge.type + "' not in type graph");
      continue;
    }
    if (g.src(e) != npos && g.nodes()[g.src(e)].type != tg->nodes()[tg->src(*te)].id)
      report.push_back("edge '" + edge.id + "': source type does not match type graph");
    if (g.tgt(e) != npos && g.nodes()[g.tgt(e)].type != tg->nodes()[tg->tgt(*te)].id)
      report.push_back("edge '" + edge.id + "': target type does not match type graph");
  }
  return report;
}

GraphHom::GraphHom(GraphPtr source, GraphPtr target, std::vector<std::size_t> node_map,
                   std::vector<std::size_t> edge_map)
    : source_(std::move(source)),
      target_(std::move(target)),
      node_map_(std::move(node_map)),
      edge_map_(std::move(edge_map)) {}

GraphHom GraphHom::identity(const GraphPtr& g) {
  std::vector<std::size_t> nodes(g->node_count());
  std::vector<std::size_t> edges(g->edge_count());
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  std::iota(edges.begin(), edges.end(), std::size_t{0});
  return GraphHom(g, g, std::move(nodes), std::move(edges));
}

GraphHom GraphHom::from_ids(GraphPtr source, GraphPtr target,
                            const std::map<std::string, std::string>& nodes,
                            const std::map<std::string, std::string>& edges) {
  std::vector<std::size_t> node_map(source->node_count(), npos);
  std::vector<std::size_t> edge_map(source->edge_count(), npos);
  for (const auto& [from, to] : nodes) node_map[source->node_index(from)] = target->node_index(to);
  for (const auto& [from, to] : edges) edge_map[source->edge_index(from)] = target->edge_index(to);
  for (std::size_t i = 0; i < node_map.size(); ++i)
    if (node_map[i] == npos)
      throw DomainError("hom node map is missing '" + source->nodes()[i].id + "'");
  for (std::size_t i = 0; i < edge_map.size(); ++i)
    if (edge_map[i] == npos)
      throw DomainError("hom edge map is missing '" + source->edges()[i].id + "'");
  return GraphHom(std::move(source), std::move(target), std::move(node_map), std::move(edge_map));
}

std::map<std::string, std::string> GraphHom::node_ids() const {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < node_map_.size(); ++i)
    out.emplace(source_->nodes()[i].id, target_->nodes()[node_map_[i]].id);
  return out;
}

std::map<std::string, std::string> GraphHom::edge_ids() const {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < edge_map_.size(); ++i)
    out.emplace(source_->edges()[i].id, target_->edges()[edge_map_[i]].id);
  return out;
}

bool same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const GraphHom& a, const GraphHom& b) {
  return a.node_map_ == b.node_map_ && a.edge_map_ == b.edge_map_ &&
         same_graph(a.source_, b.source_) && same_graph(a.target_, b.target_);
}

std::vector<std::string> validate_hom(const GraphHom& f) {
  std::vector<std::string> report;
  if (!f.source() || !f.target()) {
    report.emplace_back("hom is missing its source or target graph");
    return report;
  }
  const Graph& s = *f.source();
  const Graph& t = *f.target();
  if (f.node_map().size() != s.node_count()) report.emplace_back("node map is not total");
  if (f.edge_map().size() != s.edge_count()) report.emplace_back("edge map is not total");
  if (!report.empty()) return report;
  if (s.type_graph() != t.type_graph()) report.emplace_back("graphs are typed over different type graphs");
  for (std::size_t n = 0; n < s.node_count(); ++n) {
    if (f.node(n) >= t.node_count()) {
      report.push_back("node '" + s.nodes()[n].id + "' maps outside the target");
      continue;
    }
    if (s.nodes()[n].type != t.nodes()[f.node(n)].type)
      report.push_back("node '" + s.nodes()[n].id + "' changes type");
  }
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    const std::string& id = s.edges()[e].id;
    if (f.edge(e) >= t.edge_count()) {
      report.push_back("edge '" + id + "' maps outside the target");
      continue;
    }
    std::size_t te = f.edge(e);
    if (s.src(e) == npos || s.tgt(e) == npos || t.src(te) == npos || t.tgt(te) == npos) {
      report.push_back("edge '" + id + "' has a dangling endpoint");
      continue;
    }
    if (f.node(s.src(e)) != t.src(te)) report.push_back("edge '" + id + "': source not preserved");
    if (f.node(s.tgt(e)) != t.tgt(te)) report.push_back("edge '" + id + "': target not preserved");
    if (s.edges()[e].type != t.edges()[te].type) report.push_back("edge '" + id + "' changes type");
  }
  return report;
}

GraphHom compose_homs(const GraphHom& f, const GraphHom& g) {
  if (!same_graph(f.target(), g.source()))
    throw DomainError("compose_homs: target of the first hom is not the source of the second");
  std::vector<std::size_t> nodes(f.node_map().size());
  std::vector<std::size_t> edges(f.edge_map().size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = g.node(f.node(i));
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = g.edge(f.edge(i));
  return GraphHom(f.source(), g.target(), std::move(nodes), std::move(edges));
}

namespace {

void classify_map(const std::vector<std::size_t>& map, std::size_t codomain, bool& injective,
                  bool& surjective) {
  std::vector<bool> hit(codomain, false);
  injective = true;
  std::size_t hits = 0;
  for (std::size_t v : map) {
    if (hit[v]) {
      injective = false;
    } else {
      hit[v] = true;
      ++hits;
    }
  }
  surjective = hits == codomain;
}

}  // namespace

HomClass classify_hom(const GraphHom& f) {
  HomClass c;
  classify_map(f.node_map(), f.target()->node_count(), c.node_injective, c.node_surjective);
  classify_map(f.edge_map(), f.target()->edge_count(), c.edge_injective, c.edge_surjective);
  c.is_mono = c.node_injective && c.edge_injective;
  c.is_epi = c.node_surjective && c.edge_surjective;
  c.is_iso = c.is_mono && c.is_epi;
  return c;
}

GraphHom invert(const GraphHom& f) {
  if (!is_iso(f)) throw DomainError("invert: hom is not an isomorphism");
  std::vector<std::size_t> nodes(f.node_map().size());
  std::vector<std::size_t> edges(f.edge_map().size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[f.node(i)] = i;
  for (std::size_t i = 0; i < edges.size(); ++i) edges[f.edge(i)] = i;
  return GraphHom(f.target(), f.source(), std::move(nodes), std::move(edges));
}

namespace {

// Depth-first search over node assignments followed by edge assignments.
class HomSearcher {
 public:
  using Visitor = std::function<bool(std::span<const std::size_t>, std::span<const std::size_t>)>;

  HomSearcher(const Graph& g, const Graph& h, const HomSearch& opts, const Visitor& visit)
      : g_(g), h_(h), opts_(opts), visit_(visit) {
    if (!g.well_formed() || !h.well_formed())
      throw DomainError("hom search needs well-formed graphs");
    const std::size_t hn = h.node_count();
    parallel_.assign(hn * hn, {});
    for (std::size_t e = 0; e < h.edge_count(); ++e) parallel_[h.src(e) * hn + h.tgt(e)].push_back(e);
    closing_.assign(g.node_count(), {});
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      closing_[std::max(g.src(e), g.tgt(e))].push_back(e);
    node_map_.assign(g.node_count(), npos);
    edge_map_.assign(g.edge_count(), npos);
    node_used_.assign(hn, false);
    edge_used_.assign(h.edge_count(), false);
  }

  void run() { assign_node(0); }

 private:
  bool edge_candidate(std::size_t ge, std::size_t he) const {
    if (g_.edges()[ge].type != h_.edges()[he].type) return false;
    if (opts_.mono_only && edge_used_[he]) return false;
    if (!opts_.fixed_edges.empty() && opts_.fixed_edges[ge] != npos && opts_.fixed_edges[ge] != he)
      return false;
    return true;
  }

  const std::vector<std::size_t>& targets_for(std::size_t ge) const {
    const std::size_t hn = h_.node_count();
    return parallel_[node_map_[g_.src(ge)] * hn + node_map_[g_.tgt(ge)]];
  }

  bool edges_possible(std::size_t n) const {
    for (std::size_t ge : closing_[n]) {
      bool any = false;
      for (std::size_t he : targets_for(ge))
        if (edge_candidate(ge, he)) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    return true;
  }

  bool assign_node(std::size_t n) {
    if (n == g_.node_count()) return assign_edge(0);
    const std::size_t fixed = opts_.fixed_nodes.empty() ? npos : opts_.fixed_nodes[n];
    const std::size_t lo = fixed == npos ? 0 : fixed;
    const std::size_t hi = fixed == npos ? h_.node_count() : fixed + 1;
    for (std::size_t v = lo; v < hi && v < h_.node_count(); ++v) {
      if (opts_.mono_only && node_used_[v]) continue;
      if (g_.nodes()[n].type != h_.nodes()[v].type) continue;
      node_map_[n] = v;
      node_used_[v] = true;
      bool keep_going = true;
      if (edges_possible(n)) keep_going = assign_node(n + 1);
      node_used_[v] = false;
      node_map_[n] = npos;
      if (!keep_going) return false;
    }
    return true;
  }

  bool assign_edge(std::size_t e) {
    if (e == g_.edge_count()) return visit_(node_map_, edge_map_);
    for (std::size_t he : targets_for(e)) {
      if (!edge_candidate(e, he)) continue;
      edge_map_[e] = he;
      edge_used_[he] = true;
      bool keep_going = assign_edge(e + 1);
      edge_used_[he] = false;
      if (!keep_going) return false;
    }
    edge_map_[e] = npos;
    return true;
  }

  const Graph& g_;
  const Graph& h_;
  const HomSearch& opts_;
  const Visitor& visit_;
  std::vector<std::vector<std::size_t>> parallel_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::size_t> node_map_;
  std::vector<std::size_t> edge_map_;
  std::vector<bool> node_used_;
  std::vector<bool> edge_used_;
};

}  // namespace

void search_homs(const Graph& g, const Graph& h, const HomSearch& opts,
                 const std::function<bool(std::span<const std::size_t>,
                                          std::span<const std::size_t>)>& visit) {
  if (!opts.fixed_nodes.empty() && opts.fixed_nodes.size() != g.node_count())
    throw DomainError("search_homs: fixed node vector has the wrong size");
  if (!opts.fixed_edges.empty() && opts.fixed_edges.size() != g.edge_count())
    throw DomainError("search_homs: fixed edge vector has the wrong size");
  HomSearcher searcher(g, h, opts, visit);
  searcher.run();
}

std::vector<GraphHom> enumerate_homs(const GraphPtr& g, const GraphPtr& h, bool mono_only) {
  std::vector<GraphHom> out;
  HomSearch opts;
  opts.mono_only = mono_only;
  search_homs(*g, *h, opts, [&](std::span<const std::size_t> nodes, std::span<const std::size_t> edges) {
    out.emplace_back(g, h, std::vector<std::size_t>(nodes.begin(), nodes.end()),
                     std::vector<std::size_t>(edges.begin(), edges.end()));
    return true;
  });
  return out;
}

std::size_t count_homs(const Graph& g, const Graph& h, const HomSearch& opts, std::size_t limit) {
  std::size_t count = 0;
  search_homs(g, h, opts, [&](std::span<const std::size_t>, std::span<const std::size_t>) {
    ++count;
    return count < limit;
  });
  return count;
}

std::optional<GraphHom> find_isomorphism(const GraphPtr& g, const GraphPtr& h) {
  if (g->node_count() != h->node_count() || g->edge_count() != h->edge_count()) return std::nullopt;
  std::optional<GraphHom> found;
  HomSearch opts;
  opts.mono_only = true;
  search_homs(*g, *h, opts, [&](std::span<const std::size_t> nodes, std::span<const std::size_t> edges) {
    found.emplace(g, h, std::vector<std::size_t>(nodes.begin(), nodes.end()),
                  std::vector<std::size_t>(edges.begin(), edges.end()));
    return false;
  });
  return found;
}

Subgraph Subgraph::full(const GraphPtr& g) {
  return Subgraph{g, std::vector<bool>(g->node_count(), true), std::vector<bool>(g->edge_count(), true)};
}

Subgraph Subgraph::empty(const GraphPtr& g) {
  return Subgraph{g, std::vector<bool>(g->node_count(), false),
                  std::vector<bool>(g->edge_count(), false)};
}

Subgraph Subgraph::image(const GraphHom& f) {
  Subgraph s = empty(f.target());
  for (std::size_t v : f.node_map()) s.nodes[v] = true;
  for (std::size_t e : f.edge_map()) s.edges[e] = true;
  return s;
}

Subgraph Subgraph::from_ids(const GraphPtr& g, const std::vector<std::string>& node_ids,
                            const std::vector<std::string>& edge_ids) {
  Subgraph s = empty(g);
  for (const auto& id : node_ids) s.nodes[g->node_index(id)] = true;
  for (const auto& id : edge_ids) s.edges[g->edge_index(id)] = true;
  return s;
}

bool Subgraph::valid() const {
  if (!ambient || nodes.size() != ambient->node_count() || edges.size() != ambient->edge_count())
    return false;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e] && (!nodes[ambient->src(e)] || !nodes[ambient->tgt(e)])) return false;
  return true;
}

GraphPtr Subgraph::to_graph() const {
  if (!valid()) throw DomainError("subgraph is not closed under edge endpoints");
  std::vector<Node> ns;
  std::vector<Edge> es;
  for (std::size_t n = 0; n < nodes.size(); ++n)
    if (nodes[n]) ns.push_back(ambient->nodes()[n]);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e]) es.push_back(ambient->edges()[e]);
  return make_graph(std::move(ns), std::move(es), ambient->type_graph());
}

GraphHom Subgraph::inclusion() const {
  GraphPtr g = to_graph();
  std::vector<std::size_t> node_map;
  std::vector<std::size_t> edge_map;
  for (std::size_t n = 0; n < nodes.size(); ++n)
    if (nodes[n]) node_map.push_back(n);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e]) edge_map.push_back(e);
  return GraphHom(g, ambient, std::move(node_map), std::move(edge_map));
}

std::size_t Subgraph::node_count() const {
  return static_cast<std::size_t>(std::count(nodes.begin(), nodes.end(), true));
}

std::size_t Subgraph::edge_count() const {
  return static_cast<std::size_t>(std::count(edges.begin(), edges.end(), true));
}

namespace {

void require_same_ambient(const Subgraph& a, const Subgraph& b) {
  if (!same_graph(a.ambient, b.ambient)) throw DomainError("subgraphs have different ambient graphs");
}

}  // namespace

Subgraph lattice_meet(const Subgraph& a, const Subgraph& b) {
  require_same_ambient(a, b);
  Subgraph s = Subgraph::empty(a.ambient);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) s.nodes[i] = a.nodes[i] && b.nodes[i];
  for (std::size_t i = 0; i < s.edges.size(); ++i) s.edges[i] = a.edges[i] && b.edges[i];
  return s;
}

Subgraph lattice_join(const Subgraph& a, const Subgraph& b) {
  require_same_ambient(a, b);
  Subgraph s = Subgraph::empty(a.ambient);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) s.nodes[i] = a.nodes[i] || b.nodes[i];
  for (std::size_t i = 0; i < s.edges.size(); ++i) s.edges[i] = a.edges[i] || b.edges[i];
  return s;
}

bool subgraph_leq(const Subgraph& a, const Subgraph& b) {
  require_same_ambient(a, b);
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    if (a.nodes[i] && !b.nodes[i]) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i] && !b.edges[i]) return false;
  return true;
}

std::vector<Subgraph> all_subgraphs(const GraphPtr& g) {
  const std::size_t n = g->node_count();
  const std::size_t m = g->edge_count();
  if (n + m > 24) throw DomainError("all_subgraphs: graph too large to enumerate");
  std::vector<Subgraph> out;
  for (std::uint64_t node_mask = 0; node_mask < (std::uint64_t{1} << n); ++node_mask) {
    Subgraph base = Subgraph::empty(g);
    for (std::size_t i = 0; i < n; ++i) base.nodes[i] = (node_mask >> i) & 1U;
    std::vector<std::size_t> allowed;
    for (std::size_t e = 0; e < m; ++e)
      if (base.nodes[g->src(e)] && base.nodes[g->tgt(e)]) allowed.push_back(e);
    for (std::uint64_t edge_mask = 0; edge_mask < (std::uint64_t{1} << allowed.size()); ++edge_mask) {
      Subgraph s = base;
      for (std::size_t i = 0; i < allowed.size(); ++i) s.edges[allowed[i]] = (edge_mask >> i) & 1U;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace openrewrite
