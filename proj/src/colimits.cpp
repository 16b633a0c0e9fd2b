#include "openrewrite/colimits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "openrewrite/canonical.hpp"

namespace openrewrite {

namespace {

thread_local ScopedFaultInjection* active_injection = nullptr;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

void require(bool cond, const char* what) {
  if (!cond) throw DomainError(what);
}

std::vector<std::size_t> compose_maps(const std::vector<std::size_t>& first,
                                      const std::vector<std::size_t>& second) {
  std::vector<std::size_t> out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
  return out;
}

}  // namespace

bool draw_fault() {
  ScopedFaultInjection* inj = active_injection;
  if (inj == nullptr) return false;
  // splitmix64
  std::uint64_t z = (inj->state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  if (z % 100 < inj->rate_percent_) {
    ++inj->faults_;
    return true;
  }
  return false;
}

ScopedFaultInjection::ScopedFaultInjection(std::uint64_t seed, unsigned rate_percent)
    : state_(seed), rate_percent_(rate_percent), previous_(active_injection) {
  active_injection = this;
}

ScopedFaultInjection::~ScopedFaultInjection() { active_injection = previous_; }

bool fault_injection_active() { return active_injection != nullptr; }

PushoutResult::PushoutResult(GraphPtr object, GraphHom inj_left, GraphHom inj_right,
                             std::vector<Origin> node_origin, std::vector<Origin> edge_origin)
    : object_(std::move(object)),
      inj_left_(std::move(inj_left)),
      inj_right_(std::move(inj_right)),
      node_origin_(std::move(node_origin)),
      edge_origin_(std::move(edge_origin)) {}

GraphHom PushoutResult::mediate(const GraphHom& to_left, const GraphHom& to_right) const {
  require(same_graph(to_left.source(), inj_left_.source()), "mediate: first leg has the wrong source");
  require(same_graph(to_right.source(), inj_right_.source()), "mediate: second leg has the wrong source");
  require(same_graph(to_left.target(), to_right.target()), "mediate: legs have different targets");
  std::vector<std::size_t> nodes(object_->node_count(), npos);
  std::vector<std::size_t> edges(object_->edge_count(), npos);
  auto pick = [&](const Origin& o, bool node) {
    const GraphHom& leg = o.side == Side::left ? to_left : to_right;
    return node ? leg.node(o.index) : leg.edge(o.index);
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (node_origin_[i].side == Side::left && node_origin_[i].index == npos)
      throw DomainError("mediate: object has an element outside both injections");
    nodes[i] = pick(node_origin_[i], true);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = pick(edge_origin_[i], false);
  GraphHom u(object_, to_left.target(), std::move(nodes), std::move(edges));
  if (compose_homs(inj_left_, u) != to_left || compose_homs(inj_right_, u) != to_right)
    throw DomainError("mediate: the legs do not form a cocone");
  return u;
}

PushoutResult pushout(const Span& s) {
  require(s.apex != nullptr, "pushout: span has no apex");
  require(same_graph(s.left.source(), s.apex) && same_graph(s.right.source(), s.apex),
          "pushout: legs do not share the apex");
  const Graph& l = *s.left.target();
  const Graph& r = *s.right.target();
  require(l.type_graph() == r.type_graph(), "pushout: legs are typed over different type graphs");
  const std::size_t ln = l.node_count();
  const std::size_t le = l.edge_count();

  UnionFind nodes(ln + r.node_count());
  UnionFind edges(le + r.edge_count());
  for (std::size_t a = 0; a < s.apex->node_count(); ++a) nodes.unite(s.left.node(a), ln + s.right.node(a));
  for (std::size_t a = 0; a < s.apex->edge_count(); ++a) edges.unite(s.left.edge(a), le + s.right.edge(a));

  auto tagged_node = [&](std::size_t i) { return i < ln ? "l." + l.nodes()[i].id : "r." + r.nodes()[i - ln].id; };
  auto tagged_edge = [&](std::size_t i) { return i < le ? "l." + l.edges()[i].id : "r." + r.edges()[i - le].id; };

  // Least tagged id in each class.
  std::map<std::size_t, std::size_t> node_rep;
  for (std::size_t i = 0; i < ln + r.node_count(); ++i) {
    std::size_t root = nodes.find(i);
    auto [it, inserted] = node_rep.emplace(root, i);
    if (!inserted && tagged_node(i) < tagged_node(it->second)) it->second = i;
  }
  std::map<std::size_t, std::size_t> edge_rep;
  for (std::size_t i = 0; i < le + r.edge_count(); ++i) {
    std::size_t root = edges.find(i);
    auto [it, inserted] = edge_rep.emplace(root, i);
    if (!inserted && tagged_edge(i) < tagged_edge(it->second)) it->second = i;
  }

  auto node_type = [&](std::size_t i) { return i < ln ? l.nodes()[i].type : r.nodes()[i - ln].type; };
  auto edge_of = [&](std::size_t i) -> const Edge& { return i < le ? l.edges()[i] : r.edges()[i - le]; };
  auto edge_src = [&](std::size_t i) { return i < le ? l.src(i) : ln + r.src(i - le); };
  auto edge_tgt = [&](std::size_t i) { return i < le ? l.tgt(i) : ln + r.tgt(i - le); };

  std::vector<Node> out_nodes;
  for (const auto& [root, rep] : node_rep) out_nodes.emplace_back(tagged_node(rep), node_type(rep));
  std::vector<Edge> out_edges;
  for (const auto& [root, rep] : edge_rep) {
    const std::size_t src_rep = node_rep.at(nodes.find(edge_src(rep)));
    const std::size_t tgt_rep = node_rep.at(nodes.find(edge_tgt(rep)));
    out_edges.push_back(Edge{tagged_edge(rep), tagged_node(src_rep), tagged_node(tgt_rep), edge_of(rep).type});
  }

  if (draw_fault()) {
    std::string type;
    if (!out_nodes.empty()) type = out_nodes.front().type;
    out_nodes.emplace_back("!fault", type);
  }

  GraphPtr object = make_graph(std::move(out_nodes), std::move(out_edges), l.type_graph());

  std::vector<std::size_t> left_nodes(ln);
  std::vector<std::size_t> right_nodes(r.node_count());
  std::vector<std::size_t> left_edges(le);
  std::vector<std::size_t> right_edges(r.edge_count());
  auto node_target = [&](std::size_t i) { return object->node_index(tagged_node(node_rep.at(nodes.find(i)))); };
  auto edge_target = [&](std::size_t i) { return object->edge_index(tagged_edge(edge_rep.at(edges.find(i)))); };
  for (std::size_t i = 0; i < ln; ++i) left_nodes[i] = node_target(i);
  for (std::size_t i = 0; i < r.node_count(); ++i) right_nodes[i] = node_target(ln + i);
  for (std::size_t i = 0; i < le; ++i) left_edges[i] = edge_target(i);
  for (std::size_t i = 0; i < r.edge_count(); ++i) right_edges[i] = edge_target(le + i);

  using Origin = PushoutResult::Origin;
  using Side = PushoutResult::Side;
  std::vector<Origin> node_origin(object->node_count(), Origin{Side::left, npos});
  std::vector<Origin> edge_origin(object->edge_count(), Origin{Side::left, npos});
  for (std::size_t i = ln; i-- > 0;) node_origin[left_nodes[i]] = {Side::left, i};
  for (std::size_t i = 0; i < r.node_count(); ++i)
    if (node_origin[right_nodes[i]].index == npos) node_origin[right_nodes[i]] = {Side::right, i};
  for (std::size_t i = le; i-- > 0;) edge_origin[left_edges[i]] = {Side::left, i};
  for (std::size_t i = 0; i < r.edge_count(); ++i)
    if (edge_origin[right_edges[i]].index == npos) edge_origin[right_edges[i]] = {Side::right, i};

  return PushoutResult(object, GraphHom(s.left.target(), object, std::move(left_nodes), std::move(left_edges)),
                       GraphHom(s.right.target(), object, std::move(right_nodes), std::move(right_edges)),
                       std::move(node_origin), std::move(edge_origin));
}

PushoutResult coproduct(const GraphPtr& g, const GraphPtr& h) {
  GraphPtr empty = make_graph({}, {}, g->type_graph());
  return pushout(Span{empty, GraphHom(empty, g, {}, {}), GraphHom(empty, h, {}, {})});
}

namespace {

std::vector<std::string> untagged_ids(const std::vector<std::string>& ids) {
  auto plain = [](const std::string& id) {
    if (id.size() > 2 && (id[0] == 'l' || id[0] == 'r') && id[1] == '.') return id.substr(2);
    return id;
  };
  std::map<std::string, std::size_t> uses;
  for (const auto& id : ids) ++uses[plain(id)];
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& id : ids) {
    std::string name = plain(id);
    out.push_back(uses[name] == 1 ? name : id);
    if (!seen.insert(out.back()).second) return ids;
  }
  return out;
}

}  // namespace

Renaming untag(const GraphPtr& object) {
  const Graph& g = *object;
  std::vector<std::string> node_ids;
  std::vector<std::string> edge_ids;
  for (const Node& n : g.nodes()) node_ids.push_back(n.id);
  for (const Edge& e : g.edges()) edge_ids.push_back(e.id);
  node_ids = untagged_ids(node_ids);
  edge_ids = untagged_ids(edge_ids);
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < g.node_count(); ++i) nodes.emplace_back(node_ids[i], g.nodes()[i].type);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    edges.push_back(Edge{edge_ids[i], node_ids[g.src(i)], node_ids[g.tgt(i)], g.edges()[i].type});
  GraphPtr renamed = make_graph(std::move(nodes), std::move(edges), g.type_graph());
  std::vector<std::size_t> nmap(g.node_count());
  std::vector<std::size_t> emap(g.edge_count());
  for (std::size_t i = 0; i < nmap.size(); ++i) nmap[i] = renamed->node_index(node_ids[i]);
  for (std::size_t i = 0; i < emap.size(); ++i) emap[i] = renamed->edge_index(edge_ids[i]);
  return Renaming{renamed, GraphHom(object, renamed, std::move(nmap), std::move(emap))};
}

PullbackResult pullback(const Cospan& c) {
  require(c.apex != nullptr, "pullback: cospan has no apex");
  require(same_graph(c.left.target(), c.apex) && same_graph(c.right.target(), c.apex),
          "pullback: legs do not share the apex");
  const GraphPtr& l = c.left.source();
  const GraphPtr& r = c.right.source();

  std::vector<std::pair<std::size_t, std::size_t>> node_pairs;
  for (std::size_t x = 0; x < l->node_count(); ++x)
    for (std::size_t y = 0; y < r->node_count(); ++y)
      if (c.left.node(x) == c.right.node(y)) node_pairs.emplace_back(x, y);
  std::vector<std::pair<std::size_t, std::size_t>> edge_pairs;
  for (std::size_t x = 0; x < l->edge_count(); ++x)
    for (std::size_t y = 0; y < r->edge_count(); ++y)
      if (c.left.edge(x) == c.right.edge(y)) edge_pairs.emplace_back(x, y);

  auto pair_id = [](const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; };
  std::vector<std::string> node_ids;
  std::vector<std::string> edge_ids;
  for (auto [x, y] : node_pairs) node_ids.push_back(pair_id(l->nodes()[x].id, r->nodes()[y].id));
  for (auto [x, y] : edge_pairs) edge_ids.push_back(pair_id(l->edges()[x].id, r->edges()[y].id));
  auto unique_ids = [](std::vector<std::string> ids) {
    std::sort(ids.begin(), ids.end());
    return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
  };
  // Ids containing commas or parentheses can collide; fall back to indices.
  if (!unique_ids(node_ids))
    for (std::size_t i = 0; i < node_pairs.size(); ++i)
      node_ids[i] = "(#" + std::to_string(node_pairs[i].first) + ",#" + std::to_string(node_pairs[i].second) + ")";
  if (!unique_ids(edge_ids))
    for (std::size_t i = 0; i < edge_pairs.size(); ++i)
      edge_ids[i] = "(#" + std::to_string(edge_pairs[i].first) + ",#" + std::to_string(edge_pairs[i].second) + ")";

  std::map<std::pair<std::size_t, std::size_t>, std::string> node_name;
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < node_pairs.size(); ++i) {
    node_name[node_pairs[i]] = node_ids[i];
    nodes.emplace_back(node_ids[i], l->nodes()[node_pairs[i].first].type);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edge_pairs.size(); ++i) {
    auto [x, y] = edge_pairs[i];
    edges.push_back(Edge{edge_ids[i], node_name.at({l->src(x), r->src(y)}), node_name.at({l->tgt(x), r->tgt(y)}),
                         l->edges()[x].type});
  }
  GraphPtr apex = make_graph(std::move(nodes), std::move(edges), l->type_graph());

  std::vector<std::size_t> pl_nodes(apex->node_count());
  std::vector<std::size_t> pr_nodes(apex->node_count());
  std::vector<std::size_t> pl_edges(apex->edge_count());
  std::vector<std::size_t> pr_edges(apex->edge_count());
  for (std::size_t i = 0; i < node_pairs.size(); ++i) {
    std::size_t idx = apex->node_index(node_ids[i]);
    pl_nodes[idx] = node_pairs[i].first;
    pr_nodes[idx] = node_pairs[i].second;
  }
  for (std::size_t i = 0; i < edge_pairs.size(); ++i) {
    std::size_t idx = apex->edge_index(edge_ids[i]);
    pl_edges[idx] = edge_pairs[i].first;
    pr_edges[idx] = edge_pairs[i].second;
  }
  return PullbackResult{Span{apex, GraphHom(apex, l, std::move(pl_nodes), std::move(pl_edges)),
                             GraphHom(apex, r, std::move(pr_nodes), std::move(pr_edges))}};
}

GluingReport gluing_check(const GraphHom& l_inc, const GraphHom& m) {
  require(same_graph(l_inc.target(), m.source()), "gluing_check: match does not start at the rule's left side");
  const Graph& lhs = *m.source();
  const Graph& g = *m.target();
  GluingReport report;

  std::vector<bool> node_kept(lhs.node_count(), false);
  std::vector<bool> edge_kept(lhs.edge_count(), false);
  for (std::size_t v : l_inc.node_map()) node_kept[v] = true;
  for (std::size_t e : l_inc.edge_map()) edge_kept[e] = true;

  for (std::size_t a = 0; a < lhs.node_count(); ++a)
    for (std::size_t b = a + 1; b < lhs.node_count(); ++b)
      if (m.node(a) == m.node(b) && !(node_kept[a] && node_kept[b])) {
        report.identification_ok = false;
        report.offenders.push_back("nodes '" + lhs.nodes()[a].id + "' and '" + lhs.nodes()[b].id +
                                   "' are identified but not both preserved");
      }
  for (std::size_t a = 0; a < lhs.edge_count(); ++a)
    for (std::size_t b = a + 1; b < lhs.edge_count(); ++b)
      if (m.edge(a) == m.edge(b) && !(edge_kept[a] && edge_kept[b])) {
        report.identification_ok = false;
        report.offenders.push_back("edges '" + lhs.edges()[a].id + "' and '" + lhs.edges()[b].id +
                                   "' are identified but not both preserved");
      }

  std::vector<bool> deleted(g.node_count(), false);
  for (std::size_t a = 0; a < lhs.node_count(); ++a)
    if (!node_kept[a]) deleted[m.node(a)] = true;
  std::vector<bool> matched_edge(g.edge_count(), false);
  for (std::size_t e : m.edge_map()) matched_edge[e] = true;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if ((deleted[g.src(e)] || deleted[g.tgt(e)]) && !matched_edge[e]) {
      report.dangling_ok = false;
      report.offenders.push_back("edge '" + g.edges()[e].id + "' would dangle");
    }
  return report;
}

GluingViolation::GluingViolation(GluingReport report)
    : DomainError([&] {
        std::string msg = "gluing condition violated";
        for (const auto& o : report.offenders) msg += "; " + o;
        return msg;
      }()),
      report_(std::move(report)) {}

PushoutComplement pushout_complement(const GraphHom& l_inc, const GraphHom& m) {
  if (!is_mono(l_inc)) throw DomainError("pushout_complement: rule leg k->l is not mono");
  GluingReport report = gluing_check(l_inc, m);
  if (!report.ok()) throw GluingViolation(std::move(report));

  const Graph& lhs = *m.source();
  Subgraph keep = Subgraph::full(m.target());
  std::vector<bool> node_kept(lhs.node_count(), false);
  std::vector<bool> edge_kept(lhs.edge_count(), false);
  for (std::size_t v : l_inc.node_map()) node_kept[v] = true;
  for (std::size_t e : l_inc.edge_map()) edge_kept[e] = true;
  for (std::size_t a = 0; a < lhs.node_count(); ++a)
    if (!node_kept[a]) keep.nodes[m.node(a)] = false;
  for (std::size_t a = 0; a < lhs.edge_count(); ++a)
    if (!edge_kept[a]) keep.edges[m.edge(a)] = false;

  GraphHom incl = keep.inclusion();
  std::vector<std::size_t> back_nodes(keep.nodes.size(), npos);
  std::vector<std::size_t> back_edges(keep.edges.size(), npos);
  for (std::size_t i = 0; i < incl.node_map().size(); ++i) back_nodes[incl.node(i)] = i;
  for (std::size_t i = 0; i < incl.edge_map().size(); ++i) back_edges[incl.edge(i)] = i;
  GraphHom km = compose_homs(l_inc, m);
  std::vector<std::size_t> k_nodes(km.node_map().size());
  std::vector<std::size_t> k_edges(km.edge_map().size());
  for (std::size_t i = 0; i < k_nodes.size(); ++i) k_nodes[i] = back_nodes[km.node(i)];
  for (std::size_t i = 0; i < k_edges.size(); ++i) k_edges[i] = back_edges[km.edge(i)];
  return PushoutComplement{incl.source(), GraphHom(l_inc.source(), incl.source(), std::move(k_nodes), std::move(k_edges)),
                           incl};
}

bool square_commutes(const SquareHoms& sq) {
  if (!same_graph(sq.span_left.source(), sq.span_right.source())) return false;
  if (!same_graph(sq.span_left.target(), sq.cocone_left.source())) return false;
  if (!same_graph(sq.span_right.target(), sq.cocone_right.source())) return false;
  if (!same_graph(sq.cocone_left.target(), sq.cocone_right.target())) return false;
  return compose_maps(sq.span_left.node_map(), sq.cocone_left.node_map()) ==
             compose_maps(sq.span_right.node_map(), sq.cocone_right.node_map()) &&
         compose_maps(sq.span_left.edge_map(), sq.cocone_left.edge_map()) ==
             compose_maps(sq.span_right.edge_map(), sq.cocone_right.edge_map());
}

bool is_pushout_square(const SquareHoms& sq) {
  if (!square_commutes(sq)) return false;
  PushoutResult po = pushout(Span{sq.span_left.source(), sq.span_left, sq.span_right});
  try {
    return is_iso(po.mediate(sq.cocone_left, sq.cocone_right));
  } catch (const DomainError&) {
    return false;
  }
}

GraphPtr subobject_classifier(const GraphPtr& types) {
  // Truth values: node "1" (in) and "0" (out). An edge between two "in"
  // nodes may or may not itself be in the subgraph.
  GraphPtr omega = make_graph({"0", "1"}, {{"in", "1", "1", ""},
                                           {"out11", "1", "1", ""},
                                           {"out10", "1", "0", ""},
                                           {"out01", "0", "1", ""},
                                           {"out00", "0", "0", ""}});
  if (!types) return omega;
  std::vector<Node> nodes;
  for (const Node& w : omega->nodes())
    for (const Node& t : types->nodes()) nodes.emplace_back(w.id + "*" + t.id, t.id);
  std::vector<Edge> edges;
  for (std::size_t we = 0; we < omega->edge_count(); ++we)
    for (std::size_t te = 0; te < types->edge_count(); ++te) {
      const std::string s = omega->nodes()[omega->src(we)].id + "*" + types->nodes()[types->src(te)].id;
      const std::string t = omega->nodes()[omega->tgt(we)].id + "*" + types->nodes()[types->tgt(te)].id;
      edges.push_back(Edge{omega->edges()[we].id + "*" + types->edges()[te].id, s, t, types->edges()[te].id});
    }
  return make_graph(std::move(nodes), std::move(edges), types->type_graph());
}

GraphPtr terminal_graph(const GraphPtr& types) {
  if (types) return types;
  return make_graph({"*"}, {{"*", "*", "*", ""}});
}

namespace {

// Type graph spanned by the types actually used, named like the ambient one.
GraphPtr used_types(const std::vector<const Graph*>& graphs) {
  std::map<std::string, Node> nodes;
  std::map<std::string, Edge> edges;
  std::optional<std::string> name;
  for (const Graph* g : graphs) {
    name = g->type_graph();
    for (const Node& n : g->nodes()) nodes.try_emplace(n.type, Node(n.type, n.type));
    for (std::size_t e = 0; e < g->edge_count(); ++e) {
      const Edge& edge = g->edges()[e];
      edges.try_emplace(edge.type, Edge{edge.type, g->nodes()[g->src(e)].type, g->nodes()[g->tgt(e)].type, edge.type});
    }
  }
  std::vector<Node> ns;
  for (auto& [k, v] : nodes) ns.push_back(v);
  std::vector<Edge> es;
  for (auto& [k, v] : edges) es.push_back(v);
  return make_graph(std::move(ns), std::move(es), name);
}

const std::vector<GraphPtr>& small_untyped_graphs() {
  static const std::vector<GraphPtr> graphs = [] {
    std::vector<GraphPtr> out;
    std::set<std::string> seen;
    auto add = [&](GraphPtr g) {
      if (seen.insert(canonical_form(*g)).second) out.push_back(std::move(g));
    };
    add(make_graph({}, {}));
    for (unsigned mask = 0; mask < 2; ++mask) {
      std::vector<Edge> es;
      if (mask & 1U) es.push_back({"e00", "a", "a", ""});
      add(make_graph({"a"}, std::move(es)));
    }
    const std::pair<const char*, const char*> pairs[4] = {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}};
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::vector<Edge> es;
      for (unsigned i = 0; i < 4; ++i)
        if (mask & (1U << i)) es.push_back({"e" + std::to_string(i), pairs[i].first, pairs[i].second, ""});
      add(make_graph({"a", "b"}, std::move(es)));
    }
    return out;
  }();
  return graphs;
}

bool unique_mediators(const SquareHoms& sq, const Graph& test) {
  const Graph& k = *sq.span_left.source();
  const Graph& l = *sq.span_left.target();
  const Graph& r = *sq.span_right.target();
  const Graph& q = *sq.cocone_left.target();
  bool ok = true;
  search_homs(l, test, {}, [&](std::span<const std::size_t> a_nodes, std::span<const std::size_t> a_edges) {
    HomSearch b_opts;
    b_opts.fixed_nodes.assign(r.node_count(), npos);
    b_opts.fixed_edges.assign(r.edge_count(), npos);
    for (std::size_t x = 0; x < k.node_count(); ++x) {
      std::size_t& slot = b_opts.fixed_nodes[sq.span_right.node(x)];
      std::size_t want = a_nodes[sq.span_left.node(x)];
      if (slot != npos && slot != want) return true;  // no b completes this a
      slot = want;
    }
    for (std::size_t x = 0; x < k.edge_count(); ++x) {
      std::size_t& slot = b_opts.fixed_edges[sq.span_right.edge(x)];
      std::size_t want = a_edges[sq.span_left.edge(x)];
      if (slot != npos && slot != want) return true;
      slot = want;
    }
    search_homs(r, test, b_opts, [&](std::span<const std::size_t> b_nodes, std::span<const std::size_t> b_edges) {
      HomSearch u_opts;
      u_opts.fixed_nodes.assign(q.node_count(), npos);
      u_opts.fixed_edges.assign(q.edge_count(), npos);
      auto pin = [&](std::vector<std::size_t>& slots, std::size_t at, std::size_t want) {
        if (slots[at] != npos && slots[at] != want) return false;
        slots[at] = want;
        return true;
      };
      for (std::size_t x = 0; x < l.node_count(); ++x)
        if (!pin(u_opts.fixed_nodes, sq.cocone_left.node(x), a_nodes[x])) return ok = false;
      for (std::size_t x = 0; x < l.edge_count(); ++x)
        if (!pin(u_opts.fixed_edges, sq.cocone_left.edge(x), a_edges[x])) return ok = false;
      for (std::size_t y = 0; y < r.node_count(); ++y)
        if (!pin(u_opts.fixed_nodes, sq.cocone_right.node(y), b_nodes[y])) return ok = false;
      for (std::size_t y = 0; y < r.edge_count(); ++y)
        if (!pin(u_opts.fixed_edges, sq.cocone_right.edge(y), b_edges[y])) return ok = false;
      ok = count_homs(q, test, u_opts, 2) == 1;
      return ok;
    });
    return ok;
  });
  return ok;
}

}  // namespace

bool verify_pushout(const SquareHoms& sq, const VerifyBounds& bounds) {
  if (!square_commutes(sq)) return false;
  const std::vector<const Graph*> graphs = {sq.span_left.source().get(), sq.span_left.target().get(),
                                            sq.span_right.target().get(), sq.cocone_left.target().get()};
  for (const Graph* g : graphs)
    if (g->node_count() > bounds.max_nodes || g->edge_count() > bounds.max_edges)
      throw VerifyBoundExceeded("verify_pushout: square exceeds the verification size bound");

  const bool typed = graphs.front()->typed();
  GraphPtr types = typed ? used_types(graphs) : nullptr;
  std::vector<GraphPtr> tests = {sq.span_left.source(), sq.span_left.target(), sq.span_right.target(),
                                 sq.cocone_left.target(), subobject_classifier(types), terminal_graph(types)};
  if (!typed && bounds.include_small_graphs)
    for (const GraphPtr& g : small_untyped_graphs()) tests.push_back(g);

  for (const GraphPtr& t : tests)
    if (!unique_mediators(sq, *t)) return false;
  return true;
}

}  // namespace openrewrite
