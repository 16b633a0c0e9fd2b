#pragma once

// Finite directed multigraphs, optionally typed over a named type graph, and
// the homomorphisms between them.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace openrewrite {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Raised when an operation receives data that violates its contract.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node {
  std::string id;
  std::string type;  // empty when untyped

  Node(std::string id_) : id(std::move(id_)) {}  // NOLINT(google-explicit-constructor)
  Node(const char* id_) : id(id_) {}             // NOLINT(google-explicit-constructor)
  Node(std::string id_, std::string type_) : id(std::move(id_)), type(std::move(type_)) {}

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::string id;
  std::string src;
  std::string tgt;
  std::string type;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A finite graph. Nodes and edges are kept sorted by id, which fixes the
/// index order used by every enumeration in the library. Construction never
/// throws on malformed data; use validate_graph to get a report.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<Node> nodes, std::vector<Edge> edges,
        std::optional<std::string> type_graph = std::nullopt);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t size() const { return nodes_.size() + edges_.size(); }
  bool empty() const { return nodes_.empty() && edges_.empty(); }

  /// Index of the edge's endpoints; npos for a dangling endpoint.
  std::size_t src(std::size_t e) const { return src_[e]; }
  std::size_t tgt(std::size_t e) const { return tgt_[e]; }

  std::optional<std::size_t> find_node(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  std::size_t node_index(std::string_view id) const;  // throws DomainError
  std::size_t edge_index(std::string_view id) const;  // throws DomainError

  const std::optional<std::string>& type_graph() const { return type_graph_; }
  bool typed() const { return type_graph_.has_value(); }

  /// Structural well-formedness needed by the algorithms (no dangling
  /// endpoints, no duplicate ids). Cheaper than a full validation report.
  bool well_formed() const { return well_formed_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.type_graph_ == b.type_graph_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> tgt_;
  std::optional<std::string> type_graph_;
  bool well_formed_ = true;
};

using GraphPtr = std::shared_ptr<const Graph>;

inline GraphPtr make_graph(std::vector<Node> nodes, std::vector<Edge> edges,
                           std::optional<std::string> type_graph = std::nullopt) {
  return std::make_shared<const Graph>(std::move(nodes), std::move(edges), std::move(type_graph));
}
GraphPtr share(Graph g);

/// Discrete graph on the given node ids.
GraphPtr discrete_graph(const std::vector<std::string>& ids);

/// Named type graphs available for checking typed graphs.
using TypeGraphRegistry = std::map<std::string, GraphPtr, std::less<>>;

/// Each entry names one violated invariant and the offending id.
std::vector<std::string> validate_graph(const Graph& g, const TypeGraphRegistry* types = nullptr);

/// Structure- and type-preserving map between two graphs, stored as index
/// maps into the sorted node and edge vectors.
class GraphHom {
 public:
  GraphHom() = default;
  GraphHom(GraphPtr source, GraphPtr target, std::vector<std::size_t> node_map,
           std::vector<std::size_t> edge_map);

  static GraphHom identity(const GraphPtr& g);
  /// Throws DomainError when an id is unknown or a map is not total.
  static GraphHom from_ids(GraphPtr source, GraphPtr target,
                           const std::map<std::string, std::string>& nodes,
                           const std::map<std::string, std::string>& edges);

  const GraphPtr& source() const { return source_; }
  const GraphPtr& target() const { return target_; }
  const std::vector<std::size_t>& node_map() const { return node_map_; }
  const std::vector<std::size_t>& edge_map() const { return edge_map_; }
  std::size_t node(std::size_t i) const { return node_map_[i]; }
  std::size_t edge(std::size_t i) const { return edge_map_[i]; }

  std::map<std::string, std::string> node_ids() const;
  std::map<std::string, std::string> edge_ids() const;

  friend bool operator==(const GraphHom& a, const GraphHom& b);

 private:
  GraphPtr source_;
  GraphPtr target_;
  std::vector<std::size_t> node_map_;
  std::vector<std::size_t> edge_map_;
};

bool same_graph(const GraphPtr& a, const GraphPtr& b);

/// Empty iff the maps are total, commute with source/target and preserve types.
std::vector<std::string> validate_hom(const GraphHom& f);

/// g ∘ f. Throws DomainError when target(f) differs from source(g).
GraphHom compose_homs(const GraphHom& f, const GraphHom& g);

struct HomClass {
  bool is_mono = false;
  bool is_epi = false;
  bool is_iso = false;
  bool node_injective = false;
  bool node_surjective = false;
  bool edge_injective = false;
  bool edge_surjective = false;
};

HomClass classify_hom(const GraphHom& f);
inline bool is_mono(const GraphHom& f) { return classify_hom(f).is_mono; }
inline bool is_iso(const GraphHom& f) { return classify_hom(f).is_iso; }

/// Inverse of an isomorphism. Throws DomainError otherwise.
GraphHom invert(const GraphHom& f);

/// Constraints for homomorphism search. Fixed entries pin the image of a
/// node or edge; an empty vector means no pins.
struct HomSearch {
  bool mono_only = false;
  std::vector<std::size_t> fixed_nodes;  // npos = free
  std::vector<std::size_t> fixed_edges;  // npos = free
};

/// Visits every homomorphism g→h satisfying the constraints, in
/// lexicographic order of (node assignment, edge assignment). The visitor
/// returns false to stop early. Raw index maps are handed over to avoid
/// allocation in hot loops.
void search_homs(const Graph& g, const Graph& h, const HomSearch& opts,
                 const std::function<bool(std::span<const std::size_t>,
                                          std::span<const std::size_t>)>& visit);

std::vector<GraphHom> enumerate_homs(const GraphPtr& g, const GraphPtr& h, bool mono_only = false);

/// Number of homs satisfying the constraints, stopping once `limit` is hit.
std::size_t count_homs(const Graph& g, const Graph& h, const HomSearch& opts,
                       std::size_t limit = npos);

/// Some isomorphism g→h, if one exists.
std::optional<GraphHom> find_isomorphism(const GraphPtr& g, const GraphPtr& h);

/// A subobject of an ambient graph, given by membership flags.
struct Subgraph {
  GraphPtr ambient;
  std::vector<bool> nodes;
  std::vector<bool> edges;

  static Subgraph full(const GraphPtr& g);
  static Subgraph empty(const GraphPtr& g);
  /// Image of a hom as a subgraph of its target.
  static Subgraph image(const GraphHom& f);
  static Subgraph from_ids(const GraphPtr& g, const std::vector<std::string>& node_ids,
                           const std::vector<std::string>& edge_ids);

  bool valid() const;
  /// The subgraph as a standalone graph (ids and types kept).
  GraphPtr to_graph() const;
  GraphHom inclusion() const;
  std::size_t node_count() const;
  std::size_t edge_count() const;

  friend bool operator==(const Subgraph& a, const Subgraph& b) {
    return same_graph(a.ambient, b.ambient) && a.nodes == b.nodes && a.edges == b.edges;
  }
};

Subgraph lattice_meet(const Subgraph& a, const Subgraph& b);
Subgraph lattice_join(const Subgraph& a, const Subgraph& b);
bool subgraph_leq(const Subgraph& a, const Subgraph& b);

/// Every subgraph of g, in a fixed order. Intended for graphs of a handful of elements.
std::vector<Subgraph> all_subgraphs(const GraphPtr& g);

}  // namespace openrewrite
