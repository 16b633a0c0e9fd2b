#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "openrewrite/graph.hpp"

namespace openrewrite {

/// Vertex- and arc-coloured directed multigraph. Everything that needs an
/// isomorphism-invariant certificate (graphs, cospans, squares) is encoded
/// as one of these first.
struct ColoredDigraph {
  struct Arc {
    std::size_t from;
    std::size_t to;
    std::string color;
  };

  std::vector<std::string> vertex_colors;
  std::vector<Arc> arcs;

  std::size_t add_vertex(std::string color) {
    vertex_colors.push_back(std::move(color));
    return vertex_colors.size() - 1;
  }
  void add_arc(std::size_t from, std::size_t to, std::string color) {
    arcs.push_back({from, to, std::move(color)});
  }
};

/// Equal for two inputs iff there is a colour-preserving isomorphism between
/// them. Colour refinement plus individualisation, with pruning of
/// interchangeable twin vertices; exact, but meant for small inputs.
std::string canonical_certificate(const ColoredDigraph& g);

/// Certificate of a graph up to isomorphism, respecting node and edge types.
std::string canonical_form(const Graph& g);

}  // namespace openrewrite
