#pragma once

// Graphviz renderings of graphs, open graphs and traces.

#include <string>

#include "openrewrite/cospan.hpp"
#include "openrewrite/dpo.hpp"
#include "openrewrite/graph.hpp"

namespace openrewrite {

std::string graph_to_dot(const Graph& g, const std::string& name = "G");

/// Feet boxes on either side of the apex box, joined by dashed leg arrows.
std::string cospan_to_dot(const StructuredCospan& c, const std::string& name = "C");

/// One cluster per graph of the trace, left to right.
std::string trace_to_dot(const Trace& t, const std::string& name = "T");

}  // namespace openrewrite
