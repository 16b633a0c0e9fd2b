#pragma once

// JSON encoding of every value the tool reads or writes.

#include <string>
#include <string_view>

#include <json.hpp>

#include "openrewrite/cospan.hpp"
#include "openrewrite/double_lang.hpp"
#include "openrewrite/dpo.hpp"
#include "openrewrite/graph.hpp"

namespace openrewrite {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

/// Malformed input: bad JSON syntax (with line and column) or a schema
/// violation (with the JSON pointer of the offending value).
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parses text, reporting syntax errors by position. Rejects an unknown
/// "format_version".
Json parse_json_text(std::string_view text);
Json read_json_file(const std::string& path);

/// Pretty-printed with a trailing newline. Object keys keep insertion order,
/// and every writer inserts them in a fixed order.
std::string dump_json(const Json& j);

/// Adds "format_version" to a top-level document.
Json versioned(Json j);

Json graph_to_json(const Graph& g);
GraphPtr graph_from_json(const Json& j, const std::string& where = "");

/// Keys are ids of the source; values ids of the target.
Json hom_to_json(const GraphHom& h);
GraphHom hom_from_json(const Json& j, const GraphPtr& source, const GraphPtr& target, const std::string& where = "");

Json rule_to_json(const Rule& r);
Rule rule_from_json(const Json& j, const std::string& where = "");

Json grammar_to_json(const Grammar& g);
/// A single rule document is read as a one-rule grammar.
Grammar grammar_from_json(const Json& j, const std::string& where = "");

/// {"apex": <Graph>, "inputs": {foot: node}, "outputs": {foot: node}}
Json cospan_to_json(const StructuredCospan& c);
StructuredCospan cospan_from_json(const Json& j, const std::string& where = "");

Json cospan_rule_to_json(const CospanRule& r);
CospanRule cospan_rule_from_json(const Json& j, const std::string& where = "");

Json cospan_grammar_to_json(const CospanGrammar& g);
CospanGrammar cospan_grammar_from_json(const Json& j, const std::string& where = "");

Json step_to_json(const DerivationStep& s);
Json trace_to_json(const Trace& t);
Trace trace_from_json(const Json& j, const std::string& where = "");

/// Optional top-level "type_graphs": {name: <Graph>}.
TypeGraphRegistry type_graphs_from_json(const Json& j);

enum class DocumentKind { graph, hom, rule, grammar, cospan, cospan_rule, cospan_grammar, trace, check_report, unknown };

DocumentKind detect_kind(const Json& j);
const char* to_string(DocumentKind k);

}  // namespace openrewrite
