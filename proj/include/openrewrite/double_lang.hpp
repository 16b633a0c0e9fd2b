#pragma once

// Rewrite rules on open graphs, the squares they generate, and horizontal
// and vertical composition of squares.

#include <optional>
#include <string>
#include <vector>

#include "openrewrite/cospan.hpp"
#include "openrewrite/dpo.hpp"

namespace openrewrite {

/// top <- middle -> bottom, drawn as a square whose horizontal arrows are
/// the three open graphs and whose vertical arrows are the feet columns.
struct CospanRule {
  std::string name;
  StructuredCospan top;
  StructuredCospan middle;
  StructuredCospan bottom;
  CospanMorphism up;    // middle -> top
  CospanMorphism down;  // middle -> bottom
};

using Square = CospanRule;

/// Empty iff both morphisms are valid, the apex legs are mono and every
/// interface leg is a bijection.
std::vector<std::string> validate_cospan_rule(const CospanRule& r);

/// The same square with middle and bottom feet renamed after the top row, so
/// every interface leg is an identity.
Square normalize(const Square& s);
bool is_normalized(const Square& s);

/// top = middle = bottom = c with identity legs.
Square identity_square(const StructuredCospan& c);

/// Side by side: rowwise pushouts over the shared feet. Requires the output
/// feet of s1 to equal the input feet of s2 (after normalization).
Square hcompose(const Square& s1, const Square& s2);

/// Stacked: the middle is the pullback of the two middles over the shared
/// row. Requires s1.bottom and s2.top to be isomorphic with feet fixed.
Square vcompose(const Square& s1, const Square& s2);

ColoredDigraph encode_square(const Square& s);
/// Equal iff the squares are isomorphic (apex isomorphisms in all three rows
/// commuting with the vertical legs and fixing feet).
std::string square_certificate(const Square& s);
bool squares_isomorphic(const Square& a, const Square& b);

/// a | b over c | d. True iff (a|b)/(c|d) and (a/c)|(b/d) are isomorphic.
bool interchange_check(const Square& a, const Square& b, const Square& c, const Square& d);

struct CospanMatch {
  CospanMorphism morphism;  // rule.top -> target
  bool applicable = false;
  GluingReport gluing;
  std::vector<std::string> deleted_feet;  // target feet whose node would be deleted
};

/// Morphisms of open graphs rule.top -> target. Feet must map to feet of the
/// same side; the apex component is a mono unless mono_only is false.
std::vector<CospanMatch> find_cospan_matches(const CospanRule& rule, const StructuredCospan& target,
                                             bool mono_only = true);

struct CospanStep {
  StructuredCospan result;
  CospanRule derived;  // target <- complement -> result
};

/// Pointwise pushout complement and pushout. The interface columns are
/// carried over unchanged since their legs are bijections.
CospanStep apply_cospan_rule(const CospanRule& rule, const StructuredCospan& target, const CospanMorphism& match);

struct CospanGrammar {
  std::vector<CospanRule> rules;

  const CospanRule* find(const std::string& name) const;
};

std::vector<std::string> validate_cospan_grammar(const CospanGrammar& g);

struct LangBounds {
  std::size_t depth = 2;          // rounds of pairwise composition
  std::size_t max_squares = 2000;
  std::size_t max_size = 40;      // nodes + edges of any apex
  bool mono_only = true;
};

struct LangClosure {
  std::vector<Square> squares;  // discovery order
  std::vector<std::string> certificates;
  std::vector<std::size_t> level;  // composition round each square appeared in
  bool exhausted = false;

  bool contains(const Square& s) const;
};

/// Squares generated from the rules, their derived rules on the seed open
/// graphs, and identity squares on every row encountered, closed under
/// hcompose and vcompose for the given number of rounds.
LangClosure lang_closure(const CospanGrammar& g, const std::vector<StructuredCospan>& seeds,
                         const LangBounds& bounds);

struct ClosedSquareSearch {
  /// One square per reachable bottom, each with top row closed(g).
  std::vector<Square> squares;
  std::vector<std::string> bottom_forms;  // canonical forms of the bottom apexes
  bool size_exhausted = false;
};

/// Squares from closed(g) built as the composite of `steps` layers, each layer
/// a generator placed beside an identity square and stacked under the
/// previous layer. The generators must have an empty left interface.
ClosedSquareSearch closed_square_search(const CospanGrammar& g, const GraphPtr& start, std::size_t steps,
                                        std::size_t max_size, bool mono_only = true);

}  // namespace openrewrite
