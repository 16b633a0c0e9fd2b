#pragma once

#include "openrewrite/cospan.hpp"
#include "openrewrite/double_lang.hpp"
#include "openrewrite/dpo.hpp"
#include "openrewrite/graph.hpp"

namespace fixtures {

using namespace openrewrite;

inline GraphPtr pt() { return make_graph({"x"}, {}); }
inline GraphPtr loop1() { return make_graph({"x"}, {Edge{"l", "x", "x", {}}}); }

/// a -> c, b -> c and a loop on c.
inline GraphPtr g3() {
  return make_graph({"a", "b", "c"},
                    {Edge{"e1", "a", "c", {}}, Edge{"e2", "b", "c", {}}, Edge{"e3", "c", "c", {}}});
}

/// g3 without the loop.
inline GraphPtr h3() { return make_graph({"a", "b", "c"}, {Edge{"e1", "a", "c", {}}, Edge{"e2", "b", "c", {}}}); }

/// Two nodes, each with a loop.
inline GraphPtr two_loops() {
  return make_graph({"p", "q"}, {Edge{"lp", "p", "p", {}}, Edge{"lq", "q", "q", {}}});
}

inline GraphPtr triangle() {
  return make_graph({"u", "v", "w"}, {Edge{"uv", "u", "v", {}}, Edge{"vw", "v", "w", {}}, Edge{"wu", "w", "u", {}}});
}

inline Rule drop_loop() { return Rule::from_inclusions("drop-loop", loop1(), pt(), pt()); }

inline Rule identity_rule() { return Rule::from_inclusions("identity", pt(), pt(), pt()); }

/// Reverses an edge u -> v while keeping it in the interface's node set only.
inline Rule reverse_edge() {
  GraphPtr l = make_graph({"u", "v"}, {Edge{"e", "u", "v", {}}});
  GraphPtr k = make_graph({"u", "v"}, {});
  GraphPtr r = make_graph({"u", "v"}, {Edge{"e", "v", "u", {}}});
  return Rule::from_inclusions("reverse", l, k, r);
}

/// Keeps an edge u -> v and adds a loop on v; its interface has an edge.
inline Rule grow_loop_on_target() {
  GraphPtr l = make_graph({"u", "v"}, {Edge{"e", "u", "v", {}}});
  GraphPtr r = make_graph({"u", "v"}, {Edge{"e", "u", "v", {}}, Edge{"loop", "v", "v", {}}});
  return Rule::from_inclusions("grow", l, l, r);
}

inline Grammar loop_grammar() { return Grammar{{drop_loop()}}; }

/// First open graph of the composition example: inputs {a,c,d}, outputs {d,e}.
inline StructuredCospan example_x1() {
  GraphPtr apex = make_graph({"a", "b", "c", "d", "e"},
                             {Edge{"ab", "a", "b", {}}, Edge{"bd", "b", "d", {}}, Edge{"da", "d", "a", {}},
                              Edge{"ed", "e", "d", {}}, Edge{"dc", "d", "c", {}}, Edge{"cb", "c", "b", {}}});
  return StructuredCospan::make(apex, {{"a", "a"}, {"c", "c"}, {"d", "d"}}, {{"d", "d"}, {"e", "e"}});
}

/// Second open graph: inputs {d,e}, outputs {e,f}.
inline StructuredCospan example_x2() {
  GraphPtr apex = make_graph({"d", "e", "f"},
                             {Edge{"de", "d", "e", {}}, Edge{"ef", "e", "f", {}}, Edge{"fd", "f", "d", {}}});
  return StructuredCospan::make(apex, {{"d", "d"}, {"e", "e"}}, {{"e", "e"}, {"f", "f"}});
}

/// The loop-removal rule on one node that is both input and output.
inline CospanRule open_loop_rule() {
  CospanRule r;
  r.name = "open-drop-loop";
  r.top = StructuredCospan::make(loop1(), {{"x", "x"}}, {{"x", "x"}});
  r.middle = StructuredCospan::make(pt(), {{"x", "x"}}, {{"x", "x"}});
  r.bottom = StructuredCospan::make(pt(), {{"x", "x"}}, {{"x", "x"}});
  r.up = CospanMorphism{{0}, GraphHom::from_ids(r.middle.apex, r.top.apex, {{"x", "x"}}, {}), {0}};
  r.down = CospanMorphism{{0}, GraphHom::from_ids(r.middle.apex, r.bottom.apex, {{"x", "x"}}, {}), {0}};
  return r;
}

/// The loop-removal rule with empty interfaces, so it applies anywhere in an open graph.
inline CospanRule closed_loop_rule() {
  CospanRule r;
  r.name = "drop-loop";
  r.top = StructuredCospan::make(loop1(), {}, {});
  r.middle = StructuredCospan::make(pt(), {}, {});
  r.bottom = r.middle;
  r.up = CospanMorphism{{}, GraphHom::from_ids(r.middle.apex, r.top.apex, {{"x", "x"}}, {}), {}};
  r.down = CospanMorphism::identity(r.middle);
  return r;
}

/// Top row of the worked square: inputs {a,b}, output {d}, loops at b and c.
inline StructuredCospan worked_square_top() {
  GraphPtr apex = make_graph({"a", "b", "c", "d"},
                             {Edge{"lb", "b", "b", {}}, Edge{"lc", "c", "c", {}}, Edge{"ac", "a", "c", {}},
                              Edge{"bc", "b", "c", {}}, Edge{"cd", "c", "d", {}}});
  return StructuredCospan::make(apex, {{"a", "a"}, {"b", "b"}}, {{"d", "d"}});
}

/// The same open graph with both loops removed.
inline StructuredCospan worked_square_bottom() {
  GraphPtr apex = make_graph({"a", "b", "c", "d"},
                             {Edge{"ac", "a", "c", {}}, Edge{"bc", "b", "c", {}}, Edge{"cd", "c", "d", {}}});
  return StructuredCospan::make(apex, {{"a", "a"}, {"b", "b"}}, {{"d", "d"}});
}

/// Pieces whose composite is the worked square's top row.
inline std::vector<StructuredCospan> worked_square_pieces() {
  GraphPtr p1 = make_graph({"a", "b"}, {Edge{"lb", "b", "b", {}}});
  GraphPtr p2 = make_graph({"a", "b", "c"}, {Edge{"ac", "a", "c", {}}, Edge{"bc", "b", "c", {}}});
  GraphPtr p3 = make_graph({"c"}, {Edge{"lc", "c", "c", {}}});
  GraphPtr p4 = make_graph({"c", "d"}, {Edge{"cd", "c", "d", {}}});
  return {
      StructuredCospan::make(p1, {{"a", "a"}, {"b", "b"}}, {{"a", "a"}, {"b", "b"}}),
      StructuredCospan::make(p2, {{"a", "a"}, {"b", "b"}}, {{"c", "c"}}),
      StructuredCospan::make(p3, {{"c", "c"}}, {{"c", "c"}}),
      StructuredCospan::make(p4, {{"c", "c"}}, {{"d", "d"}}),
  };
}

}  // namespace fixtures
