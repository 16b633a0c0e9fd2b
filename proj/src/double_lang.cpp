#include "openrewrite/double_lang.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace openrewrite {

namespace {

bool is_bijection(const std::vector<std::size_t>& map, std::size_t target_size) {
  if (map.size() != target_size) return false;
  std::vector<bool> hit(target_size, false);
  for (std::size_t v : map) {
    if (v >= target_size || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

std::vector<std::size_t> iota_map(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

CospanMorphism with_identity_feet(const StructuredCospan& from, GraphHom g) {
  CospanMorphism m;
  m.f = iota_map(from.inputs.size());
  m.h = iota_map(from.outputs.size());
  m.g = std::move(g);
  return m;
}

void require_valid(const Square& s, const char* where) {
  auto report = validate_cospan_rule(s);
  if (!report.empty()) throw DomainError(std::string(where) + ": " + report.front());
}

GraphHom identity_between(const GraphPtr& a, const GraphPtr& b) {
  return GraphHom(a, b, iota_map(a->node_count()), iota_map(a->edge_count()));
}

bool same_row(const StructuredCospan& a, const StructuredCospan& b) {
  return a.inputs == b.inputs && a.outputs == b.outputs && a.input_map == b.input_map &&
         a.output_map == b.output_map && *a.apex == *b.apex;
}

std::size_t pair_index(const PullbackResult& pb, std::size_t x, std::size_t y) {
  const Span& s = pb.span;
  for (std::size_t j = 0; j < s.apex->node_count(); ++j)
    if (s.left.node(j) == x && s.right.node(j) == y) return j;
  throw DomainError("vcompose: interface element missing from the pullback");
}

}  // namespace

std::vector<std::string> validate_cospan_rule(const CospanRule& r) {
  std::vector<std::string> report;
  for (const auto& v : validate_cospan(r.top)) report.push_back("top: " + v);
  for (const auto& v : validate_cospan(r.middle)) report.push_back("middle: " + v);
  for (const auto& v : validate_cospan(r.bottom)) report.push_back("bottom: " + v);
  if (!report.empty()) return report;
  for (const auto& v : validate_cospan_morphism(r.middle, r.up, r.top)) report.push_back("up: " + v);
  for (const auto& v : validate_cospan_morphism(r.middle, r.down, r.bottom)) report.push_back("down: " + v);
  if (!report.empty()) return report;
  if (!is_mono(r.up.g)) report.emplace_back("up: apex leg is not mono");
  if (!is_mono(r.down.g)) report.emplace_back("down: apex leg is not mono");
  if (!is_bijection(r.up.f, r.top.inputs.size())) report.emplace_back("up: input leg is not a bijection");
  if (!is_bijection(r.up.h, r.top.outputs.size())) report.emplace_back("up: output leg is not a bijection");
  if (!is_bijection(r.down.f, r.bottom.inputs.size())) report.emplace_back("down: input leg is not a bijection");
  if (!is_bijection(r.down.h, r.bottom.outputs.size())) report.emplace_back("down: output leg is not a bijection");
  return report;
}

bool is_normalized(const Square& s) {
  auto identity = [](const std::vector<std::size_t>& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != i) return false;
    return true;
  };
  return s.middle.inputs == s.top.inputs && s.middle.outputs == s.top.outputs && s.bottom.inputs == s.top.inputs &&
         s.bottom.outputs == s.top.outputs && identity(s.up.f) && identity(s.up.h) && identity(s.down.f) &&
         identity(s.down.h);
}

Square normalize(const Square& s) {
  require_valid(s, "normalize");
  if (is_normalized(s)) return s;
  std::map<std::string, std::string> mid_in;
  std::map<std::string, std::string> mid_out;
  std::map<std::string, std::string> bot_in;
  std::map<std::string, std::string> bot_out;
  for (std::size_t i = 0; i < s.middle.inputs.size(); ++i) {
    const std::string& name = s.top.inputs[s.up.f[i]];
    mid_in.emplace(s.middle.inputs[i], name);
    bot_in.emplace(s.bottom.inputs[s.down.f[i]], name);
  }
  for (std::size_t i = 0; i < s.middle.outputs.size(); ++i) {
    const std::string& name = s.top.outputs[s.up.h[i]];
    mid_out.emplace(s.middle.outputs[i], name);
    bot_out.emplace(s.bottom.outputs[s.down.h[i]], name);
  }
  Square out;
  out.name = s.name;
  out.top = s.top;
  out.middle = relabel_outputs(relabel_inputs(s.middle, mid_in), mid_out);
  out.bottom = relabel_outputs(relabel_inputs(s.bottom, bot_in), bot_out);
  out.up = with_identity_feet(out.middle, s.up.g);
  out.down = with_identity_feet(out.middle, s.down.g);
  return out;
}

Square identity_square(const StructuredCospan& c) {
  Square s;
  s.name = "id";
  s.top = c;
  s.middle = c;
  s.bottom = c;
  s.up = CospanMorphism::identity(c);
  s.down = CospanMorphism::identity(c);
  return s;
}

Square hcompose(const Square& s1, const Square& s2) {
  const Square a = normalize(s1);
  const Square b = normalize(s2);
  if (a.top.outputs != b.top.inputs)
    throw DomainError("hcompose: output feet of the left square differ from input feet of the right square");
  CospanComposite top = compose_cospans_detailed(a.top, b.top);
  CospanComposite middle = compose_cospans_detailed(a.middle, b.middle);
  CospanComposite bottom = compose_cospans_detailed(a.bottom, b.bottom);
  Square out;
  out.name = a.name + "|" + b.name;
  out.top = top.cospan;
  out.middle = middle.cospan;
  out.bottom = bottom.cospan;
  out.up = with_identity_feet(out.middle, middle.mediate(compose_homs(a.up.g, top.from_first()),
                                                         compose_homs(b.up.g, top.from_second())));
  out.down = with_identity_feet(out.middle, middle.mediate(compose_homs(a.down.g, bottom.from_first()),
                                                           compose_homs(b.down.g, bottom.from_second())));
  return out;
}

Square vcompose(const Square& s1, const Square& s2) {
  const Square a = normalize(s1);
  const Square b = normalize(s2);
  if (a.bottom.inputs != b.top.inputs || a.bottom.outputs != b.top.outputs)
    throw DomainError("vcompose: the shared row has different feet");
  GraphHom phi;
  if (same_row(a.bottom, b.top)) {
    phi = identity_between(a.bottom.apex, b.top.apex);
  } else {
    auto iso = find_cospan_isomorphism(a.bottom, b.top);
    if (!iso) throw DomainError("vcompose: bottom of the upper square is not isomorphic to top of the lower square");
    phi = *iso;
  }
  PullbackResult pb = pullback(Cospan{b.top.apex, compose_homs(a.down.g, phi), b.up.g});
  Square out;
  out.name = a.name + "/" + b.name;
  out.top = a.top;
  out.bottom = b.bottom;
  out.middle.apex = pb.span.apex;
  out.middle.inputs = a.middle.inputs;
  out.middle.outputs = a.middle.outputs;
  for (std::size_t i = 0; i < a.middle.inputs.size(); ++i)
    out.middle.input_map.push_back(pair_index(pb, a.middle.input_map[i], b.middle.input_map[i]));
  for (std::size_t i = 0; i < a.middle.outputs.size(); ++i)
    out.middle.output_map.push_back(pair_index(pb, a.middle.output_map[i], b.middle.output_map[i]));
  out.up = with_identity_feet(out.middle, compose_homs(pb.span.left, a.up.g));
  out.down = with_identity_feet(out.middle, compose_homs(pb.span.right, b.down.g));
  return out;
}

ColoredDigraph encode_square(const Square& input) {
  const Square s = normalize(input);
  ColoredDigraph d;
  struct Layer {
    std::vector<std::size_t> node;
    std::vector<std::size_t> edge;
  };
  auto add_layer = [&](const StructuredCospan& c, const std::string& tag) {
    Layer layer;
    const Graph& g = *c.apex;
    for (const Node& n : g.nodes()) layer.node.push_back(d.add_vertex(tag + ":n:" + n.type));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      std::size_t v = d.add_vertex(tag + ":e:" + g.edges()[e].type);
      layer.edge.push_back(v);
      d.add_arc(layer.node[g.src(e)], v, "s");
      d.add_arc(v, layer.node[g.tgt(e)], "t");
    }
    return layer;
  };
  const Layer top = add_layer(s.top, "T");
  const Layer mid = add_layer(s.middle, "M");
  const Layer bot = add_layer(s.bottom, "B");
  auto add_leg = [&](const GraphHom& h, const Layer& to, const char* color) {
    for (std::size_t i = 0; i < h.node_map().size(); ++i) d.add_arc(mid.node[i], to.node[h.node(i)], color);
    for (std::size_t i = 0; i < h.edge_map().size(); ++i) d.add_arc(mid.edge[i], to.edge[h.edge(i)], color);
  };
  add_leg(s.up.g, top, "up");
  add_leg(s.down.g, bot, "down");
  for (std::size_t i = 0; i < s.top.inputs.size(); ++i) {
    std::size_t v = d.add_vertex("I:" + s.top.inputs[i]);
    d.add_arc(v, top.node[s.top.input_map[i]], "T");
    d.add_arc(v, mid.node[s.middle.input_map[i]], "M");
    d.add_arc(v, bot.node[s.bottom.input_map[i]], "B");
  }
  for (std::size_t i = 0; i < s.top.outputs.size(); ++i) {
    std::size_t v = d.add_vertex("O:" + s.top.outputs[i]);
    d.add_arc(v, top.node[s.top.output_map[i]], "T");
    d.add_arc(v, mid.node[s.middle.output_map[i]], "M");
    d.add_arc(v, bot.node[s.bottom.output_map[i]], "B");
  }
  return d;
}

std::string square_certificate(const Square& s) { return "square|" + canonical_certificate(encode_square(s)); }

bool squares_isomorphic(const Square& a, const Square& b) { return square_certificate(a) == square_certificate(b); }

bool interchange_check(const Square& a, const Square& b, const Square& c, const Square& d) {
  const Square rows_first = vcompose(hcompose(a, b), hcompose(c, d));
  const Square columns_first = hcompose(vcompose(a, c), vcompose(b, d));
  require_valid(rows_first, "interchange_check");
  require_valid(columns_first, "interchange_check");
  return squares_isomorphic(rows_first, columns_first);
}

namespace {

// Every assignment of feet to feet over the given apex map.
void foot_choices(const std::vector<std::size_t>& from_map, const std::vector<std::size_t>& to_map,
                  const GraphHom& g, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::vector<std::size_t>> options(from_map.size());
  for (std::size_t i = 0; i < from_map.size(); ++i)
    for (std::size_t j = 0; j < to_map.size(); ++j)
      if (to_map[j] == g.node(from_map[i])) options[i].push_back(j);
  out.clear();
  std::vector<std::size_t> current(from_map.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == from_map.size()) {
      out.push_back(current);
      return;
    }
    for (std::size_t j : options[i]) {
      current[i] = j;
      rec(i + 1);
    }
  };
  rec(0);
}

Rule apex_rule(const CospanRule& r) {
  Rule out;
  out.name = r.name;
  out.left = r.top.apex;
  out.interface = r.middle.apex;
  out.right = r.bottom.apex;
  out.to_left = r.up.g;
  out.to_right = r.down.g;
  return out;
}

std::vector<std::string> deleted_feet(const CospanRule& rule, const StructuredCospan& target, const GraphHom& m) {
  std::vector<bool> kept(rule.top.apex->node_count(), false);
  for (std::size_t v : rule.up.g.node_map()) kept[v] = true;
  std::vector<bool> deleted(target.apex->node_count(), false);
  for (std::size_t v = 0; v < kept.size(); ++v)
    if (!kept[v]) deleted[m.node(v)] = true;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < target.inputs.size(); ++i)
    if (deleted[target.input_map[i]]) out.push_back("input " + target.inputs[i]);
  for (std::size_t i = 0; i < target.outputs.size(); ++i)
    if (deleted[target.output_map[i]]) out.push_back("output " + target.outputs[i]);
  return out;
}

}  // namespace

std::vector<CospanMatch> find_cospan_matches(const CospanRule& rule, const StructuredCospan& target, bool mono_only) {
  std::vector<CospanMatch> out;
  std::vector<std::vector<std::size_t>> ins;
  std::vector<std::vector<std::size_t>> outs;
  for (GraphHom& g : enumerate_homs(rule.top.apex, target.apex, mono_only)) {
    foot_choices(rule.top.input_map, target.input_map, g, ins);
    if (ins.empty()) continue;
    foot_choices(rule.top.output_map, target.output_map, g, outs);
    if (outs.empty()) continue;
    GluingReport gluing = gluing_check(rule.up.g, g);
    std::vector<std::string> lost = deleted_feet(rule, target, g);
    for (const auto& f : ins) {
      for (const auto& h : outs) {
        CospanMatch m;
        m.morphism.f = f;
        m.morphism.g = g;
        m.morphism.h = h;
        m.gluing = gluing;
        m.deleted_feet = lost;
        m.applicable = gluing.ok() && lost.empty();
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

CospanStep apply_cospan_rule(const CospanRule& rule, const StructuredCospan& target, const CospanMorphism& match) {
  if (auto problems = validate_cospan_morphism(rule.top, match, target); !problems.empty())
    throw DomainError("apply_cospan_rule: match is not a morphism of open graphs: " + problems.front());
  if (auto lost = deleted_feet(rule, target, match.g); !lost.empty()) {
    GluingReport report;
    report.dangling_ok = false;
    for (auto& foot : lost) report.offenders.push_back(foot + " would be deleted");
    throw GluingViolation(std::move(report));
  }
  DerivationStep step = apply_rule(apex_rule(rule), target.apex, match.g, ApplyOptions{false});

  std::vector<std::size_t> back(target.apex->node_count(), npos);
  for (std::size_t i = 0; i < step.complement->node_count(); ++i) back[step.complement_to_graph.node(i)] = i;

  StructuredCospan complement;
  complement.apex = step.complement;
  complement.inputs = target.inputs;
  complement.outputs = target.outputs;
  for (std::size_t v : target.input_map) complement.input_map.push_back(back[v]);
  for (std::size_t v : target.output_map) complement.output_map.push_back(back[v]);

  StructuredCospan result;
  result.apex = step.result;
  result.inputs = target.inputs;
  result.outputs = target.outputs;
  for (std::size_t v : complement.input_map) result.input_map.push_back(step.complement_to_result.node(v));
  for (std::size_t v : complement.output_map) result.output_map.push_back(step.complement_to_result.node(v));

  CospanStep out;
  out.derived.name = rule.name + "@derived";
  out.derived.top = target;
  out.derived.middle = complement;
  out.derived.bottom = result;
  out.derived.up = with_identity_feet(complement, step.complement_to_graph);
  out.derived.down = with_identity_feet(complement, step.complement_to_result);
  out.result = std::move(result);
  if (auto report = validate_cospan_rule(out.derived); !record_invariant(report.empty()))
    throw CertificationFailure("derived rule of '" + rule.name + "' is not a rule: " + report.front());
  return out;
}

const CospanRule* CospanGrammar::find(const std::string& name) const {
  for (const CospanRule& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<std::string> validate_cospan_grammar(const CospanGrammar& g) {
  std::vector<std::string> report;
  std::set<std::string> names;
  for (const CospanRule& r : g.rules) {
    if (!names.insert(r.name).second) report.push_back("duplicate rule name '" + r.name + "'");
    for (const auto& v : validate_cospan_rule(r)) report.push_back("rule '" + r.name + "': " + v);
  }
  return report;
}

bool LangClosure::contains(const Square& s) const {
  const std::string cert = square_certificate(s);
  return std::find(certificates.begin(), certificates.end(), cert) != certificates.end();
}

namespace {

struct LangBuilder {
  const LangBounds& bounds;
  LangClosure closure;
  std::unordered_set<std::string> known;
  std::vector<std::string> top_certs;
  std::vector<std::string> bottom_certs;
  bool full = false;

  bool fits(const Square& s) const {
    return s.top.apex->size() <= bounds.max_size && s.middle.apex->size() <= bounds.max_size &&
           s.bottom.apex->size() <= bounds.max_size;
  }

  void add(const Square& raw, std::size_t level) {
    if (full) return;
    if (auto report = validate_cospan_rule(raw); !record_invariant(report.empty()))
      throw CertificationFailure("generated square is not a rule: " + report.front());
    if (!fits(raw)) {
      closure.exhausted = true;
      return;
    }
    Square s = normalize(raw);
    std::string cert = square_certificate(s);
    if (!known.insert(cert).second) return;
    if (closure.squares.size() >= bounds.max_squares) {
      closure.exhausted = true;
      full = true;
      return;
    }
    top_certs.push_back(cospan_certificate(s.top));
    bottom_certs.push_back(cospan_certificate(s.bottom));
    closure.squares.push_back(std::move(s));
    closure.certificates.push_back(std::move(cert));
    closure.level.push_back(level);
  }
};

}  // namespace

LangClosure lang_closure(const CospanGrammar& g, const std::vector<StructuredCospan>& seeds, const LangBounds& bounds) {
  LangBuilder b{bounds, {}, {}, {}, {}, false};
  std::vector<StructuredCospan> rows = seeds;
  for (const CospanRule& r : g.rules) {
    const Square s = normalize(r);
    rows.push_back(s.top);
    rows.push_back(s.middle);
    rows.push_back(s.bottom);
    b.add(s, 0);
  }
  for (const StructuredCospan& seed : seeds) {
    for (const CospanRule& r : g.rules) {
      for (const CospanMatch& m : find_cospan_matches(r, seed, bounds.mono_only)) {
        if (!m.applicable) continue;
        CospanStep step = apply_cospan_rule(r, seed, m.morphism);
        rows.push_back(step.result);
        b.add(step.derived, 0);
      }
    }
  }
  for (const StructuredCospan& row : rows) b.add(identity_square(row), 0);

  for (std::size_t level = 1; level <= bounds.depth && !b.full; ++level) {
    const std::size_t n = b.closure.squares.size();
    for (std::size_t i = 0; i < n && !b.full; ++i) {
      const Square x = b.closure.squares[i];
      for (std::size_t j = 0; j < n && !b.full; ++j) {
        if (b.closure.level[i] + 1 != level && b.closure.level[j] + 1 != level) continue;
        const Square y = b.closure.squares[j];
        if (x.top.outputs == y.top.inputs) b.add(hcompose(x, y), level);
        if (b.bottom_certs[i] == b.top_certs[j]) b.add(vcompose(x, y), level);
      }
    }
  }
  return std::move(b.closure);
}

ClosedSquareSearch closed_square_search(const CospanGrammar& g, const GraphPtr& start, std::size_t steps,
                                        std::size_t max_size, bool mono_only) {
  std::vector<Square> generators;
  for (const CospanRule& r : g.rules) {
    Square s = normalize(r);
    if (!s.top.inputs.empty())
      throw DomainError("closed_square_search: generator '" + r.name + "' has a nonempty left interface");
    generators.push_back(std::move(s));
  }
  std::stable_sort(generators.begin(), generators.end(),
                   [](const Square& a, const Square& b) { return a.name < b.name; });

  ClosedSquareSearch out;
  std::unordered_set<std::string> known;
  out.squares.push_back(identity_square(closed(start)));
  out.bottom_forms.push_back(canonical_form(*start));
  known.insert(out.bottom_forms.back());
  std::vector<std::size_t> frontier = {0};

  for (std::size_t step = 0; step < steps && !frontier.empty(); ++step) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      const GraphPtr x = out.squares[idx].bottom.apex;
      for (const Square& gen : generators) {
        const GraphHom foot_leg = gen.top.output_leg();
        for (const GraphHom& m : enumerate_homs(gen.top.apex, x, mono_only)) {
          if (!gluing_check(foot_leg, m).ok()) continue;
          // x decomposed as the generator's top row glued to a remainder d.
          PushoutComplement pc = pushout_complement(foot_leg, m);
          StructuredCospan rest;
          rest.apex = pc.kprime;
          rest.inputs = gen.top.outputs;
          rest.input_map = pc.k_to_kprime.node_map();
          const Square layer = hcompose(gen, identity_square(rest));
          Square composite = vcompose(out.squares[idx], layer);
          if (auto report = validate_cospan_rule(composite); !record_invariant(report.empty()))
            throw CertificationFailure("composite square is not a rule: " + report.front());
          if (composite.bottom.apex->size() > max_size) {
            out.size_exhausted = true;
            continue;
          }
          std::string form = canonical_form(*composite.bottom.apex);
          if (!known.insert(form).second) continue;
          next.push_back(out.squares.size());
          out.squares.push_back(std::move(composite));
          out.bottom_forms.push_back(std::move(form));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace openrewrite
