#pragma once

// Open graphs: structured cospans La -> x <- Lb over the discrete-graph
// functor L, their morphisms, and composition by pushout.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "openrewrite/canonical.hpp"
#include "openrewrite/colimits.hpp"
#include "openrewrite/graph.hpp"

namespace openrewrite {

struct StructuredCospan {
  std::vector<std::string> inputs;   // sorted, duplicate-free
  std::vector<std::string> outputs;  // sorted, duplicate-free
  GraphPtr apex;
  std::vector<std::size_t> input_map;   // aligned with inputs; apex node indices
  std::vector<std::size_t> output_map;  // aligned with outputs

  /// Builds from id maps (foot name -> apex node id). Throws DomainError on
  /// unknown ids or partial maps.
  static StructuredCospan make(GraphPtr apex, const std::map<std::string, std::string>& inputs,
                               const std::map<std::string, std::string>& outputs);

  std::size_t input_index(const std::string& name) const;
  std::size_t output_index(const std::string& name) const;
  std::map<std::string, std::string> input_ids() const;
  std::map<std::string, std::string> output_ids() const;

  /// La and Lb as discrete graphs, and the legs into the apex.
  GraphPtr input_foot() const;
  GraphPtr output_foot() const;
  GraphHom input_leg() const;
  GraphHom output_leg() const;
};

std::vector<std::string> validate_cospan(const StructuredCospan& c);

/// (f, g, h) with f on inputs, g on apexes, h on outputs.
struct CospanMorphism {
  std::vector<std::size_t> f;  // source input index -> target input index
  GraphHom g;
  std::vector<std::size_t> h;  // source output index -> target output index

  static CospanMorphism identity(const StructuredCospan& c);
};

/// Empty iff g is a hom between the apexes and both squares commute.
std::vector<std::string> validate_cospan_morphism(const StructuredCospan& from, const CospanMorphism& m,
                                                  const StructuredCospan& to);

CospanMorphism compose_cospan_morphisms(const CospanMorphism& first, const CospanMorphism& second);

/// The composite together with the pushout that produced it.
struct CospanComposite {
  StructuredCospan cospan;
  PushoutResult pushout;
  GraphHom rename;  // pushout object -> cospan.apex

  GraphHom from_first() const { return compose_homs(pushout.inj_left(), rename); }
  GraphHom from_second() const { return compose_homs(pushout.inj_right(), rename); }
  /// The induced map cospan.apex -> Q for a cocone into Q.
  GraphHom mediate(const GraphHom& to_first, const GraphHom& to_second) const {
    return compose_homs(invert(rename), pushout.mediate(to_first, to_second));
  }
};

/// Requires outputs(c1) == inputs(c2) as sets. Glued nodes keep the plain
/// ids of their parts where those stay unique.
CospanComposite compose_cospans_detailed(const StructuredCospan& c1, const StructuredCospan& c2);
StructuredCospan compose_cospans(const StructuredCospan& c1, const StructuredCospan& c2);

StructuredCospan identity_cospan(const std::vector<std::string>& feet);

/// Empty interface on both sides.
StructuredCospan closed(const GraphPtr& g);

/// Renames feet through a bijection old name -> new name.
StructuredCospan relabel_inputs(const StructuredCospan& c, const std::map<std::string, std::string>& renaming);
StructuredCospan relabel_outputs(const StructuredCospan& c, const std::map<std::string, std::string>& renaming);

/// Encodes the cospan with feet as named vertices, so isomorphisms fix feet pointwise.
ColoredDigraph encode_cospan(const StructuredCospan& c);
std::string cospan_certificate(const StructuredCospan& c);

/// An apex isomorphism g with g∘in = in′ and g∘out = out′ (feet fixed).
std::optional<GraphHom> find_cospan_isomorphism(const StructuredCospan& c1, const StructuredCospan& c2);
bool cospans_isomorphic(const StructuredCospan& c1, const StructuredCospan& c2);

}  // namespace openrewrite
