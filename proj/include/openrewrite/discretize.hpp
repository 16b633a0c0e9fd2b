#pragma once

// The discrete comonad on graphs, discrete grammars, the complement w used to
// split a rewrite into discrete-interface steps, and decomposition squares.

#include "openrewrite/double_lang.hpp"
#include "openrewrite/dpo.hpp"
#include "openrewrite/graph.hpp"

namespace openrewrite {

struct FlatResult {
  GraphPtr flat;   // discrete on the nodes of the input
  GraphHom counit; // flat -> input, the identity on nodes
};

FlatResult flatten(const GraphPtr& g);

/// The action of the comonad on a hom: its node map between the flat graphs.
GraphHom flat_map(const GraphHom& f, const FlatResult& source, const FlatResult& target);

/// ℓ <- flat k -> r with legs through the counit.
Rule discretize_rule(const Rule& r);

/// discretize_rule on every rule, names suffixed "-flat".
Grammar discretize_grammar(const Grammar& g);

struct WComplement {
  Subgraph w;
  Subgraph flat_k;  // the nodes of k as a subgraph of d
};

/// w = (all nodes of d; edges of d not in k), certified against the lattice
/// identities w ∨ k = d and w ∧ k = flat k and the pushout property of the
/// square flat k -> w, flat k -> k over d. Throws CertificationFailure when a
/// certificate fails.
WComplement w_complement(const Subgraph& k_img);

/// One square per rule, rows ∅ -> ℓ <- K, ∅ -> flat k <- K, ∅ -> r <- K with
/// K the node set of k. Throws DomainError when an interface has edges.
CospanGrammar hat_grammar(const Grammar& discrete);

}  // namespace openrewrite
