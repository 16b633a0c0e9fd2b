#pragma once

// Pushouts, pullbacks and pushout complements in (typed) Graph, together
// with a brute-force universal-property checker used as an oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "openrewrite/graph.hpp"

namespace openrewrite {

/// L <- apex -> R
struct Span {
  GraphPtr apex;
  GraphHom left;
  GraphHom right;
};

/// L -> apex <- R
struct Cospan {
  GraphPtr apex;
  GraphHom left;
  GraphHom right;
};

class PushoutResult {
 public:
  enum class Side : std::uint8_t { left, right };
  struct Origin {
    Side side;
    std::size_t index;
  };

  PushoutResult(GraphPtr object, GraphHom inj_left, GraphHom inj_right, std::vector<Origin> node_origin,
                std::vector<Origin> edge_origin);

  const GraphPtr& object() const { return object_; }
  const GraphHom& inj_left() const { return inj_left_; }
  const GraphHom& inj_right() const { return inj_right_; }

  /// The unique u with u∘inj_left = to_left and u∘inj_right = to_right.
  /// Throws DomainError when the pair is not a cocone.
  GraphHom mediate(const GraphHom& to_left, const GraphHom& to_right) const;

 private:
  GraphPtr object_;
  GraphHom inj_left_;
  GraphHom inj_right_;
  std::vector<Origin> node_origin_;
  std::vector<Origin> edge_origin_;
};

/// Disjoint union; ids tagged "l." and "r.".
PushoutResult coproduct(const GraphPtr& g, const GraphPtr& h);

/// Quotient of L + R by left(x) ~ right(x). Each glued class is named by its
/// least tagged id.
PushoutResult pushout(const Span& s);

/// A graph renamed along an isomorphism.
struct Renaming {
  GraphPtr graph;
  GraphHom iso;  // original -> graph
};

/// Drops the "l." and "r." prefixes from pushout ids wherever the plain ids
/// stay unique.
Renaming untag(const GraphPtr& object);

struct PullbackResult {
  Span span;  // apex = the pullback object, left/right = projections
};

/// Pairs of elements agreeing in the apex; ids are "(x,y)".
PullbackResult pullback(const Cospan& c);

struct GluingReport {
  bool identification_ok = true;
  bool dangling_ok = true;
  std::vector<std::string> offenders;

  bool ok() const { return identification_ok && dangling_ok; }
};

/// Gluing conditions for deleting m(ℓ∖k) from g, where l_inc: k↣ℓ and m: ℓ→g.
GluingReport gluing_check(const GraphHom& l_inc, const GraphHom& m);

class GluingViolation : public DomainError {
 public:
  explicit GluingViolation(GluingReport report);
  const GluingReport& report() const { return report_; }

 private:
  GluingReport report_;
};

struct PushoutComplement {
  GraphPtr kprime;
  GraphHom k_to_kprime;
  GraphHom kprime_to_g;
};

/// g with m(ℓ∖k) deleted. Throws GluingViolation when the gluing conditions fail.
PushoutComplement pushout_complement(const GraphHom& l_inc, const GraphHom& m);

/// top: apex→L, left: apex→R (the span); to_l: L→Q, to_r: R→Q (the cocone).
struct SquareHoms {
  GraphHom span_left;
  GraphHom span_right;
  GraphHom cocone_left;
  GraphHom cocone_right;
};

bool square_commutes(const SquareHoms& sq);

/// Fast structural test: the comparison map from the constructed pushout is
/// an isomorphism.
bool is_pushout_square(const SquareHoms& sq);

struct VerifyBounds {
  std::size_t max_nodes = 8;   // per graph in the square
  std::size_t max_edges = 12;  // per graph in the square
  bool include_small_graphs = true;
};

class VerifyBoundExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Commutes, and every cocone into each test object factors through the
/// candidate exactly once. Test objects: the four graphs of the square, the
/// subobject classifier of the ambient slice, its terminal object, and all
/// small untyped graphs (up to two nodes, at most one edge per ordered pair)
/// when the square is untyped.
bool verify_pushout(const SquareHoms& sq, const VerifyBounds& bounds = {});

/// Subobject classifier of Graph (two nodes, five edges); typed over `types`
/// when given, as the product with the type graph.
GraphPtr subobject_classifier(const GraphPtr& types = nullptr);

/// Terminal graph: one node with one loop, or the type graph itself.
GraphPtr terminal_graph(const GraphPtr& types = nullptr);

/// Deliberate corruption of pushout results, used to show the theorem
/// checks are not vacuous. While an instance is alive, each pushout on this
/// thread gains an extra isolated node with probability rate_percent/100.
class ScopedFaultInjection {
 public:
  explicit ScopedFaultInjection(std::uint64_t seed, unsigned rate_percent = 50);
  ~ScopedFaultInjection();
  ScopedFaultInjection(const ScopedFaultInjection&) = delete;
  ScopedFaultInjection& operator=(const ScopedFaultInjection&) = delete;

  std::size_t faults() const { return faults_; }

 private:
  friend bool draw_fault();
  std::uint64_t state_;
  unsigned rate_percent_;
  std::size_t faults_ = 0;
  ScopedFaultInjection* previous_;
};

bool fault_injection_active();

}  // namespace openrewrite
