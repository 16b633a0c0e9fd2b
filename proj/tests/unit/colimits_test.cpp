#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "openrewrite/canonical.hpp"
#include "openrewrite/colimits.hpp"
#include "openrewrite/oracle.hpp"

using namespace openrewrite;

namespace {

std::optional<Span> random_span(Rng& rng) {
  const GraphPtr k = random_graph(rng, 2, 1);
  const GraphPtr l = random_graph(rng, 3, 3);
  const GraphPtr r = random_graph(rng, 3, 3);
  const auto to_l = enumerate_homs(k, l);
  const auto to_r = enumerate_homs(k, r);
  if (to_l.empty() || to_r.empty()) return std::nullopt;
  return Span{k, to_l[rng() % to_l.size()], to_r[rng() % to_r.size()]};
}

}  // namespace

TEST(Coproduct, TagsAndCounts) {
  const PushoutResult c = coproduct(fixtures::g3(), fixtures::loop1());
  EXPECT_EQ(c.object()->node_count(), 4U);
  EXPECT_EQ(c.object()->edge_count(), 4U);
  EXPECT_TRUE(c.object()->find_node("l.a").has_value());
  EXPECT_TRUE(c.object()->find_node("r.x").has_value());
  EXPECT_TRUE(is_mono(c.inj_left()));
  EXPECT_TRUE(is_mono(c.inj_right()));
}

TEST(Pushout, GluesAlongSharedNode) {
  const GraphPtr k = fixtures::pt();
  const GraphHom to_l = GraphHom::from_ids(k, fixtures::g3(), {{"x", "c"}}, {});
  const GraphHom to_r = GraphHom::identity(k);
  const PushoutResult po = pushout(Span{k, to_l, GraphHom::from_ids(k, fixtures::loop1(), {{"x", "x"}}, {})});
  EXPECT_EQ(po.object()->node_count(), 3U);
  EXPECT_EQ(po.object()->edge_count(), 4U);
  const SquareHoms sq{to_l, GraphHom::from_ids(k, fixtures::loop1(), {{"x", "x"}}, {}), po.inj_left(),
                      po.inj_right()};
  EXPECT_TRUE(square_commutes(sq));
  EXPECT_TRUE(is_pushout_square(sq));
  EXPECT_TRUE(verify_pushout(sq));
  (void)to_r;
}

TEST(Pushout, MediatingMapIsUnique) {
  Rng rng(5);
  std::size_t checked = 0;
  while (checked < 40) {
    const auto span = random_span(rng);
    if (!span) continue;
    const PushoutResult po = pushout(*span);
    const GraphHom id = po.mediate(po.inj_left(), po.inj_right());
    EXPECT_TRUE(is_iso(id));
    EXPECT_EQ(id, GraphHom::identity(po.object()));
    ++checked;
  }
}

TEST(Pushout, RandomSquaresCertify) {
  Rng rng(9);
  std::size_t checked = 0;
  while (checked < 60) {
    const auto span = random_span(rng);
    if (!span) continue;
    const PushoutResult po = pushout(*span);
    const SquareHoms sq{span->left, span->right, po.inj_left(), po.inj_right()};
    EXPECT_TRUE(square_commutes(sq));
    EXPECT_TRUE(is_pushout_square(sq));
    EXPECT_TRUE(verify_pushout(sq));
    ++checked;
  }
}

TEST(Pushout, CoconeWithExtraNodeIsRejected) {
  const GraphPtr k = fixtures::pt();
  const GraphHom id = GraphHom::identity(k);
  const GraphPtr bigger = make_graph({"x", "y"}, {});
  const GraphHom into = GraphHom::from_ids(k, bigger, {{"x", "x"}}, {});
  const SquareHoms sq{id, id, into, into};
  EXPECT_TRUE(square_commutes(sq));
  EXPECT_FALSE(is_pushout_square(sq));
  EXPECT_FALSE(verify_pushout(sq));
}

TEST(Pushout, CoconeThatMergesIsRejected) {
  const GraphPtr two = make_graph({"x", "y"}, {});
  const GraphPtr empty = make_graph({}, {});
  const GraphHom from_empty_l(empty, two, {}, {});
  const GraphHom from_empty_r(empty, fixtures::pt(), {}, {});
  const GraphPtr one = fixtures::pt();
  const GraphHom collapse = GraphHom::from_ids(two, one, {{"x", "x"}, {"y", "x"}}, {});
  const GraphHom id = GraphHom::identity(one);
  const SquareHoms sq{from_empty_l, from_empty_r, collapse, id};
  EXPECT_TRUE(square_commutes(sq));
  EXPECT_FALSE(is_pushout_square(sq));
  EXPECT_FALSE(verify_pushout(sq));
}

TEST(Pushout, NonCommutingSquareIsRejected) {
  const GraphPtr k = fixtures::pt();
  const GraphPtr two = make_graph({"x", "y"}, {});
  const GraphHom id = GraphHom::identity(k);
  const GraphHom a = GraphHom::from_ids(k, two, {{"x", "x"}}, {});
  const GraphHom b = GraphHom::from_ids(k, two, {{"x", "y"}}, {});
  EXPECT_FALSE(square_commutes({id, id, a, b}));
  EXPECT_FALSE(verify_pushout({id, id, a, b}));
}

TEST(Pushout, FaultInjectionCorruptsResults) {
  const GraphPtr k = fixtures::pt();
  const Span span{k, GraphHom::identity(k), GraphHom::identity(k)};
  std::size_t bad = 0;
  {
    ScopedFaultInjection faults(1, 100);
    EXPECT_TRUE(fault_injection_active());
    const PushoutResult po = pushout(span);
    bad = po.object()->node_count();
    EXPECT_EQ(faults.faults(), 1U);
  }
  EXPECT_FALSE(fault_injection_active());
  EXPECT_EQ(bad, 2U);
  EXPECT_EQ(pushout(span).object()->node_count(), 1U);
}

TEST(Untag, DropsPrefixesWhenUnique) {
  const PushoutResult c = coproduct(fixtures::pt(), fixtures::h3());
  const Renaming r = untag(c.object());
  EXPECT_TRUE(r.graph->find_node("a").has_value());
  EXPECT_TRUE(r.graph->find_node("x").has_value());
  EXPECT_TRUE(is_iso(r.iso));
  const PushoutResult clash = coproduct(fixtures::pt(), fixtures::pt());
  const Renaming kept = untag(clash.object());
  EXPECT_EQ(kept.graph->node_count(), 2U);
  EXPECT_TRUE(is_iso(kept.iso));
}

TEST(Pullback, ProductOverTerminal) {
  const GraphPtr t = terminal_graph();
  const GraphHom a = enumerate_homs(fixtures::g3(), t).front();
  const GraphHom b = enumerate_homs(fixtures::loop1(), t).front();
  const PullbackResult pb = pullback(Cospan{t, a, b});
  EXPECT_EQ(pb.span.apex->node_count(), 3U);
  EXPECT_EQ(pb.span.apex->edge_count(), 3U);
  EXPECT_EQ(compose_homs(pb.span.left, a), compose_homs(pb.span.right, b));
}

TEST(Pullback, IntersectionOfSubgraphs) {
  const GraphPtr g = fixtures::g3();
  const Subgraph s1 = Subgraph::from_ids(g, {"a", "c"}, {"e1", "e3"});
  const Subgraph s2 = Subgraph::from_ids(g, {"b", "c"}, {"e2", "e3"});
  const PullbackResult pb = pullback(Cospan{g, s1.inclusion(), s2.inclusion()});
  EXPECT_EQ(canonical_form(*pb.span.apex), canonical_form(*lattice_meet(s1, s2).to_graph()));
}

TEST(Gluing, DanglingAndIdentification) {
  const Rule del = Rule::from_inclusions("del", fixtures::pt(), make_graph({}, {}), make_graph({}, {}));
  const GraphHom at_c = GraphHom::from_ids(fixtures::pt(), fixtures::g3(), {{"x", "c"}}, {});
  const GluingReport dangling = gluing_check(del.to_left, at_c);
  EXPECT_FALSE(dangling.dangling_ok);
  EXPECT_FALSE(dangling.offenders.empty());
  EXPECT_THROW(pushout_complement(del.to_left, at_c), GluingViolation);

  const GraphPtr two = make_graph({"u", "v"}, {});
  const GraphPtr keep_u = make_graph({"u"}, {});
  const GraphHom k_inc = GraphHom::from_ids(keep_u, two, {{"u", "u"}}, {});
  const GraphHom merge = GraphHom::from_ids(two, fixtures::pt(), {{"u", "x"}, {"v", "x"}}, {});
  const GluingReport ident = gluing_check(k_inc, merge);
  EXPECT_FALSE(ident.identification_ok);
}

TEST(Gluing, ComplementOfLoopRule) {
  const Rule r = fixtures::drop_loop();
  const GraphHom m = GraphHom::from_ids(r.left, fixtures::g3(), {{"x", "c"}}, {{"l", "e3"}});
  ASSERT_TRUE(gluing_check(r.to_left, m).ok());
  const PushoutComplement pc = pushout_complement(r.to_left, m);
  EXPECT_EQ(pc.kprime->node_count(), 3U);
  EXPECT_EQ(pc.kprime->edge_count(), 2U);
  EXPECT_TRUE(is_mono(pc.kprime_to_g));
  const SquareHoms sq{r.to_left, pc.k_to_kprime, m, pc.kprime_to_g};
  EXPECT_TRUE(is_pushout_square(sq));
  EXPECT_TRUE(verify_pushout(sq));
}

TEST(Classifier, ShapeOfOmega) {
  const GraphPtr omega = subobject_classifier();
  EXPECT_EQ(omega->node_count(), 2U);
  EXPECT_EQ(omega->edge_count(), 5U);
  EXPECT_EQ(terminal_graph()->node_count(), 1U);
  EXPECT_EQ(terminal_graph()->edge_count(), 1U);
}
