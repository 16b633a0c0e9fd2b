#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "openrewrite/canonical.hpp"
#include "openrewrite/dpo.hpp"
#include "openrewrite/oracle.hpp"

using namespace openrewrite;

TEST(Rule, FromInclusionsAndValidation) {
  const Rule r = fixtures::drop_loop();
  EXPECT_TRUE(validate_rule(r).empty());
  EXPECT_TRUE(is_mono(r.to_left));
  EXPECT_TRUE(validate_rule(fixtures::reverse_edge()).empty());
  Rule bad = r;
  bad.to_left = GraphHom(r.interface, r.left, {0}, {});
  bad.to_right = GraphHom(r.interface, fixtures::g3(), {0}, {});
  EXPECT_FALSE(validate_rule(bad).empty());
  EXPECT_THROW(Rule::from_inclusions("x", fixtures::pt(), fixtures::loop1(), fixtures::pt()), DomainError);
}

TEST(Rule, NonMonoLegIsInvalid) {
  const GraphPtr two = make_graph({"u", "v"}, {});
  Rule r = Rule::from_inclusions("merge", fixtures::pt(), fixtures::pt(), fixtures::pt());
  r.interface = two;
  r.to_left = GraphHom::from_ids(two, r.left, {{"u", "x"}, {"v", "x"}}, {});
  r.to_right = r.to_left;
  EXPECT_FALSE(validate_rule(r).empty());
}

TEST(Grammar, FindAndValidate) {
  const Grammar g{{fixtures::drop_loop(), fixtures::reverse_edge()}};
  ASSERT_NE(g.find("reverse"), nullptr);
  EXPECT_EQ(g.find("missing"), nullptr);
  EXPECT_TRUE(validate_grammar(g).empty());
  const Grammar dup{{fixtures::drop_loop(), fixtures::drop_loop()}};
  EXPECT_FALSE(validate_grammar(dup).empty());
}

TEST(Dpo, LoopRuleOnG3) {
  const Rule r = fixtures::drop_loop();
  const auto matches = find_matches(r, fixtures::g3());
  ASSERT_EQ(matches.size(), 1U);
  EXPECT_TRUE(matches[0].applicable);
  const DerivationStep step = apply_rule(r, fixtures::g3(), matches[0].hom);
  EXPECT_EQ(step.complement->node_count(), 3U);
  EXPECT_EQ(step.complement->edge_count(), 2U);
  EXPECT_TRUE(find_isomorphism(step.result, fixtures::h3()).has_value());
  EXPECT_TRUE(step.result->find_node("c").has_value());
  EXPECT_TRUE(step.result->find_edge("e1").has_value());
}

TEST(Dpo, LoopRuleOnTwoLoops) {
  const auto matches = find_matches(fixtures::drop_loop(), fixtures::two_loops());
  EXPECT_EQ(matches.size(), 2U);
  const Closure c = derive_closure(fixtures::loop_grammar(), fixtures::two_loops(), {});
  EXPECT_EQ(c.entries.size(), 3U);
  EXPECT_FALSE(c.partial());
}

TEST(Dpo, DerivedRuleIsARule) {
  const Rule r = fixtures::drop_loop();
  const DerivationStep step = apply_rule(r, fixtures::g3(), find_matches(r, fixtures::g3())[0].hom);
  const Rule d = step.derived_rule();
  EXPECT_TRUE(validate_rule(d).empty());
  EXPECT_TRUE(same_graph(d.left, fixtures::g3()) || *d.left == *fixtures::g3());
}

TEST(Dpo, CreatedElementsArePrimedOnCollision) {
  const GraphPtr l = make_graph({"u"}, {});
  const GraphPtr r = make_graph({"u", "a"}, {Edge{"e1", "u", "a", {}}});
  const Rule grow = Rule::from_inclusions("grow", l, l, r);
  const GraphHom m = GraphHom::from_ids(l, fixtures::g3(), {{"u", "b"}}, {});
  const DerivationStep step = apply_rule(grow, fixtures::g3(), m);
  EXPECT_EQ(step.result->node_count(), 4U);
  EXPECT_EQ(step.result->edge_count(), 4U);
  EXPECT_TRUE(step.result->find_node("a'").has_value());
  EXPECT_TRUE(step.result->find_edge("e1'").has_value());
  EXPECT_TRUE(validate_graph(*step.result).empty());
}

TEST(Dpo, RefusesMatchesViolatingGluing) {
  const Rule del = Rule::from_inclusions("del", fixtures::pt(), make_graph({}, {}), make_graph({}, {}));
  const auto matches = find_matches(del, fixtures::g3());
  ASSERT_EQ(matches.size(), 3U);
  for (const Match& m : matches) {
    EXPECT_FALSE(m.applicable);
    EXPECT_THROW(apply_rule(del, fixtures::g3(), m.hom), GluingViolation);
  }
}

TEST(Dpo, ReverseEdge) {
  const Rule r = fixtures::reverse_edge();
  const auto matches = find_matches(r, fixtures::h3());
  ASSERT_EQ(matches.size(), 2U);
  const DerivationStep step = apply_rule(r, fixtures::h3(), matches[0].hom);
  EXPECT_EQ(step.result->edge_count(), 2U);
  EXPECT_NE(canonical_form(*step.result), canonical_form(*fixtures::h3()));
}

TEST(Dpo, NonInjectiveMatchesOnlyWhenAsked) {
  const GraphPtr two = make_graph({"u", "v"}, {});
  const Rule keep = Rule::from_inclusions("keep", two, two, two);
  EXPECT_EQ(find_matches(keep, fixtures::pt(), true).size(), 0U);
  EXPECT_EQ(find_matches(keep, fixtures::pt(), false).size(), 1U);
}

TEST(Dpo, CertifiedRandomSteps) {
  std::size_t applied = 0;
  for (std::size_t t = 0; t < 60; ++t) {
    Rng rng = trial_rng(23, t);
    const Rule r = random_rule(rng, "r", 3);
    const GraphPtr g = random_graph(rng, 4, 5);
    for (const Match& m : find_matches(r, g)) {
      if (!m.applicable) continue;
      const DerivationStep step = apply_rule(r, g, m.hom);
      EXPECT_TRUE(validate_rule(step.derived_rule()).empty());
      EXPECT_TRUE(validate_graph(*step.result).empty());
      ++applied;
    }
  }
  EXPECT_GT(applied, 0U);
}

TEST(Reach, ForwardAndBackward) {
  const Grammar g = fixtures::loop_grammar();
  SearchBounds b;
  b.max_depth = 3;
  const ReachResult fwd = reachable(g, fixtures::g3(), fixtures::h3(), b);
  EXPECT_EQ(fwd.status, Reachability::reachable);
  ASSERT_TRUE(fwd.trace.has_value());
  EXPECT_EQ(fwd.trace->steps.size(), 1U);
  EXPECT_EQ(fwd.trace->end_form, canonical_form(*fixtures::h3()));
  const ReachResult back = reachable(g, fixtures::h3(), fixtures::g3(), b);
  EXPECT_EQ(back.status, Reachability::unreachable);
  EXPECT_STREQ(to_string(back.status), "unreachable");
}

TEST(Reach, UnknownWhenBoundsCut) {
  const GraphPtr l = make_graph({"u"}, {});
  const GraphPtr r = make_graph({"u", "w"}, {Edge{"e", "u", "w", {}}});
  const Grammar grow{{Rule::from_inclusions("grow", l, l, r)}};
  SearchBounds b;
  b.max_depth = 2;
  const ReachResult res = reachable(grow, fixtures::pt(), fixtures::loop1(), b);
  EXPECT_EQ(res.status, Reachability::unknown);
  const Closure c = derive_closure(grow, fixtures::pt(), b);
  EXPECT_TRUE(c.depth_exhausted);
}

TEST(Closure, TracesReplay) {
  const Closure c = derive_closure(fixtures::loop_grammar(), fixtures::two_loops(), {});
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    const Trace t = c.trace_to(i);
    EXPECT_EQ(t.steps.size(), c.entries[i].depth);
    EXPECT_EQ(t.end_form, c.entries[i].form);
    GraphPtr g = fixtures::two_loops();
    for (const DerivationStep& s : t.steps) g = s.result;
    EXPECT_EQ(canonical_form(*g), c.entries[i].form);
  }
  const auto forms = c.forms();
  EXPECT_TRUE(std::is_sorted(forms.begin(), forms.end()));
}

TEST(Invariants, TallyCountsDerivedRules) {
  const InvariantTally before = invariant_tally();
  const Rule r = fixtures::drop_loop();
  apply_rule(r, fixtures::g3(), find_matches(r, fixtures::g3())[0].hom);
  const InvariantTally after = invariant_tally();
  EXPECT_GT(after.checked, before.checked);
  EXPECT_EQ(after.violated, before.violated);
}
