#include <cmath>

#include <gtest/gtest.h>

#include "pareto_tame/existence.hpp"
#include "pareto_tame/problem.hpp"

namespace pt = pareto_tame;

namespace {

pt::ExistenceReport full(const pt::Problem& p, const pt::IndexSet& I) {
  return pt::check_theorem_5_1(p.f, p.K, I, p.anchor, p.probes, *p.window);
}

pt::ExistenceReport restricted(const pt::Problem& p, const pt::IndexSet& I) {
  return pt::check_theorem_5_4(p.f, p.K, I, p.anchor, p.probes, *p.window);
}

pt::Verdict verdict(const pt::ExistenceReport& r, pt::LimitKind k) {
  const auto* c = r.inclusion(k);
  return c ? c->verdict : pt::Verdict::kUnknown;
}

}  // namespace

TEST(Existence, EscapeExampleFullInclusionsHold) {
  const auto r = full(pt::fixture("ex_5_8"), {0});
  EXPECT_EQ(r.section.kind, pt::BoundedVerdict::kBounded);
  EXPECT_EQ(verdict(r, pt::LimitKind::kKTilde), pt::Verdict::kHolds);
  EXPECT_EQ(verdict(r, pt::LimitKind::kK), pt::Verdict::kHolds);
  EXPECT_EQ(r.conclusion, pt::Conclusion::kWeakSolutionExists);
  ASSERT_TRUE(r.front);
  EXPECT_GT(r.front->weak, 0u);
  // The matching K0 member is the origin.
  const auto* k = r.inclusion(pt::LimitKind::kK);
  ASSERT_FALSE(k->witnesses.empty());
  ASSERT_TRUE(k->witnesses[0].member_point);
  EXPECT_NEAR(k->witnesses[0].member_point->norm(), 0.0, 1e-9);
}

TEST(Existence, EscapeExampleRestrictedInclusionsFail) {
  const auto r = restricted(pt::fixture("ex_5_8"), {0});
  EXPECT_EQ(verdict(r, pt::LimitKind::kKTilde), pt::Verdict::kFails);
  EXPECT_EQ(verdict(r, pt::LimitKind::kK), pt::Verdict::kFails);
}

TEST(Existence, ParabolaExampleMixedTangencyInclusion) {
  const pt::Problem p = pt::fixture("ex_5_9");
  const auto a = full(p, {0});
  EXPECT_EQ(verdict(a, pt::LimitKind::kT), pt::Verdict::kFails);
  const auto b = restricted(p, {0});
  EXPECT_EQ(verdict(b, pt::LimitKind::kT), pt::Verdict::kHolds);
  EXPECT_EQ(b.conclusion, pt::Conclusion::kWeakSolutionExists);
  // Restricted T witness: f1 = -1/4 on the shifted diagonal x2 = x1 + 1/2.
  const auto* t = b.inclusion(pt::LimitKind::kT);
  bool quarter = false;
  for (const auto& w : t->witnesses) quarter = quarter || std::abs(w.limit[0] + 0.25) <= 1e-4;
  EXPECT_TRUE(quarter);
}

TEST(Existence, CompactSetIsWeierstrassCase) {
  const pt::Problem p = pt::fixture("compact_k");
  const auto r = full(p, {0});
  EXPECT_TRUE(r.sublevel.bounded);
  for (const auto& c : r.inclusions) {
    EXPECT_EQ(c.verdict, pt::Verdict::kHolds);
    EXPECT_TRUE(c.witnesses.empty());
  }
  EXPECT_EQ(r.conclusion, pt::Conclusion::kWeakSolutionExists);
}

TEST(Existence, RestrictedWithAllIndicesMatchesFullOnSublevel) {
  for (const char* name : {"ex_5_9", "coercive", "ex_5_8"}) {
    const pt::Problem p = pt::fixture(name);
    const pt::IndexSet all = pt::all_indices(p.f.size());
    const auto a = restricted(p, all);
    const pt::SublevelSet S = pt::sublevel(p.f, p.K, p.anchor);
    const auto b = pt::check_theorem_5_1(p.f, S.set, all, p.anchor, p.probes, *p.window);
    ASSERT_EQ(a.inclusions.size(), b.inclusions.size());
    for (std::size_t i = 0; i < a.inclusions.size(); ++i) {
      EXPECT_EQ(a.inclusions[i].verdict, b.inclusions[i].verdict) << name;
      EXPECT_EQ(a.inclusions[i].witnesses.size(), b.inclusions[i].witnesses.size()) << name;
    }
    EXPECT_EQ(a.conclusion, b.conclusion) << name;
  }
}

TEST(Existence, DescentChainAnchorsGiveHoldingInclusions) {
  for (const char* name : {"ex_5_9", "coercive", "compact_k"}) {
    const pt::Problem p = pt::fixture(name);
    const auto chain = pt::descent_chain(p.f, p.K, p.anchor, *p.window);
    ASSERT_TRUE(chain.found) << name;
    const auto a = pt::check_theorem_5_1(p.f, p.K, chain.indices, chain.x0, p.probes, *p.window);
    const auto b = pt::check_theorem_5_4(p.f, p.K, chain.indices, chain.x0, p.probes, *p.window);
    for (const auto* r : {&a, &b})
      for (const auto& c : r->inclusions) EXPECT_NE(c.verdict, pt::Verdict::kFails) << name;
  }
}

TEST(Equivalence, CoerciveAllHold) {
  const pt::Problem p = pt::fixture("coercive");
  const auto r = pt::equivalence_harness_4_4(p.f, p.K, {0}, p.anchor, p.probes);
  ASSERT_EQ(r.conditions.size(), 4u);
  for (const auto& c : r.conditions) EXPECT_EQ(c.verdict, pt::Verdict::kHolds) << pt::to_string(c.kind);
  EXPECT_TRUE(r.conditions_agree);
}

TEST(Equivalence, PeriodicAndEscapeAllFailTogether) {
  for (const char* name : {"ex_5_2", "ex_5_8"}) {
    const pt::Problem p = pt::fixture(name);
    const auto r = pt::equivalence_harness_4_4(p.f, p.K, {0}, p.anchor, p.probes);
    ASSERT_EQ(r.conditions.size(), 4u);
    for (const auto& c : r.conditions) {
      EXPECT_EQ(c.verdict, pt::Verdict::kFails) << name << " " << pt::to_string(c.kind);
      ASSERT_TRUE(c.witness);
      EXPECT_NEAR((*c.witness)[0], (*r.conditions[0].witness)[0], 1e-4) << name;
    }
    EXPECT_TRUE(r.conditions_agree);
  }
}

TEST(Equivalence, UnboundedSectionIsRejected) {
  const pt::VectorObjective f(1, {pt::parse("x1", pt::ParseOptions{.dimension = 1})});
  EXPECT_THROW(pt::equivalence_harness_4_4(f, pt::FeasibleSet::whole(1), {0}, pt::make_vec({0.0}), {}),
               pt::HypothesisError);
}

TEST(Sufficiency, CoerciveConcludesExistence) {
  const pt::Problem p = pt::fixture("coercive");
  const auto r = pt::corollary_5_3_sufficiency(p.f, p.K, {0}, p.anchor, p.probes, *p.window);
  EXPECT_EQ(r.conclusion, pt::Conclusion::kWeakSolutionExists);
  ASSERT_TRUE(r.front);
  EXPECT_GT(r.front->weak, 0u);
}

TEST(Sufficiency, PeriodicExampleInconclusiveButFrontNonempty) {
  const pt::Problem p = pt::fixture("ex_5_2");
  const auto r = pt::corollary_5_3_sufficiency(p.f, p.K, {0}, p.anchor, p.probes, *p.window);
  EXPECT_EQ(r.conclusion, pt::Conclusion::kInconclusive);
  ASSERT_TRUE(r.front);
  EXPECT_GT(r.front->weak, 0u);
}

TEST(Sufficiency, QuadrantExampleProperFails) {
  const pt::Problem p = pt::fixture("ex_5_3");
  const auto r = pt::corollary_5_3_sufficiency(p.f, p.K, {0}, p.anchor, p.probes, *p.window);
  const auto* proper = r.condition(pt::ConditionKind::kProper);
  ASSERT_NE(proper, nullptr);
  EXPECT_EQ(proper->verdict, pt::Verdict::kFails);
  EXPECT_EQ(r.conclusion, pt::Conclusion::kInconclusive);
}

TEST(Existence, InputValidation) {
  const pt::Problem p = pt::fixture("ex_5_8");
  EXPECT_THROW(full(p, {}), pt::InputError);
  EXPECT_THROW(full(p, {5}), pt::InputError);
  EXPECT_THROW(pt::check_theorem_5_1(p.f, p.K, {0}, pt::make_vec({-5.0, 0.0}), p.probes, *p.window),
               pt::InputError);
}

TEST(Existence, RecordsAreKeyValueLines) {
  const auto r = full(pt::fixture("ex_5_8"), {0});
  const std::string rec = r.render_records();
  EXPECT_NE(rec.find("conclusion=weak-solution-exists"), std::string::npos);
  EXPECT_NE(rec.find("index_set=1"), std::string::npos);
}
