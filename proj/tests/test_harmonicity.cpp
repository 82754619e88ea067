#include <gtest/gtest.h>

#include "test_support.hpp"

#include "liftgeo/error.hpp"
#include "liftgeo/gks.hpp"
#include "liftgeo/parse.hpp"

using namespace liftgeo;

namespace {

Expr P(std::string_view s) { return parse(s); }

bool zero(const Expr& e) { return is_identically_zero(e, {}).verdict == ZeroVerdict::Zero; }

std::vector<Expr> identity_map(const Chart& c) {
  std::vector<Expr> out;
  for (const auto& x : c.coords()) out.push_back(sym(x));
  return out;
}

GksSpec example_g() { return gks_from_bodies("e1", "e2", "theta", "", {"e1", "e2"}); }
GksSpec example_ghat() { return gks_from_bodies("c1", "c2", "sinh(theta)", "h", {"c1", "c2"}); }

// rho^1 and rho^3 for the abstract pair, written out from the Christoffel
// matrices: rho^k = g^ii (dG^k_ii - G^k_ii) summed over the diagonal.
Expr abstract_rho1() {
  return P("-((Xh'(t)*Xh(t) - X'(t)*X(t))/X(t)^2 + (Yh'(t)*Yh(t) - Y'(t)*Y(t))/Y(t)^2"
           " + (Yh'(t)*Yh(t)*fh(theta)^2 - Y'(t)*Y(t)*f(theta)^2)/(Y(t)^2*f(theta)^2))");
}
Expr abstract_rho3() { return P("-(-fh(theta)*fh'(theta) + f(theta)*f'(theta))/(Y(t)^2*f(theta)^2)"); }

}  // namespace

TEST(SecondFundamentalForm, IdentityIsTotallyGeodesic) {
  const Metric g = build_gks(abstract_gks());
  for (const auto& c : second_fundamental_form(identity_map(g.chart), g, g)) {
    for (const auto& row : c) {
      for (const auto& e : row) EXPECT_EQ(e, Expr(0));
    }
  }
}

TEST(SecondFundamentalForm, LinearMapBetweenFlatSpaces) {
  const Metric flat = diagonal_metric(Chart::base({"x", "y"}), {1, 1});
  for (const auto& c : second_fundamental_form({P("2*x + y"), P("x - 3*y")}, flat, flat)) {
    for (const auto& row : c) {
      for (const auto& e : row) EXPECT_EQ(e, Expr(0));
    }
  }
}

TEST(SecondFundamentalForm, IdentityOnGksPairIsConnectionDifference) {
  const Metric g = build_gks(abstract_gks());
  const Metric d = build_gks(abstract_gks("h"));
  const Connection gc = christoffel(g), dc = christoffel(d);
  const auto beta = second_fundamental_form(identity_map(g.chart), g, d);
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) EXPECT_TRUE(zero(beta[c][i][j] - (dc(c, i, j) - gc(c, i, j))));
    }
  }
}

TEST(SecondFundamentalForm, DimensionMismatchThrows) {
  const Metric g = build_gks(abstract_gks());
  EXPECT_THROW(second_fundamental_form({P("t")}, g, g), InvalidArgument);
}

TEST(TensionField, ConstantMapVanishes) {
  const Metric g = build_gks(abstract_gks());
  for (const auto& e : tension_field({P("1"), P("2"), P("3/2"), P("1/2")}, g, g)) EXPECT_EQ(e, Expr(0));
}

TEST(TensionField, IdentityEqualsTraceResiduals) {
  const Metric g = build_gks(abstract_gks());
  const Metric d = build_gks(abstract_gks("h"));
  const auto tau = tension_field(identity_map(g.chart), g, d);
  const auto rho = harmonicity_residuals(g, d).residuals;
  ASSERT_EQ(tau.size(), rho.size());
  for (std::size_t k = 0; k < tau.size(); ++k) EXPECT_TRUE(zero(tau[k] - rho[k])) << k;
}

TEST(Harmonicity, MetricIsHarmonicWithRespectToItself) {
  for (const auto& [name, g] : property_corpus()) {
    const HarmonicityReport r = harmonicity_residuals(g, g);
    EXPECT_EQ(r.verdict, Verdict::Harmonic) << name;
    EXPECT_FALSE(r.failing_index) << name;
  }
}

TEST(Harmonicity, AbstractPairTraces) {
  const HarmonicityReport r = harmonicity_residuals(build_gks(abstract_gks()), build_gks(abstract_gks("h")));
  EXPECT_TRUE(zero(r.residuals[0] - abstract_rho1())) << r.residuals[0];
  EXPECT_EQ(r.residuals[1], Expr(0));
  EXPECT_TRUE(zero(r.residuals[2] - abstract_rho3())) << r.residuals[2];
  EXPECT_EQ(r.residuals[3], Expr(0));
  EXPECT_EQ(r.verdict, Verdict::NotHarmonic);
}

TEST(Harmonicity, ExamplePairIsNotHarmonic) {
  const HarmonicityReport r = harmonicity_residuals(build_gks(example_g()), build_gks(example_ghat()));
  EXPECT_EQ(r.residuals[0], Expr(0));
  EXPECT_TRUE(zero(r.residuals[2] - P("-(-sinh(theta)*cosh(theta) + theta)/(e2^2*theta^2)")));
  EXPECT_EQ(r.verdict, Verdict::NotHarmonic);
  ASSERT_TRUE(r.failing_index);
  EXPECT_EQ(*r.failing_index, 2u);
  EXPECT_EQ(r.label(*r.failing_index), "3");
  ASSERT_TRUE(r.tests[2].witness);
  EXPECT_NE(r.tests[2].witness->value, 0.0);
}

TEST(Harmonicity, TraceResidualsVanishForEvenIndicesOverCorpus) {
  for (const auto& [g, ghat] : gks_corpus(7, 12)) {
    const auto r = harmonicity_residuals(build_gks(g), build_gks(ghat));
    EXPECT_EQ(r.residuals[1], Expr(0)) << ghat.describe();
    EXPECT_EQ(r.residuals[3], Expr(0)) << ghat.describe();
  }
}

TEST(Harmonicity, ChartMismatchThrows) {
  const Metric g = build_gks(abstract_gks());
  const Metric flat = diagonal_metric(Chart::base({"t", "x", "y", "z"}), {1, -1, -1, -1});
  EXPECT_THROW(harmonicity_residuals(g, flat), InvalidArgument);
  const Metric sg = lift_metric(g, LiftKind::Sasaki).metric;
  EXPECT_THROW(harmonicity_residuals(sg, sg), InvalidArgument);
}

TEST(Harmonicity, UndecidedIsReportedNotCoerced) {
  const Chart c = Chart::base({"x", "y"});
  const Metric g = diagonal_metric(c, {1, 1});
  // d carries a (sin^2 + cos^2 - 1) factor the rational normal form cannot see.
  const Metric d = diagonal_metric(c, {1, P("exp((sin(x)^2 + cos(x)^2 - 1)*y)")});
  const HarmonicityReport r = harmonicity_residuals(g, d);
  EXPECT_EQ(r.verdict, Verdict::Undecided);
  EXPECT_FALSE(r.undecided.empty());
}

TEST(LiftedHarmonicity, SasakiBarredResidualsVanish) {
  const Metric g = build_gks(abstract_gks());
  const Metric d = build_gks(abstract_gks("h"));
  const auto base = harmonicity_residuals(g, d).residuals;
  const HarmonicityReport r = lifted_harmonicity(g, d, LiftKind::Sasaki);
  ASSERT_EQ(r.residuals.size(), 8u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_TRUE(zero(r.residuals[k] - base[k])) << k;
    EXPECT_EQ(r.residuals[4 + k], Expr(0)) << k;
  }
  ASSERT_EQ(r.curvature_traces.size(), 4u);
  for (const auto& e : r.curvature_traces) EXPECT_EQ(e, Expr(0));
  EXPECT_EQ(r.verdict, Verdict::NotHarmonic);
}

TEST(LiftedHarmonicity, HorizontalReducesToBaseTraces) {
  const Metric g = build_gks(abstract_gks());
  const Metric d = build_gks(abstract_gks("h"));
  const auto base = harmonicity_residuals(g, d).residuals;
  const HarmonicityReport r = lifted_harmonicity(g, d, LiftKind::Horizontal);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_TRUE(zero(r.residuals[k] - base[k])) << k;
    EXPECT_EQ(r.residuals[4 + k], Expr(0)) << k;
  }
  EXPECT_TRUE(r.curvature_traces.empty());
}

TEST(LiftedHarmonicity, CompleteSelfPairIsHarmonic) {
  const Metric g = build_gks(abstract_gks());
  EXPECT_EQ(lifted_harmonicity(g, g, LiftKind::Complete).verdict, Verdict::Harmonic);
}

TEST(LiftedHarmonicity, CompleteExamplePairIsNotHarmonic) {
  const HarmonicityReport r =
      lifted_harmonicity(build_gks(example_g()), build_gks(example_ghat()), LiftKind::Complete);
  EXPECT_EQ(r.verdict, Verdict::NotHarmonic);
}

TEST(Gks, AbstractMetric) {
  const Metric g = build_gks(abstract_gks());
  EXPECT_EQ(g.chart.coords(), gks_coordinates());
  EXPECT_EQ(g(0, 0), Expr(1));
  EXPECT_EQ(g(1, 1), P("-X(t)^2"));
  EXPECT_EQ(g(3, 3), P("-Y(t)^2*f(theta)^2"));
  EXPECT_EQ(g(0, 3), Expr(0));
}

TEST(Gks, ExampleMetricReadsConstantScaleFactors) {
  const Metric g = build_gks(example_g());
  EXPECT_EQ(g(1, 1), P("-e1^2"));
  EXPECT_EQ(g(2, 2), P("-e2^2"));
  EXPECT_EQ(g(3, 3), P("-e2^2*theta^2"));
}

TEST(Gks, FlatMember) {
  const Metric g = build_gks(gks_from_bodies("1", "1", "theta"));
  const Matrix want{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, P("-theta^2")}};
  EXPECT_EQ(g.components, want);
}

TEST(Gks, VariantMustMatchBody) {
  GksSpec s = variant_gks(GksVariant::KantowskiSachs);
  EXPECT_EQ(build_gks(s)(3, 3), P("-Y(t)^2*sin(theta)^2"));
  s.variant = GksVariant::BianchiIII;
  EXPECT_THROW(s.check(), InvalidArgument);
  EXPECT_THROW(gks_from_bodies("r", std::nullopt, std::nullopt), InvalidArgument);
}

TEST(Gks, ConditionsVanishForIdenticalSpecs) {
  const auto [first, second] = harmonicity_conditions(abstract_gks(), abstract_gks());
  EXPECT_EQ(first, Expr(0));
  EXPECT_EQ(second, Expr(0));
}

TEST(Gks, ExampleConditions) {
  const auto [first, second] = harmonicity_conditions(example_g(), example_ghat());
  EXPECT_EQ(first, Expr(0));
  EXPECT_EQ(second, P("-sinh(theta)*cosh(theta) + theta"));
  const ZeroTest t = is_identically_zero(second, {});
  EXPECT_EQ(t.verdict, ZeroVerdict::NonZero);
}

TEST(Gks, ConditionsMatchTracesOnAbstractPair) {
  const auto [first, second] = harmonicity_conditions(abstract_gks(), abstract_gks("h"));
  const auto rho = harmonicity_residuals(build_gks(abstract_gks()), build_gks(abstract_gks("h"))).residuals;
  EXPECT_TRUE(zero(rho[0] + first));
  EXPECT_TRUE(zero(rho[2] + second / P("Y(t)^2*f(theta)^2")));
}

TEST(TheoremEquivalence, ExamplePair) {
  const EquivalenceReport r = theorem_equivalence_check(example_g(), example_ghat());
  EXPECT_EQ(r.condition_verdict, Verdict::NotHarmonic);
  EXPECT_EQ(r.base.verdict, Verdict::NotHarmonic);
  EXPECT_EQ(r.sasaki.verdict, Verdict::NotHarmonic);
  EXPECT_EQ(r.horizontal.verdict, Verdict::NotHarmonic);
  EXPECT_EQ(r.complete.verdict, Verdict::NotHarmonic);
  ASSERT_EQ(r.checks.size(), 4u);
  for (const auto& c : r.checks) EXPECT_EQ(c.outcome, CheckOutcome::Pass) << c.name;
  EXPECT_EQ(r.outcome, CheckOutcome::Pass);
}

TEST(TheoremEquivalence, SelfPairIsHarmonicEverywhere) {
  const EquivalenceReport r = theorem_equivalence_check(abstract_gks(), abstract_gks());
  EXPECT_EQ(r.base.verdict, Verdict::Harmonic);
  EXPECT_EQ(r.complete.verdict, Verdict::Harmonic);
  EXPECT_EQ(r.outcome, CheckOutcome::Pass);
}

TEST(TheoremEquivalence, FirstConditionFails) {
  const GksSpec g = gks_from_bodies("1", "1", "sin(theta)");
  const GksSpec ghat = gks_from_bodies("t", "1", "sin(theta)", "h");
  EXPECT_EQ(harmonicity_conditions(g, ghat).first, P("t"));
  const EquivalenceReport r = theorem_equivalence_check(g, ghat);
  EXPECT_EQ(r.base.verdict, Verdict::NotHarmonic);
  EXPECT_EQ(r.outcome, CheckOutcome::Pass);
}

TEST(TheoremEquivalence, CorpusIsSeededAndMixed) {
  const auto a = gks_corpus(11, 24);
  const auto b = gks_corpus(11, 24);
  ASSERT_EQ(a.size(), 24u);
  int harmonic = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].second.describe(), b[i].second.describe());
    const EquivalenceReport r = theorem_equivalence_check(a[i].first, a[i].second);
    EXPECT_EQ(r.outcome, CheckOutcome::Pass) << a[i].first.describe() << " / " << a[i].second.describe();
    if (r.base.verdict == Verdict::Harmonic) ++harmonic;
  }
  EXPECT_GT(harmonic, 0);
  EXPECT_LT(harmonic, 24);
}
