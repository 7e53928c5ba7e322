/*
 * Copyright 2026 The suppressor-lab authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "suppressor_lab/analytic.hpp"
#include "suppressor_lab/rng.hpp"

namespace suppressor_lab {
namespace {

const GenParams kG = GenParams::from_variances(0.8, 0.8, 0.5);
const GenParams kC0 = GenParams::from_variances(0.0, 0.8, 0.5);

std::vector<GenParams> default_grid() {
  std::vector<GenParams> grid;
  for (double c : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
    for (double s1sq : {0.1, 0.5, 0.8, 1.0}) {
      for (double s2sq : {0.1, 0.5, 0.9}) {
        grid.push_back(GenParams::from_variances(c, s1sq, s2sq));
      }
    }
  }
  return grid;
}

TEST(Gradient, EqualsWeights) {
  const Attribution a = gradient_attrib(bayes_rule(kC0));
  EXPECT_DOUBLE_EQ(a.e1, 1.0);
  EXPECT_DOUBLE_EQ(a.e2, 0.0);

  const Attribution b =
      gradient_attrib(bayes_rule(GenParams::from_variances(-0.8, 1.0, 0.15)));
  EXPECT_NEAR(b.e1, frozen::kRankingW1, 1e-9);
  EXPECT_NEAR(b.e2, frozen::kRankingW2, 1e-9);
  EXPECT_GT(std::abs(b.e2), std::abs(b.e1));  // suppressor ranked first

  const Attribution g = gradient_attrib(bayes_rule(kG));
  EXPECT_NEAR(g.e1, frozen::kAlphaG, 1e-9);
  EXPECT_NEAR(g.e2, frozen::kW2G, 1e-9);
}

TEST(Pattern, ClosedFormAndExactZero) {
  const Attribution c0 = pattern_attrib(kC0);
  EXPECT_NEAR(c0.e1, 0.8, 1e-14);  // alpha=1: e1 = s1^2 (1 - c^2)
  EXPECT_DOUBLE_EQ(c0.e2, 0.0);

  const Attribution g = pattern_attrib(kG);
  EXPECT_NEAR(g.e1, frozen::kPatternE1G, 1e-12);
  EXPECT_NEAR(g.e2, 0.0, 1e-15);

  for (const GenParams& p : default_grid()) {
    const Attribution a = pattern_attrib(p);
    const double expect = p.alpha() * p.s1 * p.s1 * (1 - p.c * p.c);
    EXPECT_NEAR(a.e1, expect, 1e-12);
    EXPECT_NEAR(a.e2, 0.0, 1e-14);
  }
}

TEST(Pattern, MarginalRouteDiffersByAlphaExactly) {
  // Cov(x,x) w = a (a'w) + Sigma w; the printed constant keeps only the
  // Sigma w part, so the two routes differ by alpha * (a'w) = alpha.
  for (const GenParams& p : default_grid()) {
    const Attribution printed = pattern_attrib(p);
    const Attribution route = pattern_marginal_covariance(p);
    EXPECT_NEAR(route.e1 - printed.e1, p.alpha(), 1e-12);
    EXPECT_NEAR(route.e2, 0.0, 1e-14);
  }
  EXPECT_NEAR(pattern_marginal_covariance(kG).e1, frozen::kPatternRouteE1G,
              1e-12);
}

TEST(ExpectedSquaredError, KnownValues) {
  EXPECT_NEAR(expected_squared_error(kC0, 1.0, 0.0), 0.8, 1e-14);
  // Predicting 0 against Y in {-1, +1} always costs 1.
  EXPECT_DOUBLE_EQ(
      expected_squared_error(kG, 0.7, -0.3, {.f1 = true, .f2 = true}), 1.0);
  const BayesLinearRule r = bayes_rule(kG);
  EXPECT_NEAR(expected_squared_error(kG, r.w1, r.w2), frozen::kEseBayesG,
              1e-12);
}

TEST(PixelFlip, ClosedFormsViaLossDifferences) {
  EXPECT_DOUBLE_EQ(pixel_flip_attrib(kC0).e2, 0.0);
  const Attribution g = pixel_flip_attrib(kG);
  EXPECT_NEAR(g.e1, frozen::kPixelFlipE1G, 1e-12);
  EXPECT_NEAR(g.e2, frozen::kPixelFlipE2G, 1e-12);
  for (const GenParams& p : default_grid()) {
    const Attribution a = pixel_flip_attrib(p);
    const double al = p.alpha();
    EXPECT_NEAR(a.e1,
                2 * al - al * al + al * al * p.s1 * p.s1 * (2 * p.c * p.c - 1),
                1e-12);
    EXPECT_NEAR(a.e2, al * al * p.c * p.c * p.s1 * p.s1, 1e-12);
    GenParams flipped = p;
    flipped.c = -p.c;
    EXPECT_NEAR(pixel_flip_attrib(flipped).e2, a.e2, 1e-14);  // even in c
  }
}

TEST(Pfi, ClosedFormsAndCoupling) {
  const Attribution c0 = pfi_attrib(kC0);
  EXPECT_DOUBLE_EQ(c0.e1, 2.0);
  EXPECT_DOUBLE_EQ(c0.e2, 0.0);
  const Attribution g = pfi_attrib(kG);
  EXPECT_NEAR(g.e1, frozen::kPfiE1G, 1e-12);
  EXPECT_NEAR(g.e2, frozen::kPfiE2G, 1e-12);
  for (const GenParams& p : default_grid()) {
    const Attribution pfi = pfi_attrib(p);
    const Attribution pf = pixel_flip_attrib(p);
    EXPECT_NEAR(pfi.e1 - pfi.e2, 2.0 * p.alpha(), 1e-12);
    EXPECT_NEAR(pfi.e2, 2.0 * pf.e2, 1e-12);
    GenParams flipped = p;
    flipped.c = -p.c;
    EXPECT_NEAR(pfi_attrib(flipped).e2, pfi.e2, 1e-14);
  }
}

TEST(PfiPermutedLoss, AllSubsets) {
  const BayesLinearRule r = bayes_rule(kG);
  EXPECT_NEAR(pfi_permuted_loss(kG, {}), expected_squared_error(kG, r.w1, r.w2),
              1e-14);
  EXPECT_NEAR(pfi_permuted_loss(kG, {.f1 = true, .f2 = true}),
              frozen::kPfiBothPermutedLossG, 1e-12);
  // Permuting x1 kills every cross term x2 contributes through, so adding
  // the x2 permutation changes nothing.
  EXPECT_NEAR(pfi_permuted_loss(kG, {.f1 = true}),
              pfi_permuted_loss(kG, {.f1 = true, .f2 = true}), 1e-14);
}

TEST(PartialDependence, LinearResponses) {
  EXPECT_DOUBLE_EQ(pd_function(kC0, 2, 3.0), 0.0);
  EXPECT_NEAR(pd_function(kG, 2, 1.0), frozen::kW2G, 1e-9);
  for (const GenParams& p : default_grid()) {
    EXPECT_DOUBLE_EQ(pd_function(p, 1, 0.0), 0.0);
  }
  EXPECT_THROW(pd_function(kG, 0, 1.0), std::invalid_argument);
}

TEST(MPlot, SuppressorIsFlat) {
  for (const GenParams& p : default_grid()) {
    for (double x2 : {-2.0, -0.5, 0.7, 3.0}) {
      EXPECT_NEAR(mplot_function(p, 2, x2), 0.0, 1e-14);
    }
    EXPECT_DOUBLE_EQ(mplot_function(p, 1, 0.0), 0.0);
  }
  EXPECT_NEAR(mplot_function(kG, 1, 1.0), frozen::kMplotE1At1G, 1e-12);
  EXPECT_THROW(mplot_function(kG, 3, 1.0), std::invalid_argument);
}

TEST(ShapleyR2ThreeModel, ClosedFormAndEfficiency) {
  EXPECT_DOUBLE_EQ(shapley_r2_three_model(kC0).e2, 0.0);
  const Attribution g = shapley_r2_three_model(kG);
  EXPECT_NEAR(g.e1, frozen::kSh3E1G, 1e-12);
  EXPECT_NEAR(g.e2, frozen::kSh3E2G, 1e-12);
  for (const GenParams& p : default_grid()) {
    const Attribution a = shapley_r2_three_model(p);
    // Efficiency: scores sum to the full-coalition value.
    EXPECT_NEAR(a.e1 + a.e2, p.alpha() / std::sqrt(p.s1 * p.s1 + 1.0), 1e-12);
  }
}

TEST(ShapleyR2SingleModel, SuppressorExactlyZero) {
  EXPECT_NEAR(shapley_r2_single_model(kC0).e1, frozen::kSh1E1C0, 1e-12);
  const Attribution g = shapley_r2_single_model(kG);
  EXPECT_NEAR(g.e1, frozen::kSh1E1G, 1e-12);
  for (const GenParams& p : default_grid()) {
    EXPECT_DOUBLE_EQ(shapley_r2_single_model(p).e2, 0.0);
  }
}

TEST(ShapMarginal, LocalAccuracy) {
  const Attribution zero = shap_marginal(kG, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(zero.e1, 0.0);
  EXPECT_DOUBLE_EQ(zero.e2, 0.0);
  const Attribution g = shap_marginal(kG, {1.0, 1.0});
  EXPECT_NEAR(g.e1, frozen::kAlphaG, 1e-9);
  EXPECT_NEAR(g.e2, frozen::kW2G, 1e-9);

  CounterRng rng(5150, 0);
  for (int i = 0; i < 1000; ++i) {
    const double c = 1.9 * rng.next_uniform() - 0.95;
    const double s1sq = 0.1 + 0.9 * rng.next_uniform();
    const double s2sq = 0.1 + 0.9 * rng.next_uniform();
    const GenParams p = GenParams::from_variances(c, s1sq, s2sq);
    const auto [a, b] = rng.next_normal_pair();
    const Point x{2 * a, 2 * b};
    const Attribution attr = shap_marginal(p, x);
    EXPECT_NEAR(attr.e1 + attr.e2, bayes_rule(p).value(x), 1e-10);
  }
}

TEST(ShapConditional, ClosedFormAndEfficiency) {
  const Attribution c0 = shap_conditional(kC0, {1.0, 5.0});
  EXPECT_DOUBLE_EQ(c0.e1, 1.0);
  EXPECT_DOUBLE_EQ(c0.e2, 0.0);

  const Attribution g = shap_conditional(kG, {1.0, 0.0});
  EXPECT_NEAR(g.e1, frozen::kShapCondE1G, 1e-12);
  EXPECT_NEAR(g.e2, frozen::kShapCondE2G, 1e-12);
  EXPECT_NEAR(g.e1 + g.e2, frozen::kAlphaG, 1e-12);

  CounterRng rng(5151, 0);
  for (int i = 0; i < 1000; ++i) {
    const double c = 1.9 * rng.next_uniform() - 0.95;
    const double s1sq = 0.1 + 0.9 * rng.next_uniform();
    const double s2sq = 0.1 + 0.9 * rng.next_uniform();
    const GenParams p = GenParams::from_variances(c, s1sq, s2sq);
    const auto [a, b] = rng.next_normal_pair();
    const Point x{2 * a, 2 * b};
    const Attribution attr = shap_conditional(p, x);
    EXPECT_NEAR(attr.e1 + attr.e2, bayes_rule(p).value(x), 1e-10);
  }
}

TEST(Counterfactual, ProjectionBasics) {
  const CounterfactualResult c0 =
      counterfactual_closest(bayes_rule(kC0), {1.0, 1.0});
  EXPECT_NEAR(c0.x_star.x1, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(c0.x_star.x2, 1.0);  // only x1 moves when c = 0

  const BayesLinearRule rule = bayes_rule(kG);
  const CounterfactualResult g = counterfactual_closest(rule, {1.0, 0.0});
  EXPECT_NEAR(g.x_star.x1, frozen::kCfX1G, 1e-12);
  EXPECT_NEAR(g.x_star.x2, frozen::kCfX2G, 1e-12);
  EXPECT_NEAR(rule.value(g.x_star), 0.0, 1e-10);
  EXPECT_NEAR(g.distance, frozen::kAlphaG, 1e-12);

  // Idempotent on the boundary.
  const CounterfactualResult again = counterfactual_closest(rule, g.x_star);
  EXPECT_NEAR(again.distance, 0.0, 1e-14);
  EXPECT_NEAR(again.x_star.x1, g.x_star.x1, 1e-14);
}

TEST(Counterfactual, DeltaParallelToWeights) {
  for (const GenParams& p : default_grid()) {
    const BayesLinearRule rule = bayes_rule(p);
    CounterRng rng(808, 4);
    for (int i = 0; i < 20; ++i) {
      const auto [a, b] = rng.next_normal_pair();
      const CounterfactualResult cf =
          counterfactual_closest(rule, {2 * a, 2 * b});
      EXPECT_NEAR(cf.delta.x1 * rule.w2 - cf.delta.x2 * rule.w1, 0.0, 1e-10);
      EXPECT_NEAR(rule.value(cf.x_star), 0.0, 1e-10);
    }
  }
}

TEST(Counterfactual, ClosestAmongBoundaryPoints) {
  const BayesLinearRule rule = bayes_rule(kG);
  const Point u{-rule.w2, rule.w1};  // unit direction along the boundary
  CounterRng rng(909, 5);
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = rng.next_normal_pair();
    const Point xi{3 * a, 3 * b};
    const CounterfactualResult cf = counterfactual_closest(rule, xi);
    for (int j = 0; j < 10000; ++j) {
      const double t = 20.0 * (rng.next_uniform() - 0.5);
      const Point boundary{t * u.x1, t * u.x2};
      const double d = std::hypot(xi.x1 - boundary.x1, xi.x2 - boundary.x2);
      ASSERT_LE(cf.distance, d + 1e-12);
    }
  }
}

TEST(Counterfactual, PrintedFormMissesBoundary) {
  // The printed expression is kept as a diagnostic: it reproduces the x2
  // coordinate of the projection at xi = (1, 0) but not x1, and its image
  // sits off the decision boundary.
  const Point printed = counterfactual_paper_printed(kG, {1.0, 0.0});
  EXPECT_NEAR(printed.x1, frozen::kCfPrintedX1G, 1e-12);
  EXPECT_NEAR(printed.x2, frozen::kCfPrintedX2G, 1e-12);
  EXPECT_GT(std::abs(bayes_rule(kG).value(printed)), 1e-3);
}

TEST(IntegratedGradients, ExactPathIntegral) {
  const BayesLinearRule c0 = bayes_rule(kC0);
  // Baseline shifted only in feature 1: e2 = 0 when c = 0.
  const Attribution a = integrated_gradients_linear(c0, {1.0, 1.0}, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(a.e2, 0.0);

  const BayesLinearRule rule = bayes_rule(kG);
  const Attribution g =
      integrated_gradients_linear(rule, {1.0, 1.0}, {0.0, 0.0});
  EXPECT_NEAR(g.e1, frozen::kAlphaG, 1e-9);
  EXPECT_NEAR(g.e2, frozen::kW2G, 1e-9);
  EXPECT_NEAR(g.e1 + g.e2, rule.value({1.0, 1.0}), 1e-12);

  EXPECT_THROW(integrated_gradients_linear(rule, {1.0, 1.0}, {1.0, 1.0}),
               std::invalid_argument);
}

TEST(IntegratedGradients, CompletenessProperty) {
  CounterRng rng(606, 6);
  for (int i = 0; i < 1000; ++i) {
    const double c = 1.9 * rng.next_uniform() - 0.95;
    const GenParams p = GenParams::from_variances(c, 0.6, 0.7);
    const BayesLinearRule rule = bayes_rule(p);
    const auto [a, b] = rng.next_normal_pair();
    const auto [a2, b2] = rng.next_normal_pair();
    const Point x{a, b}, baseline{a2, b2};
    const Attribution ig = integrated_gradients_linear(rule, x, baseline);
    EXPECT_NEAR(ig.e1 + ig.e2, rule.value(x) - rule.value(baseline), 1e-10);
    if (c != 0.0 && x.x2 != baseline.x2) {
      EXPECT_NE(ig.e2, 0.0);
    }
  }
}

TEST(IntegratedGradients, PrintedQuadraticFormDiagnostic) {
  const Attribution printed =
      integrated_gradients_paper_printed(kG, {1.0, 1.0}, {0.0, 0.0});
  EXPECT_NEAR(printed.e1, frozen::kIgPrintedE1G, 1e-12);
  EXPECT_NEAR(printed.e2, frozen::kIgPrintedE2G, 1e-12);
  // Same sign structure as the exact integral, halved magnitude at this
  // baseline; both agree that e2 != 0 iff c != 0.
  EXPECT_NEAR(printed.e1 * 2.0, frozen::kAlphaG, 1e-9);
}

TEST(Firm, QuadratureBoundAndExactZero) {
  const Attribution g = firm_attrib(kG);
  EXPECT_NEAR(g.e1, frozen::kFirmE1G, 1e-6);
  EXPECT_NEAR(g.e2, 0.0, 1e-14);
  EXPECT_NEAR(firm_lower_bound(kG), frozen::kFirmBoundG, 1e-12);
  EXPECT_GE(g.e1, firm_lower_bound(kG));

  // c = 0: the h-term drops and Var(X1) = s1^2 + 1.
  EXPECT_NEAR(firm_attrib(kC0).e1, frozen::kFirmE1C0, 1e-6);

  for (const GenParams& p : default_grid()) {
    EXPECT_NEAR(firm_attrib(p).e2, 0.0, 1e-14);
  }
}

TEST(PatternAttribution, SignalVectorGatesWeights) {
  for (const GenParams& p : default_grid()) {
    const Attribution a = pattern_attribution_dtd(p, bayes_rule(p));
    EXPECT_DOUBLE_EQ(a.e2, 0.0);
    EXPECT_NEAR(a.e1, p.alpha(), 1e-12);
  }
  // With signal leakage the pattern becomes (1, eps) and e2 = w2 * eps.
  const GenParams eps = GenParams::from_variances(0.8, 0.8, 0.5, 0.1);
  const BayesLinearRule rule = bayes_rule(eps);
  const Attribution a = pattern_attribution_dtd(eps, rule);
  EXPECT_NEAR(a.e2, rule.w2 * 0.1, 1e-12);
  EXPECT_NE(a.e2, 0.0);
}

TEST(LimeReferenceDirection, UnitNormWeightDirection) {
  const Point c0 = lime_reference_direction(bayes_rule(kC0));
  EXPECT_DOUBLE_EQ(c0.x1, 1.0);
  EXPECT_DOUBLE_EQ(c0.x2, 0.0);
  const Point g = lime_reference_direction(bayes_rule(kG));
  EXPECT_NEAR(g.x1, frozen::kAlphaG, 1e-9);
  EXPECT_NEAR(g.x2, frozen::kW2G, 1e-9);
  for (const GenParams& p : default_grid()) {
    const Point d = lime_reference_direction(bayes_rule(p));
    EXPECT_NEAR(d.x1 * d.x1 + d.x2 * d.x2, 1.0, 1e-12);
  }
}

TEST(SuppressorSets, ZeroAndNonzeroPartition) {
  for (const GenParams& p : default_grid()) {
    if (p.c == 0.0) continue;
    // Nullifying set: exactly zero analytically.
    EXPECT_LT(std::abs(pattern_attrib(p).e2), 1e-10);
    EXPECT_LT(std::abs(mplot_function(p, 2, 1.0)), 1e-10);
    EXPECT_LT(std::abs(shapley_r2_single_model(p).e2), 1e-10);
    EXPECT_LT(std::abs(firm_attrib(p).e2), 1e-10);
    EXPECT_LT(std::abs(pattern_attribution_dtd(p, bayes_rule(p)).e2), 1e-10);
    // Attributing set: bounded away from zero.
    const BayesLinearRule rule = bayes_rule(p);
    EXPECT_GT(std::abs(rule.w2), 1e-10);
    EXPECT_GT(std::abs(pixel_flip_attrib(p).e2), 1e-10);
    EXPECT_GT(std::abs(pfi_attrib(p).e2), 1e-10);
    EXPECT_GT(std::abs(pd_function(p, 2, 1.0)), 1e-10);
    EXPECT_GT(std::abs(shap_marginal(p, {1.0, 1.0}).e2), 1e-10);
    EXPECT_GT(std::abs(shap_conditional(p, {1.0, 1.0}).e2), 1e-10);
    EXPECT_GT(std::abs(counterfactual_closest(rule, {1.0, 0.0}).delta.x2),
              1e-10);
    EXPECT_GT(
        std::abs(integrated_gradients_linear(rule, {1.0, 1.0}, {0.0, 0.0}).e2),
        1e-10);
  }
}

TEST(BaseModelPrecondition, EnforcedNotGeneralized) {
  const GenParams eps = GenParams::from_variances(0.8, 0.8, 0.5, 0.1);
  EXPECT_THROW(pattern_attrib(eps), std::invalid_argument);
  EXPECT_THROW(pixel_flip_attrib(eps), std::invalid_argument);
  EXPECT_THROW(pfi_attrib(eps), std::invalid_argument);
  EXPECT_THROW(pd_function(eps, 1, 0.5), std::invalid_argument);
  EXPECT_THROW(mplot_function(eps, 1, 0.5), std::invalid_argument);
  EXPECT_THROW(shapley_r2_three_model(eps), std::invalid_argument);
  EXPECT_THROW(shap_marginal(eps, {1, 1}), std::invalid_argument);
  EXPECT_THROW(shap_conditional(eps, {1, 1}), std::invalid_argument);
  EXPECT_THROW(firm_attrib(eps), std::invalid_argument);
}

}  // namespace
}  // namespace suppressor_lab
