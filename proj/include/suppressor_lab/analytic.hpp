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
#pragma once

#include <cmath>
#include <stdexcept>

#include "suppressor_lab/attribution.hpp"
#include "suppressor_lab/model.hpp"
#include "suppressor_lab/quadrature.hpp"

namespace suppressor_lab {

// ---------------------------------------------------------------------------
// Global methods
// ---------------------------------------------------------------------------

/// Gradient of the linear rule: the weights themselves.
inline Attribution gradient_attrib(const BayesLinearRule& rule) {
  return make_analytic(Method::gradient, rule.w1, rule.w2);
}

/// Linear activation pattern for the optimal rule, evaluated with the
/// class-conditional covariance: Sigma * w = (alpha*s1^2*(1-c^2), 0).
inline Attribution pattern_attrib(const GenParams& p) {
  p.validate();
  p.require_base_model("pattern_attrib");
  const BayesLinearRule rule = bayes_rule(p);
  const Mat2 s = p.sigma();
  const double e1 = s.m00 * rule.w1 + s.m01 * rule.w2;
  const double e2 = s.m10 * rule.w1 + s.m11 * rule.w2;
  return make_analytic(Method::pattern, e1, e2);
}

/// Same transform with the marginal covariance Cov(x, x) = a a' + Sigma.
/// Differs from pattern_attrib in e1 by exactly alpha*(a'w); recorded in the
/// sweep report as a diagnostic rather than reconciled.
inline Attribution pattern_marginal_covariance(const GenParams& p) {
  p.validate();
  p.require_base_model("pattern_marginal_covariance");
  const BayesLinearRule rule = bayes_rule(p);
  const Point a = p.pattern_vector();
  const Mat2 s = p.sigma();
  const double aw = a.x1 * rule.w1 + a.x2 * rule.w2;
  const double e1 = a.x1 * aw + s.m00 * rule.w1 + s.m01 * rule.w2;
  const double e2 = a.x2 * aw + s.m10 * rule.w1 + s.m11 * rule.w2;
  return make_analytic(Method::pattern, e1, e2);
}

struct FeatureSet {
  bool f1 = false;
  bool f2 = false;
};

/// E[(Y - f_{w_S = 0}(x))^2] for the base model, where entries of w named in
/// zero_mask are replaced by 0:
///   1 - 2*w1' + w1'^2*(s1^2 + 1) + w2'^2*s2^2 + 2*w1'*w2'*c*s1*s2.
inline double expected_squared_error(const GenParams& p, double w1, double w2,
                                     FeatureSet zero_mask = {}) {
  p.validate();
  p.require_base_model("expected_squared_error");
  const double a1 = zero_mask.f1 ? 0.0 : w1;
  const double a2 = zero_mask.f2 ? 0.0 : w2;
  return 1.0 - 2.0 * a1 + a1 * a1 * (p.s1 * p.s1 + 1.0) +
         a2 * a2 * p.s2 * p.s2 + 2.0 * a1 * a2 * p.c * p.s1 * p.s2;
}

/// Loss increase when a weight is zeroed, per feature. Closed forms:
///   e1 = 2a - a^2 + a^2*s1^2*(2c^2 - 1),  e2 = a^2*c^2*s1^2  (a = alpha).
inline Attribution pixel_flip_attrib(const GenParams& p) {
  const BayesLinearRule r = bayes_rule(p);
  const double base = expected_squared_error(p, r.w1, r.w2);
  const double e1 =
      expected_squared_error(p, r.w1, r.w2, {.f1 = true}) - base;
  const double e2 =
      expected_squared_error(p, r.w1, r.w2, {.f2 = true}) - base;
  return make_analytic(Method::pixel_flip, e1, e2);
}

/// Loss increase under random permutation of a feature column:
///   e1 = 2*alpha + 2*alpha^2*c^2*s1^2,  e2 = 2*alpha^2*c^2*s1^2.
inline Attribution pfi_attrib(const GenParams& p) {
  p.validate();
  p.require_base_model("pfi_attrib");
  const double a = p.alpha();
  const double t = 2.0 * a * a * p.c * p.c * p.s1 * p.s1;
  return make_analytic(Method::pfi, 2.0 * a + t, t);
}

/// Expected squared-error loss after permuting the columns in `permuted`
/// (every cross-covariance with a permuted column vanishes).
inline double pfi_permuted_loss(const GenParams& p, FeatureSet permuted) {
  const BayesLinearRule r = bayes_rule(p);
  const double s1sq = p.s1 * p.s1, s2sq = p.s2 * p.s2;
  double loss = 1.0 + r.w1 * r.w1 * (s1sq + 1.0) + r.w2 * r.w2 * s2sq;
  if (!permuted.f1) loss -= 2.0 * r.w1;
  if (!permuted.f1 && !permuted.f2) loss += 2.0 * r.w1 * r.w2 * p.c * p.s1 * p.s2;
  return loss;
}

/// Shapley allocation of R^2 shares over three hypothetical models: the
/// bivariate optimal rule plus the univariate optimal rules f{1}=x1, f{2}=0.
inline Attribution shapley_r2_three_model(const GenParams& p) {
  p.validate();
  p.require_base_model("shapley_r2_three_model");
  const double rho1 = 1.0 / std::sqrt(p.s1 * p.s1 + 1.0);
  const double a = p.alpha();
  const double v1 = 1.0 * rho1;      // univariate model on x1, weight 1
  const double v2 = 0.0;             // univariate model on x2, weight 0
  const double v12 = a * rho1;       // bivariate optimal rule
  const double e1 = 0.5 * v1 + 0.5 * (v12 - v2);
  const double e2 = 0.5 * v2 + 0.5 * (v12 - v1);
  return make_analytic(Method::shapley_r2_three_model, e1, e2);
}

/// Shapley allocation of R^2 shares using only the bivariate model.
inline Attribution shapley_r2_single_model(const GenParams& p) {
  p.validate();
  p.require_base_model("shapley_r2_single_model");
  const BayesLinearRule r = bayes_rule(p);
  const double rho1 = 1.0 / std::sqrt(p.s1 * p.s1 + 1.0);
  const double v1 = r.w1 * rho1;
  const double v2 = r.w2 * 0.0;
  const double v12 = r.w1 * rho1 + r.w2 * 0.0;
  const double e1 = 0.5 * v1 + 0.5 * (v12 - v2);
  const double e2 = 0.5 * v2 + 0.5 * (v12 - v1);
  return make_analytic(Method::shapley_r2_single_model, e1, e2);
}

/// Lower bound (alpha/2)*(2*sigmoid(2/s1^2) - 1) for the FIRM score of
/// feature 1.
inline double firm_lower_bound(const GenParams& p) {
  p.validate();
  return 0.5 * p.alpha() * (2.0 * sigmoid(2.0 / (p.s1 * p.s1)) - 1.0);
}

/// sqrt(Var(E[f|X_j])) per feature.
/// Feature 1: alpha * sqrt(Var(X1 - c^2 h(X1))), integrated by adaptive
/// quadrature over the X1 marginal (two-component Gaussian mixture).
/// Feature 2: E[f|X2=x2] = (w1*k + w2)*x2, identically zero for the optimal
/// rule; evaluated through that coefficient rather than pinned to 0.
inline Attribution firm_attrib(const GenParams& p,
                               QuadratureOptions opt = {}) {
  p.validate();
  p.require_base_model("firm_attrib");
  const BayesLinearRule r = bayes_rule(p);
  const double s1 = p.s1;
  const double csq = p.c * p.c;
  const auto marginal = [s1](double x) {
    const double u1 = (x - 1.0) / s1;
    const double u2 = (x + 1.0) / s1;
    return 0.5 / (s1 * std::sqrt(2.0 * M_PI)) *
           (std::exp(-0.5 * u1 * u1) + std::exp(-0.5 * u2 * u2));
  };
  const auto g = [&](double x) { return x - csq * h_function(p, x); };
  const double lo = -1.0 - 10.0 * s1;
  const double hi = 1.0 + 10.0 * s1;
  const double m1 =
      adaptive_simpson([&](double x) { return g(x) * marginal(x); }, lo, hi, opt);
  const double m2 = adaptive_simpson(
      [&](double x) { return g(x) * g(x) * marginal(x); }, lo, hi, opt);
  const double var = std::max(m2 - m1 * m1, 0.0);
  const double e1 = p.alpha() * std::sqrt(var);
  const double coef2 = r.w1 * p.k() + r.w2;
  const double e2 = std::abs(coef2) * p.s2;
  return make_analytic(Method::firm, e1, e2);
}

/// DTD propagation with the signal estimator a*w'x: e = w (Hadamard) a, where
/// a = Cov(x, y)/Var(y) = (1, epsilon).
inline Attribution pattern_attribution_dtd(const GenParams& p,
                                           const BayesLinearRule& rule) {
  p.validate();
  const Point a = p.pattern_vector();
  return make_analytic(Method::pattern_attribution, rule.w1 * a.x1,
                       rule.w2 * a.x2);
}

// ---------------------------------------------------------------------------
// Local methods
// ---------------------------------------------------------------------------

/// Partial dependence of the rule on one feature, marginalizing the other:
///   e{1}(x1) = alpha*x1,  e{2}(x2) = -alpha*(c*s1/s2)*x2.
inline double pd_function(const GenParams& p, int feature, double value) {
  p.validate();
  p.require_base_model("pd_function");
  const BayesLinearRule r = bayes_rule(p);
  if (feature == 1) return r.w1 * value;  // + w2*E[X2] = 0
  if (feature == 2) return r.w2 * value;
  throw std::invalid_argument("feature index must be 1 or 2");
}

/// Conditional expectation of the rule given one feature:
///   e{1}(x1) = alpha*x1 - alpha*c^2*h(x1),  e{2}(x2) = 0.
inline double mplot_function(const GenParams& p, int feature, double value) {
  p.validate();
  p.require_base_model("mplot_function");
  const BayesLinearRule r = bayes_rule(p);
  if (feature == 1) {
    return r.w1 * value + r.w2 * cond_expectation(p, 1, value);
  }
  if (feature == 2) {
    return r.w1 * cond_expectation(p, 2, value) + r.w2 * value;
  }
  throw std::invalid_argument("feature index must be 1 or 2");
}

/// Shapley values with the marginal-expectation value function:
///   e_j = w_j * (x_j - E[x_j]) = w_j * x_j.
inline Attribution shap_marginal(const GenParams& p, Point x) {
  p.validate();
  p.require_base_model("shap_marginal");
  const BayesLinearRule r = bayes_rule(p);
  return make_analytic(Method::shap_marginal, r.w1 * x.x1, r.w2 * x.x2, x);
}

/// Shapley values with the conditional-expectation value function:
///   e1 = alpha*x1 - (alpha*c^2/2)*h(x1) - (alpha*c*s1/(2 s2))*x2
///   e2 = (alpha*c^2/2)*h(x1) - (alpha*c*s1/(2 s2))*x2
/// Assembled from the two-feature enumeration with g_empty = 0.
inline Attribution shap_conditional(const GenParams& p, Point x) {
  p.validate();
  p.require_base_model("shap_conditional");
  const BayesLinearRule r = bayes_rule(p);
  const double g1 = mplot_function(p, 1, x.x1);
  const double g2 = mplot_function(p, 2, x.x2);
  const double g12 = r.value(x);
  const double e1 = 0.5 * g1 + 0.5 * (g12 - g2);
  const double e2 = 0.5 * g2 + 0.5 * (g12 - g1);
  return make_analytic(Method::shap_conditional, e1, e2, x);
}

/// Closest point on the decision boundary and the move that reaches it.
struct CounterfactualResult {
  Point x_star;    ///< Euclidean projection of xi onto {x : f(x) = 0}
  double distance; ///< ||xi - x_star||
  Point delta;     ///< xi - x_star, parallel to w
};

/// Orthogonal projection of xi onto the decision hyperplane. With unit-norm
/// weights: x* = xi - (w'xi + b) * w.
inline CounterfactualResult counterfactual_closest(const BayesLinearRule& rule,
                                                   Point xi) {
  const double t = rule.value(xi);
  const Point x_star{xi.x1 - t * rule.w1, xi.x2 - t * rule.w2};
  const Point delta{t * rule.w1, t * rule.w2};
  return {x_star, std::abs(t), delta};
}

/// The counterfactual expression as printed in the source analysis. It does
/// not land on the decision boundary in general; kept for diagnostics only.
inline Point counterfactual_paper_printed(const GenParams& p, Point xi) {
  const double k = p.k();
  const double beta = p.beta();
  return {beta * (xi.x1 - xi.x2 * k), beta * k * (xi.x2 * k + xi.x1)};
}

/// Path-integrated gradients along the straight line from baseline to x.
/// For the linear rule the integral is exact: e_j = w_j * (x_j - baseline_j).
inline Attribution integrated_gradients_linear(const BayesLinearRule& rule,
                                               Point x, Point baseline) {
  if (x.x1 == baseline.x1 && x.x2 == baseline.x2) {
    throw std::invalid_argument(
        "integrated gradients: baseline must differ from the instance");
  }
  return make_analytic(Method::integrated_gradients,
                       rule.w1 * (x.x1 - baseline.x1),
                       rule.w2 * (x.x2 - baseline.x2), x);
}

/// The quadratic closed form as printed in the source analysis, reported
/// side-by-side with the exact path integral for diagnostics.
inline Attribution integrated_gradients_paper_printed(const GenParams& p,
                                                      Point x, Point baseline) {
  const double a = p.alpha();
  const double e1 = 0.5 * a * (x.x1 * x.x1 - baseline.x1 * baseline.x1);
  const double e2 = -0.5 * a * p.c * p.s1 / p.s2 *
                    (x.x2 * x.x2 - baseline.x2 * baseline.x2);
  return make_analytic(Method::integrated_gradients, e1, e2, x);
}

/// Direction the LIME surrogate coefficients must be proportional to.
/// Carries no magnitude claim.
inline Point lime_reference_direction(const BayesLinearRule& rule) {
  return {rule.w1, rule.w2};
}

}  // namespace suppressor_lab
