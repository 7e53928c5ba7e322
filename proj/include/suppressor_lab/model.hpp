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
#include <string>

namespace suppressor_lab {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Mat2 {
  double m00, m01, m10, m11;
};

/// Parameters of the two-feature generative process
///   x = (z + eta1, epsilon*z + eta2),  y = z,
/// with z a fair sign flip and (eta1, eta2) centered Gaussian noise whose
/// covariance is parameterized by the correlation c and standard deviations
/// s1, s2. Feature 2 carries no information about y when epsilon == 0; it
/// acts purely as a noise channel that a multivariate classifier can exploit.
struct GenParams {
  double c = 0.0;        ///< noise correlation, in [-1, 1]
  double s1 = 1.0;       ///< noise standard deviation on feature 1, > 0
  double s2 = 1.0;       ///< noise standard deviation on feature 2, > 0
  double epsilon = 0.0;  ///< signal leakage into feature 2 (0 for the base model)

  static GenParams from_variances(double c, double s1sq, double s2sq,
                                  double epsilon = 0.0) {
    GenParams p;
    p.c = c;
    p.s1 = std::sqrt(s1sq);
    p.s2 = std::sqrt(s2sq);
    p.epsilon = epsilon;
    p.validate();
    return p;
  }

  void validate() const {
    if (!(std::abs(c) <= 1.0)) {
      throw std::invalid_argument("correlation c must lie in [-1, 1], got " +
                                  std::to_string(c));
    }
    if (!(s1 > 0.0) || !(s2 > 0.0)) {
      throw std::invalid_argument("standard deviations must be positive");
    }
    if (!std::isfinite(epsilon)) {
      throw std::invalid_argument("epsilon must be finite");
    }
  }

  double k() const { return c * s1 / s2; }
  double alpha() const { return 1.0 / std::sqrt(1.0 + k() * k()); }
  double beta() const { return 1.0 / (1.0 + k() * k()); }

  Mat2 sigma() const {
    const double off = c * s1 * s2;
    return {s1 * s1, off, off, s2 * s2};
  }

  /// Inverse noise covariance. Singular at |c| == 1.
  Mat2 sigma_inverse() const {
    require_invertible();
    const double det = s1 * s1 * s2 * s2 * (1.0 - c * c);
    const double off = -c * s1 * s2 / det;
    return {s2 * s2 / det, off, off, s1 * s1 / det};
  }

  /// Class-conditional mean, label in {-1, +1}.
  Point mu(int label) const { return {static_cast<double>(label), epsilon}; }

  /// Forward-model pattern vector a: x = a*z + eta.
  Point pattern_vector() const { return {1.0, epsilon}; }

  void require_invertible() const {
    if (std::abs(c) >= 1.0) {
      throw std::domain_error(
          "noise covariance is singular at |c| = 1; the operation needs |c| < 1");
    }
  }

  void require_base_model(const char* op) const {
    if (epsilon != 0.0) {
      throw std::invalid_argument(std::string(op) +
                                  " requires the base model (epsilon == 0)");
    }
  }
};

/// The error-minimizing linear rule f(x) = w1*x1 + w2*x2 + b with unit-norm
/// weights; classify as +1 iff f(x) >= 0.
struct BayesLinearRule {
  double w1 = 1.0;
  double w2 = 0.0;
  double b = 0.0;
  double alpha = 1.0;

  double value(Point x) const { return w1 * x.x1 + w2 * x.x2 + b; }
  int classify(Point x) const { return value(x) >= 0.0 ? +1 : -1; }
};

/// Optimal rule for the generative process: w1 = alpha, w2 = -alpha*c*s1/s2,
/// b = epsilon*alpha*c*s1/s2. Equals the normalized direction of
/// sigma_inverse * (mu(+1) - mu(-1)).
inline BayesLinearRule bayes_rule(const GenParams& p) {
  p.validate();
  p.require_invertible();
  BayesLinearRule rule;
  rule.alpha = p.alpha();
  rule.w1 = rule.alpha;
  rule.w2 = -rule.alpha * p.k();
  rule.b = p.epsilon * rule.alpha * p.k();
  return rule;
}

/// Squared Mahalanobis distance (x - mu)' Sigma^-1 (x - mu).
inline double mahalanobis_sq(const GenParams& p, Point x, int label) {
  const Mat2 si = p.sigma_inverse();
  const Point m = p.mu(label);
  const double d1 = x.x1 - m.x1;
  const double d2 = x.x2 - m.x2;
  return d1 * (si.m00 * d1 + si.m01 * d2) + d2 * (si.m10 * d1 + si.m11 * d2);
}

/// Assigns x to the class with the smaller squared Mahalanobis distance.
/// Ties go to +1.
inline int mahalanobis_classify(const GenParams& p, Point x) {
  return mahalanobis_sq(p, x, +1) <= mahalanobis_sq(p, x, -1) ? +1 : -1;
}

/// N(mu(label), Sigma) density at x. Needs |c| < 1.
inline double class_conditional_density(const GenParams& p, Point x, int label) {
  p.validate();
  const double det = p.s1 * p.s1 * p.s2 * p.s2 * (1.0 - p.c * p.c);
  if (!(det > 0.0)) {
    throw std::domain_error("singular covariance: density undefined at |c| = 1");
  }
  const double q = mahalanobis_sq(p, x, label);
  return std::exp(-0.5 * q) / (2.0 * M_PI * std::sqrt(det));
}

/// Mixture density p(x) = 1/2 p(x|+1) + 1/2 p(x|-1).
inline double joint_density(const GenParams& p, Point x) {
  return 0.5 * class_conditional_density(p, x, +1) +
         0.5 * class_conditional_density(p, x, -1);
}

inline double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

/// P(Y = +1 | X1 = x1) = sigmoid(2*x1/s1^2) for the base model.
inline double posterior_y_given_x1(const GenParams& p, double x1) {
  p.validate();
  p.require_base_model("posterior_y_given_x1");
  return sigmoid(2.0 * x1 / (p.s1 * p.s1));
}

/// h(x1) = (x1-1)*sigmoid(2x1/s1^2) + (x1+1)*(1 - sigmoid(2x1/s1^2)).
/// Evaluated as x1 - tanh(x1/s1^2), which is the same expression and is
/// bitwise odd in x1.
inline double h_function(const GenParams& p, double x1) {
  p.validate();
  return x1 - std::tanh(x1 / (p.s1 * p.s1));
}

/// E[X1 | X2 = x2] (known_feature = 2) or E[X2 | X1 = x1] (known_feature = 1)
/// for the base model:
///   E[X1 | X2 = x2] = (c*s1/s2) * x2
///   E[X2 | X1 = x1] = (c*s2/s1) * h(x1)
inline double cond_expectation(const GenParams& p, int known_feature,
                               double value) {
  p.validate();
  p.require_base_model("cond_expectation");
  if (known_feature == 2) {
    return (p.c * p.s1 / p.s2) * value;
  }
  if (known_feature == 1) {
    return (p.c * p.s2 / p.s1) * h_function(p, value);
  }
  throw std::invalid_argument("feature index must be 1 or 2");
}

}  // namespace suppressor_lab
