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

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "suppressor_lab/analytic.hpp"
#include "suppressor_lab/attribution.hpp"
#include "suppressor_lab/dataset.hpp"
#include "suppressor_lab/model.hpp"
#include "suppressor_lab/rng.hpp"

namespace suppressor_lab {

struct EstimatorConfig {
  std::size_t n_moment = 1'000'000;  ///< samples for moment estimators
  std::size_t n_loss = 100'000;      ///< samples for loss estimators
  std::uint64_t seed = kDefaultSeed;
  double bin_width = 0.05;           ///< conditional-expectation binning
  double lime_kernel_width = 1.0;
  std::size_t lime_n = 10'000;
  std::size_t quadrature_nodes = 1000;
  double tolerance_scale = 1.0;      ///< multiplies absolute tolerances

  void validate() const {
    if (n_moment < 1 || n_loss < 1 || lime_n < 1 || quadrature_nodes < 1) {
      throw std::invalid_argument("estimator sample counts must be >= 1");
    }
    if (!(bin_width > 0.0)) throw std::invalid_argument("bin_width must be > 0");
    if (!(lime_kernel_width > 0.0)) {
      throw std::invalid_argument("lime_kernel_width must be > 0");
    }
  }

  /// Reduced-cost profile: 10x fewer samples, sqrt(10)x wider absolute
  /// tolerances (standard-error based tolerances widen on their own).
  EstimatorConfig quick() const {
    EstimatorConfig q = *this;
    q.n_moment = std::max<std::size_t>(1, n_moment / 10);
    q.n_loss = std::max<std::size_t>(1, n_loss / 10);
    q.lime_n = std::max<std::size_t>(1, lime_n / 10);
    q.tolerance_scale = tolerance_scale * std::sqrt(10.0);
    return q;
  }
};

struct Estimate {
  double value = 0.0;
  /// Standard error of the estimate; 0 for exact routes, NaN where no
  /// meaningful error model exists (binned variances, surrogate fits).
  double std_error = std::numeric_limits<double>::quiet_NaN();
};

struct EmpiricalAttribution {
  Method method;
  Estimate e1;
  Estimate e2;
  bool low_sample_warning = false;
  std::optional<Point> locus;
};

namespace detail {

// Stream tags keep every estimator on its own derived random stream.
enum StreamTag : std::uint64_t {
  kStreamPattern = 101,
  kStreamPixelFlip = 102,
  kStreamPfi = 103,
  kStreamPd = 104,
  kStreamMplot = 105,
  kStreamFirm = 106,
  kStreamLime = 107,
  kStreamPatternAttribution = 108,
  kStreamEse = 109,
};

inline CounterRng stream(const EstimatorConfig& cfg, std::uint64_t tag,
                         std::uint64_t salt = 0) {
  return CounterRng(cfg.seed, mix64(tag ^ mix64(salt)));
}

struct MeanAcc {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double std_error() const {
    return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
  }
  Estimate estimate() const { return {mean, std_error()}; }
};

inline void fisher_yates(std::vector<double>& v, CounterRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.next_below(i)]);
  }
}

/// Sample covariance of (u, v) plus the standard error of the covariance,
/// computed from the centered-product second moment.
struct CovAcc {
  std::vector<double> us, vs;
  void add(double u, double v) { us.push_back(u); vs.push_back(v); }

  Estimate covariance() const {
    const std::size_t n = us.size();
    if (n < 2) return {0.0, std::numeric_limits<double>::quiet_NaN()};
    double mu = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mu += us[i]; mv += vs[i]; }
    mu /= static_cast<double>(n);
    mv /= static_cast<double>(n);
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double prod = (us[i] - mu) * (vs[i] - mv);
      s += prod;
      s2 += prod * prod;
    }
    const double cov = s / static_cast<double>(n - 1);
    const double var_prod = s2 / static_cast<double>(n) - (s / n) * (s / n);
    return {cov, std::sqrt(std::max(var_prod, 0.0) / static_cast<double>(n))};
  }
};

/// Generic solve of a small dense system by Gaussian elimination with
/// partial pivoting.
template <std::size_t N>
std::array<double, N> solve_dense(std::array<std::array<double, N>, N> a,
                                  std::array<double, N> b) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (a[piv][col] == 0.0) {
      throw std::runtime_error("singular system in dense solve");
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<double, N> x{};
  for (std::size_t i = N; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < N; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Moment estimators
// ---------------------------------------------------------------------------

/// Pooled within-class sample covariance Cov(x_j, f(x)). Converges to
/// (Sigma w)_j, the activation-pattern closed form.
inline EmpiricalAttribution est_pattern(const GenParams& p,
                                        const EstimatorConfig& cfg) {
  cfg.validate();
  p.require_base_model("est_pattern");
  const BayesLinearRule rule = bayes_rule(p);
  CounterRng rng = detail::stream(cfg, detail::kStreamPattern);
  detail::CovAcc pos1, pos2, neg1, neg2;
  for (std::size_t i = 0; i < cfg.n_moment; ++i) {
    const LabeledRecord r = detail::sample_record(p, rng, i);
    const double f = rule.value({r.x1, r.x2});
    if (r.y > 0) {
      pos1.add(r.x1, f);
      pos2.add(r.x2, f);
    } else {
      neg1.add(r.x1, f);
      neg2.add(r.x2, f);
    }
  }
  const auto pool = [&](const detail::CovAcc& a, const detail::CovAcc& b) {
    const Estimate ea = a.covariance(), eb = b.covariance();
    const double na = static_cast<double>(a.us.size());
    const double nb = static_cast<double>(b.us.size());
    const double wa = na / (na + nb), wb = nb / (na + nb);
    return Estimate{wa * ea.value + wb * eb.value,
                    std::sqrt(wa * wa * ea.std_error * ea.std_error +
                              wb * wb * eb.std_error * eb.std_error)};
  };
  EmpiricalAttribution out{Method::pattern, pool(pos1, neg1), pool(pos2, neg2)};
  out.low_sample_warning = pos1.us.size() < 2 || neg1.us.size() < 2;
  return out;
}

/// Sample estimate of a = Cov(x, y)/Var(y), multiplied elementwise by w.
inline EmpiricalAttribution est_pattern_attribution(const GenParams& p,
                                                    const EstimatorConfig& cfg) {
  cfg.validate();
  const BayesLinearRule rule = bayes_rule(p);
  CounterRng rng = detail::stream(cfg, detail::kStreamPatternAttribution);
  detail::CovAcc c1, c2;
  detail::MeanAcc yacc;
  for (std::size_t i = 0; i < cfg.n_moment; ++i) {
    const LabeledRecord r = detail::sample_record(p, rng, i);
    c1.add(r.x1, r.y);
    c2.add(r.x2, r.y);
    yacc.add(static_cast<double>(r.y));
  }
  const Estimate cov1 = c1.covariance(), cov2 = c2.covariance();
  const double var_y = yacc.variance();
  return {Method::pattern_attribution,
          {rule.w1 * cov1.value / var_y, std::abs(rule.w1) * cov1.std_error / var_y},
          {rule.w2 * cov2.value / var_y, std::abs(rule.w2) * cov2.std_error / var_y}};
}

// ---------------------------------------------------------------------------
// Loss estimators
// ---------------------------------------------------------------------------

/// Monte-Carlo estimate of E[(Y - f_{w_S=0}(x))^2].
inline Estimate est_expected_squared_error(const GenParams& p,
                                           const EstimatorConfig& cfg,
                                           double w1, double w2,
                                           FeatureSet zero_mask = {}) {
  cfg.validate();
  p.require_base_model("est_expected_squared_error");
  const double a1 = zero_mask.f1 ? 0.0 : w1;
  const double a2 = zero_mask.f2 ? 0.0 : w2;
  CounterRng rng = detail::stream(cfg, detail::kStreamEse,
                                  (zero_mask.f1 ? 1u : 0u) | (zero_mask.f2 ? 2u : 0u));
  detail::MeanAcc acc;
  for (std::size_t i = 0; i < cfg.n_loss; ++i) {
    const LabeledRecord r = detail::sample_record(p, rng, i);
    const double err = r.y - (a1 * r.x1 + a2 * r.x2);
    acc.add(err * err);
  }
  return acc.estimate();
}

/// Loss differences from zeroing one weight at a time, on a shared sample.
inline EmpiricalAttribution est_pixel_flip(const GenParams& p,
                                           const EstimatorConfig& cfg) {
  cfg.validate();
  p.require_base_model("est_pixel_flip");
  const BayesLinearRule rule = bayes_rule(p);
  CounterRng rng = detail::stream(cfg, detail::kStreamPixelFlip);
  detail::MeanAcc d1, d2;
  for (std::size_t i = 0; i < cfg.n_loss; ++i) {
    const LabeledRecord r = detail::sample_record(p, rng, i);
    const double full = r.y - rule.value({r.x1, r.x2});
    const double m1 = r.y - rule.w2 * r.x2;
    const double m2 = r.y - rule.w1 * r.x1;
    d1.add(m1 * m1 - full * full);
    d2.add(m2 * m2 - full * full);
  }
  return {Method::pixel_flip, d1.estimate(), d2.estimate()};
}

/// Loss increase from an actual Fisher-Yates shuffle of each column.
inline EmpiricalAttribution est_pfi(const GenParams& p,
                                    const EstimatorConfig& cfg) {
  cfg.validate();
  p.require_base_model("est_pfi");
  const BayesLinearRule rule = bayes_rule(p);
  CounterRng rng = detail::stream(cfg, detail::kStreamPfi);
  std::vector<double> x1, x2;
  std::vector<int> y;
  x1.reserve(cfg.n_loss);
  x2.reserve(cfg.n_loss);
  y.reserve(cfg.n_loss);
  for (std::size_t i = 0; i < cfg.n_loss; ++i) {
    const LabeledRecord r = detail::sample_record(p, rng, i);
    x1.push_back(r.x1);
    x2.push_back(r.x2);
    y.push_back(r.y);
  }
  std::vector<double> p1 = x1, p2 = x2;
  CounterRng shuffle_rng = detail::stream(cfg, detail::kStreamPfi, 0xfeed);
  detail::fisher_yates(p1, shuffle_rng);
  detail::fisher_yates(p2, shuffle_rng);
  detail::MeanAcc d1, d2;
  for (std::size_t i = 0; i < cfg.n_loss; ++i) {
    const double base = y[i] - rule.value({x1[i], x2[i]});
    const double l1 = y[i] - rule.value({p1[i], x2[i]});
    const double l2 = y[i] - rule.value({x1[i], p2[i]});
    d1.add(l1 * l1 - base * base);
    d2.add(l2 * l2 - base * base);
  }
  return {Method::pfi, d1.estimate(), d2.estimate()};
}

/// Plain loss (not a difference) after permuting the columns in `permuted`.
inline Estimate est_pfi_permuted_loss(const GenParams& p,
                                      const EstimatorConfig& cfg,
                                      FeatureSet permuted) {
  cfg.validate();
  p.require_base_model("est_pfi_permuted_loss");
  const BayesLinearRule rule = bayes_rule(p);
  CounterRng rng = detail::stream(cfg, detail::kStreamPfi, 0xb07);
  std::vector<double> x1, x2;
  std::vector<int> y;
  for (std::size_t i = 0; i < cfg.n_loss; ++i) {
    const LabeledRecord r = detail::sample_record(p, rng, i);
    x1.push_back(r.x1);
    x2.push_back(r.x2);
    y.push_back(r.y);
  }
  CounterRng shuffle_rng = detail::stream(cfg, detail::kStreamPfi, 0xb07 + 1);
  if (permuted.f1) detail::fisher_yates(x1, shuffle_rng);
  if (permuted.f2) detail::fisher_yates(x2, shuffle_rng);
  detail::MeanAcc acc;
  for (std::size_t i = 0; i < cfg.n_loss; ++i) {
    const double e = y[i] - rule.value({x1[i], x2[i]});
    acc.add(e * e);
  }
  return acc.estimate();
}

// ---------------------------------------------------------------------------
// Expectation-curve estimators
// ---------------------------------------------------------------------------

/// Empirical partial dependence: average f with the feature of interest
/// pinned and the complement drawn from its marginal.
inline Estimate est_pd(const GenParams& p, const EstimatorConfig& cfg,
                       int feature, double value) {
  cfg.validate();
  p.require_base_model("est_pd");
  if (feature != 1 && feature != 2) {
    throw std::invalid_argument("feature index must be 1 or 2");
  }
  const BayesLinearRule rule = bayes_rule(p);
  CounterRng rng = detail::stream(cfg, detail::kStreamPd,
                                  static_cast<std::uint64_t>(feature));
  detail::MeanAcc acc;
  for (std::size_t i = 0; i < cfg.n_moment; ++i) {
    const LabeledRecord r = detail::sample_record(p, rng, i);
    const Point x = feature == 1 ? Point{value, r.x2} : Point{r.x1, value};
    acc.add(rule.value(x));
  }
  return acc.estimate();
}

struct BinnedEstimate {
  Estimate estimate;
  std::size_t n_accepted = 0;
};

/// Binned conditional mean of f given x_feature in [value +- bin_width/2],
/// rejection-sampled from the joint.
inline BinnedEstimate est_mplot(const GenParams& p, const EstimatorConfig& cfg,
                                int feature, double value) {
  cfg.validate();
  p.require_base_model("est_mplot");
  if (feature != 1 && feature != 2) {
    throw std::invalid_argument("feature index must be 1 or 2");
  }
  const BayesLinearRule rule = bayes_rule(p);
  CounterRng rng = detail::stream(cfg, detail::kStreamMplot,
                                  static_cast<std::uint64_t>(feature));
  detail::MeanAcc acc;
  const double half = 0.5 * cfg.bin_width;
  for (std::size_t i = 0; i < cfg.n_moment; ++i) {
    const LabeledRecord r = detail::sample_record(p, rng, i);
    const double coord = feature == 1 ? r.x1 : r.x2;
    if (std::abs(coord - value) <= half) {
      acc.add(rule.value({r.x1, r.x2}));
    }
  }
  return {acc.estimate(), acc.n};
}

// ---------------------------------------------------------------------------
// Shapley enumeration
// ---------------------------------------------------------------------------

enum class ShapleyValueFunction {
  r2_three_model,
  r2_single,
  marginal,
  conditional,
};

/// Explicit two-feature Shapley sum (gamma weights all 1/2, v(empty) = 0)
/// under the chosen value function. R^2 value functions are analytic and the
/// result is exact; marginal/conditional expectations are estimated by
/// Monte-Carlo / rejection sampling.
inline EmpiricalAttribution est_shapley(const GenParams& p,
                                        const EstimatorConfig& cfg,
                                        ShapleyValueFunction vf,
                                        std::optional<Point> x = std::nullopt) {
  cfg.validate();
  p.require_base_model("est_shapley");
  const BayesLinearRule rule = bayes_rule(p);

  const auto assemble = [](Method m, Estimate v1, Estimate v2, Estimate v12,
                           std::optional<Point> locus) {
    // e1 = 1/2 (v{1} - v0) + 1/2 (v{12} - v{2}), v0 = 0; same with 1<->2.
    const auto half_se = [](double a, double b) {
      return 0.5 * std::sqrt(a * a + b * b);
    };
    EmpiricalAttribution out{m,
                             {0.5 * v1.value + 0.5 * (v12.value - v2.value),
                              half_se(v1.std_error, v2.std_error)},
                             {0.5 * v2.value + 0.5 * (v12.value - v1.value),
                              half_se(v1.std_error, v2.std_error)},
                             false,
                             locus};
    return out;
  };

  switch (vf) {
    case ShapleyValueFunction::r2_three_model: {
      const double rho1 = 1.0 / std::sqrt(p.s1 * p.s1 + 1.0);
      return assemble(Method::shapley_r2_three_model, {1.0 * rho1, 0.0},
                      {0.0, 0.0}, {rule.w1 * rho1, 0.0}, std::nullopt);
    }
    case ShapleyValueFunction::r2_single: {
      const double rho1 = 1.0 / std::sqrt(p.s1 * p.s1 + 1.0);
      return assemble(Method::shapley_r2_single_model, {rule.w1 * rho1, 0.0},
                      {rule.w2 * 0.0, 0.0},
                      {rule.w1 * rho1 + rule.w2 * 0.0, 0.0}, std::nullopt);
    }
    case ShapleyValueFunction::marginal: {
      if (!x) throw std::invalid_argument("marginal Shapley needs an instance");
      const Estimate g1 = est_pd(p, cfg, 1, x->x1);
      const Estimate g2 = est_pd(p, cfg, 2, x->x2);
      return assemble(Method::shap_marginal, g1, g2, {rule.value(*x), 0.0}, x);
    }
    case ShapleyValueFunction::conditional: {
      if (!x) throw std::invalid_argument("conditional Shapley needs an instance");
      const BinnedEstimate g1 = est_mplot(p, cfg, 1, x->x1);
      const BinnedEstimate g2 = est_mplot(p, cfg, 2, x->x2);
      EmpiricalAttribution out =
          assemble(Method::shap_conditional, g1.estimate, g2.estimate,
                   {rule.value(*x), 0.0}, x);
      out.low_sample_warning = g1.n_accepted < 100 || g2.n_accepted < 100;
      return out;
    }
  }
  throw std::invalid_argument("unknown value function");
}

// ---------------------------------------------------------------------------
// Path, boundary, variance, surrogate estimators
// ---------------------------------------------------------------------------

/// Trapezoid quadrature of the path integral along the straight line from
/// baseline to x. The integrand (the rule's gradient) is constant, so the
/// quadrature is exact up to rounding.
inline EmpiricalAttribution est_integrated_gradients(const BayesLinearRule& rule,
                                                     Point x, Point baseline,
                                                     const EstimatorConfig& cfg) {
  cfg.validate();
  if (x.x1 == baseline.x1 && x.x2 == baseline.x2) {
    throw std::invalid_argument(
        "integrated gradients: baseline must differ from the instance");
  }
  const double i1 =
      trapezoid([&](double) { return rule.w1; }, 0.0, 1.0, cfg.quadrature_nodes);
  const double i2 =
      trapezoid([&](double) { return rule.w2; }, 0.0, 1.0, cfg.quadrature_nodes);
  return {Method::integrated_gradients,
          {(x.x1 - baseline.x1) * i1, 0.0},
          {(x.x2 - baseline.x2) * i2, 0.0},
          false,
          x};
}

/// Quadratic-penalty minimization of ||x - xi||^2 + lambda f(x)^2 with a
/// geometric lambda schedule. Each subproblem is quadratic, so a single
/// generic dense Newton step solves it exactly; the loop stops early once
/// |f(x)| drops below 1e-8.
inline CounterfactualResult est_counterfactual(const BayesLinearRule& rule,
                                               Point xi,
                                               const EstimatorConfig& cfg) {
  cfg.validate();
  Point x = xi;
  const double stop = 1e-8;
  for (double lambda = 1.0; lambda <= 1e8; lambda *= 10.0) {
    // (I + lambda w w') x = xi - lambda b w
    const std::array<std::array<double, 2>, 2> a{
        {{1.0 + lambda * rule.w1 * rule.w1, lambda * rule.w1 * rule.w2},
         {lambda * rule.w1 * rule.w2, 1.0 + lambda * rule.w2 * rule.w2}}};
    const std::array<double, 2> rhs{xi.x1 - lambda * rule.b * rule.w1,
                                    xi.x2 - lambda * rule.b * rule.w2};
    const auto sol = detail::solve_dense<2>(a, rhs);
    x = {sol[0], sol[1]};
    if (std::abs(rule.value(x)) < stop) break;
  }
  const Point delta{xi.x1 - x.x1, xi.x2 - x.x2};
  return {x, std::hypot(delta.x1, delta.x2), delta};
}

/// Binned estimate of sqrt(Var(E[f | X_j])): bin the conditioning feature,
/// average f per bin, take the mass-weighted variance of bin means.
inline EmpiricalAttribution est_firm(const GenParams& p,
                                     const EstimatorConfig& cfg) {
  cfg.validate();
  p.require_base_model("est_firm");
  const BayesLinearRule rule = bayes_rule(p);

  const auto one_feature = [&](int feature) {
    CounterRng rng = detail::stream(cfg, detail::kStreamFirm,
                                    static_cast<std::uint64_t>(feature));
    std::vector<double> coord(cfg.n_moment), f(cfg.n_moment);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cfg.n_moment; ++i) {
      const LabeledRecord r = detail::sample_record(p, rng, i);
      coord[i] = feature == 1 ? r.x1 : r.x2;
      f[i] = rule.value({r.x1, r.x2});
      lo = std::min(lo, coord[i]);
      hi = std::max(hi, coord[i]);
    }
    const std::size_t n_bins = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil((hi - lo) / cfg.bin_width)));
    std::vector<detail::MeanAcc> bins(n_bins);
    for (std::size_t i = 0; i < cfg.n_moment; ++i) {
      auto idx = static_cast<std::size_t>((coord[i] - lo) / cfg.bin_width);
      if (idx >= n_bins) idx = n_bins - 1;
      bins[idx].add(f[i]);
    }
    double grand = 0.0;
    for (const auto& b : bins) grand += b.mean * static_cast<double>(b.n);
    grand /= static_cast<double>(cfg.n_moment);
    // Between-bin variance minus the within-bin sampling noise of the bin
    // means (the usual ANOVA correction); without it the estimate is biased
    // upward by Var(f|bin) * n_bins / n.
    double var = 0.0;
    for (const auto& b : bins) {
      if (b.n == 0) continue;
      const double w = static_cast<double>(b.n) / static_cast<double>(cfg.n_moment);
      var += w * (b.mean - grand) * (b.mean - grand);
      var -= w * b.variance() / static_cast<double>(b.n);
    }
    return std::sqrt(std::max(var, 0.0));
  };

  EmpiricalAttribution out{Method::firm,
                           {one_feature(1), std::numeric_limits<double>::quiet_NaN()},
                           {one_feature(2), std::numeric_limits<double>::quiet_NaN()}};
  return out;
}

/// Local linear surrogate: sample around xi from N(xi, I), weight by
/// exp(-||x - xi||^2 / width^2), fit weighted least squares, return the
/// slope coefficients.
inline EmpiricalAttribution est_lime(const BayesLinearRule& rule, Point xi,
                                     const EstimatorConfig& cfg) {
  cfg.validate();
  CounterRng rng = detail::stream(cfg, detail::kStreamLime);
  const double wsq = cfg.lime_kernel_width * cfg.lime_kernel_width;
  // Weighted normal equations for [1, x1, x2].
  std::array<std::array<double, 3>, 3> ata{};
  std::array<double, 3> atb{};
  for (std::size_t i = 0; i < cfg.lime_n; ++i) {
    const auto [g1, g2] = rng.next_normal_pair();
    const Point x{xi.x1 + g1, xi.x2 + g2};
    const double dsq = g1 * g1 + g2 * g2;
    const double w = std::exp(-dsq / wsq);
    const std::array<double, 3> row{1.0, x.x1, x.x2};
    const double target = rule.value(x);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) ata[r][c] += w * row[r] * row[c];
      atb[r] += w * row[r] * target;
    }
  }
  const auto coef = detail::solve_dense<3>(ata, atb);
  return {Method::lime,
          {coef[1], std::numeric_limits<double>::quiet_NaN()},
          {coef[2], std::numeric_limits<double>::quiet_NaN()},
          false,
          xi};
}

inline double cosine_similarity(Point a, Point b) {
  const double na = std::hypot(a.x1, a.x2);
  const double nb = std::hypot(b.x1, b.x2);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return (a.x1 * b.x1 + a.x2 * b.x2) / (na * nb);
}

}  // namespace suppressor_lab
