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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "suppressor_lab/analytic.hpp"
#include "suppressor_lab/estimators.hpp"
#include "suppressor_lab/table.hpp"

namespace suppressor_lab {

/// Threshold separating exact-zero closed forms from genuinely nonzero ones.
inline constexpr double kZeroVerdictThreshold = 1e-10;

struct SweepGrid {
  std::vector<double> c_values{-0.8, -0.4, 0.0, 0.4, 0.8};
  std::vector<double> s1sq_values{0.1, 0.5, 0.8, 1.0};
  std::vector<double> s2sq_values{0.1, 0.5, 0.9};
  double epsilon = 0.0;
  /// Instance panel for local methods: fixed corners plus seeded random
  /// points. The panel witnesses nonzero suppressor attribution.
  std::vector<Point> instance_points;
  Point ig_baseline{0.0, 0.0};

  static SweepGrid default_grid(std::uint64_t seed = kDefaultSeed) {
    SweepGrid g;
    g.instance_points = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {1, 0}, {0, 1}};
    CounterRng rng(seed, /*stream=*/0x9a7e1);
    for (int i = 0; i < 10; ++i) {
      const auto [a, b] = rng.next_normal_pair();
      g.instance_points.push_back({a, b});
    }
    return g;
  }

  void validate() const {
    if (c_values.empty() || s1sq_values.empty() || s2sq_values.empty()) {
      throw std::invalid_argument("sweep grid must be non-empty");
    }
    for (double c : c_values) {
      for (double v1 : s1sq_values) {
        for (double v2 : s2sq_values) {
          GenParams::from_variances(c, v1, v2, epsilon);
        }
      }
    }
  }
};

struct SweepRow {
  GenParams params;
  Method method = Method::gradient;
  int feature = 1;
  std::optional<Point> at;
  double analytic = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> empirical;
  double std_error = std::numeric_limits<double>::quiet_NaN();
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  bool se_based = false;
  bool pass = true;
  std::string error;  ///< non-fatal estimator failure, recorded per row
  std::string note;   ///< diagnostics (printed-form values, bounds, cosine)
};

enum class Verdict { suppressor_attributing, suppressor_nullifying };

constexpr std::string_view verdict_name(Verdict v) {
  return v == Verdict::suppressor_nullifying ? "suppressor-nullifying"
                                             : "suppressor-attributing";
}

struct SweepReport {
  std::uint64_t seed = kDefaultSeed;
  EstimatorConfig config;
  SweepGrid grid;
  std::vector<SweepRow> rows;
  std::map<Method, Verdict> verdicts;
};

namespace detail {

/// Largest |e2|-like component a method assigns to the suppressor feature at
/// one grid point, maximized over the instance panel for local methods.
inline double suppressor_component(const GenParams& p, const SweepGrid& grid,
                                   Method m) {
  const BayesLinearRule rule = bayes_rule(p);
  switch (m) {
    case Method::gradient:
      return std::abs(rule.w2);
    case Method::pattern:
      return std::abs(pattern_attrib(p).e2);
    case Method::pixel_flip:
      return std::abs(pixel_flip_attrib(p).e2);
    case Method::pfi:
      return std::abs(pfi_attrib(p).e2);
    case Method::shapley_r2_three_model:
      return std::abs(shapley_r2_three_model(p).e2);
    case Method::shapley_r2_single_model:
      return std::abs(shapley_r2_single_model(p).e2);
    case Method::firm:
      return std::abs(firm_attrib(p).e2);
    case Method::pattern_attribution:
      return std::abs(pattern_attribution_dtd(p, rule).e2);
    case Method::lime:
      return std::abs(lime_reference_direction(rule).x2);
    default:
      break;
  }
  double sup = 0.0;
  for (const Point& x : grid.instance_points) {
    double v = 0.0;
    switch (m) {
      case Method::pd:
        v = std::abs(pd_function(p, 2, x.x2));
        break;
      case Method::mplot:
        v = std::abs(mplot_function(p, 2, x.x2));
        break;
      case Method::shap_marginal:
        v = std::abs(shap_marginal(p, x).e2);
        break;
      case Method::shap_conditional:
        v = std::abs(shap_conditional(p, x).e2);
        break;
      case Method::counterfactual:
        v = std::abs(counterfactual_closest(rule, x).delta.x2);
        break;
      case Method::integrated_gradients:
        if (x.x1 != grid.ig_baseline.x1 || x.x2 != grid.ig_baseline.x2) {
          v = std::abs(
              integrated_gradients_linear(rule, x, grid.ig_baseline).e2);
        }
        break;
      default:
        break;
    }
    sup = std::max(sup, v);
  }
  return sup;
}

inline std::string note_number(const char* label, double v) {
  return std::string(label) + "=" + format_double(v);
}

}  // namespace detail

/// Max over the grid (c != 0) of the analytic suppressor component; local
/// methods take the supremum over the instance panel.
inline double suppressor_supremum(const SweepGrid& grid, Method m) {
  double sup = 0.0;
  for (double c : grid.c_values) {
    if (c == 0.0) continue;
    for (double v1 : grid.s1sq_values) {
      for (double v2 : grid.s2sq_values) {
        const GenParams p = GenParams::from_variances(c, v1, v2, grid.epsilon);
        sup = std::max(sup, detail::suppressor_component(p, grid, m));
      }
    }
  }
  return sup;
}

/// Differentially verifies every method at every grid point: analytic value
/// next to its empirical estimate, a tolerance, and a pass flag; estimator
/// failures are recorded per row. Deterministic for a fixed seed.
inline SweepReport run_sweep(const SweepGrid& grid, const EstimatorConfig& cfg) {
  grid.validate();
  cfg.validate();
  SweepReport report;
  report.seed = cfg.seed;
  report.config = cfg;
  report.grid = grid;

  const Point x11{1.0, 1.0};  // canonical instance for pd/mplot/marginal/ig
  const Point x10{1.0, 0.0};  // canonical instance for conditional/cf/lime

  std::size_t grid_index = 0;
  for (double c : grid.c_values) {
    for (double v1 : grid.s1sq_values) {
      for (double v2 : grid.s2sq_values) {
        const GenParams p = GenParams::from_variances(c, v1, v2, grid.epsilon);
        const BayesLinearRule rule = bayes_rule(p);
        EstimatorConfig point_cfg = cfg;
        point_cfg.seed = derive_seed(cfg.seed, grid_index);

        struct MethodEval {
          Method method;
          Attribution analytic;
          std::optional<EmpiricalAttribution> empirical;
          bool se_based = false;
          double abs_tol = std::numeric_limits<double>::quiet_NaN();
          std::string note;
          std::string error;
        };
        std::vector<MethodEval> evals;

        const auto guarded = [&](MethodEval ev, auto&& estimator) {
          try {
            ev.empirical = estimator();
          } catch (const std::exception& e) {
            ev.error = e.what();
          }
          evals.push_back(std::move(ev));
        };

        // -- global methods ------------------------------------------------
        evals.push_back({Method::gradient, gradient_attrib(rule), std::nullopt,
                         false, std::numeric_limits<double>::quiet_NaN(),
                         "", ""});
        {
          MethodEval ev{Method::pattern, pattern_attrib(p)};
          ev.se_based = true;
          const Attribution route = pattern_marginal_covariance(p);
          ev.note = detail::note_number("marginal_route_e1", route.e1) + ";" +
                    detail::note_number("printed_minus_route",
                                        ev.analytic.e1 - route.e1);
          guarded(std::move(ev), [&] { return est_pattern(p, point_cfg); });
        }
        {
          MethodEval ev{Method::pixel_flip, pixel_flip_attrib(p)};
          ev.se_based = true;
          guarded(std::move(ev), [&] { return est_pixel_flip(p, point_cfg); });
        }
        {
          MethodEval ev{Method::pfi, pfi_attrib(p)};
          ev.se_based = true;
          guarded(std::move(ev), [&] { return est_pfi(p, point_cfg); });
        }
        {
          MethodEval ev{Method::shapley_r2_three_model,
                        shapley_r2_three_model(p)};
          ev.abs_tol = 1e-10;
          guarded(std::move(ev), [&] {
            return est_shapley(p, point_cfg,
                               ShapleyValueFunction::r2_three_model);
          });
        }
        {
          MethodEval ev{Method::shapley_r2_single_model,
                        shapley_r2_single_model(p)};
          ev.abs_tol = 1e-10;
          guarded(std::move(ev), [&] {
            return est_shapley(p, point_cfg, ShapleyValueFunction::r2_single);
          });
        }
        {
          MethodEval ev{Method::firm, firm_attrib(p)};
          ev.abs_tol = 0.02 * cfg.tolerance_scale;
          ev.note = detail::note_number("lower_bound", firm_lower_bound(p));
          guarded(std::move(ev), [&] { return est_firm(p, point_cfg); });
        }
        {
          MethodEval ev{Method::pattern_attribution,
                        pattern_attribution_dtd(p, rule)};
          ev.se_based = true;
          guarded(std::move(ev),
                  [&] { return est_pattern_attribution(p, point_cfg); });
        }

        // -- local methods at canonical instances ---------------------------
        {
          MethodEval ev{Method::pd,
                        make_analytic(Method::pd, pd_function(p, 1, x11.x1),
                                      pd_function(p, 2, x11.x2), x11)};
          ev.se_based = true;
          guarded(std::move(ev), [&] {
            return EmpiricalAttribution{Method::pd,
                                        est_pd(p, point_cfg, 1, x11.x1),
                                        est_pd(p, point_cfg, 2, x11.x2), false,
                                        x11};
          });
        }
        {
          MethodEval ev{Method::mplot,
                        make_analytic(Method::mplot,
                                      mplot_function(p, 1, x11.x1),
                                      mplot_function(p, 2, x11.x2), x11)};
          ev.se_based = true;
          guarded(std::move(ev), [&] {
            const BinnedEstimate b1 = est_mplot(p, point_cfg, 1, x11.x1);
            const BinnedEstimate b2 = est_mplot(p, point_cfg, 2, x11.x2);
            return EmpiricalAttribution{
                Method::mplot, b1.estimate, b2.estimate,
                b1.n_accepted < 100 || b2.n_accepted < 100, x11};
          });
        }
        {
          MethodEval ev{Method::shap_marginal, shap_marginal(p, x11)};
          ev.se_based = true;
          guarded(std::move(ev), [&] {
            return est_shapley(p, point_cfg, ShapleyValueFunction::marginal,
                               x11);
          });
        }
        {
          MethodEval ev{Method::shap_conditional, shap_conditional(p, x10)};
          ev.se_based = true;
          guarded(std::move(ev), [&] {
            return est_shapley(p, point_cfg, ShapleyValueFunction::conditional,
                               x10);
          });
        }
        {
          const CounterfactualResult cf = counterfactual_closest(rule, x10);
          MethodEval ev{Method::counterfactual,
                        make_analytic(Method::counterfactual, cf.delta.x1,
                                      cf.delta.x2, x10)};
          ev.abs_tol = 1e-4;
          const Point printed = counterfactual_paper_printed(p, x10);
          ev.note =
              detail::note_number("printed_x1", printed.x1) + ";" +
              detail::note_number("printed_x2", printed.x2) + ";" +
              detail::note_number("f_at_printed",
                                  rule.value(printed));
          guarded(std::move(ev), [&] {
            const CounterfactualResult e = est_counterfactual(rule, x10,
                                                              point_cfg);
            return EmpiricalAttribution{Method::counterfactual,
                                        {e.delta.x1, 0.0},
                                        {e.delta.x2, 0.0},
                                        false,
                                        x10};
          });
        }
        {
          MethodEval ev{Method::integrated_gradients,
                        integrated_gradients_linear(rule, x11,
                                                    grid.ig_baseline)};
          ev.abs_tol = 1e-10;
          const Attribution printed =
              integrated_gradients_paper_printed(p, x11, grid.ig_baseline);
          ev.note = detail::note_number("printed_e1", printed.e1) + ";" +
                    detail::note_number("printed_e2", printed.e2);
          guarded(std::move(ev), [&] {
            return est_integrated_gradients(rule, x11, grid.ig_baseline,
                                            point_cfg);
          });
        }
        {
          const Point dir = lime_reference_direction(rule);
          MethodEval ev{Method::lime,
                        make_analytic(Method::lime, dir.x1, dir.x2, x10)};
          ev.abs_tol = 0.02;
          guarded(std::move(ev), [&] {
            EmpiricalAttribution fit = est_lime(rule, x10, point_cfg);
            const double norm = std::hypot(fit.e1.value, fit.e2.value);
            EmpiricalAttribution unit = fit;
            if (norm > 0.0) {
              unit.e1.value /= norm;
              unit.e2.value /= norm;
            }
            return unit;
          });
        }
        // Records the cosine between the raw surrogate fit and w.
        for (auto& ev : evals) {
          if (ev.method == Method::lime && ev.empirical) {
            const double cosine = cosine_similarity(
                {ev.empirical->e1.value, ev.empirical->e2.value},
                {rule.w1, rule.w2});
            ev.note = detail::note_number("cosine", cosine);
          }
        }

        for (const auto& ev : evals) {
          for (int feature = 1; feature <= 2; ++feature) {
            SweepRow row;
            row.params = p;
            row.method = ev.method;
            row.feature = feature;
            row.at = ev.analytic.locus;
            row.analytic = ev.analytic.feature(feature);
            row.se_based = ev.se_based;
            row.note = ev.note;
            row.error = ev.error;
            if (ev.empirical) {
              const Estimate& est =
                  feature == 1 ? ev.empirical->e1 : ev.empirical->e2;
              row.empirical = est.value;
              row.std_error = est.std_error;
              row.tolerance = ev.se_based ? 3.0 * est.std_error : ev.abs_tol;
              row.pass = std::abs(row.analytic - *row.empirical) <=
                         row.tolerance;
            } else if (!ev.error.empty()) {
              row.pass = false;
            }
            report.rows.push_back(std::move(row));
          }
        }
        ++grid_index;
      }
    }
  }

  for (Method m : kAllMethods) {
    report.verdicts[m] = suppressor_supremum(grid, m) < kZeroVerdictThreshold
                             ? Verdict::suppressor_nullifying
                             : Verdict::suppressor_attributing;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline Table sweep_to_table(const SweepReport& report) {
  Table t;
  t.columns = {"c",         "s1sq",     "s2sq",      "epsilon", "method",
               "feature",   "x1",       "x2",        "analytic", "empirical",
               "std_error", "tolerance", "pass",     "error",   "note"};
  for (const auto& r : report.rows) {
    auto& row = t.add_row();
    row[0] = r.params.c;
    row[1] = r.params.s1 * r.params.s1;
    row[2] = r.params.s2 * r.params.s2;
    row[3] = r.params.epsilon;
    row[4] = std::string(method_name(r.method));
    row[5] = static_cast<double>(r.feature);
    if (r.at) {
      row[6] = r.at->x1;
      row[7] = r.at->x2;
    }
    row[8] = r.analytic;
    if (r.empirical) row[9] = *r.empirical;
    if (std::isfinite(r.std_error)) row[10] = r.std_error;
    if (std::isfinite(r.tolerance)) row[11] = r.tolerance;
    row[12] = std::string(r.pass ? "true" : "false");
    if (!r.error.empty()) row[13] = r.error;
    if (!r.note.empty()) row[14] = r.note;
  }
  return t;
}

inline nlohmann::json sweep_to_json(const SweepReport& report) {
  nlohmann::json meta;
  meta["seed"] = report.seed;
  meta["config"] = {{"n_moment", report.config.n_moment},
                    {"n_loss", report.config.n_loss},
                    {"bin_width", report.config.bin_width},
                    {"lime_kernel_width", report.config.lime_kernel_width},
                    {"lime_n", report.config.lime_n},
                    {"quadrature_nodes", report.config.quadrature_nodes},
                    {"tolerance_scale", report.config.tolerance_scale}};
  meta["grid"] = {{"c_values", report.grid.c_values},
                  {"s1sq_values", report.grid.s1sq_values},
                  {"s2sq_values", report.grid.s2sq_values},
                  {"epsilon", report.grid.epsilon}};

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json jr;
    jr["c"] = r.params.c;
    jr["s1sq"] = r.params.s1 * r.params.s1;
    jr["s2sq"] = r.params.s2 * r.params.s2;
    jr["epsilon"] = r.params.epsilon;
    jr["method"] = std::string(method_name(r.method));
    jr["feature"] = r.feature;
    if (r.at) jr["instance"] = {r.at->x1, r.at->x2};
    jr["analytic"] = r.analytic;
    if (r.empirical) jr["empirical"] = *r.empirical;
    if (std::isfinite(r.std_error)) jr["std_error"] = r.std_error;
    if (std::isfinite(r.tolerance)) jr["tolerance"] = r.tolerance;
    jr["pass"] = r.pass;
    if (!r.error.empty()) jr["error"] = r.error;
    if (!r.note.empty()) jr["note"] = r.note;
    rows.push_back(std::move(jr));
  }

  nlohmann::json verdicts;
  for (const auto& [m, v] : report.verdicts) {
    verdicts[std::string(method_name(m))] = std::string(verdict_name(v));
  }
  return nlohmann::json{{"meta", meta}, {"rows", rows}, {"verdicts", verdicts}};
}

// ---------------------------------------------------------------------------
// Figure data
// ---------------------------------------------------------------------------

enum class FigureId { fig2, fig3, fig4, fig5, figA6, figA7 };

inline FigureId figure_id_from_name(std::string_view name) {
  if (name == "fig2") return FigureId::fig2;
  if (name == "fig3") return FigureId::fig3;
  if (name == "fig4") return FigureId::fig4;
  if (name == "fig5") return FigureId::fig5;
  if (name == "figA6") return FigureId::figA6;
  if (name == "figA7") return FigureId::figA7;
  throw std::invalid_argument("unknown figure id: " + std::string(name));
}

struct FigureOptions {
  std::vector<double> s1sq_family{0.1, 0.3, 0.5, 0.8, 1.0};
  int c_half_steps = 40;          ///< c grid = {i/half : i in [-half, half]}
  std::size_t n_samples = 1000;   ///< scatter sample size
  std::uint64_t seed = kDefaultSeed;
  Point xi{1.0, 0.0};             ///< instance for the counterfactual figure
  double curve_half_range = 4.0;
  std::size_t curve_steps = 160;
};

namespace detail {

/// Exact-rational c grid: symmetric around 0 and containing 0 and +-1, so
/// evenness checks compare bit-identical parameter values.
inline std::vector<double> figure_c_grid(int half_steps) {
  std::vector<double> out;
  out.reserve(2 * half_steps + 1);
  for (int i = -half_steps; i <= half_steps; ++i) {
    out.push_back(static_cast<double>(i) / static_cast<double>(half_steps));
  }
  return out;
}

/// Pixel-flip / PFI importance curves. Evaluated from the closed forms in
/// alpha, c, s1, which stay finite at |c| = 1 where the covariance itself is
/// singular.
inline Table faithfulness_curves(double s2sq, const FigureOptions& opt) {
  Table t;
  t.columns = {"c", "s1sq", "s2sq", "method", "feature", "value"};
  for (double s1sq : opt.s1sq_family) {
    for (double c : figure_c_grid(opt.c_half_steps)) {
      const GenParams p = GenParams::from_variances(c, s1sq, s2sq);
      const double a = p.alpha();
      const double pf_e1 =
          2.0 * a - a * a + a * a * s1sq * (2.0 * c * c - 1.0);
      const double pf_e2 = a * a * c * c * s1sq;
      const Attribution pfi = pfi_attrib(p);
      const auto emit = [&](const char* method, int feature, double value) {
        auto& row = t.add_row();
        row[0] = c;
        row[1] = s1sq;
        row[2] = s2sq;
        row[3] = std::string(method);
        row[4] = static_cast<double>(feature);
        row[5] = value;
      };
      emit("pixel_flip", 1, pf_e1);
      emit("pixel_flip", 2, pf_e2);
      emit("pfi", 1, pfi.e1);
      emit("pfi", 2, pfi.e2);
    }
  }
  return t;
}

}  // namespace detail

/// Tidy long-format data behind each figure. Column orders are fixed and
/// documented in the README.
inline Table emit_figure_data(FigureId id, const FigureOptions& opt = {}) {
  const std::vector<double> fig2_c{0.8, 0.0, -0.8};
  const double fig2_s1sq = 0.8, fig2_s2sq = 0.5;

  switch (id) {
    case FigureId::fig3:
      return detail::faithfulness_curves(0.5, opt);
    case FigureId::figA6:
      return detail::faithfulness_curves(0.1, opt);
    case FigureId::figA7:
      return detail::faithfulness_curves(0.9, opt);

    case FigureId::fig2: {
      Table t;
      t.columns = {"c",  "s1sq", "s2sq", "kind", "x1",
                   "x2", "y",    "w1",   "w2",   "b"};
      for (double c : fig2_c) {
        const GenParams p = GenParams::from_variances(c, fig2_s1sq, fig2_s2sq);
        const LabeledDataset ds =
            sample_dataset(p, opt.n_samples, derive_seed(opt.seed, 2));
        for (const auto& r : ds.records) {
          auto& row = t.add_row();
          row[0] = c;
          row[1] = fig2_s1sq;
          row[2] = fig2_s2sq;
          row[3] = std::string("sample");
          row[4] = r.x1;
          row[5] = r.x2;
          row[6] = static_cast<double>(r.y);
        }
        const BayesLinearRule rule = bayes_rule(p);
        auto& row = t.add_row();
        row[0] = c;
        row[1] = fig2_s1sq;
        row[2] = fig2_s2sq;
        row[3] = std::string("boundary");
        row[7] = rule.w1;
        row[8] = rule.w2;
        row[9] = rule.b;
      }
      return t;
    }

    case FigureId::fig4: {
      Table t;
      t.columns = {"c", "s1sq", "s2sq", "feature", "series", "x", "value"};
      for (double c : fig2_c) {
        const GenParams p = GenParams::from_variances(c, fig2_s1sq, fig2_s2sq);
        const BayesLinearRule rule = bayes_rule(p);
        const auto emit = [&](int feature, const char* series, double x,
                              double value) {
          auto& row = t.add_row();
          row[0] = c;
          row[1] = fig2_s1sq;
          row[2] = fig2_s2sq;
          row[3] = static_cast<double>(feature);
          row[4] = std::string(series);
          row[5] = x;
          row[6] = value;
        };
        for (int feature : {1, 2}) {
          const double r = opt.curve_half_range;
          for (std::size_t i = 0; i <= opt.curve_steps; ++i) {
            const double x =
                -r + 2.0 * r * static_cast<double>(i) /
                         static_cast<double>(opt.curve_steps);
            emit(feature, "pd", x, pd_function(p, feature, x));
            emit(feature, "mplot", x, mplot_function(p, feature, x));
          }
        }
        const LabeledDataset ds =
            sample_dataset(p, opt.n_samples, derive_seed(opt.seed, 4));
        for (const auto& rec : ds.records) {
          const double f = rule.value({rec.x1, rec.x2});
          emit(1, "prediction", rec.x1, f);
          emit(2, "prediction", rec.x2, f);
        }
      }
      return t;
    }

    case FigureId::fig5: {
      Table t;
      t.columns = {"c", "s1sq", "s2sq", "label", "x1", "x2"};
      const GenParams p = GenParams::from_variances(0.8, fig2_s1sq, fig2_s2sq);
      const BayesLinearRule rule = bayes_rule(p);
      const CounterfactualResult cf = counterfactual_closest(rule, opt.xi);
      const auto emit = [&](const char* label, Point pt) {
        auto& row = t.add_row();
        row[0] = 0.8;
        row[1] = fig2_s1sq;
        row[2] = fig2_s2sq;
        row[3] = std::string(label);
        row[4] = pt.x1;
        row[5] = pt.x2;
      };
      emit("xi", opt.xi);
      emit("x_star", cf.x_star);
      emit("delta", cf.delta);
      return t;
    }
  }
  throw std::invalid_argument("unknown figure id");
}

// ---------------------------------------------------------------------------
// Ranking counterexample
// ---------------------------------------------------------------------------

struct RankingRow {
  double w1 = 0.0;
  double w2 = 0.0;
  double ratio = 0.0;  ///< |w2| / |w1|
  bool suppressor_ranked_twice = false;
};

/// Emits both weights and whether the suppressor weight exceeds twice the
/// class-dependent weight (the ranking counterexample setting is
/// c=-0.8, s1^2=1, s2^2=0.15).
inline RankingRow ranking_check(const GenParams& p) {
  const BayesLinearRule rule = bayes_rule(p);
  RankingRow row;
  row.w1 = rule.w1;
  row.w2 = rule.w2;
  row.ratio = std::abs(rule.w1) > 0.0
                  ? std::abs(rule.w2) / std::abs(rule.w1)
                  : std::numeric_limits<double>::infinity();
  row.suppressor_ranked_twice = std::abs(rule.w2) > 2.0 * std::abs(rule.w1);
  return row;
}

}  // namespace suppressor_lab
