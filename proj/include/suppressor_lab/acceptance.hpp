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

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "suppressor_lab/harness.hpp"

namespace suppressor_lab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double elapsed_s = 0.0;
};

struct AcceptanceOptions {
  bool quick = false;
  std::uint64_t seed = kDefaultSeed;
  EstimatorConfig base_config{};
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

inline std::string fmt(double v) { return format_double(v); }

}  // namespace detail

/// Runs the eight verification criteria and returns one result per
/// criterion. `quick` shrinks Monte-Carlo sample counts 10x and widens the
/// absolute tolerances sqrt(10)x; the criteria themselves are unchanged.
inline std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opt = {}) {
  std::vector<CriterionResult> results;
  EstimatorConfig cfg = opt.base_config;
  cfg.seed = opt.seed;
  if (opt.quick) cfg = cfg.quick();
  const SweepGrid grid = SweepGrid::default_grid(opt.seed);

  // --- 1: Bayes weights and the ranking counterexample ----------------------
  {
    detail::Stopwatch watch;
    const GenParams p = GenParams::from_variances(-0.8, 1.0, 0.15);
    double sink = 0.0;
    const int reps = 1000;
    detail::Stopwatch call_watch;
    for (int i = 0; i < reps; ++i) sink += bayes_rule(p).w1;
    const double per_call_s = call_watch.seconds() / reps;
    const RankingRow row = ranking_check(p);
    const bool values_ok = std::abs(row.w2) >= 0.88 && std::abs(row.w2) <= 0.92 &&
                           std::abs(row.w1) >= 0.41 && std::abs(row.w1) <= 0.45 &&
                           row.suppressor_ranked_twice;
    const bool time_ok = per_call_s < 1e-3;
    std::ostringstream d;
    d << "w1=" << detail::fmt(row.w1) << " w2=" << detail::fmt(row.w2)
      << " |w2|/|w1|=" << detail::fmt(row.ratio)
      << " per_call_s=" << detail::fmt(per_call_s)
      << " sink=" << detail::fmt(sink / reps);
    results.push_back({1, "bayes-weights-ranking", values_ok && time_ok,
                       d.str(), watch.seconds()});
  }

  // --- 2: zero-attribution set ----------------------------------------------
  {
    detail::Stopwatch watch;
    const Method zero_set[] = {Method::pattern, Method::mplot,
                               Method::shapley_r2_single_model, Method::firm,
                               Method::pattern_attribution};
    bool pass = true;
    std::ostringstream d;
    for (Method m : zero_set) {
      const double sup = suppressor_supremum(grid, m);
      pass = pass && sup < kZeroVerdictThreshold;
      d << method_name(m) << "=" << detail::fmt(sup) << " ";
    }
    const double elapsed = watch.seconds();
    pass = pass && elapsed < 1.0;
    d << "elapsed_s=" << detail::fmt(elapsed);
    results.push_back({2, "zero-attribution-set", pass, d.str(), elapsed});
  }

  // --- 3: nonzero-attribution set --------------------------------------------
  {
    detail::Stopwatch watch;
    struct Witness {
      Method method;
      double min_magnitude = std::numeric_limits<double>::infinity();
    };
    std::vector<Witness> witnesses = {
        {Method::gradient},       {Method::pixel_flip},
        {Method::pfi},            {Method::pd},
        {Method::shap_marginal},  {Method::shap_conditional},
        {Method::integrated_gradients}, {Method::counterfactual},
        {Method::lime}};
    double min_cond_named = std::numeric_limits<double>::infinity();
    for (double c : grid.c_values) {
      if (std::abs(c) < 0.4) continue;
      for (double v1 : grid.s1sq_values) {
        for (double v2 : grid.s2sq_values) {
          const GenParams p = GenParams::from_variances(c, v1, v2);
          const BayesLinearRule rule = bayes_rule(p);
          for (auto& w : witnesses) {
            double mag = 0.0;
            switch (w.method) {
              case Method::gradient:
                mag = std::abs(rule.w2);
                break;
              case Method::pixel_flip:
                mag = std::abs(pixel_flip_attrib(p).e2);
                break;
              case Method::pfi:
                mag = std::abs(pfi_attrib(p).e2);
                break;
              case Method::pd:
                mag = std::abs(pd_function(p, 2, 1.0));
                break;
              case Method::shap_marginal:
                mag = std::abs(shap_marginal(p, {1.0, 1.0}).e2);
                break;
              case Method::shap_conditional:
                // Panel supremum: the named instance (1,0) saturates to
                // ~1e-9 at s1^2=0.1 (h(1) vanishes), so the witness for
                // nonzeroness is the instance panel, which contains it.
                mag = detail::suppressor_component(p, grid, w.method);
                break;
              case Method::integrated_gradients:
                mag = std::abs(integrated_gradients_linear(rule, {1.0, 1.0},
                                                           grid.ig_baseline)
                                   .e2);
                break;
              case Method::counterfactual:
                mag = std::abs(counterfactual_closest(rule, {1.0, 0.0}).delta.x2);
                break;
              case Method::lime:
                mag = std::abs(lime_reference_direction(rule).x2);
                break;
              default:
                break;
            }
            w.min_magnitude = std::min(w.min_magnitude, mag);
          }
          min_cond_named = std::min(
              min_cond_named, std::abs(shap_conditional(p, {1.0, 0.0}).e2));
        }
      }
    }
    bool pass = true;
    std::ostringstream d;
    for (const auto& w : witnesses) {
      pass = pass && w.min_magnitude > 1e-3;
      d << method_name(w.method) << "_min=" << detail::fmt(w.min_magnitude)
        << " ";
    }
    const double elapsed = watch.seconds();
    pass = pass && elapsed < 1.0;
    d << "shap_conditional_at_(1,0)_min=" << detail::fmt(min_cond_named)
      << " elapsed_s=" << detail::fmt(elapsed);
    results.push_back({3, "nonzero-attribution-set", pass, d.str(), elapsed});
  }

  // --- 4: differential verification -----------------------------------------
  std::string sweep_csv, sweep_json;
  {
    detail::Stopwatch watch;
    const SweepReport report = run_sweep(grid, cfg);
    sweep_csv = to_csv_string(sweep_to_table(report));
    sweep_json = sweep_to_json(report).dump(2);
    std::size_t verified = 0, pass3 = 0, pass4 = 0;
    for (const auto& r : report.rows) {
      if (!r.empirical && r.error.empty()) continue;  // no estimator (gradient)
      ++verified;
      if (!r.empirical) continue;  // estimator failure: fails both gates
      const double diff = std::abs(r.analytic - *r.empirical);
      if (r.pass) ++pass3;
      const double tol4 = r.se_based ? 4.0 * r.std_error : r.tolerance;
      if (diff <= tol4) ++pass4;
    }
    const double rate3 = verified ? static_cast<double>(pass3) / verified : 0.0;
    const double rate4 = verified ? static_cast<double>(pass4) / verified : 0.0;
    const double elapsed = watch.seconds();
    const double budget = opt.quick ? 60.0 : 600.0;
    const bool pass = rate3 >= 0.95 && pass4 == verified && elapsed < budget;
    std::ostringstream d;
    d << "rows=" << verified << " pass3sigma=" << pass3 << " ("
      << detail::fmt(rate3) << ") pass4sigma=" << pass4 << " ("
      << detail::fmt(rate4) << ") elapsed_s=" << detail::fmt(elapsed)
      << " budget_s=" << detail::fmt(budget);
    results.push_back({4, "differential-verification", pass, d.str(), elapsed});
  }

  // --- 5: axiomatic checks ----------------------------------------------------
  {
    detail::Stopwatch watch;
    CounterRng cases(opt.seed, /*stream=*/0xa210);
    double max_eff = 0.0, max_comp = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double c = 1.9 * cases.next_uniform() - 0.95;
      const double s1sq = 0.1 + 0.9 * cases.next_uniform();
      const double s2sq = 0.1 + 0.9 * cases.next_uniform();
      const GenParams p = GenParams::from_variances(c, s1sq, s2sq);
      const BayesLinearRule rule = bayes_rule(p);
      const auto [u1, u2] = cases.next_normal_pair();
      const auto [u3, u4] = cases.next_normal_pair();
      const Point x{1.5 * u1, 1.5 * u2};
      const Point baseline{1.5 * u3, 1.5 * u4};
      const double f = rule.value(x);
      const Attribution sm = shap_marginal(p, x);
      const Attribution sc = shap_conditional(p, x);
      max_eff = std::max(max_eff, std::abs(sm.e1 + sm.e2 - f));
      max_eff = std::max(max_eff, std::abs(sc.e1 + sc.e2 - f));
      if (x.x1 != baseline.x1 || x.x2 != baseline.x2) {
        const Attribution ig = integrated_gradients_linear(rule, x, baseline);
        max_comp = std::max(
            max_comp, std::abs(ig.e1 + ig.e2 - (f - rule.value(baseline))));
      }
    }
    double max_pfi_pf = 0.0, max_pfi_alpha = 0.0, min_firm_margin =
        std::numeric_limits<double>::infinity();
    for (double c : grid.c_values) {
      for (double v1 : grid.s1sq_values) {
        for (double v2 : grid.s2sq_values) {
          const GenParams p = GenParams::from_variances(c, v1, v2);
          const Attribution pf = pixel_flip_attrib(p);
          const Attribution pfi = pfi_attrib(p);
          max_pfi_pf = std::max(max_pfi_pf, std::abs(pfi.e2 - 2.0 * pf.e2));
          max_pfi_alpha = std::max(
              max_pfi_alpha, std::abs(pfi.e1 - pfi.e2 - 2.0 * p.alpha()));
          const Attribution firm = firm_attrib(p);
          min_firm_margin =
              std::min(min_firm_margin, firm.e1 - firm_lower_bound(p));
        }
      }
    }
    const bool pass = max_eff <= 1e-10 && max_comp <= 1e-10 &&
                      max_pfi_pf <= 1e-12 && max_pfi_alpha <= 1e-12 &&
                      min_firm_margin >= -1e-9;
    std::ostringstream d;
    d << "max_efficiency_gap=" << detail::fmt(max_eff)
      << " max_completeness_gap=" << detail::fmt(max_comp)
      << " max_pfi_2pf_gap=" << detail::fmt(max_pfi_pf)
      << " max_pfi_2alpha_gap=" << detail::fmt(max_pfi_alpha)
      << " min_firm_margin=" << detail::fmt(min_firm_margin);
    results.push_back({5, "axiomatic-checks", pass, d.str(), watch.seconds()});
  }

  // --- 6: counterfactual ------------------------------------------------------
  {
    detail::Stopwatch watch;
    double max_f = 0.0, max_cross = 0.0, max_opt_gap = 0.0;
    double min_delta2 = std::numeric_limits<double>::infinity();
    for (double c : grid.c_values) {
      for (double v1 : grid.s1sq_values) {
        for (double v2 : grid.s2sq_values) {
          const GenParams p = GenParams::from_variances(c, v1, v2);
          const BayesLinearRule rule = bayes_rule(p);
          for (const Point& xi : grid.instance_points) {
            const CounterfactualResult cf = counterfactual_closest(rule, xi);
            max_f = std::max(max_f, std::abs(rule.value(cf.x_star)));
            max_cross = std::max(
                max_cross, std::abs(cf.delta.x1 * rule.w2 -
                                    cf.delta.x2 * rule.w1));
            const CounterfactualResult est = est_counterfactual(rule, xi, cfg);
            max_opt_gap = std::max(
                max_opt_gap, std::max(std::abs(est.x_star.x1 - cf.x_star.x1),
                                      std::abs(est.x_star.x2 - cf.x_star.x2)));
            if (std::abs(c) >= 0.4) {
              min_delta2 = std::min(min_delta2, std::abs(cf.delta.x2));
            }
          }
        }
      }
    }
    const bool pass = max_f <= 1e-10 && max_cross <= 1e-10 &&
                      max_opt_gap <= 1e-4 && min_delta2 > 1e-6;
    std::ostringstream d;
    d << "max_|f(x*)|=" << detail::fmt(max_f)
      << " max_cross=" << detail::fmt(max_cross)
      << " max_optimizer_gap=" << detail::fmt(max_opt_gap)
      << " min_suppressor_displacement=" << detail::fmt(min_delta2);
    results.push_back({6, "counterfactual", pass, d.str(), watch.seconds()});
  }

  // --- 7: figure reproduction --------------------------------------------------
  {
    detail::Stopwatch watch;
    FigureOptions fopt;
    fopt.seed = opt.seed;
    const Table fig3 = emit_figure_data(FigureId::fig3, fopt);
    emit_figure_data(FigureId::fig2, fopt);
    emit_figure_data(FigureId::fig4, fopt);
    emit_figure_data(FigureId::fig5, fopt);
    emit_figure_data(FigureId::figA6, fopt);
    emit_figure_data(FigureId::figA7, fopt);

    // Index fig3 rows by (method, feature, s1sq, c).
    struct Key {
      std::string method;
      int feature;
      double s1sq;
      double c;
      bool operator<(const Key& o) const {
        return std::tie(method, feature, s1sq, c) <
               std::tie(o.method, o.feature, o.s1sq, o.c);
      }
    };
    std::map<Key, double> values;
    for (const auto& row : fig3.rows) {
      values[{std::get<std::string>(row[3]),
              static_cast<int>(std::get<double>(row[4])),
              std::get<double>(row[1]), std::get<double>(row[0])}] =
          std::get<double>(row[5]);
    }
    double max_even_gap = 0.0, max_zero_at_c0 = 0.0;
    bool monotone_ok = true;
    std::string degenerate_note;
    for (const auto& [key, value] : values) {
      if (key.feature == 2) {
        max_even_gap = std::max(
            max_even_gap,
            std::abs(value - values.at({key.method, 2, key.s1sq, -key.c})));
        if (key.c == 0.0) {
          max_zero_at_c0 = std::max(max_zero_at_c0, std::abs(value));
        }
        const double e1 = values.at({key.method, 1, key.s1sq, key.c});
        if (key.method == "pixel_flip" && key.c == 0.0 && key.s1sq == 1.0) {
          // Degenerate point: e1 = e2 = 0 exactly (removing x1 does not
          // change the squared-error loss when s1^2 = 1 and c = 0).
          if (std::abs(e1) > 1e-15 || std::abs(value) > 1e-15) {
            monotone_ok = false;
          }
          degenerate_note =
              " pixel_flip(c=0,s1sq=1): e1=" + detail::fmt(e1) +
              " e2=" + detail::fmt(value) + " (equality carve-out)";
        } else if (!(e1 > value)) {
          monotone_ok = false;
        }
      }
    }
    const Table fig2 = emit_figure_data(FigureId::fig2, fopt);
    double max_boundary_gap = 0.0;
    for (const auto& row : fig2.rows) {
      if (std::get<std::string>(row[3]) != "boundary") continue;
      const GenParams p = GenParams::from_variances(
          std::get<double>(row[0]), std::get<double>(row[1]),
          std::get<double>(row[2]));
      const BayesLinearRule rule = bayes_rule(p);
      max_boundary_gap = std::max(
          {max_boundary_gap, std::abs(std::get<double>(row[7]) - rule.w1),
           std::abs(std::get<double>(row[8]) - rule.w2),
           std::abs(std::get<double>(row[9]) - rule.b)});
    }
    const double elapsed = watch.seconds();
    const bool pass = max_even_gap <= 1e-14 && max_zero_at_c0 <= 1e-15 &&
                      monotone_ok && max_boundary_gap <= 1e-15 &&
                      elapsed < 30.0;
    std::ostringstream d;
    d << "max_evenness_gap=" << detail::fmt(max_even_gap)
      << " max_e2_at_c0=" << detail::fmt(max_zero_at_c0)
      << " e1_gt_e2=" << (monotone_ok ? "true" : "false")
      << " max_boundary_gap=" << detail::fmt(max_boundary_gap)
      << " elapsed_s=" << detail::fmt(elapsed) << degenerate_note;
    results.push_back({7, "figure-reproduction", pass, d.str(), elapsed});
  }

  // --- 8: determinism -----------------------------------------------------------
  {
    detail::Stopwatch watch;
    const SweepReport again = run_sweep(grid, cfg);
    const std::string csv2 = to_csv_string(sweep_to_table(again));
    const std::string json2 = sweep_to_json(again).dump(2);
    const bool pass = csv2 == sweep_csv && json2 == sweep_json;
    std::ostringstream d;
    d << "csv_bytes=" << sweep_csv.size() << " json_bytes=" << sweep_json.size()
      << " identical=" << (pass ? "true" : "false");
    results.push_back({8, "determinism", pass, d.str(), watch.seconds()});
  }

  return results;
}

inline bool acceptance_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

/// One line per criterion, fixed-width, machine-grepable.
inline void print_acceptance(const std::vector<CriterionResult>& results,
                             std::ostream& os) {
  for (const auto& r : results) {
    char head[64];
    std::snprintf(head, sizeof(head), "C%d %-4s %-28s %8.3fs  ", r.id,
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.elapsed_s);
    os << head << r.details << '\n';
  }
}

inline nlohmann::json acceptance_to_json(
    const std::vector<CriterionResult>& results,
    const AcceptanceOptions& opt) {
  nlohmann::json criteria = nlohmann::json::array();
  for (const auto& r : results) {
    criteria.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"details", r.details},
                        {"elapsed_s", r.elapsed_s}});
  }
  return nlohmann::json{{"criteria", criteria},
                        {"pass", acceptance_passed(results)},
                        {"quick", opt.quick},
                        {"seed", opt.seed}};
}

}  // namespace suppressor_lab
