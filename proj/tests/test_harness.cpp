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

#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "suppressor_lab/harness.hpp"
#include "suppressor_lab/table.hpp"

namespace suppressor_lab {
namespace {

SweepGrid small_grid() {
  SweepGrid grid = SweepGrid::default_grid(5);
  grid.c_values = {0.0, 0.8};
  grid.s1sq_values = {0.8};
  grid.s2sq_values = {0.5};
  return grid;
}

EstimatorConfig small_config() {
  EstimatorConfig cfg;
  cfg.seed = 5;
  return cfg.quick().quick();  // 10^4 moment samples: fast unit runs
}

TEST(SweepGrid, DefaultShapeAndValidation) {
  const SweepGrid grid = SweepGrid::default_grid();
  EXPECT_EQ(grid.c_values.size(), 5u);
  EXPECT_EQ(grid.s1sq_values.size(), 4u);
  EXPECT_EQ(grid.s2sq_values.size(), 3u);
  EXPECT_EQ(grid.instance_points.size(), 16u);  // 6 fixed + 10 seeded
  grid.validate();

  SweepGrid bad = grid;
  bad.c_values = {2.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = grid;
  bad.c_values.clear();
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(RunSweep, CompletenessAndVerdicts) {
  const SweepReport report = run_sweep(small_grid(), small_config());

  // 15 methods x 2 features x 2 grid points, no per-row errors.
  EXPECT_EQ(report.rows.size(), 15u * 2u * 2u);
  std::set<std::pair<std::string, int>> seen;
  for (const auto& r : report.rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    seen.insert({std::string(method_name(r.method)), r.feature});
  }
  EXPECT_EQ(seen.size(), 30u);

  const std::set<Method> nullifying = {
      Method::pattern, Method::mplot, Method::shapley_r2_single_model,
      Method::firm, Method::pattern_attribution};
  for (const auto& [m, v] : report.verdicts) {
    if (nullifying.count(m)) {
      EXPECT_EQ(v, Verdict::suppressor_nullifying) << method_name(m);
    } else {
      EXPECT_EQ(v, Verdict::suppressor_attributing) << method_name(m);
    }
  }
}

TEST(RunSweep, AllSuppressorScoresVanishWithoutCorrelation) {
  SweepGrid grid = small_grid();
  grid.c_values = {0.0};
  const SweepReport report = run_sweep(grid, small_config());
  for (const auto& r : report.rows) {
    if (r.feature != 2) continue;
    EXPECT_LT(std::abs(r.analytic), 1e-10) << method_name(r.method);
    if (r.empirical) {
      EXPECT_TRUE(r.pass) << method_name(r.method) << ": " << *r.empirical;
    }
  }
}

TEST(RunSweep, DeterministicReports) {
  const SweepReport a = run_sweep(small_grid(), small_config());
  const SweepReport b = run_sweep(small_grid(), small_config());
  EXPECT_EQ(to_csv_string(sweep_to_table(a)), to_csv_string(sweep_to_table(b)));
  EXPECT_EQ(sweep_to_json(a).dump(), sweep_to_json(b).dump());
}

TEST(RunSweep, PassFlagsConsistentWithTolerances) {
  const SweepReport report = run_sweep(small_grid(), small_config());
  for (const auto& r : report.rows) {
    if (!r.empirical) continue;
    EXPECT_EQ(r.pass, std::abs(r.analytic - *r.empirical) <= r.tolerance)
        << method_name(r.method);
  }
}

TEST(RunSweep, PatternNoteSurfacesRouteDiscrepancy) {
  const SweepReport report = run_sweep(small_grid(), small_config());
  bool found = false;
  for (const auto& r : report.rows) {
    if (r.method == Method::pattern) {
      EXPECT_NE(r.note.find("marginal_route_e1"), std::string::npos);
      EXPECT_NE(r.note.find("printed_minus_route"), std::string::npos);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(SweepJson, SchemaSections) {
  const nlohmann::json j = sweep_to_json(run_sweep(small_grid(), small_config()));
  ASSERT_TRUE(j.contains("meta"));
  ASSERT_TRUE(j.contains("rows"));
  ASSERT_TRUE(j.contains("verdicts"));
  EXPECT_EQ(j["meta"]["seed"], 5);
  EXPECT_TRUE(j["meta"]["config"].contains("n_moment"));
  EXPECT_EQ(j["verdicts"]["pattern"], "suppressor-nullifying");
  EXPECT_EQ(j["verdicts"]["gradient"], "suppressor-attributing");
  EXPECT_EQ(j["rows"].size(), 60u);
}

TEST(FigureData, Fig3InvariantsAndFamily) {
  FigureOptions opt;
  const Table t = emit_figure_data(FigureId::fig3, opt);
  ASSERT_EQ(t.columns.size(), 6u);
  EXPECT_EQ(t.columns[0], "c");
  EXPECT_EQ(t.columns[3], "method");

  std::map<std::tuple<std::string, int, double, double>, double> values;
  for (const auto& row : t.rows) {
    values[{std::get<std::string>(row[3]),
            static_cast<int>(std::get<double>(row[4])),
            std::get<double>(row[1]), std::get<double>(row[0])}] =
        std::get<double>(row[5]);
  }
  // PFI e1 column equals 2 at c = 0 for every s1^2 in the family.
  for (double s1sq : opt.s1sq_family) {
    EXPECT_DOUBLE_EQ((values.at({"pfi", 1, s1sq, 0.0})), 2.0);
    EXPECT_DOUBLE_EQ((values.at({"pfi", 2, s1sq, 0.0})), 0.0);
    // Evenness in c for the suppressor columns.
    for (double c : {0.25, 0.5, 1.0}) {
      EXPECT_DOUBLE_EQ((values.at({"pfi", 2, s1sq, c})),
                       (values.at({"pfi", 2, s1sq, -c})));
      EXPECT_DOUBLE_EQ((values.at({"pixel_flip", 2, s1sq, c})),
                       (values.at({"pixel_flip", 2, s1sq, -c})));
    }
  }
  // Custom family flows through.
  FigureOptions custom;
  custom.s1sq_family = {0.2};
  const Table t2 = emit_figure_data(FigureId::fig3, custom);
  for (const auto& row : t2.rows) {
    EXPECT_DOUBLE_EQ(std::get<double>(row[1]), 0.2);
  }
}

TEST(FigureData, AppendixVariantsDifferOnlyInS2) {
  const Table a6 = emit_figure_data(FigureId::figA6);
  const Table a7 = emit_figure_data(FigureId::figA7);
  for (const auto& row : a6.rows) EXPECT_DOUBLE_EQ(std::get<double>(row[2]), 0.1);
  for (const auto& row : a7.rows) EXPECT_DOUBLE_EQ(std::get<double>(row[2]), 0.9);
}

TEST(FigureData, Fig2SamplesAndBoundaries) {
  FigureOptions opt;
  opt.n_samples = 50;
  const Table t = emit_figure_data(FigureId::fig2, opt);
  int samples = 0, boundaries = 0;
  for (const auto& row : t.rows) {
    const std::string kind = std::get<std::string>(row[3]);
    if (kind == "sample") {
      ++samples;
      EXPECT_TRUE(std::holds_alternative<double>(row[4]));
      EXPECT_TRUE(std::holds_alternative<std::monostate>(row[7]));
    } else {
      ASSERT_EQ(kind, "boundary");
      ++boundaries;
      const GenParams p = GenParams::from_variances(
          std::get<double>(row[0]), std::get<double>(row[1]),
          std::get<double>(row[2]));
      const BayesLinearRule rule = bayes_rule(p);
      EXPECT_DOUBLE_EQ(std::get<double>(row[7]), rule.w1);
      EXPECT_DOUBLE_EQ(std::get<double>(row[8]), rule.w2);
    }
  }
  EXPECT_EQ(samples, 3 * 50);
  EXPECT_EQ(boundaries, 3);
}

TEST(FigureData, Fig4SeriesShape) {
  FigureOptions opt;
  opt.n_samples = 20;
  opt.curve_steps = 10;
  const Table t = emit_figure_data(FigureId::fig4, opt);
  std::map<std::string, int> series_counts;
  for (const auto& row : t.rows) {
    ++series_counts[std::get<std::string>(row[4])];
  }
  EXPECT_EQ(series_counts["pd"], 3 * 2 * 11);
  EXPECT_EQ(series_counts["mplot"], 3 * 2 * 11);
  EXPECT_EQ(series_counts["prediction"], 3 * 2 * 20);
  // M-plot rows for the suppressor feature are identically zero.
  for (const auto& row : t.rows) {
    if (std::get<std::string>(row[4]) == "mplot" &&
        static_cast<int>(std::get<double>(row[3])) == 2) {
      EXPECT_NEAR(std::get<double>(row[6]), 0.0, 1e-14);
    }
  }
}

TEST(FigureData, Fig5DisplacementTouchesSuppressor) {
  const Table t = emit_figure_data(FigureId::fig5);
  std::map<std::string, Point> rows;
  for (const auto& row : t.rows) {
    rows[std::get<std::string>(row[3])] = {std::get<double>(row[4]),
                                           std::get<double>(row[5])};
  }
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(std::abs(rows.at("delta").x2), 1e-3);
  const GenParams p = GenParams::from_variances(0.8, 0.8, 0.5);
  EXPECT_NEAR(bayes_rule(p).value(rows.at("x_star")), 0.0, 1e-10);
}

TEST(FigureData, UnknownIdRejected) {
  EXPECT_THROW(figure_id_from_name("fig9"), std::invalid_argument);
}

TEST(RankingCheck, CounterexampleAndControls) {
  const RankingRow row =
      ranking_check(GenParams::from_variances(-0.8, 1.0, 0.15));
  EXPECT_NEAR(row.ratio, frozen::kRankingRatio, 1e-9);
  EXPECT_TRUE(row.suppressor_ranked_twice);

  const RankingRow c0 = ranking_check(GenParams::from_variances(0.0, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(c0.ratio, 0.0);
  EXPECT_FALSE(c0.suppressor_ranked_twice);

  // The flip needs small s2: at s2^2 = 1 the ratio is only |c| s1/s2 = 0.8.
  const RankingRow wide = ranking_check(GenParams::from_variances(-0.8, 1.0, 1.0));
  EXPECT_NEAR(wide.ratio, 0.8, 1e-12);
  EXPECT_FALSE(wide.suppressor_ranked_twice);
}

TEST(CsvWriter, Rfc4180Quoting) {
  Table t;
  t.columns = {"a", "b"};
  auto& row = t.add_row();
  row[0] = std::string("has,comma");
  row[1] = std::string("has\"quote");
  auto& row2 = t.add_row();
  row2[0] = 0.5;
  // row2[1] left empty
  EXPECT_EQ(to_csv_string(t), "a,b\n\"has,comma\",\"has\"\"quote\"\n0.5,\n");
}

TEST(SuppressorSupremum, LocalMethodsUsePanel) {
  const SweepGrid grid = SweepGrid::default_grid(3);
  EXPECT_LT(suppressor_supremum(grid, Method::mplot), 1e-10);
  EXPECT_GT(suppressor_supremum(grid, Method::shap_conditional), 1e-2);
  EXPECT_GT(suppressor_supremum(grid, Method::counterfactual), 1e-2);
}

}  // namespace
}  // namespace suppressor_lab
