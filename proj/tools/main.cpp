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
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "suppressor_lab/acceptance.hpp"
#include "suppressor_lab/analytic.hpp"
#include "suppressor_lab/dataset.hpp"
#include "suppressor_lab/estimators.hpp"
#include "suppressor_lab/harness.hpp"

namespace {

using namespace suppressor_lab;

// Exit codes: 0 success, 1 verification failure, 2 usage/parameter error,
// 3 numerical failure.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

/// Writes to the named file, or to stdout when no path is given. Data goes to
/// this stream only; logs go to stderr.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct ParamFlags {
  double c = 0.0;
  double s1sq = 1.0;
  double s2sq = 1.0;
  double epsilon = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--c", c, "noise correlation in [-1, 1]")->required();
    cmd->add_option("--s1sq", s1sq, "noise variance of feature 1")->required();
    cmd->add_option("--s2sq", s2sq, "noise variance of feature 2")->required();
    cmd->add_option("--epsilon", epsilon, "signal leakage into feature 2");
  }
  GenParams params() const {
    return GenParams::from_variances(c, s1sq, s2sq, epsilon);
  }
};

nlohmann::json attribution_json(const Attribution& a) {
  nlohmann::json j;
  j["method"] = std::string(method_name(a.method));
  j["scope"] = a.scope == Scope::global ? "global" : "local";
  j["source"] = a.source == Source::analytic ? "analytic" : "empirical";
  j["e1"] = a.e1;
  j["e2"] = a.e2;
  if (a.locus) j["instance"] = {a.locus->x1, a.locus->x2};
  return j;
}

int run_eval(const ParamFlags& pf, const std::string& method_str,
             std::optional<double> x1, std::optional<double> x2,
             double baseline_x1, double baseline_x2, OutputSink& sink) {
  const GenParams p = pf.params();
  const BayesLinearRule rule = bayes_rule(p);
  const Method method = method_from_name(method_str);

  const auto need_instance = [&]() -> Point {
    if (!x1 || !x2) {
      throw std::invalid_argument("method '" + method_str +
                                  "' needs --x1 and --x2");
    }
    return {*x1, *x2};
  };

  nlohmann::json j;
  switch (method) {
    case Method::gradient:
      j = attribution_json(gradient_attrib(rule));
      break;
    case Method::pattern: {
      j = attribution_json(pattern_attrib(p));
      const Attribution route = pattern_marginal_covariance(p);
      j["marginal_route_e1"] = route.e1;
      j["marginal_route_e2"] = route.e2;
      break;
    }
    case Method::pixel_flip:
      j = attribution_json(pixel_flip_attrib(p));
      break;
    case Method::pfi:
      j = attribution_json(pfi_attrib(p));
      break;
    case Method::pd: {
      const Point x = need_instance();
      j = attribution_json(make_analytic(Method::pd, pd_function(p, 1, x.x1),
                                         pd_function(p, 2, x.x2), x));
      break;
    }
    case Method::mplot: {
      const Point x = need_instance();
      j = attribution_json(make_analytic(Method::mplot,
                                         mplot_function(p, 1, x.x1),
                                         mplot_function(p, 2, x.x2), x));
      break;
    }
    case Method::shapley_r2_three_model:
      j = attribution_json(shapley_r2_three_model(p));
      break;
    case Method::shapley_r2_single_model:
      j = attribution_json(shapley_r2_single_model(p));
      break;
    case Method::shap_marginal:
      j = attribution_json(shap_marginal(p, need_instance()));
      break;
    case Method::shap_conditional:
      j = attribution_json(shap_conditional(p, need_instance()));
      break;
    case Method::counterfactual: {
      const Point xi = need_instance();
      const CounterfactualResult cf = counterfactual_closest(rule, xi);
      j["method"] = "counterfactual";
      j["scope"] = "local";
      j["source"] = "analytic";
      j["instance"] = {xi.x1, xi.x2};
      j["x_star"] = {cf.x_star.x1, cf.x_star.x2};
      j["distance"] = cf.distance;
      j["delta"] = {cf.delta.x1, cf.delta.x2};
      const Point printed = counterfactual_paper_printed(p, xi);
      j["printed_form_x_star"] = {printed.x1, printed.x2};
      break;
    }
    case Method::integrated_gradients: {
      const Point x = need_instance();
      const Point baseline{baseline_x1, baseline_x2};
      j = attribution_json(integrated_gradients_linear(rule, x, baseline));
      const Attribution printed =
          integrated_gradients_paper_printed(p, x, baseline);
      j["printed_form_e1"] = printed.e1;
      j["printed_form_e2"] = printed.e2;
      break;
    }
    case Method::firm:
      j = attribution_json(firm_attrib(p));
      j["lower_bound"] = firm_lower_bound(p);
      break;
    case Method::pattern_attribution:
      j = attribution_json(pattern_attribution_dtd(p, rule));
      break;
    case Method::lime: {
      const Point dir = lime_reference_direction(rule);
      j["method"] = "lime";
      j["scope"] = "local";
      j["source"] = "analytic";
      j["direction"] = {dir.x1, dir.x2};
      break;
    }
  }
  sink.stream() << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "suppressor-lab: analytic vs. empirical feature-attribution behavior "
      "on a two-feature Gaussian classification problem with a suppressor "
      "variable"};
  app.require_subcommand(1);

  std::uint64_t seed = kDefaultSeed;
  app.add_option("--seed", seed, "random seed (64-bit)")
      ->envname("SUPPRESSOR_LAB_SEED");

  // --- sample ---------------------------------------------------------------
  auto* sample_cmd =
      app.add_subcommand("sample", "draw a labeled dataset, write x1,x2,y CSV");
  ParamFlags sample_pf;
  sample_pf.attach(sample_cmd);
  std::size_t sample_n = 1000;
  std::string sample_out;
  sample_cmd->add_option("--n", sample_n, "number of records")->required();
  sample_cmd->add_option("--out", sample_out, "output file (default stdout)");

  // --- eval -----------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand(
      "eval", "evaluate one method's closed form, print JSON");
  ParamFlags eval_pf;
  eval_pf.attach(eval_cmd);
  std::string eval_method;
  std::optional<double> eval_x1, eval_x2;
  double eval_bx1 = 0.0, eval_bx2 = 0.0;
  std::string eval_out;
  eval_cmd->add_option("--method", eval_method, "method name")->required();
  eval_cmd->add_option("--x1", eval_x1, "instance x1 (local methods)");
  eval_cmd->add_option("--x2", eval_x2, "instance x2 (local methods)");
  eval_cmd->add_option("--baseline-x1", eval_bx1, "integrated-gradients baseline x1");
  eval_cmd->add_option("--baseline-x2", eval_bx2, "integrated-gradients baseline x2");
  eval_cmd->add_option("--out", eval_out, "output file (default stdout)");

  // --- sweep ------------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "differential analytic-vs-empirical sweep over a parameter grid");
  std::string sweep_grid = "default";
  std::vector<double> sweep_c, sweep_s1sq, sweep_s2sq;
  double sweep_epsilon = 0.0;
  bool sweep_quick = false;
  std::string sweep_format = "csv", sweep_out;
  sweep_cmd->add_option("--grid", sweep_grid, "'default' or 'custom'");
  sweep_cmd->add_option("--c-values", sweep_c, "custom grid: c values");
  sweep_cmd->add_option("--s1sq-values", sweep_s1sq, "custom grid: s1^2 values");
  sweep_cmd->add_option("--s2sq-values", sweep_s2sq, "custom grid: s2^2 values");
  sweep_cmd->add_option("--epsilon", sweep_epsilon, "signal leakage");
  sweep_cmd->add_flag("--quick", sweep_quick,
                      "10x fewer samples, sqrt(10)x wider absolute tolerances");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");

  // --- figure ------------------------------------------------------------------
  auto* figure_cmd =
      app.add_subcommand("figure", "emit plot data for one figure as CSV");
  std::string figure_id, figure_out;
  std::vector<double> figure_family;
  std::size_t figure_n = 1000;
  figure_cmd
      ->add_option("--id", figure_id,
                   "one of fig2, fig3, fig4, fig5, figA6, figA7")
      ->required();
  figure_cmd->add_option("--s1sq-family", figure_family,
                         "s1^2 curve family (fig3/figA6/figA7)");
  figure_cmd->add_option("--n", figure_n, "scatter sample count");
  figure_cmd->add_option("--out", figure_out, "output file (default stdout)");

  // --- verify ---------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify", "run the acceptance criteria; exit 0 iff all pass");
  bool verify_quick = false;
  std::string verify_out;
  verify_cmd->add_flag("--quick", verify_quick, "reduced sample counts");
  verify_cmd->add_option("--out", verify_out, "write criteria JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample_cmd) {
      const GenParams p = sample_pf.params();
      const LabeledDataset ds = sample_dataset(p, sample_n, seed);
      OutputSink sink(sample_out);
      write_dataset_csv(ds, sink.stream());
      return kExitOk;
    }

    if (*eval_cmd) {
      OutputSink sink(eval_out);
      return run_eval(eval_pf, eval_method, eval_x1, eval_x2, eval_bx1,
                      eval_bx2, sink);
    }

    if (*sweep_cmd) {
      SweepGrid grid = SweepGrid::default_grid(seed);
      if (sweep_grid == "custom") {
        if (!sweep_c.empty()) grid.c_values = sweep_c;
        if (!sweep_s1sq.empty()) grid.s1sq_values = sweep_s1sq;
        if (!sweep_s2sq.empty()) grid.s2sq_values = sweep_s2sq;
        grid.epsilon = sweep_epsilon;
      } else if (sweep_grid != "default") {
        throw std::invalid_argument("--grid must be 'default' or 'custom'");
      }
      EstimatorConfig cfg;
      cfg.seed = seed;
      if (sweep_quick) cfg = cfg.quick();
      std::cerr << "sweep: " << grid.c_values.size() << "x"
                << grid.s1sq_values.size() << "x" << grid.s2sq_values.size()
                << " grid, n_moment=" << cfg.n_moment << "\n";
      const SweepReport report = run_sweep(grid, cfg);
      OutputSink sink(sweep_out);
      if (sweep_format == "json") {
        sink.stream() << sweep_to_json(report).dump(2) << '\n';
      } else {
        write_csv(sweep_to_table(report), sink.stream());
      }
      return kExitOk;
    }

    if (*figure_cmd) {
      FigureOptions fopt;
      fopt.seed = seed;
      fopt.n_samples = figure_n;
      if (!figure_family.empty()) fopt.s1sq_family = figure_family;
      const Table t = emit_figure_data(figure_id_from_name(figure_id), fopt);
      OutputSink sink(figure_out);
      write_csv(t, sink.stream());
      return kExitOk;
    }

    if (*verify_cmd) {
      AcceptanceOptions opt;
      opt.quick = verify_quick;
      opt.seed = seed;
      std::cerr << "verify: running acceptance criteria ("
                << (verify_quick ? "quick" : "full") << " profile)\n";
      const std::vector<CriterionResult> results = run_acceptance(opt);
      print_acceptance(results, std::cout);
      if (!verify_out.empty()) {
        OutputSink sink(verify_out);
        sink.stream() << acceptance_to_json(results, opt).dump(2) << '\n';
      }
      return acceptance_passed(results) ? kExitOk : kExitVerifyFail;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
