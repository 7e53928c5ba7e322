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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "suppressor_lab/model.hpp"

namespace suppressor_lab {

/// The attribution methods under study. All but `lime` have closed forms;
/// LIME contributes only a reference direction (its quantitative content is
/// a proportionality statement, checked empirically).
enum class Method {
  gradient,
  pattern,
  pixel_flip,
  pfi,
  pd,
  mplot,
  shapley_r2_three_model,
  shapley_r2_single_model,
  shap_marginal,
  shap_conditional,
  counterfactual,
  integrated_gradients,
  firm,
  pattern_attribution,
  lime,
};

inline constexpr std::array<Method, 15> kAllMethods = {
    Method::gradient,
    Method::pattern,
    Method::pixel_flip,
    Method::pfi,
    Method::pd,
    Method::mplot,
    Method::shapley_r2_three_model,
    Method::shapley_r2_single_model,
    Method::shap_marginal,
    Method::shap_conditional,
    Method::counterfactual,
    Method::integrated_gradients,
    Method::firm,
    Method::pattern_attribution,
    Method::lime,
};

enum class Scope { global, local };
enum class Source { analytic, empirical };

constexpr Scope method_scope(Method m) {
  switch (m) {
    case Method::gradient:
    case Method::pattern:
    case Method::pixel_flip:
    case Method::pfi:
    case Method::shapley_r2_three_model:
    case Method::shapley_r2_single_model:
    case Method::firm:
    case Method::pattern_attribution:
      return Scope::global;
    default:
      return Scope::local;
  }
}

constexpr std::string_view method_name(Method m) {
  switch (m) {
    case Method::gradient: return "gradient";
    case Method::pattern: return "pattern";
    case Method::pixel_flip: return "pixel_flip";
    case Method::pfi: return "pfi";
    case Method::pd: return "pd";
    case Method::mplot: return "mplot";
    case Method::shapley_r2_three_model: return "shapley_r2_three_model";
    case Method::shapley_r2_single_model: return "shapley_r2_single_model";
    case Method::shap_marginal: return "shap_marginal";
    case Method::shap_conditional: return "shap_conditional";
    case Method::counterfactual: return "counterfactual";
    case Method::integrated_gradients: return "integrated_gradients";
    case Method::firm: return "firm";
    case Method::pattern_attribution: return "pattern_attribution";
    case Method::lime: return "lime";
  }
  return "unknown";
}

inline Method method_from_name(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown method: " + std::string(name));
}

/// Per-feature importance output of one method.
struct Attribution {
  Method method;
  double e1 = 0.0;
  double e2 = 0.0;
  Scope scope = Scope::global;
  Source source = Source::analytic;
  std::optional<Point> locus;  ///< instance point, present iff local

  double feature(int index) const {
    if (index == 1) return e1;
    if (index == 2) return e2;
    throw std::invalid_argument("feature index must be 1 or 2");
  }
};

inline Attribution make_analytic(Method m, double e1, double e2,
                                 std::optional<Point> locus = std::nullopt) {
  return Attribution{m, e1, e2, method_scope(m), Source::analytic, locus};
}

}  // namespace suppressor_lab
