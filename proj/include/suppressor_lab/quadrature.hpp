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

struct QuadratureOptions {
  double abs_tol = 1e-8;
  int max_depth = 40;
};

namespace detail {

template <class F>
double simpson(const F& f, double a, double fa, double b, double fb, double m,
               double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(const F& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole,
                            double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw std::runtime_error(
        "adaptive quadrature failed to converge on [" + std::to_string(a) +
        ", " + std::to_string(b) + "]: residual " + std::to_string(delta) +
        " above tolerance " + std::to_string(tol));
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b].
template <class F>
double adaptive_simpson(const F& f, double a, double b,
                        QuadratureOptions opt = {}) {
  if (!(a < b)) throw std::invalid_argument("quadrature needs a < b");
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
  return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole,
                                      opt.abs_tol, opt.max_depth);
}

/// Composite trapezoid rule with `nodes` intervals over [a, b].
template <class F>
double trapezoid(const F& f, double a, double b, std::size_t nodes) {
  if (nodes < 1) throw std::invalid_argument("trapezoid needs >= 1 interval");
  const double step = (b - a) / static_cast<double>(nodes);
  double acc = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < nodes; ++i) {
    acc += f(a + step * static_cast<double>(i));
  }
  return acc * step;
}

}  // namespace suppressor_lab
