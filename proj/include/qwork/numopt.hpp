// Copyright 2026 The qwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Deterministic low-dimensional numerics: monotone inversion, the binary
// entropy and its inverse, and a grid + simplex box minimizer.

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace qwork::numopt {

// Solves f(x) = target on [lo, hi] for continuous monotone f (either
// direction). Returns x with |f(x) - target| <= tol or bracket width <= tol.
// Throws InvalidArgument when target is not between f(lo) and f(hi).
double bisect_monotone(const std::function<double(double)>& f, double lo, double hi,
                       double target, double tol);

// h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

// Inverse of h on the upper branch: the x in [1/2, 1] with h(x) = y.
double inv_binary_entropy(double y);

struct BoxProblem {
  std::function<double(std::span<const double>)> objective;
  std::vector<std::pair<double, double>> bounds;  // closed interval per coordinate
  int grid_n = 64;                                // points per axis, >= 11
  double tol = 1e-6;                              // coordinate tolerance of the refinement
};

struct BoxResult {
  std::vector<double> argmin;
  double min = 0.0;
  long evaluations = 0;
};

// Coarse grid scan, then Nelder-Mead and compass refinement from the best
// grid point, never leaving the bounds. Ties go to the lexicographically
// smallest point. Throws InvalidArgument on a non-finite objective value.
BoxResult minimize_box(const BoxProblem& problem);

}  // namespace qwork::numopt
