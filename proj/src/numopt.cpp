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

#include "qwork/numopt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qwork/errors.hpp"

namespace qwork::numopt {

double bisect_monotone(const std::function<double(double)>& f, double lo, double hi,
                       double target, double tol) {
  if (!(lo <= hi)) throw InvalidArgument("bisect_monotone: empty bracket");
  if (!(tol > 0.0)) throw InvalidArgument("bisect_monotone: tolerance must be positive");
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == target) return lo;
  if (f_hi == target) return hi;
  const double lower = std::min(f_lo, f_hi);
  const double upper = std::max(f_lo, f_hi);
  if (target < lower - tol || target > upper + tol) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "bisect_monotone: target " << target << " outside [" << lower << ", " << upper << "]";
    throw InvalidArgument(msg.str());
  }
  if (target <= lower) return f_lo <= f_hi ? lo : hi;
  if (target >= upper) return f_lo <= f_hi ? hi : lo;

  const bool increasing = f_lo < f_hi;
  double a = lo, b = hi;
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double value = f(mid);
    if (std::abs(value - target) <= tol && b - a <= tol) return mid;
    if ((value < target) == increasing) {
      a = mid;
    } else {
      b = mid;
    }
    if (b - a <= tol) break;
  }
  return 0.5 * (a + b);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double inv_binary_entropy(double y) {
  if (y < -1e-12 || y > 1.0 + 1e-12) throw InvalidArgument("inv_binary_entropy: y outside [0, 1]");
  y = std::clamp(y, 0.0, 1.0);
  if (y == 1.0) return 0.5;
  if (y == 0.0) return 1.0;
  return bisect_monotone(binary_entropy, 0.5, 1.0, y, 1e-15);
}

namespace {

using Point = std::vector<double>;

class Evaluator {
 public:
  explicit Evaluator(const BoxProblem& p) : problem_(p) {}

  double operator()(const Point& x) {
    ++count_;
    const double v = problem_.objective(std::span<const double>(x));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "minimize_box: objective returned a non-finite value at (";
      for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
      msg << ")";
      throw InvalidArgument(msg.str());
    }
    return v;
  }

  long count() const { return count_; }

 private:
  const BoxProblem& problem_;
  long count_ = 0;
};

// Strict ordering by value, then lexicographically by coordinates.
bool better(double fa, const Point& a, double fb, const Point& b) {
  if (fa != fb) return fa < fb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void clamp_to(Point& x, const std::vector<std::pair<double, double>>& bounds) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], bounds[i].first, bounds[i].second);
}

struct Vertex {
  Point x;
  double f;
};

void nelder_mead(Evaluator& eval, const std::vector<std::pair<double, double>>& bounds,
                 const Point& spacing, double tol, Vertex& best) {
  const std::size_t k = best.x.size();
  std::vector<Vertex> simplex{best};
  for (std::size_t i = 0; i < k; ++i) {
    Point x = best.x;
    const double h = spacing[i] > 0 ? spacing[i] : 0.0;
    x[i] = (x[i] + h <= bounds[i].second) ? x[i] + h : x[i] - h;
    clamp_to(x, bounds);
    simplex.push_back({x, eval(x)});
  }
  auto order = [](const Vertex& a, const Vertex& b) { return better(a.f, a.x, b.f, b.x); };

  for (int iter = 0; iter < 4000; ++iter) {
    std::stable_sort(simplex.begin(), simplex.end(), order);
    double size = 0.0;
    for (std::size_t v = 1; v <= k; ++v) {
      for (std::size_t i = 0; i < k; ++i) {
        size = std::max(size, std::abs(simplex[v].x[i] - simplex[0].x[i]));
      }
    }
    if (size < tol) break;

    Point centroid(k, 0.0);
    for (std::size_t v = 0; v < k; ++v) {
      for (std::size_t i = 0; i < k; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(k);
    }
    auto along = [&](double t) {
      Point x(k);
      for (std::size_t i = 0; i < k; ++i) x[i] = centroid[i] + t * (simplex[k].x[i] - centroid[i]);
      clamp_to(x, bounds);
      return x;
    };

    Vertex reflected{along(-1.0), 0.0};
    reflected.f = eval(reflected.x);
    if (order(reflected, simplex[0])) {
      Vertex expanded{along(-2.0), 0.0};
      expanded.f = eval(expanded.x);
      simplex[k] = order(expanded, reflected) ? expanded : reflected;
      continue;
    }
    if (order(reflected, simplex[k - 1])) {
      simplex[k] = reflected;
      continue;
    }
    const bool outside = order(reflected, simplex[k]);
    Vertex contracted{along(outside ? -0.5 : 0.5), 0.0};
    contracted.f = eval(contracted.x);
    if (order(contracted, outside ? reflected : simplex[k])) {
      simplex[k] = contracted;
      continue;
    }
    for (std::size_t v = 1; v <= k; ++v) {
      for (std::size_t i = 0; i < k; ++i) {
        simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
      }
      simplex[v].f = eval(simplex[v].x);
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), order);
  if (order(simplex[0], best)) best = simplex[0];
}

void compass(Evaluator& eval, const std::vector<std::pair<double, double>>& bounds,
             Point step, double tol, Vertex& best) {
  const std::size_t k = best.x.size();
  for (int round = 0; round < 10000; ++round) {
    const double largest = *std::max_element(step.begin(), step.end());
    if (largest < tol) break;
    bool improved = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (step[i] < tol) continue;
      for (double sign : {1.0, -1.0}) {
        Vertex trial{best.x, 0.0};
        trial.x[i] += sign * step[i];
        clamp_to(trial.x, bounds);
        if (trial.x == best.x) continue;
        trial.f = eval(trial.x);
        if (trial.f < best.f) {
          best = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      for (double& s : step) s *= 0.5;
    }
  }
}

}  // namespace

BoxResult minimize_box(const BoxProblem& problem) {
  const std::size_t k = problem.bounds.size();
  if (k == 0) throw InvalidArgument("minimize_box: no coordinates");
  if (problem.grid_n < 11) throw InvalidArgument("minimize_box: grid_n must be >= 11");
  if (!(problem.tol > 0.0)) throw InvalidArgument("minimize_box: tol must be positive");
  for (const auto& [lo, hi] : problem.bounds) {
    if (!(lo <= hi)) throw InvalidArgument("minimize_box: empty bound interval");
  }

  Evaluator eval(problem);
  Point spacing(k);
  for (std::size_t i = 0; i < k; ++i) {
    spacing[i] = (problem.bounds[i].second - problem.bounds[i].first) / (problem.grid_n - 1);
  }

  // Lexicographic scan with coordinate 0 slowest; strict comparison keeps the
  // first (lexicographically smallest) point among equal values.
  long total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= problem.grid_n;
  Vertex best{Point(k), 0.0};
  Point x(k);
  for (long flat = 0; flat < total; ++flat) {
    long rest = flat;
    for (std::size_t i = k; i-- > 0;) {
      const long j = rest % problem.grid_n;
      rest /= problem.grid_n;
      x[i] = j == problem.grid_n - 1 ? problem.bounds[i].second
                                     : problem.bounds[i].first + static_cast<double>(j) * spacing[i];
    }
    const double f = eval(x);
    if (flat == 0 || f < best.f) best = {x, f};
  }

  nelder_mead(eval, problem.bounds, spacing, problem.tol, best);
  Point step(k);
  for (std::size_t i = 0; i < k; ++i) step[i] = 0.25 * spacing[i];
  compass(eval, problem.bounds, step, problem.tol, best);

  return BoxResult{best.x, best.f, eval.count()};
}

}  // namespace qwork::numopt
