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

#include "qwork/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwork/errors.hpp"

namespace qwork::estimation {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFisherStep = 1e-5;
constexpr double kFisherFloor = 1e-12;
constexpr double kCoverageSlack = 1e-12;
constexpr double kLlrSlack = 1e-12;

double grid_step(const Domain& d) {
  return d.periodic ? d.length() / kDomainGridPoints : d.length() / (kDomainGridPoints - 1);
}

double llr_from(double p, double p_max) {
  if (!(p > 0.0)) return kInf;
  return std::max(-2.0 * std::log2(p / p_max), 0.0);
}

// Maximizes p on [a, b] by golden-section search.
double golden_max(const std::function<double(double)>& p, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double pc = p(c);
  double pd = p(d);
  while (b - a > kRefineTolerance) {
    if (pc >= pd) {
      b = d;
      d = c;
      pd = pc;
      c = b - g * (b - a);
      pc = p(c);
    } else {
      a = c;
      c = d;
      pc = pd;
      d = a + g * (b - a);
      pd = p(d);
    }
  }
  return 0.5 * (a + b);
}

void check_outcome(const OutcomeModel& model, int k) {
  if (k < 0 || k >= model.n_outcomes()) throw InvalidArgument("estimation: outcome index out of range");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("estimation: alpha must lie in (0, 1)");
}

std::vector<double> max_likelihoods(const OutcomeModel& model) {
  std::vector<double> p_max(model.n_outcomes());
  for (int k = 0; k < model.n_outcomes(); ++k) p_max[k] = model.prob(mle(model, k), k);
  return p_max;
}

}  // namespace

double Domain::wrap(double x) const {
  if (!periodic) return x;
  const double period = length();
  double y = std::fmod(x - lo, period);
  if (y < 0.0) y += period;
  if (y >= period) y = 0.0;
  return lo + y;
}

OutcomeModel::OutcomeModel(ProbFn prob, int n_outcomes, Domain domain)
    : prob_(std::move(prob)), n_outcomes_(n_outcomes), domain_(domain) {
  if (!prob_) throw InvalidArgument("estimation: probability function is empty");
  if (n_outcomes_ < 1) throw InvalidArgument("estimation: model needs at least one outcome");
  if (!(std::isfinite(domain_.lo) && std::isfinite(domain_.hi) && domain_.hi > domain_.lo)) {
    throw InvalidArgument("estimation: domain must be a nonempty finite interval");
  }
}

double OutcomeModel::prob(double x, int k) const { return prob_(domain_.wrap(x), k); }

std::vector<double> OutcomeModel::grid() const {
  std::vector<double> xs(kDomainGridPoints);
  const double step = grid_step(domain_);
  for (int i = 0; i < kDomainGridPoints; ++i) xs[i] = domain_.lo + i * step;
  if (!domain_.periodic) xs.back() = domain_.hi;
  return xs;
}

double fisher(const OutcomeModel& model, double x) {
  double f = 0.0;
  for (int k = 0; k < model.n_outcomes(); ++k) {
    const double p = model.prob(x, k);
    if (p < kFisherFloor) continue;
    const double dp = (model.prob(x + kFisherStep, k) - model.prob(x - kFisherStep, k)) /
                      (2.0 * kFisherStep);
    f += dp * dp / p;
  }
  return f;
}

double cramer_rao(const OutcomeModel& model, double x, int n) {
  if (n < 1) throw InvalidArgument("cramer_rao: sample count must be positive");
  const double f = fisher(model, x);
  if (!(f > 0.0)) return kInf;
  return 1.0 / std::sqrt(n * f);
}

double mle(const OutcomeModel& model, int k) {
  check_outcome(model, k);
  const Domain& dom = model.domain();
  const auto xs = model.grid();
  double best_x = xs[0];
  double best_p = model.prob(best_x, k);
  for (double x : xs) {
    const double p = model.prob(x, k);
    if (p > best_p) {
      best_p = p;
      best_x = x;
    }
  }
  const double step = grid_step(dom);
  double a = best_x - step;
  double b = best_x + step;
  if (!dom.periodic) {
    a = std::max(a, dom.lo);
    b = std::min(b, dom.hi);
  }
  const double refined = golden_max([&](double x) { return model.prob(x, k); }, a, b);
  if (model.prob(refined, k) > best_p) return dom.wrap(refined);
  return best_x;
}

double llr(const OutcomeModel& model, int k, double x) {
  check_outcome(model, k);
  const double p_max = model.prob(mle(model, k), k);
  if (!(p_max > 0.0)) throw InvalidArgument("llr: outcome has zero likelihood everywhere");
  return llr_from(model.prob(x, k), p_max);
}

double tail_coverage(const OutcomeModel& model, double lam, double x) {
  const auto p_max = max_likelihoods(model);
  double mass = 0.0;
  for (int k = 0; k < model.n_outcomes(); ++k) {
    const double p = model.prob(x, k);
    if (p_max[k] > 0.0 && llr_from(p, p_max[k]) > lam) mass += p;
  }
  return mass;
}

double conf_threshold(const OutcomeModel& model, double alpha) {
  check_alpha(alpha);
  const auto p_max = max_likelihoods(model);
  const auto xs = model.grid();
  const int n = model.n_outcomes();
  std::vector<double> prob(xs.size() * n);
  std::vector<double> ratio(xs.size() * n);
  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int k = 0; k < n; ++k) {
      const double p = model.prob(xs[i], k);
      const double l = p_max[k] > 0.0 ? llr_from(p, p_max[k]) : kInf;
      prob[i * n + k] = p;
      ratio[i * n + k] = l;
      if (std::isfinite(l)) candidates.push_back(l);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const auto worst_coverage = [&](double lam) {
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double mass = 0.0;
      for (int k = 0; k < n; ++k) {
        if (ratio[i * n + k] > lam) mass += prob[i * n + k];
      }
      worst = std::max(worst, mass);
    }
    return worst;
  };

  // The worst-case tail mass is nonincreasing in λ and vanishes at the
  // largest candidate, so the search always terminates inside the list.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  const double target = 1.0 - alpha + kCoverageSlack;
  if (worst_coverage(candidates[lo]) <= target) return candidates[lo];
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (worst_coverage(candidates[mid]) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return candidates[hi];
}

ConfidenceInterval conf_region(const OutcomeModel& model, int k, double alpha) {
  return conf_region(model, k, alpha, conf_threshold(model, alpha));
}

ConfidenceInterval conf_region(const OutcomeModel& model, int k, double alpha, double threshold) {
  check_outcome(model, k);
  check_alpha(alpha);
  const Domain& dom = model.domain();
  const double center = mle(model, k);
  const double p_max = model.prob(center, k);
  if (!(p_max > 0.0)) throw InvalidArgument("conf_region: outcome has zero likelihood everywhere");
  // Closed region: a sample is uncovered exactly when its llr exceeds the threshold.
  const auto inside = [&](double x) { return llr_from(model.prob(x, k), p_max) <= threshold + kLlrSlack; };

  ConfidenceInterval ci{center, 0.0, alpha, threshold, false};
  if (!inside(center)) return ci;

  const double step = grid_step(dom);
  const double reach = dom.periodic ? 0.5 * dom.length() : dom.length();
  // Distance from the center to the region edge in direction `sign`.
  const auto extent = [&](double sign, bool& open) {
    const double limit =
        dom.periodic ? reach : (sign > 0.0 ? dom.hi - center : center - dom.lo);
    open = false;
    double prev = 0.0;
    for (int j = 1;; ++j) {
      const double t = std::min(j * step, limit);
      if (!inside(center + sign * t)) {
        double a = prev;
        double b = t;
        while (b - a > kRefineTolerance) {
          const double mid = 0.5 * (a + b);
          if (inside(center + sign * mid)) {
            a = mid;
          } else {
            b = mid;
          }
        }
        return 0.5 * (a + b);
      }
      if (t >= limit) {
        open = true;
        return limit;
      }
      prev = t;
    }
  };
  bool right_open = false;
  bool left_open = false;
  const double right = extent(1.0, right_open);
  const double left = extent(-1.0, left_open);

  if (dom.periodic && right_open && left_open) {
    ci.half_width = reach;
    ci.whole_domain = true;
    return ci;
  }
  if (!dom.periodic && right_open && left_open) ci.whole_domain = true;
  ci.half_width = 0.5 * (left + right);

  // Any grid point outside [center - left, center + right] must be excluded.
  const double margin = 10.0 * kRefineTolerance;
  for (double x : model.grid()) {
    double offset = x - center;
    if (dom.periodic) {
      offset = std::remainder(offset, dom.length());
    }
    if (offset > -left - margin && offset < right + margin) continue;
    if (inside(x)) throw ContractViolation("conf_region: confidence region is not a single interval");
  }
  return ci;
}

bool contains(const ConfidenceInterval& ci, const Domain& domain, double x) {
  if (ci.whole_domain) return true;
  double offset = x - ci.center;
  if (domain.periodic) offset = std::remainder(offset, domain.length());
  return std::abs(offset) <= ci.half_width;
}

double empirical_coverage(const OutcomeModel& model, double alpha, const std::vector<double>& truths,
                          int draws, std::mt19937_64& rng) {
  if (truths.empty() || draws < 1) throw InvalidArgument("empirical_coverage: nothing to simulate");
  const double threshold = conf_threshold(model, alpha);
  std::vector<ConfidenceInterval> regions;
  for (int k = 0; k < model.n_outcomes(); ++k) regions.push_back(conf_region(model, k, alpha, threshold));
  long covered = 0;
  for (double x : truths) {
    for (int s = 0; s < draws; ++s) {
      // 53 random bits mapped to [0, 1) independently of the standard library.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      int k = 0;
      double cumulative = model.prob(x, 0);
      while (u >= cumulative && k + 1 < model.n_outcomes()) cumulative += model.prob(x, ++k);
      if (contains(regions[k], model.domain(), x)) ++covered;
    }
  }
  return static_cast<double>(covered) / (static_cast<double>(truths.size()) * draws);
}

}  // namespace qwork::estimation
