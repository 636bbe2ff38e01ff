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

// Frequentist estimation of a single real parameter from a discrete outcome
// model: Fisher information, maximum likelihood and likelihood-ratio
// confidence regions. Logarithms are base 2 throughout.

#include <functional>
#include <random>
#include <vector>

namespace qwork::estimation {

struct Domain {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;  // periodic domains are [lo, hi) with period hi - lo

  double length() const { return hi - lo; }
  double wrap(double x) const;
};

// Number of grid points used to scan the parameter domain.
inline constexpr int kDomainGridPoints = 2001;
// Edge bisection and golden-section tolerance.
inline constexpr double kRefineTolerance = 1e-8;

class OutcomeModel {
 public:
  using ProbFn = std::function<double(double x, int k)>;

  // Throws InvalidArgument on an empty function, no outcomes or an empty domain.
  OutcomeModel(ProbFn prob, int n_outcomes, Domain domain);

  double prob(double x, int k) const;
  int n_outcomes() const { return n_outcomes_; }
  const Domain& domain() const { return domain_; }
  // Grid of kDomainGridPoints points covering the domain.
  std::vector<double> grid() const;

 private:
  ProbFn prob_;
  int n_outcomes_;
  Domain domain_;
};

struct ConfidenceInterval {
  double center = 0.0;  // maximum-likelihood estimate
  double half_width = 0.0;
  double alpha = 0.0;
  double threshold = 0.0;
  bool whole_domain = false;
};

// Σ_k (dp_k/dx)^2 / p_k by central differences with step 1e-5; outcomes with
// p_k < 1e-12 are skipped.
double fisher(const OutcomeModel& model, double x);

// 1 / sqrt(n F(x)); +inf when F(x) = 0.
double cramer_rao(const OutcomeModel& model, double x, int n);

// Global maximizer of p_k over the domain, leftmost on ties.
double mle(const OutcomeModel& model, int k);

// -2 log2 [p_k(x) / p_k(mle)], clamped at 0; +inf when p_k(x) = 0.
double llr(const OutcomeModel& model, int k, double x);

// Mass of the outcomes whose llr at x strictly exceeds lam.
double tail_coverage(const OutcomeModel& model, double lam, double x);

// Smallest attained llr value λ with max_x tail_coverage(λ, x) <= 1 - alpha.
double conf_threshold(const OutcomeModel& model, double alpha);

// The set {x : llr(k, x) <= threshold} as a single interval around the MLE.
// Throws ContractViolation when the region splits into several intervals.
ConfidenceInterval conf_region(const OutcomeModel& model, int k, double alpha);
ConfidenceInterval conf_region(const OutcomeModel& model, int k, double alpha,
                               double threshold);

// True when x lies in the interval (circular distance on periodic domains).
bool contains(const ConfidenceInterval& ci, const Domain& domain, double x);

// Fraction of simulated experiments whose confidence region contains the
// true parameter: `draws` single-outcome samples at each value in `truths`.
double empirical_coverage(const OutcomeModel& model, double alpha, const std::vector<double>& truths,
                          int draws, std::mt19937_64& rng);

}  // namespace qwork::estimation
