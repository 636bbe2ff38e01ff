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

// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qwork/channel.hpp"
#include "qwork/entropy.hpp"
#include "qwork/estimation.hpp"
#include "qwork/phasequbit.hpp"
#include "qwork/protocol.hpp"

namespace {

using namespace qwork;
namespace pq = qwork::phasequbit;
using qwork::testing::binary_entropy;
using qwork::testing::Rng;

constexpr double kPi = std::numbers::pi;
const double kAlpha = std::erf(1.0 / std::sqrt(2.0));

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> work_grid() {
  std::vector<double> w;
  for (int i = 0; i <= 100; ++i) w.push_back(0.05 + 1.95 * i / 100.0);
  return w;
}

double ss_oracle(double w, double alpha) {
  const double c = std::pow(std::sqrt(std::pow(2.0, w)) - 1.0, 2);
  const double arg = (1.0 - 2.0 * alpha) / c;
  if (arg <= -1.0) return kPi;
  return std::acos(std::min(arg, 1.0));
}

// r with h((1 + r) / 2) = 1 - w / 2, by bisection.
double ms_oracle_r(double w) {
  const double target = 1.0 - w / 2.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy((1.0 + mid) / 2.0) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Outcome c1_single_shot_curve() {
  constexpr double kTol = 1e-3;
  const auto grid = work_grid();
  const double step = grid[1] - grid[0];
  const double w_star = 2.0 * std::log2(1.0 + std::sqrt(2.0 * kAlpha - 1.0));
  double worst = 0.0;
  double first_informative = NAN;
  for (double w : grid) {
    const double got = pq::solve_opt_ss(w, 0.0, kAlpha, pq::Method::kNumeric).delta_phi;
    worst = std::max(worst, std::abs(got - ss_oracle(w, kAlpha)));
    if (std::isnan(first_informative) && got < kPi) first_informative = w;
  }
  const double jump = std::abs(first_informative - w_star);
  Outcome o;
  o.pass = worst <= kTol && jump <= step;
  o.detail = fmt("max|err|=%.3g tol=1e-3 transition=%.6f expected=%.6f", worst, first_informative, w_star);
  return o;
}

Outcome c2_multi_shot_curve() {
  constexpr double kTol = 1e-4;
  double worst = 0.0;
  for (double w : work_grid()) {
    const double r = ms_oracle_r(w);
    const double got = pq::solve_opt_ms(w, 0.0, pq::Method::kNumeric).sqrtn_dphi;
    worst = std::max(worst, std::abs(got - 1.0 / (r * r)));
  }
  const auto top = pq::solve_opt_ms(2.0, 0.0);
  Outcome o;
  o.pass = worst <= kTol && top.r == 1.0 && top.sqrtn_dphi == 1.0;
  o.detail = fmt("max|err|=%.3g tol=1e-4 w=2: r=%.17g sqrtn_dphi=%.17g", worst, top.r, top.sqrtn_dphi);
  return o;
}

Outcome c3_cyclicity() {
  constexpr double kTol = 1e-9;
  Rng rng(301);
  std::uniform_real_distribution<double> xs(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int ds = 2 + i % 2;
    const int dm = 2 + (i / 2) % 2;
    const bool degenerate = i % 4 < 2;
    const auto spec = qwork::testing::random_protocol(ds, dm, degenerate, rng, -1, 1 + i % dm);
    const auto rep = work_report(spec, xs(rng), Regime::kMultiShot);
    worst = std::max(worst, std::abs(rep.w_total));
  }
  return {worst < kTol, fmt("100 specs max|w_total|=%.3g tol=1e-9", worst)};
}

Outcome c4_formula_equivalence() {
  constexpr double kTol = 1e-8;
  Rng rng(401);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto c = qwork::testing::random_channel(2, 2, 1 + i % 4, rng);
    const auto rho = qwork::testing::random_state({2}, rng);
    worst = std::max(worst, std::abs(work_ss_deg(c, rho) - work_ss_cond_hmax(c, rho)));
  }
  double rank_deficient = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto c = qwork::testing::random_channel(2, 2, 1 + i % 4, rng);
    const auto rho = qwork::testing::random_state({2}, rng, 1);
    rank_deficient = std::max(rank_deficient, std::abs(work_ss_deg(c, rho) - work_ss_cond_hmax(c, rho)));
  }
  return {worst < kTol,
          fmt("full-rank max|diff|=%.3g tol=1e-8 rank-deficient max|diff|=%.3g (logged)", worst, rank_deficient)};
}

Outcome c5_degenerate_reductions() {
  constexpr double kLambdaTol = 1e-10;
  constexpr double kMeasTol = 1e-10;
  constexpr double kRowTol = 1e-6;
  double lam = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double r = i / 19.0;
      const double theta = (kPi / 2) * j / 19.0;
      lam = std::max(lam, std::abs(pq::lambda_big(r, theta, 0.0) - (1.0 + r)));
    }
  const bool c0 = pq::c_meas(0.0) == 0.0;

  pq::ProbeParams p;
  p.r = 0.6;
  p.m = 0.7;
  p.theta = 1.1;
  const double w_meas = work_report(pq::protocol(p), 0.4, Regime::kSingleShot).w_meas;

  const auto grid = work_grid();
  const auto a = pq::curve(pq::Figure::kFig2, grid, {0.0}, kAlpha);
  const auto b = pq::curve(pq::Figure::kFig3, grid, {0.0}, kAlpha);
  double row = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    row = std::max(row, std::abs(a[k].delta_phi_ss - b[k].delta_phi_ss));
    row = std::max(row, std::abs(a[k].sqrtn_dphi_ms - b[k].sqrtn_dphi_ms));
  }
  Outcome o;
  o.pass = lam <= kLambdaTol && c0 && std::abs(w_meas) <= kMeasTol && row <= kRowTol;
  o.detail = fmt("max|lambda-(1+r)|=%.3g |w_meas(E=0)|=%.3g fig3/fig2 row diff=%.3g", lam, std::abs(w_meas), row) +
             (c0 ? " c(0)=0" : " c(0)!=0");
  return o;
}

Outcome c6_measurement_cost_at_e10() {
  constexpr double kTol = 1e-3;
  const double c = pq::c_meas(10.0);
  return {std::abs(c - 8.0028) <= kTol, fmt("c(10)=%.6f expected=8.0028 tol=1e-3", c)};
}

// p0 = (1 + m r sinθ cosΔ) / 2 and its derivative in φ give F = q² sin²Δ / (1 - q² cos²Δ).
double fisher_oracle(double r, double m, double theta, double delta) {
  const double q = m * r * std::sin(theta);
  return q * q * std::sin(delta) * std::sin(delta) / (1.0 - q * q * std::cos(delta) * std::cos(delta));
}

Outcome c7_fisher() {
  constexpr double kRelTol = 1e-5;
  const std::vector<double> rs{0.2, 0.4, 0.6, 0.8, 1.0};
  const std::vector<double> ms{0.2, 0.4, 0.6, 0.8, 1.0};
  const std::vector<double> thetas{kPi / 10, kPi / 5, 3 * kPi / 10, 2 * kPi / 5, kPi / 2};
  const std::vector<double> deltas{0.3, 0.9, 1.5, 2.1, 2.7};
  double worst = 0.0;
  double worst_closed = 0.0;
  int n = 0;
  for (double r : rs)
    for (double m : ms)
      for (double theta : thetas)
        for (double delta : deltas) {
          const double want = fisher_oracle(r, m, theta, delta);
          if (want <= 0.0) continue;
          pq::ProbeParams p;
          p.r = r;
          p.m = m;
          p.theta = theta;
          p.phi_meas = 0.2;
          p.phi = 0.2 + delta;
          worst = std::max(worst, std::abs(estimation::fisher(pq::phase_model(p), p.phi) - want) / want);
          worst_closed = std::max(worst_closed, std::abs(pq::fisher_closed(p) - want) / want);
          ++n;
        }
  return {n == 625 && worst <= kRelTol && worst_closed <= kRelTol,
          fmt("points=%.0f max rel err finite-diff=%.3g closed=%.3g tol=1e-5", n, worst, worst_closed)};
}

Outcome c8_confidence_solver() {
  const double tol = 2 * kPi / 2001 + 1e-6;
  double worst = 0.0;
  int clamped = 0;
  for (double r : {0.0, 0.3, 0.6, 0.9, 1.0})
    for (double m : {0.2, 0.5, 0.8, 1.0})
      for (double theta : {0.2, 0.8, kPi / 2}) {
        pq::ProbeParams p;
        p.r = r;
        p.m = m;
        p.theta = theta;
        const double q = m * r * std::sin(theta);
        const double arg = (1.0 - 2.0 * kAlpha) / q;
        const double want = (q == 0.0 || arg <= -1.0) ? kPi : std::acos(arg);
        if (want == kPi) ++clamped;
        const auto model = pq::phase_model(p);
        for (int k = 0; k < 2; ++k)
          worst = std::max(worst, std::abs(estimation::conf_region(model, k, kAlpha).half_width - want));
      }
  return {worst < tol && clamped > 0, fmt("max|err|=%.3g tol=%.6g clamped cases=%.0f", worst, tol, clamped)};
}

Outcome c9_monotone_in_energy() {
  const std::vector<double> energies{0, 0.5, 1, 2, 5, 10};
  const auto grid = work_grid();
  const auto pts = pq::curve(pq::Figure::kFig3, grid, energies, kAlpha);
  int violations = 0;
  const std::size_t nw = grid.size();
  for (std::size_t e = 1; e < energies.size(); ++e)
    for (std::size_t i = 0; i < nw; ++i) {
      const auto& lo = pts[(e - 1) * nw + i];
      const auto& hi = pts[e * nw + i];
      if (hi.delta_phi_ss < lo.delta_phi_ss - 1e-9) ++violations;
      if (hi.sqrtn_dphi_ms < lo.sqrtn_dphi_ms - 1e-9) ++violations;
    }
  return {violations == 0, fmt("violations=%.0f over %.0f points", violations, pts.size())};
}

Outcome c10_landauer() {
  constexpr double kTol = 1e-12;
  const auto mixed = DensityOperator::maximally_mixed(Dims{2});
  const auto reset = KrausChannel::constant(2, DensityOperator(outer(basis_ket(2, 0)), Dims{2}));
  const double ss = work_ss_deg(reset, mixed);
  const double ms = work_ms(mixed, apply(reset, mixed), HamiltonianSpec::degenerate(2), HamiltonianSpec::degenerate(2));
  return {std::abs(ss - 1.0) <= kTol && std::abs(ms - 1.0) <= kTol, fmt("ss=%.15g ms=%.15g", ss, ms)};
}

Outcome c11_conditional_entropies() {
  constexpr double kTol = 1e-6;
  double worst = 0.0;
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const DensityOperator b(outer(bell), Dims{2, 2});
  for (int x : {0, 1}) {
    worst = std::max(worst, std::abs(cond_h_min(b, x) + 1.0));
    worst = std::max(worst, std::abs(cond_h_max(b, x) + 1.0));
  }
  Rng rng(1101);
  for (int i = 0; i < 10; ++i) {
    const auto a = qwork::testing::random_state({2}, rng, 1 + i % 2);
    const auto c = qwork::testing::random_state({2 + i % 2}, rng);
    const auto prod = kron(a, c);
    worst = std::max(worst, std::abs(cond_h_min(prod, 0) - h_min(a)));
    worst = std::max(worst, std::abs(cond_h_max(prod, 0) - h_max(a)));
    worst = std::max(worst, std::abs(cond_h_min(prod, 1) - h_min(c)));
    worst = std::max(worst, std::abs(cond_h_max(prod, 1) - h_max(c)));
  }
  return {worst <= kTol, fmt("max|err|=%.3g tol=1e-6 (Bell and 10 products)", worst)};
}

Outcome c12_coverage() {
  constexpr double kSlack = 0.03;
  constexpr std::uint64_t kSeed = 1201;
  std::mt19937_64 rng(kSeed);
  std::vector<double> truths;
  for (int i = 0; i < 50; ++i) truths.push_back(-kPi + 2 * kPi * (i + 0.5) / 50);
  const pq::ProbeParams p;
  const double cov = estimation::empirical_coverage(pq::phase_model(p), kAlpha, truths, 2000, rng);
  return {cov >= kAlpha - kSlack, fmt("coverage=%.4f min=%.4f seed=%.0f", cov, kAlpha - kSlack, kSeed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"01 single-shot curve at E=0", c1_single_shot_curve},
      {"02 multi-shot curve at E=0", c2_multi_shot_curve},
      {"03 multi-shot cyclicity", c3_cyclicity},
      {"04 work formula equivalence", c4_formula_equivalence},
      {"05 degenerate reductions", c5_degenerate_reductions},
      {"06 measurement cost at E=10", c6_measurement_cost_at_e10},
      {"07 Fisher information", c7_fisher},
      {"08 confidence solver", c8_confidence_solver},
      {"09 monotone in energy gap", c9_monotone_in_energy},
      {"10 Landauer erasure", c10_landauer},
      {"11 conditional entropies", c11_conditional_entropies},
      {"12 interval coverage", c12_coverage},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
