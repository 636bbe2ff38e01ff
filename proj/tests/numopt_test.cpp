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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qwork/errors.hpp"

namespace qwork::numopt {
namespace {

TEST(BisectMonotone, Examples) {
  EXPECT_NEAR(bisect_monotone([](double x) { return x * x; }, 0.0, 2.0, 2.0, 1e-12), std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(bisect_monotone([](double x) { return x; }, 0.0, 1.0, 0.5, 1e-12), 0.5, 1e-12);
  EXPECT_NEAR(bisect_monotone([](double x) { return -x; }, 0.0, 1.0, -0.25, 1e-12), 0.25, 1e-12);
}

TEST(BisectMonotone, TargetOutOfRange) {
  EXPECT_THROW(bisect_monotone([](double x) { return x; }, 0.0, 1.0, 1.5, 1e-12), InvalidArgument);
}

TEST(BinaryEntropy, Examples) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  for (double p : {0.1, 0.3, 0.77}) EXPECT_NEAR(binary_entropy(p), testing::binary_entropy(p), 1e-15);
}

TEST(InvBinaryEntropy, UpperBranch) {
  EXPECT_NEAR(inv_binary_entropy(1.0), 0.5, 1e-10);
  EXPECT_NEAR(inv_binary_entropy(0.0), 1.0, 1e-10);
  EXPECT_NEAR(inv_binary_entropy(0.5), 0.889972135561640, 1e-10);
  for (double y = 0.05; y < 1.0; y += 0.05) {
    const double x = inv_binary_entropy(y);
    EXPECT_GE(x, 0.5);
    EXPECT_NEAR(testing::binary_entropy(x), y, 1e-10);
  }
}

TEST(MinimizeBox, ConvexQuadraticInterior) {
  BoxProblem p;
  p.objective = [](std::span<const double> v) {
    return (v[0] - 0.3) * (v[0] - 0.3) + 2 * (v[1] + 0.2) * (v[1] + 0.2) + (v[2] - 0.7) * (v[2] - 0.7);
  };
  p.bounds = {{0.0, 1.0}, {-1.0, 1.0}, {0.0, 2.0}};
  const auto res = minimize_box(p);
  EXPECT_NEAR(res.argmin[0], 0.3, 1e-6);
  EXPECT_NEAR(res.argmin[1], -0.2, 1e-6);
  EXPECT_NEAR(res.argmin[2], 0.7, 1e-6);
}

TEST(MinimizeBox, OptimumOnBoundaryStaysInside) {
  BoxProblem p;
  p.objective = [](std::span<const double> v) { return -(v[0] + 2 * v[1]); };
  p.bounds = {{0.0, 1.0}, {0.0, 0.5}};
  const auto res = minimize_box(p);
  EXPECT_DOUBLE_EQ(res.argmin[0], 1.0);
  EXPECT_DOUBLE_EQ(res.argmin[1], 0.5);
}

TEST(MinimizeBox, FlatObjectivePicksLowerLeftCorner) {
  BoxProblem p;
  p.objective = [](std::span<const double>) { return 1.0; };
  p.bounds = {{-1.0, 1.0}, {2.0, 3.0}};
  const auto res = minimize_box(p);
  EXPECT_EQ(res.argmin, (std::vector<double>{-1.0, 2.0}));
}

TEST(MinimizeBox, DeterministicAndNoWorseThanGrid) {
  BoxProblem p;
  p.objective = [](std::span<const double> v) { return std::sin(3 * v[0]) * std::cos(2 * v[1]) + 0.1 * v[0]; };
  p.bounds = {{0.0, 3.0}, {0.0, 3.0}};
  const auto a = minimize_box(p);
  const auto b = minimize_box(p);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.min, b.min);
  double grid_best = INFINITY;
  for (int i = 0; i < p.grid_n; ++i) {
    for (int j = 0; j < p.grid_n; ++j) {
      const double v[2] = {3.0 * i / (p.grid_n - 1), 3.0 * j / (p.grid_n - 1)};
      grid_best = std::min(grid_best, p.objective(v));
    }
  }
  EXPECT_LE(a.min, grid_best);
  for (int d = 0; d < 2; ++d) {
    EXPECT_GE(a.argmin[d], p.bounds[d].first);
    EXPECT_LE(a.argmin[d], p.bounds[d].second);
  }
}

TEST(MinimizeBox, RejectsInvalidProblems) {
  BoxProblem p;
  p.objective = [](std::span<const double> v) { return v[0]; };
  p.bounds = {{0.0, 1.0}};
  p.grid_n = 5;
  EXPECT_THROW(minimize_box(p), InvalidArgument);
  p.grid_n = 64;
  p.tol = 0.0;
  EXPECT_THROW(minimize_box(p), InvalidArgument);
  p.tol = 1e-6;
  p.bounds.clear();
  EXPECT_THROW(minimize_box(p), InvalidArgument);
  p.bounds = {{0.0, 1.0}};
  p.objective = [](std::span<const double> v) { return v[0] > 0.5 ? NAN : v[0]; };
  EXPECT_THROW(minimize_box(p), InvalidArgument);
}

TEST(MinimizeBox, FisherAtFixedCreditMatchesSymmetricOptimum) {
  // Maximize r m subject to [1 - h((1+r)/2)] + [1 - h((1+m)/2)] = 1 by
  // eliminating m: the memory share of the credit is t = h((1+r)/2).
  BoxProblem p;
  p.objective = [](std::span<const double> v) {
    const double t = testing::binary_entropy((1 + v[0]) / 2);
    if (t <= 0) return -t;
    if (t >= 1) return t - 1;
    const double m = 2 * inv_binary_entropy(1 - t) - 1;
    return -v[0] * m;
  };
  p.bounds = {{0.0, 1.0}};
  const auto res = minimize_box(p);
  EXPECT_NEAR(res.argmin[0], 0.779944271123281, 1e-4);
}

}  // namespace
}  // namespace qwork::numopt
