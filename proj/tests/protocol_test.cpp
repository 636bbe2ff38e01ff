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

#include "qwork/protocol.hpp"

#include <gtest/gtest.h>

#include <array>

#include "oracles.hpp"
#include "qwork/entropy.hpp"
#include "qwork/errors.hpp"
#include "qwork/phasequbit.hpp"

namespace qwork {
namespace {

using testing::Rng;

ProtocolSpec fixed_probe_spec(const DensityOperator& probe, const DensityOperator& memory, const CMatrix& u) {
  return ProtocolSpec(HamiltonianSpec::degenerate(probe.dim()), HamiltonianSpec::degenerate(memory.dim()),
                      [probe](double) { return probe; }, memory, u);
}

DensityOperator ket_state(int d, int i) { return DensityOperator(outer(basis_ket(d, i)), Dims{d}); }

TEST(ProtocolSpec, Validates) {
  Rng rng(41);
  const auto probe = testing::random_state({2}, rng);
  const auto memory = testing::random_state({2}, rng);  // not diagonal
  EXPECT_THROW(fixed_probe_spec(probe, memory, identity(4)), InvalidArgument);
  EXPECT_THROW(fixed_probe_spec(probe, ket_state(2, 0), 2.0 * identity(4)), InvalidArgument);
  EXPECT_THROW(fixed_probe_spec(probe, ket_state(2, 0), identity(3)), InvalidArgument);
  const auto qutrit = testing::random_state({3}, rng);
  const ProtocolSpec spec(HamiltonianSpec::degenerate(2), HamiltonianSpec::degenerate(2),
                          [qutrit](double) { return qutrit; }, ket_state(2, 0), identity(4));
  EXPECT_THROW(spec.probe(0.0), InvalidArgument);
}

TEST(PreparationChannel, FixedOutput) {
  Rng rng(42);
  const auto spec = testing::random_protocol(2, 3, true, rng);
  const auto prep = preparation_channel(spec, 0.4);
  const auto want = prepared_state(spec, 0.4);
  EXPECT_LT((apply(prep, thermal_pair(spec)).matrix() - want.matrix()).norm(), 1e-10);
  EXPECT_LT((apply(prep, testing::random_state({2, 3}, rng)).matrix() - want.matrix()).norm(), 1e-10);
}

TEST(PreparationChannel, PureProbeAndMemoryCostLogDimension) {
  const auto spec = fixed_probe_spec(ket_state(3, 1), ket_state(2, 0), identity(6));
  EXPECT_NEAR(work_ss_deg(preparation_channel(spec, 0.0), thermal_pair(spec)), std::log2(6.0), 1e-10);
}

TEST(MeasurementKraus, IdentityWithPureMemory) {
  const auto spec = fixed_probe_spec(ket_state(2, 0), ket_state(2, 0), identity(4));
  const auto ops = measurement_kraus(spec);
  ASSERT_EQ(ops.size(), 2u);
  for (const auto& a : ops) {
    EXPECT_EQ(a.j, 0);
    if (a.k == 0) {
      EXPECT_LT((a.op - identity(2)).norm(), 1e-15);
    } else {
      EXPECT_LT(a.op.norm(), 1e-15);
    }
  }
}

TEST(MeasurementKraus, PhaseQubitProjectorsAtFullMemoryPurity) {
  phasequbit::ProbeParams p;
  p.m = 1.0;
  p.phi_meas = 0.8;
  const auto ops = measurement_kraus(phasequbit::protocol(p));
  ASSERT_EQ(ops.size(), 2u);
  CVector ket(2);
  ket << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), p.phi_meas);
  const CMatrix proj = ket * ket.adjoint();
  for (const auto& a : ops) {
    EXPECT_EQ(a.j, 0);
    const CMatrix want = a.k == 0 ? proj : CMatrix(identity(2) - proj);
    EXPECT_LT((a.op - want).norm(), 1e-12);
  }
}

TEST(MeasurementKraus, CompleteForRandomUnitaries) {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int ds = 2 + trial % 2;
    const int dm = 2 + (trial / 2) % 2;
    const auto spec = testing::random_protocol(ds, dm, true, rng);
    CMatrix sum = CMatrix::Zero(ds, ds);
    for (const auto& a : measurement_kraus(spec)) sum += a.op.adjoint() * a.op;
    EXPECT_LT((sum - identity(ds)).norm(), 1e-9);
  }
}

TEST(MeasurementKraus, RestrictedToMemorySupport) {
  Rng rng(44);
  const auto spec = testing::random_protocol(2, 3, true, rng, -1, 2);
  for (const auto& a : measurement_kraus(spec)) EXPECT_LT(a.j, 2);
}

TEST(Povm, PhaseQubitElements) {
  for (double m : {0.0, 0.35, 1.0}) {
    phasequbit::ProbeParams p;
    p.m = m;
    p.phi_meas = 1.1;
    const auto elements = povm(phasequbit::protocol(p));
    ASSERT_EQ(elements.size(), 2u);
    const CMatrix want =
        0.5 * (identity(2) + m * (std::cos(p.phi_meas) * sigma_x() + std::sin(p.phi_meas) * sigma_y()));
    EXPECT_LT((elements[0] - want).norm(), 1e-12) << "m=" << m;
    EXPECT_LT((elements[0] + elements[1] - identity(2)).norm(), 1e-12);
    if (m == 0.0) {
      EXPECT_LT((elements[0] - identity(2) / 2.0).norm(), 1e-12);
    }
    if (m == 1.0) {
      EXPECT_LT((elements[0] * elements[0] - elements[0]).norm(), 1e-12);
    }
  }
}

TEST(Povm, PositiveAndComplete) {
  Rng rng(45);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = testing::random_protocol(2 + trial % 2, 2 + trial % 3, true, rng);
    CMatrix sum = CMatrix::Zero(spec.dim_s(), spec.dim_s());
    for (const auto& e : povm(spec)) {
      EXPECT_GE(eig_hermitian(e).values.minCoeff(), -1e-12);
      sum += e;
    }
    EXPECT_LT((sum - identity(spec.dim_s())).norm(), 1e-9);
  }
}

TEST(MeasurementChannel, ClassicallyCorrelatedOutput) {
  Rng rng(46);
  const auto spec = testing::random_protocol(2, 3, true, rng);
  const auto post = post_measurement_state(spec, 0.3);
  // Off-diagonal memory blocks vanish.
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          if (k != l) {
            EXPECT_LT(std::abs(post.matrix()(s * 3 + k, t * 3 + l)), 1e-12);
          }
}

TEST(MeasurementChannel, IdentityUnitaryDephasesMemory) {
  Rng rng(47);
  const auto probe = testing::random_state({2}, rng);
  const auto memory = testing::random_diagonal_state(2, rng);
  const auto spec = fixed_probe_spec(probe, memory, identity(4));
  const auto post = post_measurement_state(spec, 0.0);
  EXPECT_LT((post.matrix() - kron(probe.matrix(), memory.matrix())).norm(), 1e-12);
}

TEST(MeasurementChannel, MemoryMarginalMatchesPovm) {
  Rng rng(48);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = testing::random_protocol(2 + trial % 2, 2 + trial % 3, trial % 2 == 0, rng);
    const double x = 0.37 * trial;
    const std::array<int, 1> keep{1};
    const auto marginal = partial_trace(post_measurement_state(spec, x), keep);
    const auto elements = povm(spec);
    for (int k = 0; k < spec.dim_m(); ++k) {
      const double p = (elements[k] * spec.probe(x).matrix()).trace().real();
      EXPECT_NEAR(marginal.matrix()(k, k).real(), p, 1e-10);
    }
  }
}

TEST(ExtractionChannel, DegenerateOutputAndCosts) {
  Rng rng(49);
  const auto spec = testing::random_protocol(2, 2, true, rng);
  const auto ext = extraction_channel(spec);
  EXPECT_LT((apply(ext, testing::random_state({2, 2}, rng)).matrix() - identity(4) / 4.0).norm(), 1e-12);
  EXPECT_NEAR(work_ss_deg(ext, testing::random_state({2, 2}, rng)), 0.0, 1e-10);
  EXPECT_NEAR(work_ss_deg(ext, DensityOperator(outer(basis_ket(4, 1)), Dims{2, 2})), -2.0, 1e-10);
}

TEST(WorkReport, MultiShotIsCyclic) {
  Rng rng(50);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = testing::random_protocol(2 + trial % 2, 2, trial % 2 == 0, rng);
    const auto rep = work_report(spec, 0.1 * trial, Regime::kMultiShot);
    EXPECT_LT(std::abs(rep.w_total), 1e-9);
    EXPECT_EQ(rep.w_credit, rep.w_prep);
    EXPECT_FALSE(rep.eta.has_value());
  }
}

TEST(WorkReport, SingleShotDegenerateFullRank) {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const int ds = 2 + trial % 2;
    const auto spec = testing::random_protocol(ds, 2, true, rng);
    const double x = 0.2 * trial;
    const auto rep = work_report(spec, x, Regime::kSingleShot);
    const double want = std::log2(ds * 2.0) - h_min(spec.probe(x)) - h_min(spec.memory_init());
    EXPECT_NEAR(rep.w_total, want, 1e-9);
    EXPECT_NEAR(rep.w_credit, rep.w_total, 1e-9);
    EXPECT_LE(rep.w_meas, 1e-12);
  }
}

TEST(WorkReport, SingleShotDegeneratePureInputs) {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = testing::random_protocol(2, 2, true, rng, 1, 1);
    const auto rep = work_report(spec, 0.5, Regime::kSingleShot);
    const auto post = post_measurement_state(spec, 0.5);
    EXPECT_NEAR(rep.w_total, h_max(post) - h_min(post), 1e-9);
    EXPECT_LE(rep.w_meas, 1e-12);
    EXPECT_NEAR(rep.w_meas, -h_min(post), 1e-9);
    if (h_min(post) > 1e-9) {
      ASSERT_TRUE(rep.eta.has_value());
      EXPECT_NEAR(*rep.eta, 1.0, 1e-9);
    }
  }
}

TEST(WorkReport, MeasurementNeverCostsInDegenerateCase) {
  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = testing::random_protocol(2, 2 + trial % 2, true, rng, 1 + trial % 2, 1 + trial % 2);
    const auto rep = work_report(spec, 0.1 * trial, Regime::kSingleShot);
    EXPECT_LE(rep.w_meas, 1e-12);
    if (rep.eta) {
      EXPECT_GE(*rep.eta, -1e-12);
      EXPECT_LE(*rep.eta, 1.0 + 1e-12);
    }
  }
}

TEST(WorkReport, DegeneratePathMatchesExplicitChannels) {
  Rng rng(54);
  const auto spec = testing::random_protocol(2, 2, true, rng, 1, 2);
  const double x = 0.9;
  const auto rep = work_report(spec, x, Regime::kSingleShot);
  const auto tau = thermal_pair(spec);
  const auto post = post_measurement_state(spec, x);
  EXPECT_NEAR(rep.w_prep, work_ss_deg(preparation_channel(spec, x), tau), 1e-9);
  EXPECT_NEAR(rep.w_extract, work_ss_deg(extraction_channel(spec), post), 1e-9);
}

TEST(WorkReport, NonDegenerateSingleShotNeedsFullRank) {
  Rng rng(55);
  const auto full = testing::random_protocol(2, 2, false, rng);
  const auto rep = work_report(full, 0.2, Regime::kSingleShot);
  EXPECT_TRUE(std::isfinite(rep.w_total));
  EXPECT_EQ(rep.w_credit, rep.w_prep);
  const auto deficient = testing::random_protocol(2, 2, false, rng, 1);
  EXPECT_THROW(work_report(deficient, 0.2, Regime::kSingleShot), ContractViolation);
}

}  // namespace
}  // namespace qwork
