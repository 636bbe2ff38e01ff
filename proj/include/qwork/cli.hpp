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

// Command-line front end. Every command writes its result to `out` and
// raises the library's error types; run() maps them to exit codes.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qwork/phasequbit.hpp"

namespace qwork::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitSelftestFailed = 1,
  kExitInputError = 2,
  kExitContractViolation = 3,
  kExitSolverFailure = 4,
};

// kind: vn | min | max | shannon (Shannon entropy of the diagonal).
void cmd_entropy(const std::filesystem::path& state_file, const std::string& kind, std::ostream& out);

// regime: ss | ms. Without Hamiltonian files both sides are trivial; a
// missing --h-out defaults to --h-in when the dimensions agree.
void cmd_workcost(const std::filesystem::path& channel_file, const std::filesystem::path& state_file,
                  const std::string& regime, const std::optional<std::filesystem::path>& h_in_file,
                  const std::optional<std::filesystem::path>& h_out_file, std::ostream& out);

void cmd_protocol_report(const std::filesystem::path& protocol_file, double x,
                         const std::string& regime, std::ostream& out);

struct CurvesConfig {
  phasequbit::Figure fig = phasequbit::Figure::kFig2;
  double alpha = phasequbit::kDefaultAlpha;
  double w_min = 0.05;
  double w_max = 2.0;
  int w_points = 101;
  std::vector<double> energies{0.0, 0.5, 1.0, 2.0, 5.0, 10.0};
  std::filesystem::path out_path;  // empty writes to the stream
};

void cmd_curves(const CurvesConfig& config, std::ostream& out);

// Quick end-to-end checks; returns true when all pass.
bool cmd_selftest(std::uint64_t seed, std::ostream& out);

// CSV with header E,w,delta_phi_ss,sqrtn_dphi_ms,r_opt,m_opt,theta_opt.
std::string curves_csv(const std::vector<phasequbit::CurvePoint>& points);
// 9 significant digits; "inf", "nan", and "3.14159265359" for π.
std::string format_csv_value(double v);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwork::cli
