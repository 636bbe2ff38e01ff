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

#include "qwork/cli.hpp"

#include <cmath>
#include <numbers>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qwork/channel.hpp"
#include "qwork/entropy.hpp"
#include "qwork/errors.hpp"
#include "qwork/estimation.hpp"
#include "qwork/io.hpp"
#include "qwork/protocol.hpp"

namespace qwork::cli {
namespace {

namespace fs = std::filesystem;

void print_scalar(std::ostream& out, double v) {
  // Suppress rounding residue below the printed precision.
  if (std::abs(v) < 5e-13) v = 0.0;
  out << std::setprecision(12) << v << "\n";
}

Regime parse_regime(const std::string& regime) {
  if (regime == "ss") return Regime::kSingleShot;
  if (regime == "ms") return Regime::kMultiShot;
  throw InvalidArgument("regime must be 'ss' or 'ms'");
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
  xs.back() = hi;
  return xs;
}

}  // namespace

void cmd_entropy(const fs::path& state_file, const std::string& kind, std::ostream& out) {
  const DensityOperator rho = io::read_state_file(state_file);
  double v = 0.0;
  if (kind == "vn") {
    v = von_neumann(rho);
  } else if (kind == "min") {
    v = h_min(rho);
  } else if (kind == "max") {
    v = h_max(rho);
  } else if (kind == "shannon") {
    std::vector<double> diag(rho.dim());
    for (int i = 0; i < rho.dim(); ++i) diag[i] = std::max(rho.matrix()(i, i).real(), 0.0);
    double total = 0.0;
    for (double d : diag) total += d;
    for (double& d : diag) d /= total;
    v = shannon(ProbabilityVector(diag));
  } else {
    throw InvalidArgument("entropy kind must be vn, min, max or shannon");
  }
  print_scalar(out, v);
}

void cmd_workcost(const fs::path& channel_file, const fs::path& state_file, const std::string& regime,
                  const std::optional<fs::path>& h_in_file, const std::optional<fs::path>& h_out_file,
                  std::ostream& out) {
  const Regime r = parse_regime(regime);
  const KrausChannel c = io::read_channel_file(channel_file);
  const DensityOperator rho = io::read_state_file(state_file);
  if (rho.dim() != c.dim_in()) throw InvalidArgument("state and channel input dimensions differ");

  const bool general = h_in_file.has_value() || h_out_file.has_value();
  const HamiltonianSpec h_in =
      h_in_file ? io::read_hamiltonian_file(*h_in_file) : HamiltonianSpec::degenerate(c.dim_in());
  HamiltonianSpec h_out = HamiltonianSpec::degenerate(c.dim_out());
  if (h_out_file) {
    h_out = io::read_hamiltonian_file(*h_out_file);
  } else if (h_in_file && c.dim_out() == c.dim_in()) {
    h_out = h_in;
  }
  if (h_in.dim() != c.dim_in() || h_out.dim() != c.dim_out()) {
    throw InvalidArgument("Hamiltonian dimensions do not match the channel");
  }

  double w = 0.0;
  if (r == Regime::kMultiShot) {
    w = work_ms(rho, apply(c, rho), h_in, h_out);
  } else if (general) {
    w = work_ss_general(c, rho, h_in, h_out);
  } else {
    w = work_ss_deg(c, rho);
  }
  print_scalar(out, w);
}

void cmd_protocol_report(const fs::path& protocol_file, double x, const std::string& regime,
                         std::ostream& out) {
  const ProtocolSpec spec = io::read_protocol_file(protocol_file);
  const WorkReport report = work_report(spec, x, parse_regime(regime));
  io::Json j;
  j["regime"] = regime;
  j["x"] = x;
  j["w_prep"] = report.w_prep;
  j["w_meas"] = report.w_meas;
  j["w_extract"] = report.w_extract;
  j["w_total"] = report.w_total;
  j["w_credit"] = report.w_credit;
  j["eta"] = report.eta ? io::Json(*report.eta) : io::Json(nullptr);
  out << j.dump() << "\n";
}

std::string format_csv_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::numbers::pi) return "3.14159265359";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string curves_csv(const std::vector<phasequbit::CurvePoint>& points) {
  std::ostringstream csv;
  csv << "E,w,delta_phi_ss,sqrtn_dphi_ms,r_opt,m_opt,theta_opt\n";
  for (const auto& p : points) {
    csv << format_csv_value(p.E) << ',' << format_csv_value(p.w) << ','
        << format_csv_value(p.delta_phi_ss) << ',' << format_csv_value(p.sqrtn_dphi_ms) << ','
        << format_csv_value(p.r_opt) << ',' << format_csv_value(p.m_opt) << ','
        << format_csv_value(p.theta_opt) << '\n';
  }
  return csv.str();
}

void cmd_curves(const CurvesConfig& config, std::ostream& out) {
  if (config.w_points < 2) throw InvalidArgument("curves: --w-points must be at least 2");
  if (!(std::isfinite(config.w_min) && std::isfinite(config.w_max) && config.w_max > config.w_min)) {
    throw InvalidArgument("curves: need w_min < w_max");
  }
  const auto points = phasequbit::curve(config.fig, linspace(config.w_min, config.w_max, config.w_points),
                                        config.energies, config.alpha);
  const std::string csv = curves_csv(points);
  if (config.out_path.empty()) {
    out << csv;
  } else {
    io::write_text_atomic(config.out_path, csv);
  }
}

bool cmd_selftest(std::uint64_t seed, std::ostream& out) {
  out << "seed: " << seed << "\n";
  bool all = true;
  const auto check = [&](const char* name, double got, double want, double tol) {
    const bool ok = std::abs(got - want) <= tol;
    all = all && ok;
    out << (ok ? "PASS " : "FAIL ") << name << " got=" << std::setprecision(12) << got
        << " want=" << want << " tol=" << tol << "\n";
  };

  const DensityOperator mixed = DensityOperator::maximally_mixed(Dims{2});
  const KrausChannel reset = KrausChannel::constant(2, DensityOperator(outer(basis_ket(2, 0)), Dims{2}));
  check("landauer_ss", work_ss_deg(reset, mixed), 1.0, 1e-12);
  check("landauer_ms", work_ms(mixed, apply(reset, mixed), HamiltonianSpec::degenerate(2),
                               HamiltonianSpec::degenerate(2)),
        1.0, 1e-12);

  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const DensityOperator bell_state(outer(bell), Dims{2, 2});
  check("bell_cond_h_min", cond_h_min(bell_state, 0), -1.0, 1e-6);
  check("bell_cond_h_max", cond_h_max(bell_state, 0), -1.0, 1e-6);

  check("c_meas_10", phasequbit::c_meas(10.0), 8.0028, 1e-3);
  check("ss_w2", phasequbit::solve_opt_ss(2.0, 0.0).delta_phi, std::acos(1.0 - 2.0 * phasequbit::kDefaultAlpha),
        1e-9);
  check("ms_w1", phasequbit::solve_opt_ms(1.0, 0.0).sqrtn_dphi, 1.6438903844, 1e-8);
  check("ms_w1_numeric", phasequbit::solve_opt_ms(1.0, 0.0, phasequbit::Method::kNumeric).sqrtn_dphi,
        1.6438903844, 1e-4);

  phasequbit::ProbeParams p;
  p.r = 0.9;
  p.m = 0.9;
  std::mt19937_64 rng(seed);
  std::vector<double> truths;
  for (int i = 0; i < 10; ++i) truths.push_back(2.0 * std::numbers::pi * i / 10.0);
  const double coverage = estimation::empirical_coverage(phasequbit::phase_model(p), p.alpha, truths, 400, rng);
  const bool ok = coverage >= p.alpha - 0.05;
  all = all && ok;
  out << (ok ? "PASS " : "FAIL ") << "coverage got=" << coverage << " min=" << p.alpha - 0.05 << "\n";
  return all;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermodynamic work costs of quantum estimation"};
  app.require_subcommand(1);

  std::string state_file;
  std::string kind = "vn";
  auto* entropy = app.add_subcommand("entropy", "Entropy of a state in bits");
  entropy->add_option("--state", state_file, "State JSON file")->required();
  entropy->add_option("--kind", kind, "vn | min | max | shannon")->capture_default_str();

  std::string channel_file;
  std::string regime = "ss";
  std::string h_in_file;
  std::string h_out_file;
  auto* workcost = app.add_subcommand("workcost", "Work cost of a channel on a state");
  workcost->add_option("--channel", channel_file, "Channel JSON file")->required();
  workcost->add_option("--state", state_file, "Input state JSON file")->required();
  workcost->add_option("--regime", regime, "ss | ms")->capture_default_str();
  workcost->add_option("--h-in", h_in_file, "Input Hamiltonian JSON file");
  workcost->add_option("--h-out", h_out_file, "Output Hamiltonian JSON file");

  std::string protocol_file;
  double x = 0.0;
  auto* protocol = app.add_subcommand("protocol", "Estimation protocol tools");
  protocol->require_subcommand(1);
  auto* report = protocol->add_subcommand("report", "Work ledger of the protocol");
  report->add_option("--file", protocol_file, "Protocol JSON file")->required();
  report->add_option("--x", x, "Parameter value")->capture_default_str();
  report->add_option("--regime", regime, "ss | ms")->capture_default_str();

  CurvesConfig curves_config;
  std::string out_path;
  auto* curves = app.add_subcommand("curves", "Optimal precision at fixed work (CSV)");
  curves->require_subcommand(1);
  auto* fig2 = curves->add_subcommand("fig2", "Trivial Hamiltonian");
  auto* fig3 = curves->add_subcommand("fig3", "Probe energy gap E");
  for (auto* sub : {fig2, fig3}) {
    sub->add_option("--alpha", curves_config.alpha, "Confidence level")->capture_default_str();
    sub->add_option("--w-min", curves_config.w_min, "Smallest work value")->capture_default_str();
    sub->add_option("--w-max", curves_config.w_max, "Largest work value")->capture_default_str();
    sub->add_option("--w-points", curves_config.w_points, "Number of work values")->capture_default_str();
    sub->add_option("--out", out_path, "Output CSV path (default: standard output)");
  }
  fig3->add_option("--energies", curves_config.energies, "Energy gaps")->delimiter(',')->capture_default_str();

  std::uint64_t seed = 20260101;
  auto* selftest = app.add_subcommand("selftest", "Run built-in consistency checks");
  selftest->add_option("--seed", seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*entropy) {
      cmd_entropy(state_file, kind, out);
    } else if (*workcost) {
      const auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<fs::path>(s); };
      cmd_workcost(channel_file, state_file, regime, opt(h_in_file), opt(h_out_file), out);
    } else if (*report) {
      cmd_protocol_report(protocol_file, x, regime, out);
    } else if (*curves) {
      curves_config.fig = *fig2 ? phasequbit::Figure::kFig2 : phasequbit::Figure::kFig3;
      curves_config.out_path = out_path;
      cmd_curves(curves_config, out);
    } else if (*selftest) {
      return cmd_selftest(seed, out) ? kExitOk : kExitSelftestFailed;
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << "\n";
    return kExitContractViolation;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace qwork::cli
