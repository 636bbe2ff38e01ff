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

#include "qwork/io.hpp"

#include <cmath>
#include <numbers>
#include <fstream>
#include <sstream>

#include "qwork/errors.hpp"
#include "qwork/phasequbit.hpp"

namespace qwork::io {
namespace {

namespace fs = std::filesystem;

struct Resolved {
  Json value;
  fs::path base;
};

// Follows a path string to the JSON document it names.
Resolved resolve(const Json& j, const fs::path& base) {
  if (!j.is_string()) return {j, base};
  const fs::path target = base / j.get<std::string>();
  return {read_json_file(target), target.parent_path()};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

int integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidArgument(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Dims dims_from(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("dims must be an array of integers");
  Dims dims;
  for (const auto& d : j) {
    if (!d.is_number_integer()) throw InvalidArgument("dims must be an array of integers");
    dims.push_back(d.get<int>());
  }
  return dims;
}

// Nested rows, or a flat row-major list reshaped to rows x cols (square when
// the shape is not given).
std::vector<std::vector<double>> rows_from(const Json& j, const char* what, int rows, int cols) {
  if (!j.is_array() || j.empty()) throw InvalidArgument(std::string(what) + " must be a nonempty array");
  std::vector<std::vector<double>> out;
  if (j.front().is_array()) {
    for (const auto& row : j) {
      if (!row.is_array()) throw InvalidArgument(std::string(what) + " must be an array of rows");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) throw InvalidArgument(std::string(what) + " entries must be numbers");
        r.push_back(v.get<double>());
      }
      if (!out.empty() && r.size() != out.front().size()) {
        throw InvalidArgument(std::string(what) + " rows have different lengths");
      }
      out.push_back(std::move(r));
    }
  } else {
    std::vector<double> flat;
    for (const auto& v : j) {
      if (!v.is_number()) throw InvalidArgument(std::string(what) + " entries must be numbers");
      flat.push_back(v.get<double>());
    }
    const auto n = static_cast<long>(flat.size());
    if (rows < 0 || cols < 0) {
      const auto side = std::lround(std::sqrt(static_cast<double>(n)));
      rows = cols = static_cast<int>(side);
    }
    if (static_cast<long>(rows) * cols != n) {
      throw InvalidArgument(std::string(what) + " has the wrong number of entries");
    }
    for (int r = 0; r < rows; ++r) out.emplace_back(flat.begin() + r * cols, flat.begin() + (r + 1) * cols);
  }
  if (rows >= 0 && (static_cast<int>(out.size()) != rows || static_cast<int>(out.front().size()) != cols)) {
    throw InvalidArgument(std::string(what) + " has the wrong shape");
  }
  return out;
}

std::vector<double> numbers_from(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InvalidArgument(std::string(what) + " must be a nonempty array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InvalidArgument(std::string(what) + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

CMatrix hermitian_exp_phase(const CMatrix& g, double x) {
  if (!is_hermitian(g, 1e-10)) throw InvalidArgument("generator must be Hermitian");
  const EigenDecomposition eig = eig_hermitian(g);
  CVector phases(eig.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -x * eig.values(i));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ProtocolSpec::ProbeFamily probe_family_from(const Json& j, const fs::path& base) {
  const std::string family = field(j, "family").get<std::string>();
  if (family == "bloch") {
    phasequbit::ProbeParams p;
    p.r = number(j, "r");
    p.theta = number_or(j, "theta", (std::numbers::pi / 2));
    p.validate();
    return [p](double x) {
      phasequbit::ProbeParams q = p;
      q.phi = x;
      return phasequbit::probe_state(q);
    };
  }
  if (family == "fixed") {
    const auto s = resolve(field(j, "state"), base);
    const DensityOperator rho = state_from_json(s.value);
    return [rho](double) { return rho; };
  }
  if (family == "unitary_phase") {
    const auto s = resolve(field(j, "state"), base);
    const auto g = resolve(field(j, "generator"), base);
    const DensityOperator rho = state_from_json(s.value);
    const CMatrix gen = matrix_from_json(g.value);
    if (gen.rows() != rho.dim()) throw InvalidArgument("generator and probe state dimensions differ");
    return [rho, gen](double x) {
      const CMatrix u = hermitian_exp_phase(gen, x);
      return DensityOperator(u * rho.matrix() * u.adjoint(), rho.dims());
    };
  }
  throw InvalidArgument("unknown probe family '" + family + "'");
}

}  // namespace

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

CMatrix matrix_from_json(const Json& j, int rows_hint, int cols_hint) {
  try {
    const auto re = rows_from(field(j, "re"), "re", rows_hint, cols_hint);
    const auto rows = static_cast<Eigen::Index>(re.size());
    const auto cols = static_cast<Eigen::Index>(re.front().size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = re[r][c];
    }
    if (j.contains("im")) {
      const auto im = rows_from(j.at("im"), "im", static_cast<int>(rows), static_cast<int>(cols));
      if (static_cast<Eigen::Index>(im.size()) != rows ||
          static_cast<Eigen::Index>(im.front().size()) != cols) {
        throw InvalidArgument("re and im have different shapes");
      }
      for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) += Complex(0.0, im[r][c]);
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed matrix: ") + e.what());
  }
}

Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return Json{{"re", re}, {"im", im}};
}

DensityOperator state_from_json(const Json& j) {
  try {
    CMatrix rho;
    if (j.contains("ket")) {
      const Json& ket = j.at("ket");
      const auto re = numbers_from(field(ket, "re"), "ket.re");
      CVector v(static_cast<Eigen::Index>(re.size()));
      for (std::size_t i = 0; i < re.size(); ++i) v(i) = re[i];
      if (ket.contains("im")) {
        const auto im = numbers_from(ket.at("im"), "ket.im");
        if (im.size() != re.size()) throw InvalidArgument("ket re and im have different lengths");
        for (std::size_t i = 0; i < im.size(); ++i) v(i) += Complex(0.0, im[i]);
      }
      const double norm = v.norm();
      if (std::abs(norm - 1.0) > 1e-9) throw InvalidArgument("ket is not normalized");
      rho = outer(v / norm);
    } else {
      const int d = j.contains("dims") ? total_dim(dims_from(j.at("dims"))) : -1;
      rho = matrix_from_json(j, d, d);
    }
    Dims dims = j.contains("dims") ? dims_from(j.at("dims")) : Dims{static_cast<int>(rho.rows())};
    return DensityOperator(rho, dims);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed state: ") + e.what());
  }
}

Json state_to_json(const DensityOperator& rho) {
  Json j = matrix_to_json(rho.matrix());
  j["dims"] = rho.dims();
  return j;
}

HamiltonianSpec hamiltonian_from_json(const Json& j) {
  return HamiltonianSpec(numbers_from(field(j, "energies"), "energies"));
}

Json hamiltonian_to_json(const HamiltonianSpec& h) { return Json{{"energies", h.energies()}}; }

KrausChannel channel_from_json(const Json& j, const fs::path& base) {
  try {
    const std::string kind = j.value("kind", std::string("kraus"));
    if (kind == "identity") return KrausChannel::identity(integer(j, "dim"));
    if (kind == "reset") {
      const int d = integer(j, "dim");
      if (d < 1) throw InvalidArgument("reset channel needs a positive dimension");
      return KrausChannel::constant(d, DensityOperator(outer(basis_ket(d, 0)), Dims{d}));
    }
    if (kind == "unitary") {
      const auto u = resolve(field(j, "unitary"), base);
      return KrausChannel::unitary(matrix_from_json(u.value));
    }
    if (kind != "kraus") throw InvalidArgument("unknown channel kind '" + kind + "'");
    const Json& list = field(j, "kraus");
    if (!list.is_array() || list.empty()) throw InvalidArgument("kraus must be a nonempty array");
    const int out_hint = j.contains("dim_out") ? integer(j, "dim_out") : -1;
    const int in_hint = j.contains("dim_in") ? integer(j, "dim_in") : -1;
    if ((out_hint < 0) != (in_hint < 0)) throw InvalidArgument("give both dim_in and dim_out or neither");
    std::vector<CMatrix> ops;
    for (const auto& op : list) ops.push_back(matrix_from_json(resolve(op, base).value, out_hint, in_hint));
    const int dim_out = static_cast<int>(ops.front().rows());
    const int dim_in = static_cast<int>(ops.front().cols());
    Dims out_dims = j.contains("output_dims") ? dims_from(j.at("output_dims")) : Dims{};
    return KrausChannel(std::move(ops), dim_in, dim_out, out_dims);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed channel: ") + e.what());
  }
}

Json channel_to_json(const KrausChannel& c) {
  Json list = Json::array();
  for (const auto& op : c.ops()) list.push_back(matrix_to_json(op));
  Json j{{"dim_in", c.dim_in()}, {"dim_out", c.dim_out()}, {"kraus", list}};
  if (!c.output_dims().empty()) j["output_dims"] = c.output_dims();
  return j;
}

ProtocolSpec protocol_from_json(const Json& j, const fs::path& base) {
  try {
    if (j.contains("phase_qubit")) {
      const Json& q = j.at("phase_qubit");
      phasequbit::ProbeParams p;
      p.r = number_or(q, "r", p.r);
      p.theta = number_or(q, "theta", p.theta);
      p.m = number_or(q, "m", p.m);
      p.phi_meas = number_or(q, "phi_meas", p.phi_meas);
      p.E = number_or(q, "E", p.E);
      return phasequbit::protocol(p);
    }
    const auto mem = resolve(field(j, "memory"), base);
    const DensityOperator memory = state_from_json(mem.value);
    const auto u = resolve(field(j, "unitary"), base);
    const CMatrix unitary = matrix_from_json(u.value);
    const auto probe = resolve(field(j, "probe"), base);
    auto family = probe_family_from(probe.value, probe.base);

    const int dim_m = memory.dim();
    if (dim_m < 1 || unitary.rows() % dim_m != 0) {
      throw InvalidArgument("unitary dimension is not a multiple of the memory dimension");
    }
    const int dim_s = static_cast<int>(unitary.rows()) / dim_m;
    const auto hamiltonian = [&](const char* key, int dim) {
      if (!j.contains(key)) return HamiltonianSpec::degenerate(dim);
      HamiltonianSpec h = hamiltonian_from_json(resolve(j.at(key), base).value);
      if (h.dim() != dim) throw InvalidArgument(std::string(key) + " has the wrong dimension");
      return h;
    };
    return ProtocolSpec(hamiltonian("h_s", dim_s), hamiltonian("h_m", dim_m), std::move(family),
                        memory.with_dims(Dims{dim_m}), unitary);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed protocol: ") + e.what());
  }
}

DensityOperator read_state_file(const fs::path& path) { return state_from_json(read_json_file(path)); }

void write_state_file(const fs::path& path, const DensityOperator& rho) {
  write_text_atomic(path, state_to_json(rho).dump(2) + "\n");
}

HamiltonianSpec read_hamiltonian_file(const fs::path& path) {
  return hamiltonian_from_json(read_json_file(path));
}

KrausChannel read_channel_file(const fs::path& path) {
  return channel_from_json(read_json_file(path), path.parent_path());
}

ProtocolSpec read_protocol_file(const fs::path& path) {
  return protocol_from_json(read_json_file(path), path.parent_path());
}

void write_text_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw InvalidArgument("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw InvalidArgument("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

}  // namespace qwork::io
