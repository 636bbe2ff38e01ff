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

// JSON file formats for states, matrices, Hamiltonians, channels and
// protocols, and atomic text output.
//
// Matrices are {"re": [[...], ...], "im": [[...], ...]} with "im" optional;
// "re" and "im" may also be flat row-major lists.
// States are matrices with an optional "dims" list, or {"ket": {"re", "im"}}.
// Nested objects may be replaced by a path string, resolved relative to the
// file that references it. Malformed input raises InvalidArgument.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "qwork/channel.hpp"
#include "qwork/protocol.hpp"
#include "qwork/qmat.hpp"

namespace qwork::io {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);

// A flat "re" list is reshaped to rows x cols, or to a square when no shape is given.
CMatrix matrix_from_json(const Json& j, int rows = -1, int cols = -1);
Json matrix_to_json(const CMatrix& m);

DensityOperator state_from_json(const Json& j);
Json state_to_json(const DensityOperator& rho);

// {"energies": [...]}.
HamiltonianSpec hamiltonian_from_json(const Json& j);
Json hamiltonian_to_json(const HamiltonianSpec& h);

// {"dim_in", "dim_out", "kraus": [matrix, ...], "output_dims": [...]}, where
// the dimensions are optional for nested matrices, or one of the shorthands
// {"kind": "identity", "dim": d}, {"kind": "reset", "dim": d} (to |0⟩⟨0|),
// {"kind": "unitary", "unitary": matrix}.
KrausChannel channel_from_json(const Json& j, const std::filesystem::path& base = {});
Json channel_to_json(const KrausChannel& c);

// Fields h_s, h_m (optional, default trivial), memory, unitary and probe:
//   {"family": "bloch", "r": r, "theta": θ}            phase x on the equator
//   {"family": "unitary_phase", "state": ρ, "generator": G}   e^(-ixG) ρ e^(ixG)
//   {"family": "fixed", "state": ρ}
// or the single field {"phase_qubit": {"r", "theta", "m", "phi_meas", "E"}}.
ProtocolSpec protocol_from_json(const Json& j, const std::filesystem::path& base = {});

DensityOperator read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const DensityOperator& rho);
HamiltonianSpec read_hamiltonian_file(const std::filesystem::path& path);
KrausChannel read_channel_file(const std::filesystem::path& path);
ProtocolSpec read_protocol_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qwork::io
