// Copyright 2026 The otoclab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTOCLAB_CIRCUITS_HPP
#define OTOCLAB_CIRCUITS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "otoclab/common.hpp"

namespace otoclab {

// Gate kinds: "H" (qubit), "CZ" (qubits), "CNOT" (|i,j> -> |i, i+j mod d>,
// control first), "SWAP". Targets are site indices.
struct Gate {
  std::string kind;
  std::vector<std::size_t> targets;
};

struct NamedCircuit {
  std::string name;
  std::vector<std::size_t> site_dims;
  std::vector<Gate> gates;
  Matrix unitary;  // assembled from the gate list, gates[0] applied first
};

Matrix gate_matrix(const Gate& gate, const std::vector<std::size_t>& site_dims);
Matrix assemble_circuit(const std::vector<std::size_t>& site_dims,
                        const std::vector<Gate>& gates);

// 3-qubit Hadamard/control-Z scrambler: every one-body Pauli delocalizes to
// weight three and the averaged OTOC equals 1/4 for any single-qubit D.
NamedCircuit qubit_clifford_scrambler();

// CNOT-only 3-qubit circuit that permutes computational basis states. It
// teleports computational inputs but fails on superpositions (checked at the
// D = output-site-1 pairing).
NamedCircuit classical_scrambler();

// Two-qutrit scrambler CNOT_{2->1} CNOT_{1->2}: |i,j> -> |2i+j, i+j> mod 3.
NamedCircuit qutrit_scrambler();

// |i,j> -> |i, i+j> (forward) or |i,j> -> |i+j, j> (control and target
// switched), mod 3.
Matrix qutrit_cnot(bool reversed = false);

Matrix swap_gate(std::size_t d);

// Haar-random unitary: QR of a complex Ginibre matrix with the R-diagonal
// phase fix. Deterministic for a given seed.
Matrix haar_sample(std::size_t dim, std::uint64_t seed);

// Uniformly random n-qubit Clifford as a dense matrix: uniform symplectic
// image data plus uniform sign bits, synthesized through stabilizer
// projectors. Deterministic for a given seed; global phase canonicalized.
Matrix clifford_sample(std::size_t n_qubits, std::uint64_t seed);

}  // namespace otoclab

#endif  // OTOCLAB_CIRCUITS_HPP
