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

#ifndef OTOCLAB_GROVER_HPP
#define OTOCLAB_GROVER_HPP

#include "otoclab/common.hpp"
#include "otoclab/geometry.hpp"
#include "otoclab/state.hpp"

namespace otoclab {

// Rotation bookkeeping for the deterministic decoder: sin(theta/2) = 1/d_A,
// success after m iterations sin^2((m + 1/2) theta) in the ideal regime.
struct GroverPlan {
  std::size_t d_a;
  double theta;
  int m_optimal;
  double predicted_success(int m) const;
};

GroverPlan make_grover_plan(std::size_t d_a);

struct GroverReflections {
  Matrix w_d;  // 1 - 2 (I ⊗ Pi_DDp)
  Matrix w_a;  // 2 (I ⊗ P~_A) - 1 with P~_A the back-evolved EPR projector
};

// Full-space reflection matrices in the output-form basis
// [R, C, D, Dp, Cp, Rp]; both are Hermitian and unitary.
GroverReflections build_reflections(const Matrix& u, const OtocGeometry& geom);

struct GroverResult {
  PureState state;          // |Psi(m)>, output form
  double success_prob;      // <Pi_DDp>
  double fidelity_to_out;   // |<Psi_out | Psi(m)>|^2
  double predicted;         // sin^2((m + 1/2) theta)
  bool ideal_regime;        // I2(R, BpD) >= 2 log2 d_A - 0.05
  // Evolution-operator applications consumed (U, U^*, U^T): two to prepare
  // |Psi_in> and two per W_A reflection, so the circuit cost is linear in m.
  std::size_t evolution_applications;
};

// Applies (W_A W_D)^m to |Psi_in>. Works for any unitary; the closed-form
// prediction is asserted only when the ideal-regime flag is set.
GroverResult grover_decode(const Matrix& u, const OtocGeometry& geom, int m);

// Probability of finding the EPR pair on (D, Dp) in a decoded state; this is
// the post-selection check at the end of the deterministic protocol.
double verify_epr_after_decode(const PureState& state);

}  // namespace otoclab

#endif  // OTOCLAB_GROVER_HPP
