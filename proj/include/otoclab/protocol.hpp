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

#ifndef OTOCLAB_PROTOCOL_HPP
#define OTOCLAB_PROTOCOL_HPP

#include <optional>
#include <string>
#include <vector>

#include "otoclab/channel.hpp"
#include "otoclab/common.hpp"
#include "otoclab/entropy.hpp"
#include "otoclab/geometry.hpp"
#include "otoclab/otoc.hpp"
#include "otoclab/state.hpp"
#include "otoclab/weyl.hpp"

namespace otoclab {

enum class InputMode { EprReference, FixedState };

// Teleportation-based decoding protocol on six registers
// (R, A, B, Bp, Ap, Rp) -> (R, C, D, Dp, Cp, Rp). The forward evolution acts
// on (A, B); the backward copy acts on (Ap, Bp) with the conjugate evolution.
// EPR pairs are matched (|jj>); any projection pairing is reached by
// choosing the D-site subset of the geometry.
struct ProtocolConfig {
  EvolutionModel evolution;
  OtocGeometry geom;
  InputMode mode = InputMode::EprReference;
  Vector fixed_state;  // dim d_A, FixedState mode only
  std::uint64_t seed = 0;
};

struct BoundsReport {
  // P_EPR/(2 eta - 1); only valid for eta > 1/2.
  std::optional<double> coherent_otoc_bound;
  double mi_bound_bits = 0.0;    // 2 log2 d_R + 2 log2 F_EPR
  double fidelity_otoc_bound = 0.0;  // 1/(d_R^2 F_EPR^2)
};

// Tunable gate on the input-state dependence of the decoding fidelity.
inline constexpr double kFidelitySpreadGate = 0.05;

struct DecodingReport {
  double p_epr = 0.0;
  double f_epr = 0.0;
  double pf = 0.0;

  std::optional<double> otoc_avg_forward;  // averaged OTOC of the forward U
  std::optional<double> i2_r_bpd;
  std::optional<double> delta_measured;  // d_A^2 P F (channel mode)
  std::optional<double> delta_entropy;   // entropy-route noise parameter
  std::optional<double> eta_measured;    // d_A^2 P F (coherent mode)
  // eta of the output-frame error V U^dagger; equals eta_measured exactly.
  std::optional<double> eta_true;
  // eta of the input-frame error U^dagger V (the expansion used by the
  // coherent OTOC bound). Coincides with eta_true when the forward evolution
  // delocalizes the error's Weyl components.
  std::optional<double> eta_input_frame;
  std::optional<double> undo;            // triple-projection check
  std::optional<EntropyReport> entropy;  // channel mode

  BoundsReport bounds;
  double rbar_marginal_distance = 0.0;  // max |rho_Rp - I/d| post-selection

  // Fixed-state mode: spread of the decoding fidelity over a state 2-design.
  // The mutual-information and OTOC bounds assume an input-independent
  // fidelity; when the spread exceeds kFidelitySpreadGate the bounds are
  // annotated unreliable.
  std::optional<double> fidelity_spread;
  bool bounds_reliable = true;

  std::size_t d_a = 0, d_b = 0, d_c = 0, d_d = 0;
  std::string mode_name;
  std::uint64_t seed = 0;
};

PureState build_psi_in_pure(const ProtocolConfig& config);
DensityMatrix build_psi_in_density(const ProtocolConfig& config);

DecodingReport run_protocol(const ProtocolConfig& config);

struct StateDecodeResult {
  double p_psi = 0.0;
  double f_psi = 0.0;
};

StateDecodeResult state_decode(const ProtocolConfig& config);

// eta = sum_P |alpha_{P,I}|^2 for E decomposed across the C|D output split.
double eta_of_error(const Matrix& e, const OtocGeometry& geom);
// The equivalent 2-norm-overlap trace formula on C ⊗ D ⊗ D'; used as a
// cross-check of eta_of_error.
double eta_trace_formula(const Matrix& e, const OtocGeometry& geom);

std::optional<double> coherent_otoc_bound(double p_epr, double eta);

// beta_{I, O_D} = (1/d) Tr(O_D O_E^dagger) measured as a coherent OTOC with
// O_A = I.
cdouble beta_coefficient(const Matrix& u, const Matrix& v,
                         const OtocGeometry& geom, const Matrix& op_d);

double fidelity_mi_bound_bits(double f_epr, std::size_t d_r);
double fidelity_otoc_bound(double f_epr, std::size_t d_r);

// <Psi_out| Pi_RRp Pi_CCp Pi_DDp |Psi_out> = 1/(d_A^2 P_EPR); approximately 1
// for maximal scramblers. Unitary mode only.
double undo_check(const ProtocolConfig& config);

struct BellDecodeResult {
  WeylOperator correction_c;  // applied on Cp
  WeylOperator correction_r;  // applied on Rp
  double fidelity;            // overlap with |Psi_out| after correction
  double outcome_probability;
};

// For Clifford evolutions, decodes an arbitrary Bell outcome (a, b) on the
// (D, Dp) pair by searching for the Weyl pair on (Cp, Rp) that restores
// |Psi_out> up to phase. Throws NotCliffordBehavior when no pair reaches
// fidelity 1 - 1e-9.
BellDecodeResult clifford_bell_decode(const ProtocolConfig& config,
                                      const WeylOperator& outcome);

// Exact state 2-design: the 6 Pauli eigenstates for d = 2, and the d(d+1)
// mutually-unbiased-basis states for odd prime d.
std::vector<Vector> state_2_design(std::size_t d);

}  // namespace otoclab

#endif  // OTOCLAB_PROTOCOL_HPP
