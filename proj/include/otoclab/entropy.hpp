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

#ifndef OTOCLAB_ENTROPY_HPP
#define OTOCLAB_ENTROPY_HPP

#include <optional>
#include <string>
#include <vector>

#include "otoclab/channel.hpp"
#include "otoclab/common.hpp"
#include "otoclab/geometry.hpp"
#include "otoclab/state.hpp"

namespace otoclab {

// -log2 Tr rho^2, in bits.
double renyi2_bits(const DensityMatrix& rho);

// -sum lambda log2 lambda over eigenvalues > 1e-12. Eigenvalues in
// [-1e-9, 0) are clipped to 0; anything lower raises PsdViolation.
double von_neumann_bits(const DensityMatrix& rho);

// I^(2)(X, Y) = S2_X + S2_Y - S2_XY for disjoint register sets.
double mutual_info_renyi2(const DensityMatrix& rho,
                          const std::vector<std::string>& x,
                          const std::vector<std::string>& y);
double mutual_info_von_neumann(const DensityMatrix& rho,
                               const std::vector<std::string>& x,
                               const std::vector<std::string>& y);

// Entropies of the channel state on (R, C, D, Bp) and the derived noise
// parameter. The operationally exact form, equal to d_A^2 P_EPR F_EPR for
// every CPTP channel, is delta_exact = d_C 2^{-S2_RBpD}. The two entropy-
// ratio forms delta = 2^{I2(R,BpD)} / 2^{S2_BpD + S2_D - S2_Bp} and
// delta_alt = 2^{S2_C - S2_RBpD} coincide with it whenever the output
// ensemble is maximally mixed (all unital channels, in particular unitaries
// and the depolarizing family); for non-unital channels they deviate.
struct EntropyReport {
  double s2_r, s2_c, s2_d, s2_bp, s2_bpd, s2_rbpd;
  double vn_r, vn_c, vn_d, vn_bp, vn_bpd, vn_rbpd;
  double i2_r_bpd;          // S2_R + S2_BpD - S2_RBpD
  double otoc_combination;  // S2_BpD + S2_D - S2_Bp
  double delta;             // mutual-information form
  double delta_alt;         // purity-ratio form
  double delta_exact;       // d_C 2^{-S2_RBpD}; the measured quantity
};

EntropyReport entropy_report(const DensityMatrix& channel_state);

struct NoiseDelta {
  double delta;            // delta_exact of the report
  bool forms_agree;        // both entropy-ratio forms match within 1e-9
  EntropyReport report;
};

// Noise parameter from channel_state_rep(q). For unital channels the two
// entropy-ratio forms are additionally asserted equal to the exact value
// within 1e-9 (their derivation needs the maximally mixed output ensemble).
NoiseDelta noise_delta(const Channel& q, const OtocGeometry& geom);

// Closed form for the depolarizing channel: (1-p)^2 + (2p - p^2)/d_D^2.
double depolarizing_delta(double p, std::size_t d_d);

// Sandwiched Renyi-2 divergence
//   D_2(f||g) = log2( Tr[(g^{-1/4} f g^{-1/4})^2] / Tr f ).
// g may be any PSD matrix. If g is singular, the inverse powers are taken on
// its support; that path must be explicitly enabled and additionally requires
// supp(f) ⊆ supp(g).
double sandwiched_renyi2_divergence(const Matrix& f, const Matrix& g,
                                    bool allow_singular_g = false);

// Relative entropy D_1(f||g) = Tr[f (log2 f - log2 g)] / Tr f.
double relative_entropy_bits(const Matrix& f, const Matrix& g,
                             bool allow_singular_g = false);

struct FiniteTempAmplitude {
  double p;                 // thermofield-double projection amplitude on DDp
  double bound_bits;        // -log2 P
  double mi_von_neumann;    // I(R, BpD) of the finite-temperature pure state
  double mi_renyi2;
  // Preconditions of the bound, measured: the projection target matches the
  // true D marginal, and the output ensemble factorizes over C|D.
  bool target_matches_marginal = false;
  bool output_factorized = false;
  bool bound_asserted = false;
  // log2 P minus the printed divergence expression
  // D2(rho_{D Bp} || rho_D_target^{-1} ⊗ rho_Bp); recorded, not asserted.
  std::optional<double> printed_divergence_gap;
};

// Finite-temperature protocol amplitude: the state representation with every
// EPR dot replaced by the matching rho^{1/2}, projected on (D, Dp) onto the
// thermofield double of rho_d_target. The mutual-information bound
// I(R, BpD) >= -log2 P - 1e-9 is asserted when its preconditions hold, i.e.
// the target is the true D marginal and U(rho_A ⊗ rho_B)U^dagger factorizes
// across the C|D cut (both are measured; either failing disables the assert
// and is reported in the result).
FiniteTempAmplitude finite_temp_amplitude(const Matrix& u,
                                          const OtocGeometry& geom,
                                          const Matrix& rho_a,
                                          const Matrix& rho_b,
                                          const Matrix& rho_d_target);

}  // namespace otoclab

#endif  // OTOCLAB_ENTROPY_HPP
