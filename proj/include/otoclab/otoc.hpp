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

#ifndef OTOCLAB_OTOC_HPP
#define OTOCLAB_OTOC_HPP

#include "otoclab/channel.hpp"
#include "otoclab/common.hpp"
#include "otoclab/geometry.hpp"

namespace otoclab {

// (1/d) Tr(O_A O_D(t) O_A^dagger O_D^dagger(t)) with O_D(t) = U^dagger O_D U,
// O_A on the input region A and O_D on the output region D.
cdouble otoc_point(const Matrix& u, const OtocGeometry& geom,
                   const Matrix& op_a, const Matrix& op_d);

// The same correlator evaluated through the doubled-Hilbert-space
// construction <Phi_{O_A}| I ⊗ O_D ⊗ O_D^* ⊗ I |Phi_{O_A}>; agrees with
// otoc_point within 1e-10 on every instance.
cdouble otoc_doubled(const Matrix& u, const OtocGeometry& geom,
                     const Matrix& op_a, const Matrix& op_d);

// Uniform average over all Weyl pairs on (A, D), identities included.
double otoc_avg(const Matrix& u, const OtocGeometry& geom);

// Late-time scrambled asymptote 1/d_A^2 + 1/d_D^2 - 1/(d_A^2 d_D^2).
double scrambled_value(std::size_t d_a, std::size_t d_d);

// Channel-evolved OTOC with the Heisenberg image O~(t) = sum_k K^dagger O K.
cdouble otoc_channel_point(const Channel& q, const OtocGeometry& geom,
                           const Matrix& op_a, const Matrix& op_d);
double otoc_channel_avg(const Channel& q, const OtocGeometry& geom);

// Coherent-error OTOC: backward evolution by V instead of U,
// (1/d) Tr(O_A U^dagger O_D U O_A^dagger V^dagger O_D^dagger V).
cdouble otoc_coherent(const Matrix& u, const Matrix& v,
                      const OtocGeometry& geom, const Matrix& op_a,
                      const Matrix& op_d);
double otoc_coherent_avg(const Matrix& u, const Matrix& v,
                         const OtocGeometry& geom);

enum class OtocSide { OneSided, TwoSided };

struct FiniteTempOtoc {
  cdouble value;
  bool input_factorized;  // rho_AB = rho_A ⊗ rho_B within 1e-8
};

// Finite-temperature OTOC with O_X, O_Z on A and O_Y, O_W on D:
//   one-sided: Tr(O_X O_Y(t) O_Z O_W(t) rho_AB)
//   two-sided: Tr(O_X O_Y(t) sqrt(rho_AB) O_Z O_W(t) sqrt(rho_AB)).
// A non-factorized rho_AB is flagged, not rejected.
FiniteTempOtoc otoc_finite_temp(const Matrix& u, const OtocGeometry& geom,
                                const Matrix& op_x, const Matrix& op_y,
                                const Matrix& op_z, const Matrix& op_w,
                                const Matrix& rho_ab, OtocSide side);

// Exact Haar-ensemble mean of otoc_avg, from the unitary 2-design twirl
// E[W M W^dagger] = alpha M + beta Tr(M) I solved per traceless Weyl pair.
double haar_mean_otoc_exact(const OtocGeometry& geom);

}  // namespace otoclab

#endif  // OTOCLAB_OTOC_HPP
