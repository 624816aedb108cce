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

#ifndef OTOCLAB_CHANNEL_HPP
#define OTOCLAB_CHANNEL_HPP

#include <variant>
#include <vector>

#include "otoclab/common.hpp"
#include "otoclab/geometry.hpp"
#include "otoclab/state.hpp"

namespace otoclab {

// CPTP map in Kraus form over a fixed input = output space.
class Channel {
 public:
  explicit Channel(std::vector<Matrix> kraus_ops, double tol = kStructuralTol);

  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& rho) const;            // sum_k K rho K^dagger
  Matrix heisenberg(const Matrix& op) const;        // sum_k K^dagger op K

 private:
  std::size_t dim_;
  std::vector<Matrix> kraus_;
};

Channel unitary_channel(const Matrix& u);

// (1-p) U rho U^dagger + p Tr(rho) I/d, realized by the Weyl-twirl Kraus set
// {sqrt(1-p) U} ∪ {sqrt(p)/d W_i U}. The set reproduces the map exactly
// (checked against the superoperator form in tests).
Channel depolarizing_channel(const Matrix& u, double p);

// Kraus operators conjugated entrywise.
Channel conjugate_channel(const Channel& q);

// Superoperator matrix (column-major vec convention) for equality tests.
Matrix superoperator(const Channel& q);

struct UnitaryEvolution {
  Matrix u;
};
struct NoisyEvolution {
  Channel q;
};
// Forward U, backward V, with composite error E = U^dagger V.
struct CoherentEvolution {
  Matrix forward;
  Matrix backward;
};
using EvolutionModel =
    std::variant<UnitaryEvolution, NoisyEvolution, CoherentEvolution>;

std::size_t evolution_dim(const EvolutionModel& ev);

// State representation of a unitary on registers (R, C, D, Bp):
// |Psi> = (I_R ⊗ U_AB ⊗ I_Bp) |EPR>_RA |EPR>_BBp.
PureState unitary_state_rep(const Matrix& u, const OtocGeometry& geom);

// State representation of a channel: rho = Q(|EPR><EPR|_RA ⊗ |EPR><EPR|_BBp),
// on registers (R, C, D, Bp). Pure iff the channel is unitary.
DensityMatrix channel_state_rep(const Channel& q, const OtocGeometry& geom);

// Purification of rho on a doubled register: (rho^{1/2} ⊗ I) sqrt(d) |EPR>.
// The marginal on the primary (first) register is rho; the mirror side
// carries rho^T, a consequence of the EPR transpose identity.
PureState thermofield_double(const DensityMatrix& rho,
                             const std::string& primary = "P",
                             const std::string& mirror = "M");

}  // namespace otoclab

#endif  // OTOCLAB_CHANNEL_HPP
