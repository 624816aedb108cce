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

#ifndef OTOCLAB_STATE_HPP
#define OTOCLAB_STATE_HPP

#include <string>
#include <utility>
#include <vector>

#include "otoclab/common.hpp"
#include "otoclab/layout.hpp"

namespace otoclab {

// Dense state vector tagged with a SystemLayout. Immutable after
// construction; all operations below are pure functions returning new values.
class PureState {
 public:
  PureState(SystemLayout layout, Vector amplitudes,
            bool allow_unnormalized = false);

  const SystemLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }
  bool flagged_unnormalized() const { return unnormalized_; }

  PureState normalized() const;

 private:
  SystemLayout layout_;
  Vector amps_;
  bool unnormalized_;
};

class DensityMatrix {
 public:
  // With validate=true enforces Hermiticity and unit trace at 1e-10.
  // Positivity is checked separately (it needs an eigensolve).
  DensityMatrix(SystemLayout layout, Matrix matrix, bool validate = true);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return mat_; }
  double trace_real() const { return mat_.trace().real(); }
  double purity() const { return (mat_ * mat_).trace().real(); }

  // Throws PsdViolation if an eigenvalue lies below -1e-9.
  void validate_psd(double tol = kPsdClipTol) const;

 private:
  SystemLayout layout_;
  Matrix mat_;
};

// |EPR> = (1/sqrt(d)) sum_j |j>|j> on two registers of local dimension d.
PureState epr_state(std::size_t d, const std::string& left = "L",
                    const std::string& right = "R");

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix to_density(const PureState& psi);

// Applies `op` on the listed registers (identity elsewhere). The operator's
// tensor slots follow the listed order, which need not be the layout order.
PureState apply_on(const PureState& psi, const Matrix& op,
                   const std::vector<std::string>& targets);
// rho -> op rho op^dagger on the listed registers.
DensityMatrix apply_on(const DensityMatrix& rho, const Matrix& op,
                       const std::vector<std::string>& targets);

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep);
DensityMatrix reduced_density(const PureState& psi,
                              const std::vector<std::string>& keep);

PureState permute_registers(const PureState& psi,
                            const std::vector<std::string>& new_order);
DensityMatrix permute_registers(const DensityMatrix& rho,
                                const std::vector<std::string>& new_order);

// Pure relabellings (amplitudes untouched).
PureState merge_registers(const PureState& psi,
                          const std::vector<std::string>& names,
                          const std::string& merged_name);
PureState split_register(const PureState& psi, const std::string& name,
                         const std::vector<Register>& parts);
DensityMatrix merge_registers(const DensityMatrix& rho,
                              const std::vector<std::string>& names,
                              const std::string& merged_name);
DensityMatrix split_register(const DensityMatrix& rho, const std::string& name,
                             const std::vector<Register>& parts);

// op embedded with identities on all other registers, as a full matrix.
Matrix embed_operator(const SystemLayout& layout, const Matrix& op,
                      const std::vector<std::string>& targets);

// Rank-1 projector onto |EPR> of the named pair, embedded in the full space.
Matrix epr_projector(const SystemLayout& layout, const std::string& a,
                     const std::string& b);

cdouble expectation(const PureState& psi, const Matrix& op,
                    const std::vector<std::string>& targets);
cdouble expectation(const DensityMatrix& rho, const Matrix& op,
                    const std::vector<std::string>& targets);

// Pair-state helpers. A normalized two-register target |T> = sum_ij T(i,j)
// |i>_a |j>_b is given by its coefficient matrix with unit Frobenius norm;
// T = I/sqrt(d) is the EPR pair and (W ⊗ I)|EPR> has T = W/sqrt(d).
Matrix epr_pair_coefficients(std::size_t d);

double pair_probability(const PureState& psi, const std::string& a,
                        const std::string& b, const Matrix& T);
double pair_probability(const DensityMatrix& rho, const std::string& a,
                        const std::string& b, const Matrix& T);

// Projects onto |T> on (a, b) and drops the measured pair. Returns the
// unnormalized remainder (flagged) together with the outcome probability.
std::pair<PureState, double> project_pair(const PureState& psi,
                                          const std::string& a,
                                          const std::string& b,
                                          const Matrix& T);
std::pair<DensityMatrix, double> project_pair(const DensityMatrix& rho,
                                              const std::string& a,
                                              const std::string& b,
                                              const Matrix& T);

// (|T><T| ⊗ I)|psi>, keeping the layout (used for reflection operators).
PureState apply_pair_projector(const PureState& psi, const std::string& a,
                               const std::string& b, const Matrix& T);

double epr_probability(const PureState& psi, const std::string& a,
                       const std::string& b);
double epr_probability(const DensityMatrix& rho, const std::string& a,
                       const std::string& b);

}  // namespace otoclab

#endif  // OTOCLAB_STATE_HPP
