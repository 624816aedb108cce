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

#ifndef OTOCLAB_COMMON_HPP
#define OTOCLAB_COMMON_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace otoclab {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerance policy: structural identities hold at 1e-10, entropy-based
// identities at 1e-9; ensemble statistics carry their own looser tolerances.
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kEntropyTol = 1e-9;
inline constexpr double kPsdClipTol = 1e-9;
inline constexpr double kSpectrumCutoff = 1e-12;
inline constexpr double kPostSelectionFloor = 1e-14;

// Post-selecting on an outcome whose probability is numerically zero.
struct PostSelectionImpossible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a Weyl correction search fails, i.e. the evolution does not act
// like a Clifford scrambler on the measured pair.
struct NotCliffordBehavior : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix that must be positive semidefinite has an eigenvalue below -1e-9.
struct PsdViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Order-fixed pairwise summation; the result is independent of how callers
// chunk the work across threads as long as the element order is fixed.
double pairwise_sum(const std::vector<double>& xs);
cdouble pairwise_sum(const std::vector<cdouble>& xs);

Matrix dagger(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
bool approx_unitary(const Matrix& u, double tol = kStructuralTol);
bool approx_equal(const Matrix& a, const Matrix& b, double tol = kStructuralTol);

// Hermitian square root with eigenvalue clipping per the PSD policy.
Matrix psd_sqrt(const Matrix& rho, double clip_tol = kPsdClipTol);

// FNV-1a, used for config hashes and seed splitting.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace otoclab

#endif  // OTOCLAB_COMMON_HPP
