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

#include "otoclab/common.hpp"

#include <Eigen/Eigenvalues>

namespace otoclab {

namespace {

template <typename T>
T pairwise_impl(const T* xs, std::size_t n) {
  if (n == 0) return T(0);
  if (n == 1) return xs[0];
  if (n == 2) return xs[0] + xs[1];
  const std::size_t half = n / 2;
  return pairwise_impl(xs, half) + pairwise_impl(xs + half, n - half);
}

}  // namespace

double pairwise_sum(const std::vector<double>& xs) {
  return pairwise_impl(xs.data(), xs.size());
}

cdouble pairwise_sum(const std::vector<cdouble>& xs) {
  return pairwise_impl(xs.data(), xs.size());
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

bool approx_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Matrix id = Matrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tol;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

Matrix psd_sqrt(const Matrix& rho, double clip_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -clip_tol)
      throw PsdViolation("psd_sqrt: eigenvalue " + std::to_string(ev(i)) +
                         " below -" + std::to_string(clip_tol));
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  Matrix d = ev.cwiseSqrt().cast<cdouble>().asDiagonal();
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace otoclab
