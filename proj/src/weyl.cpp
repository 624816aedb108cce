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

#include "otoclab/weyl.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "otoclab/rng.hpp"

namespace otoclab {

namespace {

cdouble root_of_unity(std::size_t d, long long k) {
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(((k % (long long)d) + (long long)d) % (long long)d) /
      static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

std::size_t total_dim(const std::vector<std::size_t>& dims) {
  std::size_t d = 1;
  for (std::size_t x : dims) d *= x;
  return d;
}

}  // namespace

Matrix weyl_x(std::size_t d) {
  Matrix x = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
  return x;
}

Matrix weyl_z(std::size_t d) {
  Matrix z = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < d; ++j) z(j, j) = root_of_unity(d, (long long)j);
  return z;
}

Matrix weyl_site_matrix(std::size_t d, int a, int b) {
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < d; ++j)
    m((j + a) % d, j) = root_of_unity(d, (long long)b * (long long)j);
  return m;
}

WeylOperator WeylOperator::identity(const std::vector<std::size_t>& dims) {
  WeylOperator w;
  w.dims = dims;
  w.exps.assign(dims.size(), {0, 0});
  return w;
}

Matrix WeylOperator::matrix() const {
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t s = 0; s < dims.size(); ++s)
    m = kron(m, weyl_site_matrix(dims[s], exps[s].first, exps[s].second));
  return phase * m;
}

bool WeylOperator::is_identity() const {
  for (const auto& [a, b] : exps)
    if (a != 0 || b != 0) return false;
  return true;
}

std::size_t WeylOperator::weight() const {
  std::size_t w = 0;
  for (const auto& [a, b] : exps)
    if (a != 0 || b != 0) ++w;
  return w;
}

std::string WeylOperator::label() const {
  std::ostringstream os;
  for (std::size_t s = 0; s < exps.size(); ++s) {
    if (s) os << ".";
    os << "X" << exps[s].first << "Z" << exps[s].second;
  }
  return os.str();
}

std::size_t weyl_label_count(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d * d;
  return n;
}

WeylOperator weyl_from_index(const std::vector<std::size_t>& dims,
                             std::size_t index) {
  WeylOperator w;
  w.dims = dims;
  w.exps.assign(dims.size(), {0, 0});
  for (std::size_t s = dims.size(); s-- > 0;) {
    const std::size_t dd = dims[s] * dims[s];
    const std::size_t code = index % dd;
    index /= dd;
    w.exps[s] = {static_cast<int>(code / dims[s]),
                 static_cast<int>(code % dims[s])};
  }
  return w;
}

std::size_t weyl_index(const WeylOperator& w) {
  std::size_t idx = 0;
  for (std::size_t s = 0; s < w.dims.size(); ++s) {
    const std::size_t code =
        static_cast<std::size_t>(w.exps[s].first) * w.dims[s] +
        static_cast<std::size_t>(w.exps[s].second);
    idx = idx * (w.dims[s] * w.dims[s]) + code;
  }
  return idx;
}

std::vector<WeylOperator> enumerate_weyl(
    const std::vector<std::size_t>& dims) {
  const std::size_t n = weyl_label_count(dims);
  std::vector<WeylOperator> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(weyl_from_index(dims, i));
  return out;
}

PauliDecomposition::PauliDecomposition(std::vector<std::size_t> dims,
                                       std::size_t n_left,
                                       std::vector<cdouble> coeffs)
    : dims_(std::move(dims)), n_left_(n_left), coeffs_(std::move(coeffs)) {
  if (n_left_ > dims_.size())
    throw std::invalid_argument("PauliDecomposition: bad bipartition");
  left_count_ = weyl_label_count(
      std::vector<std::size_t>(dims_.begin(), dims_.begin() + n_left_));
  right_count_ = weyl_label_count(
      std::vector<std::size_t>(dims_.begin() + n_left_, dims_.end()));
  if (coeffs_.size() != left_count_ * right_count_)
    throw std::invalid_argument("PauliDecomposition: coefficient count");
}

cdouble PauliDecomposition::coeff(std::size_t left_index,
                                  std::size_t right_index) const {
  return coeffs_[left_index * right_count_ + right_index];
}

double PauliDecomposition::parseval() const {
  std::vector<double> sq(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    sq[i] = std::norm(coeffs_[i]);
  return pairwise_sum(sq);
}

WeylOperator PauliDecomposition::label_of(std::size_t flat) const {
  return weyl_from_index(dims_, flat);
}

Matrix PauliDecomposition::reconstruct() const {
  const std::size_t d = total_dim(dims_);
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == cdouble(0.0)) continue;
    out += coeffs_[i] * weyl_from_index(dims_, i).matrix();
  }
  return out;
}

std::vector<std::size_t> PauliDecomposition::significant(double tol) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (std::abs(coeffs_[i]) > tol) out.push_back(i);
  return out;
}

namespace {

// Tr(W^dagger M)/d without forming the Weyl matrix. With W = phase-free
// X^a Z^b per site, W|c> = prod_s omega_s^{b_s c_s} |c + a>, so
// Tr(W^dagger M) = sum_c conj(prod_s omega^{b_s c_s}) M(c + a, c).
cdouble weyl_overlap(const Matrix& m, const std::vector<std::size_t>& dims,
                     const WeylOperator& w) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t s = n; s-- > 1;) stride[s - 1] = stride[s] * dims[s];
  const std::size_t d = total_dim(dims);
  cdouble acc(0.0);
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t rem = c, row = 0;
    double angle = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t cs = rem / stride[s];
      rem %= stride[s];
      angle += 2.0 * std::numbers::pi * static_cast<double>(w.exps[s].second) *
               static_cast<double>(cs) / static_cast<double>(dims[s]);
      row += ((cs + static_cast<std::size_t>(w.exps[s].first)) % dims[s]) *
             stride[s];
    }
    acc += cdouble(std::cos(angle), -std::sin(angle)) * m(row, c);
  }
  return acc / static_cast<double>(d);
}

}  // namespace

PauliDecomposition decompose_in_weyl(
    const Matrix& op, const std::vector<std::size_t>& dims_left,
    const std::vector<std::size_t>& dims_right) {
  std::vector<std::size_t> dims = dims_left;
  dims.insert(dims.end(), dims_right.begin(), dims_right.end());
  const std::size_t d = total_dim(dims);
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != d)
    throw std::invalid_argument("decompose_in_weyl: operator side " +
                                std::to_string(op.rows()) +
                                " does not match dims product " +
                                std::to_string(d));
  const std::size_t n = weyl_label_count(dims);
  std::vector<cdouble> coeffs(n);
  for (std::size_t i = 0; i < n; ++i)
    coeffs[i] = weyl_overlap(op, dims, weyl_from_index(dims, i));
  return PauliDecomposition(dims, dims_left.size(), std::move(coeffs));
}

PauliDecomposition conjugate_weyl(const Matrix& u, const WeylOperator& p) {
  const Matrix image = u * p.matrix() * u.adjoint();
  return decompose_in_weyl(image, p.dims, {});
}

CliffordWitnessReport clifford_witness(const Matrix& u,
                                       const std::vector<std::size_t>& dims,
                                       std::size_t trials, std::uint64_t seed,
                                       double tol) {
  if (trials < 1) throw std::invalid_argument("clifford_witness: trials >= 1");
  const std::size_t d = total_dim(dims);
  const std::size_t labels = weyl_label_count(dims);
  bool qubits_only = true;
  for (std::size_t dd : dims) qubits_only = qubits_only && (dd == 2);
  Rng rng(seed);
  CliffordWitnessReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const WeylOperator p =
        weyl_from_index(dims, 1 + rng.uniform_below(labels - 1));
    const WeylOperator q =
        weyl_from_index(dims, 1 + rng.uniform_below(labels - 1));
    const Matrix pt = u * p.matrix() * u.adjoint();
    const Matrix qm = q.matrix();
    const cdouble value = (pt * qm * pt * qm).trace() / static_cast<double>(d);
    bool ok;
    if (qubits_only) {
      ok = std::min(std::abs(value - cdouble(1.0)),
                    std::abs(value + cdouble(1.0))) <= tol;
    } else {
      const double mod = std::abs(value);
      ok = std::min(std::abs(mod - 1.0), mod) <= tol;
    }
    if (!ok) report.consistent_with_clifford = false;
    report.evidence.push_back({p, q, value});
  }
  return report;
}

DelocalizationReport delocalization_check(const Matrix& u,
                                          const std::vector<std::size_t>& dims,
                                          double tol) {
  DelocalizationReport report;
  report.maximally_scrambling = true;
  for (std::size_t site = 0; site < dims.size(); ++site) {
    for (int a = 0; a < static_cast<int>(dims[site]); ++a) {
      for (int b = 0; b < static_cast<int>(dims[site]); ++b) {
        if (a == 0 && b == 0) continue;
        WeylOperator p = WeylOperator::identity(dims);
        p.exps[site] = {a, b};
        const PauliDecomposition dec = conjugate_weyl(u, p);
        std::set<std::size_t> support;
        const auto sig = dec.significant(tol);
        for (std::size_t flat : sig) {
          const WeylOperator w = dec.label_of(flat);
          for (std::size_t s = 0; s < dims.size(); ++s)
            if (w.exps[s].first != 0 || w.exps[s].second != 0)
              support.insert(s);
        }
        DelocalizationEntry entry;
        entry.site = site;
        entry.a = a;
        entry.b = b;
        entry.support.assign(support.begin(), support.end());
        entry.term_count = sig.size();
        if (entry.support.size() != dims.size())
          report.maximally_scrambling = false;
        report.entries.push_back(std::move(entry));
      }
    }
  }
  return report;
}

}  // namespace otoclab
