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

#include "otoclab/channel.hpp"

#include <cmath>

#include "otoclab/weyl.hpp"

namespace otoclab {

Channel::Channel(std::vector<Matrix> kraus_ops, double tol)
    : kraus_(std::move(kraus_ops)) {
  if (kraus_.empty())
    throw std::invalid_argument("Channel: need at least one Kraus operator");
  dim_ = kraus_.front().rows();
  Matrix acc = Matrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != k.cols() || static_cast<std::size_t>(k.rows()) != dim_)
      throw std::invalid_argument("Channel: Kraus operators must share shape");
    acc += k.adjoint() * k;
  }
  if ((acc - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument(
        "Channel: sum K^dagger K deviates from identity (not trace "
        "preserving)");
}

Matrix Channel::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

Matrix Channel::heisenberg(const Matrix& op) const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out += k.adjoint() * op * k;
  return out;
}

Channel unitary_channel(const Matrix& u) {
  if (!approx_unitary(u))
    throw std::invalid_argument("unitary_channel: matrix is not unitary");
  return Channel({u});
}

Channel depolarizing_channel(const Matrix& u, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("depolarizing_channel: p must be in [0, 1]");
  if (!approx_unitary(u))
    throw std::invalid_argument("depolarizing_channel: U is not unitary");
  const std::size_t d = u.rows();
  std::vector<Matrix> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * u);
  if (p > 0.0) {
    const double c = std::sqrt(p) / static_cast<double>(d);
    for (const auto& w : enumerate_weyl({d}))
      kraus.push_back(c * (w.matrix() * u));
  }
  return Channel(std::move(kraus));
}

Channel conjugate_channel(const Channel& q) {
  std::vector<Matrix> kraus;
  kraus.reserve(q.kraus().size());
  for (const auto& k : q.kraus()) kraus.push_back(k.conjugate());
  return Channel(std::move(kraus));
}

Matrix superoperator(const Channel& q) {
  const std::size_t d = q.dim();
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const auto& k : q.kraus()) s += kron(k.conjugate(), k);
  return s;
}

std::size_t evolution_dim(const EvolutionModel& ev) {
  if (const auto* u = std::get_if<UnitaryEvolution>(&ev)) return u->u.rows();
  if (const auto* n = std::get_if<NoisyEvolution>(&ev)) return n->q.dim();
  return std::get<CoherentEvolution>(ev).forward.rows();
}

namespace {

PureState epr_chain_rcdb(const OtocGeometry& geom) {
  const std::size_t da = geom.dim_a(), db = geom.dim_b();
  return tensor(epr_state(da, "R", "A"), epr_state(db, "B", "Bp"));
}

template <typename StateT>
StateT refactor_output(const StateT& evolved, const OtocGeometry& geom) {
  // (A, B) block -> (C, D) with D trailing (the evolution was already
  // conjugated by the output permutation).
  auto merged = merge_registers(evolved, {"A", "B"}, "AB");
  return split_register(merged, "AB",
                        {{"C", geom.dim_c()}, {"D", geom.dim_d()}});
}

}  // namespace

PureState unitary_state_rep(const Matrix& u, const OtocGeometry& geom) {
  geom.validate();
  if (geom.dim_b() < 2 || geom.dim_c() < 2)
    throw std::invalid_argument(
        "state representation: A and D must be proper subsets of the sites");
  if (static_cast<std::size_t>(u.rows()) != geom.dim())
    throw std::invalid_argument("unitary_state_rep: dim mismatch");
  PureState psi = epr_chain_rcdb(geom);
  psi = apply_on(psi, geom.effective_unitary(u), {"A", "B"});
  return refactor_output(psi, geom).normalized();
}

DensityMatrix channel_state_rep(const Channel& q, const OtocGeometry& geom) {
  geom.validate();
  if (geom.dim_b() < 2 || geom.dim_c() < 2)
    throw std::invalid_argument(
        "state representation: A and D must be proper subsets of the sites");
  if (q.dim() != geom.dim())
    throw std::invalid_argument("channel_state_rep: dim mismatch");
  const Matrix perm = geom.output_permutation();
  const DensityMatrix rho0 = to_density(epr_chain_rcdb(geom));
  Matrix acc = Matrix::Zero(rho0.matrix().rows(), rho0.matrix().cols());
  for (const auto& k : q.kraus()) {
    const DensityMatrix term = apply_on(rho0, perm * k, {"A", "B"});
    acc += term.matrix();
  }
  DensityMatrix rho(rho0.layout(), std::move(acc), /*validate=*/false);
  return refactor_output(rho, geom);
}

PureState thermofield_double(const DensityMatrix& rho,
                             const std::string& primary,
                             const std::string& mirror) {
  rho.validate_psd();
  const std::size_t d = rho.layout().total_dim();
  const Matrix root = psd_sqrt(rho.matrix());
  SystemLayout layout({{primary, d}, {mirror, d}});
  Vector amps(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) amps(i * d + j) = root(i, j);
  return PureState(std::move(layout), std::move(amps),
                   /*allow_unnormalized=*/true)
      .normalized();
}

}  // namespace otoclab
