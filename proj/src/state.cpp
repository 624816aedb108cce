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

#include "otoclab/state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace otoclab {

namespace {

// Offsets of all digit combinations of the listed registers, in listed order
// (leftmost listed register is the most significant digit of the combo index).
std::vector<std::size_t> combo_offsets(const SystemLayout& L,
                                       const std::vector<std::size_t>& idx) {
  std::size_t n = 1;
  for (std::size_t i : idx) n *= L.reg(i).dim;
  std::vector<std::size_t> off(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t rem = k, o = 0;
    for (std::size_t l = idx.size(); l-- > 0;) {
      const std::size_t d = L.reg(idx[l]).dim;
      o += (rem % d) * L.stride(idx[l]);
      rem /= d;
    }
    off[k] = o;
  }
  return off;
}

std::vector<std::size_t> complement_indices(const SystemLayout& L,
                                            const std::vector<std::size_t>& t) {
  std::vector<bool> used(L.num_registers(), false);
  for (std::size_t i : t) used[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < L.num_registers(); ++i)
    if (!used[i]) rest.push_back(i);
  return rest;
}

void check_operator_shape(const Matrix& op, std::size_t dt,
                          const char* where) {
  if (op.rows() != op.cols() ||
      static_cast<std::size_t>(op.rows()) != dt)
    throw std::invalid_argument(std::string(where) +
                                ": operator side does not match the product "
                                "of target dims (" +
                                std::to_string(dt) + ")");
}

// In-place column transform: every column of `m` is treated as a state
// vector and `op` is applied on the target slots.
void apply_to_matrix_columns(Matrix& m, const Matrix& op,
                             const std::vector<std::size_t>& toff,
                             const std::vector<std::size_t>& coff) {
  const std::size_t dt = toff.size();
  Vector x(dt), y(dt);
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    for (std::size_t base : coff) {
      for (std::size_t k = 0; k < dt; ++k) x(k) = m(base + toff[k], col);
      y.noalias() = op * x;
      for (std::size_t k = 0; k < dt; ++k) m(base + toff[k], col) = y(k);
    }
  }
}

void apply_to_matrix_rows(Matrix& m, const Matrix& op,
                          const std::vector<std::size_t>& toff,
                          const std::vector<std::size_t>& coff) {
  const std::size_t dt = toff.size();
  Vector x(dt), y(dt);
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (std::size_t base : coff) {
      for (std::size_t k = 0; k < dt; ++k) x(k) = m(row, base + toff[k]);
      y.noalias() = op * x;
      for (std::size_t k = 0; k < dt; ++k) m(row, base + toff[k]) = y(k);
    }
  }
}

struct PairContext {
  std::size_t da, db, sa, sb;
  SystemLayout rest_layout;
  std::vector<std::size_t> rest_offsets;
};

PairContext pair_context(const SystemLayout& L, const std::string& a,
                         const std::string& b, const Matrix& T) {
  PairContext ctx;
  const std::size_t ia = L.index_of(a), ib = L.index_of(b);
  if (ia == ib) throw std::invalid_argument("pair: registers must differ");
  ctx.da = L.reg(ia).dim;
  ctx.db = L.reg(ib).dim;
  ctx.sa = L.stride(ia);
  ctx.sb = L.stride(ib);
  if (static_cast<std::size_t>(T.rows()) != ctx.da ||
      static_cast<std::size_t>(T.cols()) != ctx.db)
    throw std::invalid_argument("pair: coefficient matrix is " +
                                std::to_string(T.rows()) + "x" +
                                std::to_string(T.cols()) + ", want " +
                                std::to_string(ctx.da) + "x" +
                                std::to_string(ctx.db));
  const auto rest = complement_indices(L, {ia, ib});
  std::vector<std::string> rest_names;
  for (std::size_t i : rest) rest_names.push_back(L.reg(i).name);
  ctx.rest_layout = L.restricted(rest_names);
  ctx.rest_offsets = combo_offsets(L, rest);
  return ctx;
}

}  // namespace

PureState::PureState(SystemLayout layout, Vector amplitudes,
                     bool allow_unnormalized)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != layout_.total_dim())
    throw std::invalid_argument("PureState: amplitude vector has length " +
                                std::to_string(amps_.size()) + ", layout dim " +
                                std::to_string(layout_.total_dim()));
  const double n = amps_.norm();
  unnormalized_ = std::abs(n - 1.0) > kStructuralTol;
  if (unnormalized_ && !allow_unnormalized)
    throw std::invalid_argument("PureState: norm " + std::to_string(n) +
                                " differs from 1 beyond 1e-10");
}

PureState PureState::normalized() const {
  const double n = norm();
  if (n < kPostSelectionFloor)
    throw PostSelectionImpossible("cannot normalize a zero state");
  return PureState(layout_, amps_ / n);
}

DensityMatrix::DensityMatrix(SystemLayout layout, Matrix matrix, bool validate)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
  const auto dim = static_cast<Eigen::Index>(layout_.total_dim());
  if (mat_.rows() != dim || mat_.cols() != dim)
    throw std::invalid_argument("DensityMatrix: matrix side " +
                                std::to_string(mat_.rows()) +
                                " does not match layout dim " +
                                std::to_string(dim));
  if (validate) {
    if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol)
      throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    if (std::abs(mat_.trace() - cdouble(1.0)) > kStructuralTol)
      throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
}

void DensityMatrix::validate_psd(double tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -tol)
    throw PsdViolation("DensityMatrix: eigenvalue " + std::to_string(lo) +
                       " below -" + std::to_string(tol));
}

PureState epr_state(std::size_t d, const std::string& left,
                    const std::string& right) {
  if (d < 2)
    throw std::invalid_argument("epr_state: dimension must be at least 2");
  SystemLayout layout({{left, d}, {right, d}});
  Vector amps = Vector::Zero(d * d);
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) amps(j * d + j) = c;
  return PureState(std::move(layout), std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Register> regs = a.layout().registers();
  for (const auto& r : b.layout().registers()) regs.push_back(r);
  return PureState(SystemLayout(std::move(regs)),
                   kron(a.amplitudes(), b.amplitudes()),
                   /*allow_unnormalized=*/true);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<Register> regs = a.layout().registers();
  for (const auto& r : b.layout().registers()) regs.push_back(r);
  return DensityMatrix(SystemLayout(std::move(regs)),
                       kron(a.matrix(), b.matrix()), /*validate=*/false);
}

DensityMatrix to_density(const PureState& psi) {
  return DensityMatrix(psi.layout(),
                       psi.amplitudes() * psi.amplitudes().adjoint(),
                       /*validate=*/false);
}

PureState apply_on(const PureState& psi, const Matrix& op,
                   const std::vector<std::string>& targets) {
  const SystemLayout& L = psi.layout();
  const auto tidx = L.indices_of(targets);
  const auto toff = combo_offsets(L, tidx);
  check_operator_shape(op, toff.size(), "apply_on");
  const auto coff = combo_offsets(L, complement_indices(L, tidx));
  Vector out = psi.amplitudes();
  const std::size_t dt = toff.size();
  Vector x(dt), y(dt);
  for (std::size_t base : coff) {
    for (std::size_t k = 0; k < dt; ++k) x(k) = out(base + toff[k]);
    y.noalias() = op * x;
    for (std::size_t k = 0; k < dt; ++k) out(base + toff[k]) = y(k);
  }
  return PureState(L, std::move(out), /*allow_unnormalized=*/true);
}

DensityMatrix apply_on(const DensityMatrix& rho, const Matrix& op,
                       const std::vector<std::string>& targets) {
  const SystemLayout& L = rho.layout();
  const auto tidx = L.indices_of(targets);
  const auto toff = combo_offsets(L, tidx);
  check_operator_shape(op, toff.size(), "apply_on");
  const auto coff = combo_offsets(L, complement_indices(L, tidx));
  Matrix m = rho.matrix();
  apply_to_matrix_columns(m, op, toff, coff);
  apply_to_matrix_rows(m, op.conjugate(), toff, coff);
  return DensityMatrix(L, std::move(m), /*validate=*/false);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep) {
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set must be nonempty");
  const SystemLayout& L = rho.layout();
  auto kidx = L.indices_of(keep);
  std::sort(kidx.begin(), kidx.end());  // kept registers keep layout order
  const auto koff = combo_offsets(L, kidx);
  const auto tidxs = complement_indices(L, kidx);
  const auto toff = combo_offsets(L, tidxs);
  std::vector<std::string> kept_names;
  for (std::size_t i : kidx) kept_names.push_back(L.reg(i).name);
  const SystemLayout out_layout = L.restricted(kept_names);
  const std::size_t dk = koff.size();
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.matrix();
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      cdouble acc(0.0);
      for (std::size_t t : toff) acc += m(koff[a] + t, koff[b] + t);
      out(a, b) = acc;
    }
  return DensityMatrix(out_layout, std::move(out), /*validate=*/false);
}

DensityMatrix reduced_density(const PureState& psi,
                              const std::vector<std::string>& keep) {
  if (keep.empty())
    throw std::invalid_argument("reduced_density: keep set must be nonempty");
  const SystemLayout& L = psi.layout();
  auto kidx = L.indices_of(keep);
  std::sort(kidx.begin(), kidx.end());
  const auto koff = combo_offsets(L, kidx);
  const auto toff = combo_offsets(L, complement_indices(L, kidx));
  std::vector<std::string> kept_names;
  for (std::size_t i : kidx) kept_names.push_back(L.reg(i).name);
  const SystemLayout out_layout = L.restricted(kept_names);
  const std::size_t dk = koff.size();
  Matrix out = Matrix::Zero(dk, dk);
  const Vector& v = psi.amplitudes();
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = a; b < dk; ++b) {
      cdouble acc(0.0);
      for (std::size_t t : toff)
        acc += v(koff[a] + t) * std::conj(v(koff[b] + t));
      out(a, b) = acc;
      if (b != a) out(b, a) = std::conj(acc);
    }
  return DensityMatrix(out_layout, std::move(out), /*validate=*/false);
}

namespace {

std::vector<std::size_t> permutation_map(const SystemLayout& L,
                                         const SystemLayout& out) {
  // For every old linear index, the new linear index.
  const std::size_t n = L.num_registers();
  std::vector<std::size_t> new_stride(n);
  for (std::size_t i = 0; i < n; ++i)
    new_stride[i] = out.stride(out.index_of(L.reg(i).name));
  std::vector<std::size_t> map(L.total_dim());
  for (std::size_t i = 0; i < L.total_dim(); ++i) {
    std::size_t rem = i, to = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t digit = rem / L.stride(r);
      rem %= L.stride(r);
      to += digit * new_stride[r];
    }
    map[i] = to;
  }
  return map;
}

SystemLayout permuted_layout(const SystemLayout& L,
                             const std::vector<std::string>& order) {
  if (order.size() != L.num_registers())
    throw std::invalid_argument(
        "permute_registers: order must list every register exactly once");
  std::vector<Register> regs;
  for (const auto& n : order) regs.push_back({n, L.dim_of(n)});
  return SystemLayout(std::move(regs));
}

}  // namespace

PureState permute_registers(const PureState& psi,
                            const std::vector<std::string>& new_order) {
  const SystemLayout out = permuted_layout(psi.layout(), new_order);
  const auto map = permutation_map(psi.layout(), out);
  Vector amps(psi.amplitudes().size());
  for (std::size_t i = 0; i < map.size(); ++i)
    amps(map[i]) = psi.amplitudes()(i);
  return PureState(out, std::move(amps), /*allow_unnormalized=*/true);
}

DensityMatrix permute_registers(const DensityMatrix& rho,
                                const std::vector<std::string>& new_order) {
  const SystemLayout out = permuted_layout(rho.layout(), new_order);
  const auto map = permutation_map(rho.layout(), out);
  Matrix m(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j)
      m(map[i], map[j]) = rho.matrix()(i, j);
  return DensityMatrix(out, std::move(m), /*validate=*/false);
}

PureState merge_registers(const PureState& psi,
                          const std::vector<std::string>& names,
                          const std::string& merged_name) {
  return PureState(psi.layout().merged(names, merged_name), psi.amplitudes(),
                   /*allow_unnormalized=*/true);
}

PureState split_register(const PureState& psi, const std::string& name,
                         const std::vector<Register>& parts) {
  return PureState(psi.layout().split(name, parts), psi.amplitudes(),
                   /*allow_unnormalized=*/true);
}

DensityMatrix merge_registers(const DensityMatrix& rho,
                              const std::vector<std::string>& names,
                              const std::string& merged_name) {
  return DensityMatrix(rho.layout().merged(names, merged_name), rho.matrix(),
                       /*validate=*/false);
}

DensityMatrix split_register(const DensityMatrix& rho, const std::string& name,
                             const std::vector<Register>& parts) {
  return DensityMatrix(rho.layout().split(name, parts), rho.matrix(),
                       /*validate=*/false);
}

Matrix embed_operator(const SystemLayout& layout, const Matrix& op,
                      const std::vector<std::string>& targets) {
  const auto tidx = layout.indices_of(targets);
  const auto toff = combo_offsets(layout, tidx);
  check_operator_shape(op, toff.size(), "embed_operator");
  const auto coff = combo_offsets(layout, complement_indices(layout, tidx));
  Matrix out = Matrix::Zero(layout.total_dim(), layout.total_dim());
  for (std::size_t base : coff)
    for (std::size_t k = 0; k < toff.size(); ++k)
      for (std::size_t l = 0; l < toff.size(); ++l)
        out(base + toff[k], base + toff[l]) = op(k, l);
  return out;
}

Matrix epr_pair_coefficients(std::size_t d) {
  return Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
}

Matrix epr_projector(const SystemLayout& layout, const std::string& a,
                     const std::string& b) {
  const std::size_t da = layout.dim_of(a), db = layout.dim_of(b);
  if (da != db)
    throw std::invalid_argument("epr_projector: register dims differ (" +
                                std::to_string(da) + " vs " +
                                std::to_string(db) + ")");
  const Matrix T = epr_pair_coefficients(da);
  Matrix pair = Matrix::Zero(da * db, da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k)
        for (std::size_t l = 0; l < db; ++l)
          pair(i * db + j, k * db + l) = T(i, j) * std::conj(T(k, l));
  return embed_operator(layout, pair, {a, b});
}

cdouble expectation(const PureState& psi, const Matrix& op,
                    const std::vector<std::string>& targets) {
  const PureState applied = apply_on(psi, op, targets);
  return psi.amplitudes().dot(applied.amplitudes());
}

cdouble expectation(const DensityMatrix& rho, const Matrix& op,
                    const std::vector<std::string>& targets) {
  // Tr(rho op_embedded), computed slot-wise.
  const SystemLayout& L = rho.layout();
  const auto tidx = L.indices_of(targets);
  const auto toff = combo_offsets(L, tidx);
  check_operator_shape(op, toff.size(), "expectation");
  const auto coff = combo_offsets(L, complement_indices(L, tidx));
  cdouble acc(0.0);
  for (std::size_t base : coff)
    for (std::size_t k = 0; k < toff.size(); ++k)
      for (std::size_t l = 0; l < toff.size(); ++l)
        acc += op(k, l) * rho.matrix()(base + toff[l], base + toff[k]);
  return acc;
}

double pair_probability(const PureState& psi, const std::string& a,
                        const std::string& b, const Matrix& T) {
  return project_pair(psi, a, b, T).second;
}

double pair_probability(const DensityMatrix& rho, const std::string& a,
                        const std::string& b, const Matrix& T) {
  return project_pair(rho, a, b, T).second;
}

std::pair<PureState, double> project_pair(const PureState& psi,
                                          const std::string& a,
                                          const std::string& b,
                                          const Matrix& T) {
  const SystemLayout& L = psi.layout();
  const PairContext ctx = pair_context(L, a, b, T);
  const Vector& v = psi.amplitudes();
  Vector out(ctx.rest_layout.total_dim());
  for (std::size_t r = 0; r < ctx.rest_offsets.size(); ++r) {
    cdouble acc(0.0);
    const std::size_t base = ctx.rest_offsets[r];
    for (std::size_t i = 0; i < ctx.da; ++i)
      for (std::size_t j = 0; j < ctx.db; ++j)
        acc += std::conj(T(i, j)) * v(base + i * ctx.sa + j * ctx.sb);
    out(r) = acc;
  }
  const double p = out.squaredNorm();
  return {PureState(ctx.rest_layout, std::move(out),
                    /*allow_unnormalized=*/true),
          p};
}

std::pair<DensityMatrix, double> project_pair(const DensityMatrix& rho,
                                              const std::string& a,
                                              const std::string& b,
                                              const Matrix& T) {
  const SystemLayout& L = rho.layout();
  const PairContext ctx = pair_context(L, a, b, T);
  const Matrix& m = rho.matrix();
  const std::size_t dr = ctx.rest_layout.total_dim();
  Matrix out = Matrix::Zero(dr, dr);
  // Contract the pair indices against T on both sides.
  for (std::size_t r = 0; r < dr; ++r) {
    for (std::size_t rp = 0; rp < dr; ++rp) {
      cdouble acc(0.0);
      for (std::size_t i = 0; i < ctx.da; ++i)
        for (std::size_t j = 0; j < ctx.db; ++j)
          for (std::size_t ip = 0; ip < ctx.da; ++ip)
            for (std::size_t jp = 0; jp < ctx.db; ++jp)
              acc += std::conj(T(i, j)) * T(ip, jp) *
                     m(ctx.rest_offsets[r] + i * ctx.sa + j * ctx.sb,
                       ctx.rest_offsets[rp] + ip * ctx.sa + jp * ctx.sb);
      out(r, rp) = acc;
    }
  }
  const double p = out.trace().real();
  return {DensityMatrix(ctx.rest_layout, std::move(out), /*validate=*/false),
          p};
}

PureState apply_pair_projector(const PureState& psi, const std::string& a,
                               const std::string& b, const Matrix& T) {
  const SystemLayout& L = psi.layout();
  const PairContext ctx = pair_context(L, a, b, T);
  const Vector& v = psi.amplitudes();
  Vector out = Vector::Zero(v.size());
  for (std::size_t base : ctx.rest_offsets) {
    cdouble acc(0.0);
    for (std::size_t i = 0; i < ctx.da; ++i)
      for (std::size_t j = 0; j < ctx.db; ++j)
        acc += std::conj(T(i, j)) * v(base + i * ctx.sa + j * ctx.sb);
    if (acc == cdouble(0.0)) continue;
    for (std::size_t i = 0; i < ctx.da; ++i)
      for (std::size_t j = 0; j < ctx.db; ++j)
        out(base + i * ctx.sa + j * ctx.sb) = T(i, j) * acc;
  }
  return PureState(L, std::move(out), /*allow_unnormalized=*/true);
}

double epr_probability(const PureState& psi, const std::string& a,
                       const std::string& b) {
  const std::size_t da = psi.layout().dim_of(a);
  if (da != psi.layout().dim_of(b))
    throw std::invalid_argument("epr_probability: register dims differ");
  return pair_probability(psi, a, b, epr_pair_coefficients(da));
}

double epr_probability(const DensityMatrix& rho, const std::string& a,
                       const std::string& b) {
  const std::size_t da = rho.layout().dim_of(a);
  if (da != rho.layout().dim_of(b))
    throw std::invalid_argument("epr_probability: register dims differ");
  return pair_probability(rho, a, b, epr_pair_coefficients(da));
}

}  // namespace otoclab
