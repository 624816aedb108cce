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

#include "otoclab/circuits.hpp"

#include <Eigen/QR>
#include <bit>
#include <cmath>

#include "otoclab/layout.hpp"
#include "otoclab/rng.hpp"
#include "otoclab/state.hpp"
#include "otoclab/weyl.hpp"

namespace otoclab {

namespace {

Matrix hadamard_matrix() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Matrix cz_matrix() {
  Matrix cz = Matrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  return cz;
}

Matrix cnot_matrix(std::size_t d) {
  Matrix m = Matrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(i * d + (i + j) % d, i * d + j) = 1.0;
  return m;
}

}  // namespace

Matrix gate_matrix(const Gate& gate,
                   const std::vector<std::size_t>& site_dims) {
  const auto dim_at = [&](std::size_t t) {
    if (t >= site_dims.size())
      throw std::invalid_argument("gate: target out of range");
    return site_dims[t];
  };
  if (gate.kind == "H") {
    if (gate.targets.size() != 1 || dim_at(gate.targets[0]) != 2)
      throw std::invalid_argument("gate: H expects one qubit target");
    return hadamard_matrix();
  }
  if (gate.kind == "CZ") {
    if (gate.targets.size() != 2 || dim_at(gate.targets[0]) != 2 ||
        dim_at(gate.targets[1]) != 2)
      throw std::invalid_argument("gate: CZ expects two qubit targets");
    return cz_matrix();
  }
  if (gate.kind == "CNOT") {
    if (gate.targets.size() != 2 ||
        dim_at(gate.targets[0]) != dim_at(gate.targets[1]))
      throw std::invalid_argument("gate: CNOT expects two equal-dim targets");
    return cnot_matrix(dim_at(gate.targets[0]));
  }
  if (gate.kind == "SWAP") {
    if (gate.targets.size() != 2 ||
        dim_at(gate.targets[0]) != dim_at(gate.targets[1]))
      throw std::invalid_argument("gate: SWAP expects two equal-dim targets");
    return swap_gate(dim_at(gate.targets[0]));
  }
  throw std::invalid_argument("gate: unknown kind '" + gate.kind + "'");
}

Matrix assemble_circuit(const std::vector<std::size_t>& site_dims,
                        const std::vector<Gate>& gates) {
  const SystemLayout layout = SystemLayout::sites(site_dims);
  const std::size_t d = layout.total_dim();
  Matrix u = Matrix::Identity(d, d);
  for (const auto& gate : gates) {
    std::vector<std::string> targets;
    for (std::size_t t : gate.targets)
      targets.push_back(layout.reg(t).name);
    u = embed_operator(layout, gate_matrix(gate, site_dims), targets) * u;
  }
  return u;
}

NamedCircuit qubit_clifford_scrambler() {
  NamedCircuit c;
  c.name = "qubit_clifford_scrambler";
  c.site_dims = {2, 2, 2};
  c.gates = {{"CZ", {0, 1}}, {"CZ", {0, 2}}, {"CZ", {1, 2}},
             {"H", {0}},     {"H", {1}},     {"H", {2}},
             {"CZ", {0, 1}}, {"CZ", {0, 2}}, {"CZ", {1, 2}}};
  c.unitary = assemble_circuit(c.site_dims, c.gates);
  return c;
}

NamedCircuit classical_scrambler() {
  NamedCircuit c;
  c.name = "classical_scrambler";
  c.site_dims = {2, 2, 2};
  c.gates = {{"CNOT", {0, 1}}, {"CNOT", {1, 2}}, {"CNOT", {2, 0}}};
  c.unitary = assemble_circuit(c.site_dims, c.gates);
  return c;
}

NamedCircuit qutrit_scrambler() {
  NamedCircuit c;
  c.name = "qutrit_scrambler";
  c.site_dims = {3, 3};
  c.gates = {{"CNOT", {0, 1}}, {"CNOT", {1, 0}}};
  c.unitary = assemble_circuit(c.site_dims, c.gates);
  return c;
}

Matrix qutrit_cnot(bool reversed) {
  if (!reversed) return cnot_matrix(3);
  Matrix m = Matrix::Zero(9, 9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      m(((i + j) % 3) * 3 + j, i * 3 + j) = 1.0;
  return m;
}

Matrix swap_gate(std::size_t d) {
  if (d < 2) throw std::invalid_argument("swap_gate: d must be >= 2");
  Matrix m = Matrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(j * d + i, i * d + j) = 1.0;
  return m;
}

Matrix haar_sample(std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("haar_sample: dim must be >= 2");
  Rng rng(seed);
  Matrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      g(r, c) = cdouble(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t i = 0; i < dim; ++i) {
    const cdouble rii = r(i, i);
    const cdouble phase = std::abs(rii) > 0.0 ? rii / std::abs(rii) : 1.0;
    q.col(i) *= phase;
  }
  return q;
}

namespace {

// F2 symplectic machinery for uniform Clifford sampling. Vectors live in
// F2^{2n}: bits [0, n) are the X part, bits [n, 2n) the Z part.
struct SymplecticSpace {
  std::size_t n;
  int form(std::uint32_t u, std::uint32_t v) const {
    const std::uint32_t mask = (1u << n) - 1u;
    const std::uint32_t ux = u & mask, uz = u >> n;
    const std::uint32_t vx = v & mask, vz = v >> n;
    return (std::popcount(ux & vz) + std::popcount(uz & vx)) & 1;
  }
};

std::uint32_t combine(const std::vector<std::uint32_t>& basis,
                      std::uint64_t coeffs) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((coeffs >> i) & 1u) v ^= basis[i];
  return v;
}

// Kernel basis of the 2 x k system {sum c_i r1_i = 0, sum c_i r2_i = 0}.
std::vector<std::uint64_t> kernel_2xk(const std::vector<int>& r1,
                                      const std::vector<int>& r2) {
  const std::size_t k = r1.size();
  std::vector<std::vector<int>> rows = {r1, r2};
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < k && rank < 2; ++col) {
    std::size_t pivot_row = rank;
    while (pivot_row < 2 && rows[pivot_row][col] == 0) ++pivot_row;
    if (pivot_row == 2) continue;
    std::swap(rows[rank], rows[pivot_row]);
    for (std::size_t rr = 0; rr < 2; ++rr)
      if (rr != rank && rows[rr][col])
        for (std::size_t cc = 0; cc < k; ++cc) rows[rr][cc] ^= rows[rank][cc];
    pivots.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(k, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::uint64_t> kernel;
  for (std::size_t free_col = 0; free_col < k; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::uint64_t c = 1ull << free_col;
    for (std::size_t r = 0; r < rank; ++r)
      if (rows[r][free_col]) c |= 1ull << pivots[r];
    kernel.push_back(c);
  }
  return kernel;
}

// Uniformly random symplectic basis images: returns pairs (v_j, w_j) with
// <v_i, w_j> = delta_ij and <v_i, v_j> = <w_i, w_j> = 0.
std::vector<std::pair<std::uint32_t, std::uint32_t>> random_symplectic(
    std::size_t n, Rng& rng) {
  SymplecticSpace sp{n};
  std::vector<std::uint32_t> basis;
  for (std::size_t i = 0; i < 2 * n; ++i) basis.push_back(1u << i);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  while (!basis.empty()) {
    const std::size_t k = basis.size();
    const std::uint64_t cmask = (k == 64) ? ~0ull : ((1ull << k) - 1ull);
    std::uint32_t v = 0;
    while (v == 0) v = combine(basis, rng.next_u64() & cmask);
    std::uint32_t w = 0;
    do {
      w = combine(basis, rng.next_u64() & cmask);
    } while (sp.form(v, w) == 0);
    pairs.emplace_back(v, w);
    std::vector<int> r1(k), r2(k);
    for (std::size_t i = 0; i < k; ++i) {
      r1[i] = sp.form(basis[i], v);
      r2[i] = sp.form(basis[i], w);
    }
    std::vector<std::uint32_t> next;
    for (std::uint64_t c : kernel_2xk(r1, r2)) next.push_back(combine(basis, c));
    basis = std::move(next);
  }
  return pairs;
}

// Hermitian Pauli for an F2 vector and a sign bit:
// (-1)^sign i^{|x & z|} X^x Z^z.
Matrix hermitian_pauli(std::size_t n, std::uint32_t vec, int sign) {
  const std::uint32_t mask = (1u << n) - 1u;
  const std::uint32_t x = vec & mask, z = vec >> n;
  WeylOperator w;
  w.dims.assign(n, 2);
  w.exps.resize(n);
  for (std::size_t site = 0; site < n; ++site) {
    const std::size_t bit = n - 1 - site;  // leftmost site = most significant
    w.exps[site] = {static_cast<int>((x >> bit) & 1u),
                    static_cast<int>((z >> bit) & 1u)};
  }
  const int t = std::popcount(x & z) % 4;
  static const cdouble i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  w.phase = (sign ? -1.0 : 1.0) * i_pow[t];
  return w.matrix();
}

}  // namespace

Matrix clifford_sample(std::size_t n_qubits, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > 14)
    throw std::invalid_argument("clifford_sample: supported range 1..14 qubits");
  const std::size_t n = n_qubits;
  const std::size_t dim = 1ull << n;
  Rng rng(seed);
  const auto pairs = random_symplectic(n, rng);
  std::vector<int> sign_x(n), sign_z(n);
  for (std::size_t j = 0; j < n; ++j) {
    sign_x[j] = static_cast<int>(rng.next_u64() & 1u);
    sign_z[j] = static_cast<int>(rng.next_u64() & 1u);
  }
  std::vector<Matrix> p_img(n), q_img(n);
  for (std::size_t j = 0; j < n; ++j) {
    p_img[j] = hermitian_pauli(n, pairs[j].first, sign_x[j]);
    q_img[j] = hermitian_pauli(n, pairs[j].second, sign_z[j]);
  }

  // |phi_0> is the stabilizer state fixed by the Z images.
  Matrix proj = Matrix::Identity(dim, dim);
  for (std::size_t j = 0; j < n; ++j)
    proj = proj * ((Matrix::Identity(dim, dim) + q_img[j]) * 0.5);
  Eigen::Index best = 0;
  proj.diagonal().cwiseAbs().maxCoeff(&best);
  Vector phi0 = proj.col(best);
  phi0.normalize();

  // Columns: U|x> = prod_j P_j^{x_j} |phi_0> (the X images commute).
  Matrix u(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    Vector col = phi0;
    for (std::size_t site = 0; site < n; ++site)
      if ((x >> (n - 1 - site)) & 1ull) col = p_img[site] * col;
    u.col(x) = col;
  }

  // Canonical global phase: first nonzero entry of column 0 positive real.
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (std::abs(u(i, 0)) > 1e-9) {
      u *= std::conj(u(i, 0) / std::abs(u(i, 0)));
      break;
    }
  }
  if (!approx_unitary(u, 1e-9))
    throw std::runtime_error("clifford_sample: synthesized matrix not unitary");
  return u;
}

}  // namespace otoclab
