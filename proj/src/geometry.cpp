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

#include "otoclab/geometry.hpp"

#include <algorithm>
#include <set>

namespace otoclab {

std::size_t OtocGeometry::dim() const {
  std::size_t d = 1;
  for (std::size_t x : site_dims) d *= x;
  return d;
}

std::size_t OtocGeometry::dim_a() const {
  std::size_t d = 1;
  for (std::size_t i = 0; i < n_a_sites; ++i) d *= site_dims[i];
  return d;
}

std::size_t OtocGeometry::dim_d() const {
  std::size_t d = 1;
  for (std::size_t s : d_sites) d *= site_dims[s];
  return d;
}

std::vector<std::size_t> OtocGeometry::a_dims() const {
  return {site_dims.begin(), site_dims.begin() + n_a_sites};
}

std::vector<std::size_t> OtocGeometry::d_dims() const {
  std::vector<std::size_t> out;
  for (std::size_t s : d_sites) out.push_back(site_dims[s]);
  return out;
}

void OtocGeometry::validate() const {
  if (site_dims.empty())
    throw std::invalid_argument("geometry: no sites");
  for (std::size_t d : site_dims)
    if (d < 2) throw std::invalid_argument("geometry: site dim < 2");
  if (n_a_sites < 1 || n_a_sites > site_dims.size())
    throw std::invalid_argument("geometry: bad A region");
  if (d_sites.empty())
    throw std::invalid_argument("geometry: empty D region");
  std::set<std::size_t> seen;
  for (std::size_t s : d_sites) {
    if (s >= site_dims.size() || !seen.insert(s).second)
      throw std::invalid_argument("geometry: bad D site list");
  }
}

Matrix OtocGeometry::output_permutation() const {
  validate();
  const std::size_t n = site_dims.size();
  std::vector<bool> in_d(n, false);
  for (std::size_t s : d_sites) in_d[s] = true;
  // New site order: C sites first, then D sites (each keeping relative order).
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < n; ++s)
    if (!in_d[s]) order.push_back(s);
  for (std::size_t s = 0; s < n; ++s)
    if (in_d[s]) order.push_back(s);
  std::vector<std::size_t> old_stride(n, 1), new_stride(n, 1);
  for (std::size_t s = n; s-- > 1;)
    old_stride[s - 1] = old_stride[s] * site_dims[s];
  for (std::size_t k = n; k-- > 1;)
    new_stride[k - 1] = new_stride[k] * site_dims[order[k]];
  const std::size_t d = dim();
  Matrix p = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t rem = i;
    std::vector<std::size_t> digit(n);
    for (std::size_t s = 0; s < n; ++s) {
      digit[s] = rem / old_stride[s];
      rem %= old_stride[s];
    }
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) j += digit[order[k]] * new_stride[k];
    p(j, i) = 1.0;
  }
  return p;
}

Matrix OtocGeometry::effective_unitary(const Matrix& u) const {
  return output_permutation() * u;
}

Matrix OtocGeometry::embed_input(const Matrix& op_a) const {
  const std::size_t da = dim_a(), db = dim_b();
  if (op_a.rows() != op_a.cols() ||
      static_cast<std::size_t>(op_a.rows()) != da)
    throw std::invalid_argument("embed_input: operator side mismatch");
  return kron(op_a, Matrix::Identity(db, db));
}

Matrix OtocGeometry::embed_output(const Matrix& op_d) const {
  const std::size_t dd = dim_d(), dc = dim_c();
  if (op_d.rows() != op_d.cols() ||
      static_cast<std::size_t>(op_d.rows()) != dd)
    throw std::invalid_argument("embed_output: operator side mismatch");
  const Matrix p = output_permutation();
  return p.adjoint() * kron(Matrix::Identity(dc, dc), op_d) * p;
}

}  // namespace otoclab
