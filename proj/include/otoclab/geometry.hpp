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

#ifndef OTOCLAB_GEOMETRY_HPP
#define OTOCLAB_GEOMETRY_HPP

#include <cstddef>
#include <vector>

#include "otoclab/common.hpp"

namespace otoclab {

// Region bookkeeping for one copy of the evolved system. The input
// factorization is H_A ⊗ H_B with A the leading sites; the output
// factorization is H_C ⊗ H_D with D an arbitrary subset of output sites.
// Internally D is rotated to the trailing positions by a site permutation,
// so protocol code always sees a trailing C|D split.
struct OtocGeometry {
  std::vector<std::size_t> site_dims;
  std::size_t n_a_sites = 1;
  std::vector<std::size_t> d_sites = {0};

  std::size_t num_sites() const { return site_dims.size(); }
  std::size_t dim() const;
  std::size_t dim_a() const;
  std::size_t dim_b() const { return dim() / dim_a(); }
  std::size_t dim_d() const;
  std::size_t dim_c() const { return dim() / dim_d(); }

  std::vector<std::size_t> a_dims() const;
  std::vector<std::size_t> d_dims() const;

  void validate() const;

  // Permutation matrix moving the D sites to the trailing positions
  // (relative order preserved). effective_unitary(U) = P * U has a plain
  // trailing C|D output split.
  Matrix output_permutation() const;
  Matrix effective_unitary(const Matrix& u) const;

  // O_A ⊗ I_B on the input factorization.
  Matrix embed_input(const Matrix& op_a) const;
  // I_C ⊗ O_D on the output factorization (in original site order).
  Matrix embed_output(const Matrix& op_d) const;
};

}  // namespace otoclab

#endif  // OTOCLAB_GEOMETRY_HPP
