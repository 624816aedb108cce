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

#ifndef OTOCLAB_LAYOUT_HPP
#define OTOCLAB_LAYOUT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace otoclab {

struct Register {
  std::string name;
  std::size_t dim;
};

// Ordered list of named qudit registers. Index convention, fixed project-wide:
// the leftmost register is the most significant digit of the composite basis
// index, so |i_1 i_2 ... i_n> maps to i_1*stride_1 + ... + i_n (stride_n = 1).
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Register> regs);

  static SystemLayout sites(const std::vector<std::size_t>& dims,
                            const std::string& prefix = "q");

  std::size_t num_registers() const { return regs_.size(); }
  std::size_t total_dim() const { return total_dim_; }
  const Register& reg(std::size_t i) const { return regs_[i]; }
  const std::vector<Register>& registers() const { return regs_; }

  bool has(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;
  std::size_t dim_of(const std::string& name) const;

  // Product of digits to the right of register i (the register's stride).
  std::size_t stride(std::size_t i) const { return strides_[i]; }

  std::vector<std::size_t> indices_of(const std::vector<std::string>& names) const;
  std::size_t dim_product(const std::vector<std::string>& names) const;

  // Complement of `names`, in layout order.
  std::vector<std::string> complement(const std::vector<std::string>& names) const;

  // Layout with the named registers only, in layout order.
  SystemLayout restricted(const std::vector<std::string>& names) const;

  SystemLayout renamed(const std::string& from, const std::string& to) const;

  // Merge adjacent registers (listed in layout order) into one register.
  // A pure relabelling: composite amplitudes are untouched.
  SystemLayout merged(const std::vector<std::string>& names,
                      const std::string& merged_name) const;

  // Split one register into parts whose dims multiply to the original dim.
  SystemLayout split(const std::string& name,
                     const std::vector<Register>& parts) const;

  bool operator==(const SystemLayout& other) const;
  bool operator!=(const SystemLayout& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  void rebuild();
  std::vector<Register> regs_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

}  // namespace otoclab

#endif  // OTOCLAB_LAYOUT_HPP
