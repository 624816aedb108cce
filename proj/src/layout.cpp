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

#include "otoclab/layout.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace otoclab {

SystemLayout::SystemLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
  std::set<std::string> seen;
  for (const auto& r : regs_) {
    if (r.dim < 2)
      throw std::invalid_argument("register '" + r.name + "' has dim " +
                                  std::to_string(r.dim) + ", need >= 2");
    if (!seen.insert(r.name).second)
      throw std::invalid_argument("duplicate register name '" + r.name + "'");
  }
  rebuild();
}

void SystemLayout::rebuild() {
  strides_.assign(regs_.size(), 1);
  total_dim_ = 1;
  for (std::size_t i = regs_.size(); i-- > 0;) {
    strides_[i] = total_dim_;
    total_dim_ *= regs_[i].dim;
  }
}

SystemLayout SystemLayout::sites(const std::vector<std::size_t>& dims,
                                 const std::string& prefix) {
  std::vector<Register> regs;
  regs.reserve(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i)
    regs.push_back({prefix + std::to_string(i), dims[i]});
  return SystemLayout(std::move(regs));
}

bool SystemLayout::has(const std::string& name) const {
  return std::any_of(regs_.begin(), regs_.end(),
                     [&](const Register& r) { return r.name == name; });
}

std::size_t SystemLayout::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < regs_.size(); ++i)
    if (regs_[i].name == name) return i;
  throw std::invalid_argument("no register named '" + name + "'");
}

std::size_t SystemLayout::dim_of(const std::string& name) const {
  return regs_[index_of(name)].dim;
}

std::vector<std::size_t> SystemLayout::indices_of(
    const std::vector<std::string>& names) const {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second)
      throw std::invalid_argument("register '" + n + "' listed twice");
    out.push_back(index_of(n));
  }
  return out;
}

std::size_t SystemLayout::dim_product(
    const std::vector<std::string>& names) const {
  std::size_t d = 1;
  for (const auto& n : names) d *= dim_of(n);
  return d;
}

std::vector<std::string> SystemLayout::complement(
    const std::vector<std::string>& names) const {
  std::set<std::string> drop(names.begin(), names.end());
  for (const auto& n : drop) index_of(n);  // validate
  std::vector<std::string> out;
  for (const auto& r : regs_)
    if (!drop.count(r.name)) out.push_back(r.name);
  return out;
}

SystemLayout SystemLayout::restricted(
    const std::vector<std::string>& names) const {
  std::set<std::string> keep(names.begin(), names.end());
  std::vector<Register> regs;
  for (const auto& r : regs_)
    if (keep.count(r.name)) regs.push_back(r);
  if (regs.size() != keep.size())
    throw std::invalid_argument("restricted: unknown register in list");
  return SystemLayout(std::move(regs));
}

SystemLayout SystemLayout::renamed(const std::string& from,
                                   const std::string& to) const {
  std::vector<Register> regs = regs_;
  regs[index_of(from)].name = to;
  return SystemLayout(std::move(regs));
}

SystemLayout SystemLayout::merged(const std::vector<std::string>& names,
                                  const std::string& merged_name) const {
  if (names.empty()) throw std::invalid_argument("merged: empty name list");
  const std::size_t first = index_of(names.front());
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (first + k >= regs_.size() || regs_[first + k].name != names[k])
      throw std::invalid_argument(
          "merged: registers must be adjacent and in layout order");
  }
  std::vector<Register> regs(regs_.begin(), regs_.begin() + first);
  std::size_t dim = 1;
  for (const auto& n : names) dim *= dim_of(n);
  regs.push_back({merged_name, dim});
  regs.insert(regs.end(), regs_.begin() + first + names.size(), regs_.end());
  return SystemLayout(std::move(regs));
}

SystemLayout SystemLayout::split(const std::string& name,
                                 const std::vector<Register>& parts) const {
  const std::size_t at = index_of(name);
  std::size_t dim = 1;
  for (const auto& p : parts) dim *= p.dim;
  if (dim != regs_[at].dim)
    throw std::invalid_argument("split: part dims do not multiply to " +
                                std::to_string(regs_[at].dim));
  std::vector<Register> regs(regs_.begin(), regs_.begin() + at);
  regs.insert(regs.end(), parts.begin(), parts.end());
  regs.insert(regs.end(), regs_.begin() + at + 1, regs_.end());
  return SystemLayout(std::move(regs));
}

bool SystemLayout::operator==(const SystemLayout& other) const {
  if (regs_.size() != other.regs_.size()) return false;
  for (std::size_t i = 0; i < regs_.size(); ++i)
    if (regs_[i].name != other.regs_[i].name ||
        regs_[i].dim != other.regs_[i].dim)
      return false;
  return true;
}

std::string SystemLayout::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    if (i) os << ", ";
    os << regs_[i].name << ":" << regs_[i].dim;
  }
  os << "]";
  return os.str();
}

}  // namespace otoclab
