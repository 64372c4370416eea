// Copyright 2026 The sepball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepball/config.hpp"

namespace sepball {

/// Ordered list of local dimensions of a multipartite system. The composite
/// index convention matches the row-major Kronecker product: the first party
/// owns the most significant digit of a composite basis index.
class MultipartiteStructure {
 public:
  explicit MultipartiteStructure(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
      throw std::invalid_argument("MultipartiteStructure: at least one party is required");
    }
    std::int64_t total = 1;
    for (int d : dims_) {
      if (d < 2) {
        throw std::invalid_argument("MultipartiteStructure: every local dimension must be >= 2, got " +
                                    std::to_string(d));
      }
      if (total > max_total_dim() / d) {
        throw std::length_error("MultipartiteStructure: total dimension exceeds the configured cap of " +
                                std::to_string(max_total_dim()));
      }
      total *= d;
    }
    total_dim_ = total;
  }

  const std::vector<int>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  std::int64_t total_dim() const { return total_dim_; }

  int dim_of(int party) const {
    if (party < 0 || party >= parties()) {
      throw std::invalid_argument("MultipartiteStructure: party index " + std::to_string(party) +
                                  " out of range for " + std::to_string(parties()) + " parties");
    }
    return dims_[static_cast<std::size_t>(party)];
  }

  /// Distance between consecutive values of party p's digit in the composite
  /// index, i.e. the product of all dimensions to the right of p.
  std::int64_t stride_of(int party) const {
    dim_of(party);
    std::int64_t s = 1;
    for (int q = parties() - 1; q > party; --q) {
      s *= dims_[static_cast<std::size_t>(q)];
    }
    return s;
  }

  bool operator==(const MultipartiteStructure& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::int64_t total_dim_ = 1;
};

}  // namespace sepball
