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

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sepball {

namespace detail {

inline std::atomic<std::int64_t>& max_total_dim_storage() {
  static std::atomic<std::int64_t> value{4096};
  return value;
}

}  // namespace detail

/// Process-wide cap on the total dimension of dense operators. Tensor
/// products and composite structures whose total dimension would exceed the
/// cap are rejected with std::length_error before any allocation happens.
inline std::int64_t max_total_dim() {
  return detail::max_total_dim_storage().load(std::memory_order_relaxed);
}

inline void set_max_total_dim(std::int64_t value) {
  if (value < 2) {
    throw std::invalid_argument("set_max_total_dim: cap must be at least 2, got " +
                                std::to_string(value));
  }
  detail::max_total_dim_storage().store(value, std::memory_order_relaxed);
}

namespace detail {

inline void check_total_dim(std::int64_t dim, const char* where) {
  if (dim > max_total_dim()) {
    throw std::length_error(std::string(where) + ": total dimension " + std::to_string(dim) +
                            " exceeds the configured cap of " + std::to_string(max_total_dim()));
  }
}

}  // namespace detail

}  // namespace sepball
