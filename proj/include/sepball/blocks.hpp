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

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepball/matrix.hpp"
#include "sepball/structure.hpp"

namespace sepball {

namespace detail {

inline void check_dim_match(const HermitianMatrix& rho, const MultipartiteStructure& s,
                            const char* where) {
  if (rho.dim() != s.total_dim()) {
    throw std::invalid_argument(std::string(where) + ": matrix dimension " +
                                std::to_string(rho.dim()) + " does not match structure total " +
                                std::to_string(s.total_dim()));
  }
}

}  // namespace detail

/// Block (i, j) of rho viewed as a d1 x d1 array of D x D blocks, where d1 is
/// the first party's dimension and D the product of the remaining ones.
inline GeneralMatrix block(const HermitianMatrix& rho, const MultipartiteStructure& s, int i,
                           int j) {
  detail::check_dim_match(rho, s, "block");
  const int d1 = s.dims().front();
  if (i < 0 || i >= d1 || j < 0 || j >= d1) {
    throw std::invalid_argument("block: index (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") out of range for first party dimension " + std::to_string(d1));
  }
  const Eigen::Index span = rho.dim() / d1;
  return rho.mat().block(i * span, j * span, span, span);
}

/// Applies a matrix map to every first-party block of rho and reassembles the
/// results. The map must send every D x D block to a square matrix of one
/// common size K; the result is d1*K x d1*K.
template <typename BlockMap>
GeneralMatrix apply_blockwise(BlockMap&& phi, const HermitianMatrix& rho,
                              const MultipartiteStructure& s) {
  detail::check_dim_match(rho, s, "apply_blockwise");
  const int d1 = s.dims().front();
  const Eigen::Index span = rho.dim() / d1;

  const GeneralMatrix first = phi(GeneralMatrix(rho.mat().block(0, 0, span, span)));
  if (first.rows() != first.cols()) {
    throw std::invalid_argument("apply_blockwise: block map must return square matrices");
  }
  const Eigen::Index k = first.rows();

  GeneralMatrix out(d1 * k, d1 * k);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      GeneralMatrix image =
          (i == 0 && j == 0)
              ? first
              : GeneralMatrix(phi(GeneralMatrix(rho.mat().block(i * span, j * span, span, span))));
      if (image.rows() != k || image.cols() != k) {
        throw std::invalid_argument("apply_blockwise: block map output size is inconsistent");
      }
      out.block(i * k, j * k, k, k) = image;
    }
  }
  return out;
}

/// Transposes the indices of the given parties. The result of transposing a
/// Hermitian matrix over any subset of parties is again Hermitian.
inline HermitianMatrix partial_transpose(const HermitianMatrix& rho,
                                         const MultipartiteStructure& s,
                                         const std::vector<int>& parties) {
  detail::check_dim_match(rho, s, "partial_transpose");
  if (parties.empty()) {
    throw std::invalid_argument("partial_transpose: party subset must be nonempty");
  }
  std::vector<int> subset = parties;
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    throw std::invalid_argument("partial_transpose: party subset contains duplicates");
  }
  const int m = s.parties();
  if (subset.front() < 0 || subset.back() >= m) {
    throw std::invalid_argument("partial_transpose: party index out of range");
  }
  if (static_cast<int>(subset.size()) == m) {
    throw std::invalid_argument("partial_transpose: party subset must be proper (use a full "
                                "transpose directly instead)");
  }

  std::vector<bool> flip(static_cast<std::size_t>(m), false);
  for (int p : subset) flip[static_cast<std::size_t>(p)] = true;

  std::vector<std::int64_t> stride(static_cast<std::size_t>(m));
  for (int p = 0; p < m; ++p) stride[static_cast<std::size_t>(p)] = s.stride_of(p);

  const Eigen::Index n = rho.dim();
  GeneralMatrix out(n, n);
  std::vector<int> rdig(static_cast<std::size_t>(m)), cdig(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < n; ++r) {
    std::int64_t rr = r;
    for (int p = 0; p < m; ++p) {
      rdig[static_cast<std::size_t>(p)] = static_cast<int>(rr / stride[static_cast<std::size_t>(p)]);
      rr %= stride[static_cast<std::size_t>(p)];
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      std::int64_t cc = c;
      for (int p = 0; p < m; ++p) {
        cdig[static_cast<std::size_t>(p)] =
            static_cast<int>(cc / stride[static_cast<std::size_t>(p)]);
        cc %= stride[static_cast<std::size_t>(p)];
      }
      std::int64_t src_r = 0;
      std::int64_t src_c = 0;
      for (int p = 0; p < m; ++p) {
        const auto sp = static_cast<std::size_t>(p);
        const int row_digit = flip[sp] ? cdig[sp] : rdig[sp];
        const int col_digit = flip[sp] ? rdig[sp] : cdig[sp];
        src_r += row_digit * stride[sp];
        src_c += col_digit * stride[sp];
      }
      out(r, c) = rho.mat()(src_r, src_c);
    }
  }
  return HermitianMatrix(out, rho.hermiticity_tol());
}

}  // namespace sepball
