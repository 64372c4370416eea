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

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "sepball/config.hpp"

namespace sepball {

namespace detail {

/// std::to_string renders small doubles as "0.000000"; error messages about
/// tolerances need shortest-form notation instead.
inline std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

}  // namespace detail

using Complex = std::complex<double>;

/// Dense complex matrix without structural guarantees. Used for map outputs,
/// blocks and other intermediates that need not be Hermitian.
using GeneralMatrix = Eigen::MatrixXcd;

/// Dense Hermitian matrix. Construction verifies hermiticity up to an
/// entrywise tolerance and then symmetrizes, so downstream code can rely on
/// mat() being exactly equal to its adjoint.
class HermitianMatrix {
 public:
  static constexpr double default_hermiticity_tol = 1e-9;

  explicit HermitianMatrix(const GeneralMatrix& entries,
                           double hermiticity_tol = default_hermiticity_tol)
      : tol_(hermiticity_tol) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
      throw std::invalid_argument("HermitianMatrix: entries must form a nonempty square matrix");
    }
    const double deviation = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (!(deviation <= hermiticity_tol)) {
      throw std::invalid_argument("HermitianMatrix: input is not Hermitian within tolerance " +
                                  detail::format_double(hermiticity_tol) + " (max deviation " +
                                  detail::format_double(deviation) + ")");
    }
    mat_ = 0.5 * (entries + entries.adjoint().eval());
  }

  static HermitianMatrix identity(Eigen::Index dim) {
    if (dim < 1) {
      throw std::invalid_argument("HermitianMatrix::identity: dimension must be positive");
    }
    detail::check_total_dim(dim, "HermitianMatrix::identity");
    return HermitianMatrix(GeneralMatrix::Identity(dim, dim));
  }

  Eigen::Index dim() const { return mat_.rows(); }
  const GeneralMatrix& mat() const { return mat_; }
  double trace() const { return mat_.trace().real(); }
  double hermiticity_tol() const { return tol_; }

 private:
  GeneralMatrix mat_;
  double tol_;
};

inline double frobenius_norm(const GeneralMatrix& a) { return a.norm(); }
inline double frobenius_norm(const HermitianMatrix& a) { return a.mat().norm(); }

/// Eigenvalues in ascending order.
inline Eigen::VectorXd eigenvalues(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<GeneralMatrix> solver(a.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues: Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

inline double min_eigenvalue(const HermitianMatrix& a) { return eigenvalues(a)(0); }

inline double operator_norm(const HermitianMatrix& a) {
  const Eigen::VectorXd ev = eigenvalues(a);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

/// Largest singular value.
inline double operator_norm(const GeneralMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw std::invalid_argument("operator_norm: matrix must be nonempty");
  }
  Eigen::JacobiSVD<GeneralMatrix> svd(a);
  return svd.singularValues()(0);
}

inline bool is_psd(const HermitianMatrix& a, double tol = 1e-9) {
  return min_eigenvalue(a) >= -tol;
}

/// tr(a^2), equal to the squared Frobenius norm for Hermitian input.
inline double purity(const HermitianMatrix& a) { return a.mat().squaredNorm(); }

/// Kronecker product in row-major index convention: the left factor owns the
/// most significant digit of the composite index.
inline GeneralMatrix tensor(const GeneralMatrix& a, const GeneralMatrix& b) {
  detail::check_total_dim(static_cast<std::int64_t>(a.rows()) * b.rows(), "tensor");
  detail::check_total_dim(static_cast<std::int64_t>(a.cols()) * b.cols(), "tensor");
  return Eigen::kroneckerProduct(a, b);
}

inline HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(tensor(a.mat(), b.mat()),
                         std::max(a.hermiticity_tol(), b.hermiticity_tol()));
}

}  // namespace sepball
