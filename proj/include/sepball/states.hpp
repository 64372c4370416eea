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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepball/matrix.hpp"
#include "sepball/rng.hpp"
#include "sepball/structure.hpp"

namespace sepball {

inline HermitianMatrix basis_state_projector(Eigen::Index dim, Eigen::Index index = 0) {
  if (dim < 1) {
    throw std::invalid_argument("basis_state_projector: dimension must be positive");
  }
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("basis_state_projector: basis index out of range");
  }
  detail::check_total_dim(dim, "basis_state_projector");
  GeneralMatrix out = GeneralMatrix::Zero(dim, dim);
  out(index, index) = 1.0;
  return HermitianMatrix(out);
}

/// Mixture epsilon * projector + (1 - epsilon) I/d of a pure state with the
/// maximally mixed background. The projector must be unit trace and
/// idempotent within 1e-9 (hence rank one).
inline HermitianMatrix pseudopure(const HermitianMatrix& projector, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("pseudopure: epsilon must lie in [0, 1], got " +
                                std::to_string(epsilon));
  }
  const double trace_dev = std::abs(projector.trace() - 1.0);
  const double idem_dev = (projector.mat() * projector.mat() - projector.mat()).norm();
  if (trace_dev > 1e-9 || idem_dev > 1e-9) {
    throw std::invalid_argument("pseudopure: input must be a rank-one unit-trace projector "
                                "(trace deviation " + std::to_string(trace_dev) +
                                ", idempotency deviation " + std::to_string(idem_dev) + ")");
  }
  const Eigen::Index n = projector.dim();
  const double background = (1.0 - epsilon) / static_cast<double>(n);
  return HermitianMatrix(epsilon * projector.mat() +
                         background * GeneralMatrix::Identity(n, n));
}

/// High-temperature state of m noninteracting spin-1/2 systems with
/// polarization eta: the m-fold product of diag((1+eta)/2, (1-eta)/2).
inline HermitianMatrix thermal_qubits(double eta, int parties) {
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw std::invalid_argument("thermal_qubits: polarization must lie in [0, 1), got " +
                                std::to_string(eta));
  }
  if (parties < 1 || parties > 62) {
    throw std::invalid_argument("thermal_qubits: party count out of range");
  }
  const std::int64_t n = std::int64_t{1} << parties;
  detail::check_total_dim(n, "thermal_qubits");
  const double up = (1.0 + eta) / 2.0;
  const double down = (1.0 - eta) / 2.0;
  GeneralMatrix out = GeneralMatrix::Zero(n, n);
  for (std::int64_t k = 0; k < n; ++k) {
    double entry = 1.0;
    for (int p = 0; p < parties; ++p) {
      const bool excited = ((k >> (parties - 1 - p)) & 1) != 0;
      entry *= excited ? down : up;
    }
    out(k, k) = entry;
  }
  return HermitianMatrix(out);
}

/// Projector onto sum_i |ii> / sqrt(d) on a d x d bipartite system.
inline HermitianMatrix max_entangled(int local_dim) {
  if (local_dim < 2) {
    throw std::invalid_argument("max_entangled: local dimension must be >= 2");
  }
  const std::int64_t n = static_cast<std::int64_t>(local_dim) * local_dim;
  detail::check_total_dim(n, "max_entangled");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(local_dim));
  for (int i = 0; i < local_dim; ++i) {
    v(static_cast<Eigen::Index>(i) * local_dim + i) = amp;
  }
  return HermitianMatrix(v * v.adjoint());
}

/// Two-qubit mixture p |psi-><psi-| + (1 - p) I/4 of the singlet with the
/// maximally mixed state. Entangled exactly for p > 1/3.
inline HermitianMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("werner: mixing parameter must lie in [0, 1], got " +
                                std::to_string(p));
  }
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
  singlet(1) = 1.0 / std::numbers::sqrt2;
  singlet(2) = -1.0 / std::numbers::sqrt2;
  return HermitianMatrix(p * (singlet * singlet.adjoint()).eval() +
                         (1.0 - p) / 4.0 * GeneralMatrix::Identity(4, 4));
}

/// Full-rank random density matrix G G† / tr(G G†) with G square complex
/// Gaussian.
inline HermitianMatrix random_ginibre(Eigen::Index dim, Rng& rng) {
  if (dim < 2) {
    throw std::invalid_argument("random_ginibre: dimension must be >= 2");
  }
  detail::check_total_dim(dim, "random_ginibre");
  const GeneralMatrix g = rng.gaussian_matrix(dim, dim);
  GeneralMatrix h = g * g.adjoint();
  h /= h.trace().real();
  return HermitianMatrix(h);
}

/// Random separable state: a Dirichlet-weighted mixture of products of
/// independent single-party density matrices.
inline HermitianMatrix random_product(const MultipartiteStructure& s, int terms, Rng& rng) {
  if (terms < 1) {
    throw std::invalid_argument("random_product: at least one mixture term required");
  }
  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - rng.uniform());
    total += w;
  }
  GeneralMatrix out = GeneralMatrix::Zero(s.total_dim(), s.total_dim());
  for (const double w : weights) {
    GeneralMatrix term = GeneralMatrix::Ones(1, 1);
    for (int p = 0; p < s.parties(); ++p) {
      term = tensor(term, random_ginibre(s.dim_of(p), rng).mat());
    }
    out += (w / total) * term;
  }
  return HermitianMatrix(out);
}

enum class StateFamily {
  Pseudopure,
  Thermal,
  Werner,
  MaxEntangled,
  RandomGinibre,
  RandomProduct,
  Identity,
};

/// Declarative description of a state to construct. Interpretation of the
/// numeric fields depends on the family; unused fields are ignored.
struct StateSpec {
  StateFamily family;
  MultipartiteStructure structure;
  double epsilon = 0.0;       // Pseudopure
  double eta = 0.0;           // Thermal
  double p = 0.0;             // Werner
  std::uint64_t seed = 0;     // RandomGinibre, RandomProduct
  int terms = 4;              // RandomProduct
};

inline HermitianMatrix make_state(const StateSpec& spec) {
  switch (spec.family) {
    case StateFamily::Pseudopure:
      return pseudopure(basis_state_projector(spec.structure.total_dim()), spec.epsilon);
    case StateFamily::Thermal:
      for (int d : spec.structure.dims()) {
        if (d != 2) {
          throw std::invalid_argument("make_state: thermal family requires qubit parties");
        }
      }
      return thermal_qubits(spec.eta, spec.structure.parties());
    case StateFamily::Werner:
      if (spec.structure.dims() != std::vector<int>{2, 2}) {
        throw std::invalid_argument("make_state: werner family requires structure 2,2");
      }
      return werner(spec.p);
    case StateFamily::MaxEntangled: {
      const auto& dims = spec.structure.dims();
      if (dims.size() != 2 || dims[0] != dims[1]) {
        throw std::invalid_argument(
            "make_state: max-entangled family requires two parties of equal dimension");
      }
      return max_entangled(dims[0]);
    }
    case StateFamily::RandomGinibre: {
      Rng rng(spec.seed);
      return random_ginibre(spec.structure.total_dim(), rng);
    }
    case StateFamily::RandomProduct: {
      Rng rng(spec.seed);
      return random_product(spec.structure, spec.terms, rng);
    }
    case StateFamily::Identity:
      return HermitianMatrix::identity(spec.structure.total_dim());
  }
  throw std::logic_error("make_state: unknown family");
}

inline const char* to_string(StateFamily family) {
  switch (family) {
    case StateFamily::Pseudopure: return "pseudopure";
    case StateFamily::Thermal: return "thermal";
    case StateFamily::Werner: return "werner";
    case StateFamily::MaxEntangled: return "max-entangled";
    case StateFamily::RandomGinibre: return "random-ginibre";
    case StateFamily::RandomProduct: return "random-product";
    case StateFamily::Identity: return "identity";
  }
  throw std::logic_error("to_string: unknown state family");
}

}  // namespace sepball
