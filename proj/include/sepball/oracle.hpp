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

#include "sepball/blocks.hpp"
#include "sepball/matrix.hpp"
#include "sepball/rng.hpp"
#include "sepball/structure.hpp"

namespace sepball {

struct PptEntry {
  std::vector<int> transposed_parties;
  double min_eigenvalue;
  bool psd;
};

/// Partial-transpose test over every bipartition. A negative eigenvalue in
/// any entry proves entanglement across that cut; all entries passing is a
/// necessary condition for separability and decisive only for total
/// dimension at most 6 with two parties.
struct PptReport {
  std::vector<PptEntry> bipartitions;
  bool all_psd;
  bool decisive;
  double tol;
};

/// Runs the partial-transpose test for a unit-trace PSD state over all
/// 2^(m-1) - 1 bipartitions (party 0 stays on the untransposed side; the
/// complementary cut has the same spectrum).
inline PptReport ppt_check(const HermitianMatrix& rho, const MultipartiteStructure& s,
                           double tol = 1e-9) {
  detail::check_dim_match(rho, s, "ppt_check");
  if (s.parties() < 2) {
    throw std::invalid_argument("ppt_check: at least two parties required");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-6) {
    throw std::invalid_argument("ppt_check: input must have unit trace, got " +
                                std::to_string(rho.trace()));
  }
  const int m = s.parties();
  PptReport report{{}, true, m == 2 && s.total_dim() <= 6, tol};
  const std::uint32_t subsets = (std::uint32_t{1} << (m - 1)) - 1;
  for (std::uint32_t mask = 1; mask <= subsets; ++mask) {
    std::vector<int> parties;
    for (int p = 1; p < m; ++p) {
      if ((mask >> (p - 1)) & 1) parties.push_back(p);
    }
    const double lambda = min_eigenvalue(partial_transpose(rho, s, parties));
    const bool psd = lambda >= -tol;
    report.all_psd = report.all_psd && psd;
    report.bipartitions.push_back(PptEntry{std::move(parties), lambda, psd});
  }
  return report;
}

namespace detail {

/// Nonnegative least squares min ||A x - b|| over x >= 0, given the Gram
/// matrix G = A^T A and the projection c = A^T b. Active-set iteration in
/// the style of Lawson and Hanson; a tiny ridge keeps the passive solves
/// well posed when atoms nearly coincide.
inline Eigen::VectorXd nnls_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& c) {
  const Eigen::Index n = c.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (n == 0) return x;
  std::vector<Eigen::Index> passive;
  std::vector<bool> in_passive(static_cast<std::size_t>(n), false);
  const double grad_tol = 1e-12 * (1.0 + c.cwiseAbs().maxCoeff());

  const auto solve_passive = [&]() -> Eigen::VectorXd {
    const Eigen::Index k = static_cast<Eigen::Index>(passive.size());
    Eigen::MatrixXd sub(k, k);
    Eigen::VectorXd rhs(k);
    for (Eigen::Index a = 0; a < k; ++a) {
      rhs(a) = c(passive[static_cast<std::size_t>(a)]);
      for (Eigen::Index b = 0; b < k; ++b) {
        sub(a, b) = gram(passive[static_cast<std::size_t>(a)], passive[static_cast<std::size_t>(b)]);
      }
    }
    const double ridge = 1e-12 * (1.0 + sub.trace() / static_cast<double>(k));
    sub.diagonal().array() += ridge;
    return sub.ldlt().solve(rhs);
  };

  const int max_outer = 30 * static_cast<int>(n) + 100;
  for (int outer = 0; outer < max_outer; ++outer) {
    const Eigen::VectorXd grad = c - gram * x;
    Eigen::Index best = -1;
    double best_grad = grad_tol;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!in_passive[static_cast<std::size_t>(i)] && grad(i) > best_grad) {
        best = i;
        best_grad = grad(i);
      }
    }
    if (best < 0) break;
    passive.push_back(best);
    in_passive[static_cast<std::size_t>(best)] = true;

    for (int inner = 0; inner < max_outer; ++inner) {
      const Eigen::VectorXd z = solve_passive();
      bool feasible = true;
      for (Eigen::Index a = 0; a < z.size(); ++a) {
        if (z(a) <= 0.0) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        for (Eigen::Index a = 0; a < z.size(); ++a) {
          x(passive[static_cast<std::size_t>(a)]) = z(a);
        }
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index a = 0; a < z.size(); ++a) {
        const double xi = x(passive[static_cast<std::size_t>(a)]);
        if (z(a) <= 0.0 && xi - z(a) > 0.0) {
          alpha = std::min(alpha, xi / (xi - z(a)));
        }
      }
      for (Eigen::Index a = 0; a < z.size(); ++a) {
        const Eigen::Index i = passive[static_cast<std::size_t>(a)];
        x(i) += alpha * (z(a) - x(i));
      }
      std::vector<Eigen::Index> survivors;
      for (const Eigen::Index i : passive) {
        if (x(i) > 1e-14) {
          survivors.push_back(i);
        } else {
          x(i) = 0.0;
          in_passive[static_cast<std::size_t>(i)] = false;
        }
      }
      passive = std::move(survivors);
      if (passive.empty()) break;
    }
  }
  return x;
}

}  // namespace detail

struct DecompositionTerm {
  double weight;
  /// One unit-trace rank-one PSD factor per party, in structure order.
  std::vector<GeneralMatrix> factors;
};

/// Explicit convex mixture of product states. The weights sum to the trace
/// of the decomposed matrix up to the reconstruction error.
struct Decomposition {
  std::vector<DecompositionTerm> terms;
  double reconstruction_error;
};

enum class SearchStatus {
  Converged,
  /// The atom budget ran out before the residual dropped below tolerance.
  /// This is a statement about the search effort only, never evidence that
  /// the input is entangled.
  BudgetExhausted,
};

inline const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Converged: return "converged";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
  }
  throw std::logic_error("to_string: unknown search status");
}

struct SearchResult {
  SearchStatus status;
  Decomposition decomposition;
  int iterations;
};

namespace detail {

inline Eigen::VectorXcd kron_vector(const std::vector<Eigen::VectorXcd>& factors) {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
  for (const auto& f : factors) {
    acc = Eigen::kroneckerProduct(acc, f).eval();
  }
  return acc;
}

inline GeneralMatrix party_isometry(const std::vector<Eigen::VectorXcd>& factors,
                                    const MultipartiteStructure& s, int party) {
  GeneralMatrix acc = GeneralMatrix::Ones(1, 1);
  for (int q = 0; q < s.parties(); ++q) {
    if (q == party) {
      const int d = s.dim_of(q);
      acc = Eigen::kroneckerProduct(acc, GeneralMatrix::Identity(d, d)).eval();
    } else {
      acc = Eigen::kroneckerProduct(acc, GeneralMatrix(factors[static_cast<std::size_t>(q)]))
                .eval();
    }
  }
  return acc;
}

inline Eigen::VectorXcd random_unit_vector(Eigen::Index dim, Rng& rng) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.gaussian_complex();
  v /= v.norm();
  return v;
}

}  // namespace detail

/// Greedy search for an explicit separable decomposition. Each outer
/// iteration fits one product atom to the residual by alternating local
/// eigenvector updates, adds it with its best nonnegative weight, and
/// periodically refits all weights jointly by nonnegative least squares.
/// Deterministic for a fixed seed; independent instances may run in parallel.
inline SearchResult search_decomposition(const HermitianMatrix& rho,
                                         const MultipartiteStructure& s, int budget = 10000,
                                         double tol = 1e-6, std::uint64_t seed = 0) {
  detail::check_dim_match(rho, s, "search_decomposition");
  if (s.parties() < 2) {
    throw std::invalid_argument("search_decomposition: at least two parties required");
  }
  if (s.total_dim() > 64) {
    throw std::invalid_argument("search_decomposition: total dimension " +
                                std::to_string(s.total_dim()) + " exceeds the supported cap of 64");
  }
  if (budget < 1) {
    throw std::invalid_argument("search_decomposition: budget must be positive");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("search_decomposition: tolerance must be positive");
  }

  const int m = s.parties();
  Rng rng(seed);
  std::vector<std::vector<Eigen::VectorXcd>> atoms;   // local unit vectors per atom
  std::vector<Eigen::VectorXcd> atom_vectors;         // their Kronecker products
  std::vector<double> weights;

  GeneralMatrix residual = rho.mat();

  const auto rebuild_residual = [&]() {
    residual = rho.mat();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      residual.noalias() -= weights[k] * (atom_vectors[k] * atom_vectors[k].adjoint());
    }
  };

  const auto refit_weights = [&]() {
    const Eigen::Index k = static_cast<Eigen::Index>(atoms.size());
    if (k == 0) return;
    Eigen::MatrixXd gram(k, k);
    Eigen::VectorXd proj(k);
    for (Eigen::Index a = 0; a < k; ++a) {
      const auto& va = atom_vectors[static_cast<std::size_t>(a)];
      proj(a) = std::real((va.adjoint() * rho.mat() * va)(0, 0));
      for (Eigen::Index b = a; b < k; ++b) {
        const auto& vb = atom_vectors[static_cast<std::size_t>(b)];
        const double overlap = std::norm(Complex((va.adjoint() * vb)(0, 0)));
        gram(a, b) = overlap;
        gram(b, a) = overlap;
      }
    }
    const Eigen::VectorXd w = detail::nnls_gram(gram, proj);
    std::vector<std::vector<Eigen::VectorXcd>> kept_atoms;
    std::vector<Eigen::VectorXcd> kept_vectors;
    std::vector<double> kept_weights;
    for (Eigen::Index a = 0; a < k; ++a) {
      if (w(a) > 1e-14) {
        kept_atoms.push_back(std::move(atoms[static_cast<std::size_t>(a)]));
        kept_vectors.push_back(std::move(atom_vectors[static_cast<std::size_t>(a)]));
        kept_weights.push_back(w(a));
      }
    }
    atoms = std::move(kept_atoms);
    atom_vectors = std::move(kept_vectors);
    weights = std::move(kept_weights);
    rebuild_residual();
  };

  const auto converged = [&]() {
    return residual.norm() <= tol && std::abs(residual.trace().real()) <= tol;
  };

  constexpr int max_alternations = 50;
  int iterations = 0;
  for (int it = 1; it <= budget && !converged(); ++it) {
    iterations = it;

    std::vector<Eigen::VectorXcd> locals;
    locals.reserve(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
      locals.push_back(detail::random_unit_vector(s.dim_of(p), rng));
    }
    double objective = 0.0;
    for (int sweep = 0; sweep < max_alternations; ++sweep) {
      double sweep_objective = objective;
      for (int p = 0; p < m; ++p) {
        const GeneralMatrix iso = detail::party_isometry(locals, s, p);
        GeneralMatrix local = iso.adjoint() * residual * iso;
        local = 0.5 * (local + local.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<GeneralMatrix> solver(local);
        if (solver.info() != Eigen::Success) {
          throw std::runtime_error("search_decomposition: local eigensolver did not converge");
        }
        const Eigen::Index top = solver.eigenvalues().size() - 1;
        locals[static_cast<std::size_t>(p)] = solver.eigenvectors().col(top);
        sweep_objective = solver.eigenvalues()(top);
      }
      if (std::abs(sweep_objective - objective) <= 1e-12 * (1.0 + std::abs(sweep_objective))) {
        objective = sweep_objective;
        break;
      }
      objective = sweep_objective;
    }

    const Eigen::VectorXcd v = detail::kron_vector(locals);
    const double gain = std::real((v.adjoint() * residual * v)(0, 0));
    bool added = false;
    if (gain > 0.0) {
      bool duplicate = false;
      for (const auto& existing : atom_vectors) {
        if (std::norm(Complex((existing.adjoint() * v)(0, 0))) > 1.0 - 1e-10) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        atoms.push_back(std::move(locals));
        atom_vectors.push_back(v);
        weights.push_back(gain);
        residual.noalias() -= gain * (v * v.adjoint());
        added = true;
      }
    }
    if (!added || atoms.size() % 10 == 0) {
      refit_weights();
    }
  }
  refit_weights();

  Decomposition decomposition;
  decomposition.reconstruction_error = residual.norm();
  decomposition.terms.reserve(atoms.size());
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    DecompositionTerm term;
    term.weight = weights[k];
    term.factors.reserve(static_cast<std::size_t>(m));
    for (const auto& local : atoms[k]) {
      term.factors.push_back(local * local.adjoint());
    }
    decomposition.terms.push_back(std::move(term));
  }
  const SearchStatus status = converged() ? SearchStatus::Converged : SearchStatus::BudgetExhausted;
  return SearchResult{status, std::move(decomposition), iterations};
}

/// Worked example showing that entrywise linear maps can double the squared
/// operator norm on complex inputs while fixing real symmetric ones: the map
/// X -> X_00 diag(1, -1) + X_11 sigma_x sends Y = diag(1, i) with
/// ||Y||_2^2 = 2 to a matrix with squared operator norm 4.
inline bool sqrt2_fixture_check() {
  GeneralMatrix a1(2, 2);
  a1 << 1.0, 0.0, 0.0, -1.0;
  GeneralMatrix a2(2, 2);
  a2 << 0.0, 1.0, 1.0, 0.0;
  const auto phi = [&](const GeneralMatrix& x) -> GeneralMatrix {
    return x(0, 0) * a1 + x(1, 1) * a2;
  };
  GeneralMatrix y(2, 2);
  y << Complex(1.0, 0.0), 0.0, 0.0, Complex(0.0, 1.0);
  const double input_sq = y.squaredNorm();
  const double output_op = operator_norm(phi(y));
  return std::abs(input_sq - 2.0) <= 1e-12 && std::abs(output_op * output_op - 4.0) <= 1e-12;
}

}  // namespace sepball
