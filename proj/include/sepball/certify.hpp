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

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sepball/blocks.hpp"
#include "sepball/matrix.hpp"
#include "sepball/structure.hpp"

namespace sepball {

enum class Verdict {
  CertifiedSeparable,
  CertifiedRealSeparable,
  Inconclusive,
  NotPsd,
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedSeparable: return "certified-separable";
    case Verdict::CertifiedRealSeparable: return "certified-real-separable";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::NotPsd: return "not-psd";
  }
  throw std::logic_error("to_string: unknown verdict");
}

/// Outcome of one ball criterion. A nonnegative margin means the state sits
/// inside the closed certification ball; Inconclusive carries no evidence of
/// entanglement.
struct CertificationResult {
  Verdict verdict;
  std::string criterion;
  double margin;       // radius_used - distance
  double radius_used;
  double distance;
};

/// Best scaling distance of a positive-trace Hermitian matrix X to the
/// identity ray: the minimum of ||X / alpha - I||_2 over alpha > 0. Invariant
/// under positive rescaling of X. Zero exactly on the ray itself.
inline double mu(const HermitianMatrix& x) {
  const double t = x.trace();
  if (!(t > 0.0)) {
    throw std::invalid_argument("mu: trace must be positive, got " + std::to_string(t));
  }
  const double q = purity(x);
  const double n = static_cast<double>(x.dim());
  // Cauchy-Schwarz gives t^2 <= n * q, so the radicand is nonnegative up to
  // rounding; clamp the floating-point residue.
  return std::sqrt(std::max(0.0, n - t * t / q));
}

/// Membership in the closed cone of Hermitian matrices that are either zero
/// or have positive trace and best scaling distance at most a.
inline bool in_g_cone(const HermitianMatrix& x, double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("in_g_cone: cone parameter must be positive");
  }
  if (x.mat().squaredNorm() == 0.0) return true;
  if (!(x.trace() > 0.0)) return false;
  return mu(x) <= a;
}

/// Frobenius radius of the separable ball around the unnormalized identity
/// for m parties: 2^(1 - m/2). Exactly 1 for two parties and shrinks by
/// sqrt(2) per added party.
inline double separable_ball_radius(int parties) {
  if (parties < 2) {
    throw std::invalid_argument("separable_ball_radius: at least two parties required, got " +
                                std::to_string(parties));
  }
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (parties % 2 == 0) return std::ldexp(1.0, 1 - parties / 2);
  return std::ldexp(inv_sqrt2, (3 - parties) / 2);
}

namespace detail {

inline void require_multipartite(const MultipartiteStructure& s, const char* where) {
  if (s.parties() < 2) {
    throw std::invalid_argument(std::string(where) + ": at least two parties required");
  }
}

}  // namespace detail

/// Ball criterion around the unnormalized identity: any Hermitian rho with
/// ||rho - I||_2 <= 2^(1 - m/2) is separable across the m parties. The ball
/// radius never exceeds 1, so everything inside it is automatically PSD.
inline CertificationResult certify_unnormalized(const HermitianMatrix& rho,
                                                const MultipartiteStructure& s,
                                                double psd_tol = 1e-9) {
  detail::check_dim_match(rho, s, "certify_unnormalized");
  detail::require_multipartite(s, "certify_unnormalized");
  const double radius = separable_ball_radius(s.parties());
  const Eigen::Index n = rho.dim();
  const double distance = (rho.mat() - GeneralMatrix::Identity(n, n)).norm();
  const double margin = radius - distance;
  CertificationResult result{Verdict::Inconclusive, "unnormalized-ball", margin, radius, distance};
  if (margin >= 0.0) {
    result.verdict = Verdict::CertifiedSeparable;
  } else if (!is_psd(rho, psd_tol)) {
    result.verdict = Verdict::NotPsd;
  }
  return result;
}

/// Ball criterion around the maximally mixed state I/d for unit-trace input.
/// The tight radius is a / sqrt(d (d - a^2)) with a = 2^(1 - m/2); the loose
/// one is a / d. Both certify separability; tight is strictly larger.
inline CertificationResult certify_normalized(const HermitianMatrix& rho,
                                              const MultipartiteStructure& s, bool tight = true,
                                              double psd_tol = 1e-9) {
  detail::check_dim_match(rho, s, "certify_normalized");
  detail::require_multipartite(s, "certify_normalized");
  const double t = rho.trace();
  if (std::abs(t - 1.0) > 1e-9) {
    throw std::invalid_argument("certify_normalized: trace must be 1 within 1e-9, got " +
                                std::to_string(t));
  }
  const double a = separable_ball_radius(s.parties());
  const double d = static_cast<double>(s.total_dim());
  const double radius = tight ? a / std::sqrt(d * (d - a * a)) : a / d;
  const Eigen::Index n = rho.dim();
  const double distance =
      (rho.mat() - GeneralMatrix::Identity(n, n) / static_cast<double>(n)).norm();
  const double margin = radius - distance;
  CertificationResult result{Verdict::Inconclusive,
                             tight ? "normalized-ball-tight" : "normalized-ball-loose", margin,
                             radius, distance};
  if (margin >= 0.0) {
    // Inside either ball the rescaled state is within unit distance of the
    // identity, hence PSD without an eigensolve.
    result.verdict = Verdict::CertifiedSeparable;
  } else if (!is_psd(rho, psd_tol)) {
    result.verdict = Verdict::NotPsd;
  }
  return result;
}

namespace detail {

inline bool rlin_leaf_real_symmetric(const GeneralMatrix& full, Eigen::Index r0, Eigen::Index c0,
                                     Eigen::Index span, double tol) {
  for (Eigen::Index a = 0; a < span; ++a) {
    for (Eigen::Index b = 0; b < span; ++b) {
      const Complex v = full(r0 + a, c0 + b);
      if (std::abs(v.imag()) > tol) return false;
      if (std::abs(v - full(r0 + b, c0 + a)) > tol) return false;
    }
  }
  return true;
}

inline bool rlin_rec(const GeneralMatrix& full, Eigen::Index r0, Eigen::Index c0,
                     const std::vector<int>& dims, std::size_t level, Eigen::Index span,
                     double tol) {
  if (level + 1 == dims.size()) {
    return rlin_leaf_real_symmetric(full, r0, c0, span, tol);
  }
  const int d1 = dims[level];
  const Eigen::Index sub = span / d1;
  for (int i = 0; i < d1; ++i) {
    for (int j = i; j < d1; ++j) {
      if (i < j) {
        // Off-diagonal blocks must match entrywise across the diagonal.
        for (Eigen::Index a = 0; a < sub; ++a) {
          for (Eigen::Index b = 0; b < sub; ++b) {
            const Complex upper = full(r0 + i * sub + a, c0 + j * sub + b);
            const Complex lower = full(r0 + j * sub + a, c0 + i * sub + b);
            if (std::abs(upper - lower) > tol) return false;
          }
        }
      }
      if (!rlin_rec(full, r0 + i * sub, c0 + j * sub, dims, level + 1, sub, tol)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Recursive block symmetry: blocks over the first party agree pairwise
/// entrywise, each block satisfies the same property over the remaining
/// parties, and single-party leaves are real symmetric. States in this class
/// admit real local models whenever they are close enough to the identity.
inline bool in_rlin(const HermitianMatrix& rho, const MultipartiteStructure& s,
                    double tol = 1e-9) {
  detail::check_dim_match(rho, s, "in_rlin");
  return detail::rlin_rec(rho.mat(), 0, 0, s.dims(), 0, rho.dim(), tol);
}

/// Ball criterion for real separability: a matrix of the recursive block
/// symmetry class within Frobenius distance 1 of the unnormalized identity is
/// a convex mixture of products of real symmetric PSD factors. The unit
/// radius does not shrink with the number of parties.
inline CertificationResult certify_real_separable(const HermitianMatrix& rho,
                                                  const MultipartiteStructure& s,
                                                  double rlin_tol = 1e-9, double psd_tol = 1e-9) {
  detail::check_dim_match(rho, s, "certify_real_separable");
  const double radius = 1.0;
  const Eigen::Index n = rho.dim();
  const double distance = (rho.mat() - GeneralMatrix::Identity(n, n)).norm();
  const double margin = radius - distance;
  CertificationResult result{Verdict::Inconclusive, "real-separable-ball", margin, radius,
                             distance};
  if (margin >= 0.0 && in_rlin(rho, s, rlin_tol)) {
    result.verdict = Verdict::CertifiedRealSeparable;
  } else if (margin < 0.0 && !is_psd(rho, psd_tol)) {
    result.verdict = Verdict::NotPsd;
  }
  return result;
}

/// Diagnostic for the scaling geometry of a positive-trace Hermitian matrix.
/// After normalizing to unit trace, mu, purity and the distance to I/d
/// determine each other; the three residuals report how well the computed
/// values satisfy those pairwise identities.
struct ScalingReport {
  double mu;
  double purity;
  double distance_to_normalized_identity;
  // [0]: |purity - 1/(d - mu^2)|
  // [1]: |distance - mu / sqrt(d (d - mu^2))|
  // [2]: |distance^2 - (purity - 1/d)|
  std::array<double, 3> equivalence_residuals;
};

inline ScalingReport scaling_report(const HermitianMatrix& x) {
  const double t = x.trace();
  if (!(t > 0.0)) {
    throw std::invalid_argument("scaling_report: trace must be positive, got " +
                                std::to_string(t));
  }
  const Eigen::Index n = x.dim();
  const double d = static_cast<double>(n);
  const GeneralMatrix normalized = x.mat() / t;
  const double q = normalized.squaredNorm();
  const double value = mu(x);
  const double distance = (normalized - GeneralMatrix::Identity(n, n) / d).norm();
  ScalingReport report{value, q, distance, {0.0, 0.0, 0.0}};
  report.equivalence_residuals[0] = std::abs(q - 1.0 / (d - value * value));
  report.equivalence_residuals[1] = std::abs(distance - value / std::sqrt(d * (d - value * value)));
  report.equivalence_residuals[2] = std::abs(distance * distance - (q - 1.0 / d));
  return report;
}

/// Named bounds on the pseudopure admixture weight below which the state is
/// guaranteed separable (or, for UpperBound, above which it is entangled).
enum class PseudopureBound {
  ThisPaper,       // a / sqrt(d (d - 1)) with a = 2^(1 - m/2), d = D^m
  ThisPaperLoose,  // a / d
  Braunstein,      // 1 / (1 + D^(2m - 1))
  Bipartition,     // 1 / (d - 1)
  UpperBound,      // 2 / (2 + 2^m); entangled above it, qubits only
};

inline double pseudopure_threshold(int parties, int local_dim, PseudopureBound bound) {
  if (parties < 2) {
    throw std::invalid_argument("pseudopure_threshold: at least two parties required");
  }
  if (local_dim < 2) {
    throw std::invalid_argument("pseudopure_threshold: local dimension must be >= 2");
  }
  const double dd = static_cast<double>(local_dim);
  const double d = std::pow(dd, parties);
  switch (bound) {
    case PseudopureBound::ThisPaper:
      return separable_ball_radius(parties) / std::sqrt(d * (d - 1.0));
    case PseudopureBound::ThisPaperLoose:
      return separable_ball_radius(parties) / d;
    case PseudopureBound::Braunstein:
      return 1.0 / (1.0 + std::pow(dd, 2 * parties - 1));
    case PseudopureBound::Bipartition:
      return 1.0 / (d - 1.0);
    case PseudopureBound::UpperBound:
      if (local_dim != 2) {
        throw std::invalid_argument(
            "pseudopure_threshold: the entanglement upper bound is only available for qubits");
      }
      return 2.0 / (2.0 + d);
  }
  throw std::logic_error("pseudopure_threshold: unknown bound");
}

inline const char* to_string(PseudopureBound bound) {
  switch (bound) {
    case PseudopureBound::ThisPaper: return "tight-ball";
    case PseudopureBound::ThisPaperLoose: return "loose-ball";
    case PseudopureBound::Braunstein: return "braunstein";
    case PseudopureBound::Bipartition: return "bipartition";
    case PseudopureBound::UpperBound: return "upper-bound";
  }
  throw std::logic_error("to_string: unknown pseudopure bound");
}

}  // namespace sepball
