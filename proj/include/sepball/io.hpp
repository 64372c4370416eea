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

#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "sepball/certify.hpp"
#include "sepball/matrix.hpp"
#include "sepball/nmr.hpp"
#include "sepball/oracle.hpp"
#include "sepball/states.hpp"

namespace sepball {

/// Serializes a square matrix as {"dim": n, "entries": [[re, im], ...]} with
/// entries in row-major order.
inline nlohmann::json matrix_to_json(const GeneralMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix_to_json: matrix must be square");
  }
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      entries.push_back({a(r, c).real(), a(r, c).imag()});
    }
  }
  return nlohmann::json{{"dim", a.rows()}, {"entries", std::move(entries)}};
}

inline nlohmann::json matrix_to_json(const HermitianMatrix& a) { return matrix_to_json(a.mat()); }

inline GeneralMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw std::invalid_argument(
        "matrix_from_json: expected an object with \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer()) {
    throw std::invalid_argument("matrix_from_json: \"dim\" must be an integer");
  }
  const std::int64_t n = j["dim"].get<std::int64_t>();
  if (n < 1) {
    throw std::invalid_argument("matrix_from_json: \"dim\" must be positive");
  }
  detail::check_total_dim(n, "matrix_from_json");
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<std::int64_t>(entries.size()) != n * n) {
    throw std::invalid_argument("matrix_from_json: \"entries\" must be an array of dim^2 pairs");
  }
  GeneralMatrix out(n, n);
  std::int64_t idx = 0;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw std::invalid_argument(
          "matrix_from_json: every entry must be a [real, imaginary] pair of numbers");
    }
    out(idx / n, idx % n) = Complex(e[0].get<double>(), e[1].get<double>());
    ++idx;
  }
  return out;
}

/// Parses a matrix file and rejects anything that is not Hermitian within
/// the tolerance.
inline HermitianMatrix hermitian_from_json(const nlohmann::json& j,
                                           double tol = HermitianMatrix::default_hermiticity_tol) {
  return HermitianMatrix(matrix_from_json(j), tol);
}

inline nlohmann::json read_json(std::istream& in) {
  return nlohmann::json::parse(in);  // throws nlohmann::json::parse_error on bad input
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_json_file: cannot open " + path);
  }
  return read_json(in);
}

inline void to_json(nlohmann::json& j, const MultipartiteStructure& s) { j = s.dims(); }

inline void to_json(nlohmann::json& j, const CertificationResult& r) {
  j = nlohmann::json{{"criterion", r.criterion},
                     {"verdict", to_string(r.verdict)},
                     {"radius", r.radius_used},
                     {"distance", r.distance},
                     {"margin", r.margin}};
}

inline void to_json(nlohmann::json& j, const ScalingReport& r) {
  j = nlohmann::json{{"mu", r.mu},
                     {"purity", r.purity},
                     {"distance_to_normalized_identity", r.distance_to_normalized_identity},
                     {"equivalence_residuals", r.equivalence_residuals}};
}

inline void to_json(nlohmann::json& j, const ThresholdReport& r) {
  j = nlohmann::json{{"bound", r.bound_name},
                     {"first_violating_m", r.first_violating_m},
                     {"guaranteed_separable_through", r.guaranteed_separable_through},
                     {"epsilon_at_threshold", r.epsilon_at_threshold}};
}

inline void to_json(nlohmann::json& j, const PptEntry& e) {
  j = nlohmann::json{{"transposed_parties", e.transposed_parties},
                     {"min_eigenvalue", e.min_eigenvalue},
                     {"psd", e.psd}};
}

inline void to_json(nlohmann::json& j, const PptReport& r) {
  j = nlohmann::json{{"bipartitions", r.bipartitions},
                     {"all_psd", r.all_psd},
                     {"decisive", r.decisive},
                     {"tol", r.tol}};
}

inline void to_json(nlohmann::json& j, const DecompositionTerm& t) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : t.factors) factors.push_back(matrix_to_json(f));
  j = nlohmann::json{{"weight", t.weight}, {"factors", std::move(factors)}};
}

inline void to_json(nlohmann::json& j, const Decomposition& d) {
  j = nlohmann::json{{"terms", d.terms}, {"reconstruction_error", d.reconstruction_error}};
}

inline void to_json(nlohmann::json& j, const SearchResult& r) {
  j = nlohmann::json{{"status", to_string(r.status)},
                     {"iterations", r.iterations},
                     {"decomposition", r.decomposition}};
}

inline void to_json(nlohmann::json& j, const StateSpec& spec) {
  j = nlohmann::json{{"family", to_string(spec.family)}, {"structure", spec.structure.dims()}};
  switch (spec.family) {
    case StateFamily::Pseudopure: j["epsilon"] = spec.epsilon; break;
    case StateFamily::Thermal: j["eta"] = spec.eta; break;
    case StateFamily::Werner: j["p"] = spec.p; break;
    case StateFamily::RandomGinibre: j["seed"] = spec.seed; break;
    case StateFamily::RandomProduct:
      j["seed"] = spec.seed;
      j["terms"] = spec.terms;
      break;
    default: break;
  }
}

inline StateFamily state_family_from_string(const std::string& name) {
  if (name == "pseudopure") return StateFamily::Pseudopure;
  if (name == "thermal") return StateFamily::Thermal;
  if (name == "werner") return StateFamily::Werner;
  if (name == "max-entangled") return StateFamily::MaxEntangled;
  if (name == "random-ginibre") return StateFamily::RandomGinibre;
  if (name == "random-product") return StateFamily::RandomProduct;
  if (name == "identity") return StateFamily::Identity;
  throw std::invalid_argument("state_family_from_string: unknown family \"" + name + "\"");
}

inline StateSpec state_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw std::invalid_argument("state_spec_from_json: expected an object with \"family\"");
  }
  const StateFamily family = state_family_from_string(j["family"].get<std::string>());
  std::vector<int> dims;
  if (j.contains("structure")) {
    dims = j["structure"].get<std::vector<int>>();
  } else if (family == StateFamily::Werner) {
    dims = {2, 2};
  } else {
    throw std::invalid_argument("state_spec_from_json: \"structure\" is required");
  }
  StateSpec spec{family, MultipartiteStructure(dims)};
  if (j.contains("epsilon")) spec.epsilon = j["epsilon"].get<double>();
  if (j.contains("eta")) spec.eta = j["eta"].get<double>();
  if (j.contains("p")) spec.p = j["p"].get<double>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("terms")) spec.terms = j["terms"].get<int>();
  return spec;
}

}  // namespace sepball
