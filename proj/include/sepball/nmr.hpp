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
#include <optional>
#include <stdexcept>
#include <string>

#include "sepball/certify.hpp"

namespace sepball {

/// Boltzmann constant in J/K (exact SI value).
inline constexpr double k_boltzmann = 1.380649e-23;

/// Proton magnetic moment in J/T, the default for liquid-state scenarios.
inline constexpr double proton_magnetic_moment = 1.41060e-26;

/// Thermal polarization eta = mu B / (k_B T) of a spin-1/2 nucleus with
/// magnetic moment mu in field B at temperature T.
inline double eta_from_physics(double temperature_kelvin, double field_tesla,
                               double magnetic_moment = proton_magnetic_moment) {
  if (!(temperature_kelvin > 0.0)) {
    throw std::invalid_argument("eta_from_physics: temperature must be positive");
  }
  if (!(field_tesla > 0.0)) {
    throw std::invalid_argument("eta_from_physics: field must be positive");
  }
  if (!(magnetic_moment > 0.0)) {
    throw std::invalid_argument("eta_from_physics: magnetic moment must be positive");
  }
  return magnetic_moment * field_tesla / (k_boltzmann * temperature_kelvin);
}

/// Experimental regime of a liquid-state spin ensemble, reduced to the single
/// polarization parameter eta in (0, 1).
struct NmrScenario {
  double eta;
  std::optional<double> temperature_kelvin;
  std::optional<double> field_tesla;
  std::optional<double> magnetic_moment;

  static NmrScenario from_eta(double eta) {
    if (!(eta > 0.0 && eta < 1.0)) {
      throw std::invalid_argument("NmrScenario: eta must lie in (0, 1), got " +
                                  std::to_string(eta));
    }
    return NmrScenario{eta, std::nullopt, std::nullopt, std::nullopt};
  }

  static NmrScenario from_physics(double temperature_kelvin, double field_tesla,
                                  double magnetic_moment = proton_magnetic_moment) {
    const double eta = eta_from_physics(temperature_kelvin, field_tesla, magnetic_moment);
    if (!(eta < 1.0)) {
      throw std::invalid_argument("NmrScenario: parameters give eta >= 1, outside the "
                                  "high-temperature regime");
    }
    return NmrScenario{eta, temperature_kelvin, field_tesla, magnetic_moment};
  }
};

/// Effective pure-state admixture eta * m / 2^m that standard temporal or
/// spatial averaging schemes distill from m thermal spins at polarization
/// eta.
inline double pseudopure_polarization(double eta, int parties) {
  if (parties < 1) {
    throw std::invalid_argument("pseudopure_polarization: party count must be positive");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("pseudopure_polarization: eta must lie in (0, 1)");
  }
  return eta * static_cast<double>(parties) * std::exp2(-static_cast<double>(parties));
}

/// Squared Frobenius distance of the m-spin thermal state to I/2^m:
/// ((1 + eta^2)^m - 1) / 2^m, evaluated in a form that stays accurate for
/// eta^2 near the rounding threshold and m in the tens of thousands.
inline double thermal_distance_squared(double eta, int parties) {
  if (parties < 1) {
    throw std::invalid_argument("thermal_distance_squared: party count must be positive");
  }
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw std::invalid_argument("thermal_distance_squared: eta must lie in [0, 1)");
  }
  return std::expm1(static_cast<double>(parties) * std::log1p(eta * eta)) *
         std::exp2(-static_cast<double>(parties));
}

/// Separability bounds that can be scanned for the smallest violating spin
/// count. Pseudopure bounds compare the admixture eta m / 2^m against a
/// threshold; thermal bounds compare the squared distance of the full
/// thermal state against a squared ball radius.
enum class ThresholdBound {
  ThisPaper,            // pseudopure vs a / sqrt(d (d - 1)), a = 2^(1 - m/2)
  Braunstein,           // pseudopure vs 1 / (1 + 2^(2m - 1))
  ThermalFull,          // thermal distance vs the tight normalized ball
  ThermalBipartite,     // thermal distance vs the bipartition bound
  PseudopureBipartite,  // pseudopure vs 1 / (2^m - 1)
  PseudopureUpper,      // pseudopure vs the entanglement upper bound 2 / (2 + 2^m)
};

inline const char* to_string(ThresholdBound bound) {
  switch (bound) {
    case ThresholdBound::ThisPaper: return "this-paper";
    case ThresholdBound::Braunstein: return "braunstein";
    case ThresholdBound::ThermalFull: return "thermal-full";
    case ThresholdBound::ThermalBipartite: return "thermal-bipartite";
    case ThresholdBound::PseudopureBipartite: return "pseudopure-bipartite";
    case ThresholdBound::PseudopureUpper: return "pseudopure-upper";
  }
  throw std::logic_error("to_string: unknown threshold bound");
}

/// Strict violation of a bound at a given spin count. Equality means the
/// state is still inside the closed ball, hence not a violation. Each
/// comparison is rearranged so that no intermediate quantity overflows or
/// underflows for spin counts up to the scan cap.
inline bool threshold_violated(ThresholdBound bound, double eta, int parties) {
  if (parties < 2) {
    throw std::invalid_argument("threshold_violated: at least two parties required");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("threshold_violated: eta must lie in (0, 1)");
  }
  const double m = static_cast<double>(parties);
  switch (bound) {
    case ThresholdBound::ThisPaper:
      // eta m / 2^m > a / sqrt(d (d - 1))  <=>  eta m 2^(m/2 - 1) sqrt(1 - 2^-m) > 1
      return eta * m * std::exp2(0.5 * m - 1.0) * std::sqrt(1.0 - std::exp2(-m)) > 1.0;
    case ThresholdBound::Braunstein:
      // eta m / 2^m > 1 / (1 + 2^(2m - 1))  <=>  eta m (2^-m + 2^(m - 1)) > 1
      return eta * m * (std::exp2(-m) + std::exp2(m - 1.0)) > 1.0;
    case ThresholdBound::ThermalFull:
      // ((1 + eta^2)^m - 1) / 2^m > 2^(2 - 3m)  <=>  ((1 + eta^2)^m - 1) 2^(2m - 2) > 1
      return std::expm1(m * std::log1p(eta * eta)) * std::exp2(2.0 * m - 2.0) > 1.0;
    case ThresholdBound::ThermalBipartite:
      // ((1 + eta^2)^m - 1) / 2^m > 1 / (2^m (2^m - 1))
      return std::expm1(m * std::log1p(eta * eta)) * (std::exp2(m) - 1.0) > 1.0;
    case ThresholdBound::PseudopureBipartite:
      // eta m / 2^m > 1 / (2^m - 1)  <=>  eta m (1 - 2^-m) > 1
      return eta * m * (1.0 - std::exp2(-m)) > 1.0;
    case ThresholdBound::PseudopureUpper:
      // eta m / 2^m > 2 / (2 + 2^m)  <=>  eta m (1 + 2^(1 - m)) > 2
      return eta * m * (1.0 + std::exp2(1.0 - m)) > 2.0;
  }
  throw std::logic_error("threshold_violated: unknown bound");
}

struct ThresholdReport {
  ThresholdBound bound;
  std::string bound_name;
  int first_violating_m;
  int guaranteed_separable_through;
  /// Value of the state-side quantity (pseudopure admixture or squared
  /// thermal distance, depending on the bound) at the first violating m.
  double epsilon_at_threshold;
};

inline constexpr int threshold_scan_cap = 1'000'000;

/// Smallest spin count m >= 2 at which the bound is strictly violated for
/// the given polarization. Every compared quantity is monotone in m, so the
/// first violation is the only transition.
inline ThresholdReport qubit_threshold(double eta, ThresholdBound bound) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("qubit_threshold: eta must lie in (0, 1), got " +
                                std::to_string(eta));
  }
  for (int m = 2; m <= threshold_scan_cap; ++m) {
    if (threshold_violated(bound, eta, m)) {
      const bool thermal = bound == ThresholdBound::ThermalFull ||
                           bound == ThresholdBound::ThermalBipartite;
      const double state_side =
          thermal ? thermal_distance_squared(eta, m) : pseudopure_polarization(eta, m);
      return ThresholdReport{bound, to_string(bound), m, m - 1, state_side};
    }
  }
  throw std::runtime_error("qubit_threshold: no violation up to the scan cap of " +
                           std::to_string(threshold_scan_cap) + " parties");
}

}  // namespace sepball
