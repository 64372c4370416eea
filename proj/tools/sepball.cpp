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

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sepball/sepball.hpp>

namespace {

using namespace sepball;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotCertified = 2;

nlohmann::json load_json(const std::string& path) {
  if (path == "-") return read_json(std::cin);
  return read_json_file(path);
}

HermitianMatrix load_matrix(const std::string& path, double tol) {
  return hermitian_from_json(load_json(path), tol);
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

struct CertifyOptions {
  std::string input = "-";
  std::vector<int> dims;
  double tol = HermitianMatrix::default_hermiticity_tol;
  bool normalized = false;
  bool unnormalized = false;
  bool tight = false;
  bool loose = false;
  bool rlin = false;
  bool strict = false;
  std::string output = "human";
};

int run_certify(const CertifyOptions& opt) {
  const HermitianMatrix rho = load_matrix(opt.input, opt.tol);
  const MultipartiteStructure s(opt.dims);

  const bool normalized_selected = opt.normalized || opt.tight || opt.loose;
  const bool restrict_selection = normalized_selected || opt.unnormalized;
  const bool run_unnormalized = opt.unnormalized || !restrict_selection;
  const bool run_tight = (normalized_selected && (opt.tight || !opt.loose)) || !restrict_selection;
  const bool run_loose = (normalized_selected && (opt.loose || !opt.tight)) || !restrict_selection;

  std::vector<CertificationResult> results;
  std::vector<std::pair<std::string, std::string>> skipped;

  if (run_unnormalized) {
    results.push_back(certify_unnormalized(rho, s));
  }
  const double trace = rho.trace();
  const bool unit_trace = std::abs(trace - 1.0) <= 1e-9;
  for (const bool tight : {true, false}) {
    if (!(tight ? run_tight : run_loose)) continue;
    const char* name = tight ? "normalized-ball-tight" : "normalized-ball-loose";
    if (!unit_trace) {
      if (normalized_selected) {
        throw std::invalid_argument(std::string(name) + ": trace must be 1 within 1e-9, got " +
                                    detail::format_double(trace));
      }
      skipped.emplace_back(name, "trace is " + detail::format_double(trace) + ", not 1");
      continue;
    }
    results.push_back(certify_normalized(rho, s, tight));
  }
  if (opt.rlin) {
    results.push_back(certify_real_separable(rho, s));
  }

  std::string overall = "inconclusive";
  bool not_psd = false;
  bool real_certified = false;
  bool certified = false;
  for (const auto& r : results) {
    if (r.verdict == Verdict::CertifiedSeparable) certified = true;
    if (r.verdict == Verdict::CertifiedRealSeparable) real_certified = true;
    if (r.verdict == Verdict::NotPsd) not_psd = true;
  }
  if (certified) {
    overall = "certified-separable";
  } else if (real_certified) {
    overall = "certified-real-separable";
  } else if (not_psd) {
    overall = "not-psd";
  }

  if (opt.output == "json") {
    nlohmann::json j{{"overall", overall}, {"results", results}};
    nlohmann::json sk = nlohmann::json::array();
    for (const auto& [name, reason] : skipped) {
      sk.push_back({{"criterion", name}, {"reason", reason}});
    }
    j["skipped"] = std::move(sk);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << std::setprecision(12);
    for (const auto& r : results) {
      std::cout << std::left << std::setw(24) << r.criterion << std::setw(28)
                << to_string(r.verdict) << " radius " << r.radius_used << "  distance "
                << r.distance << "  margin " << r.margin << "\n";
    }
    for (const auto& [name, reason] : skipped) {
      std::cout << std::left << std::setw(24) << name << "skipped: " << reason << "\n";
    }
    std::cout << "overall: " << overall << "\n";
  }

  if (opt.strict && !certified && !real_certified) return kExitNotCertified;
  return kExitOk;
}

int run_mu(const std::string& input, double tol, const std::string& output) {
  const HermitianMatrix x = load_matrix(input, tol);
  const ScalingReport report = scaling_report(x);
  if (output == "json") {
    std::cout << nlohmann::json(report).dump(2) << "\n";
  } else {
    std::cout << std::setprecision(15);
    std::cout << "mu:        " << report.mu << "\n";
    std::cout << "purity:    " << report.purity << "\n";
    std::cout << "distance:  " << report.distance_to_normalized_identity
              << "  (to identity/d after normalization)\n";
    std::cout << "residuals: " << report.equivalence_residuals[0] << " "
              << report.equivalence_residuals[1] << " " << report.equivalence_residuals[2]
              << "\n";
  }
  return kExitOk;
}

struct GenOptions {
  std::string family;
  std::vector<int> dims;
  double epsilon = 0.0;
  double eta = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  int terms = 4;
  std::string spec_path;
  std::string out = "-";
};

int run_gen(const GenOptions& opt) {
  StateSpec spec = [&]() {
    if (!opt.spec_path.empty()) {
      return state_spec_from_json(load_json(opt.spec_path));
    }
    if (opt.family.empty()) {
      throw std::invalid_argument("gen: either --family or --spec is required");
    }
    const StateFamily family = state_family_from_string(opt.family);
    std::vector<int> dims = opt.dims;
    if (dims.empty()) {
      if (family == StateFamily::Werner) {
        dims = {2, 2};
      } else {
        throw std::invalid_argument("gen: --structure is required for family " + opt.family);
      }
    }
    StateSpec built{family, MultipartiteStructure(dims)};
    built.epsilon = opt.epsilon;
    built.eta = opt.eta;
    built.p = opt.p;
    built.seed = opt.seed;
    built.terms = opt.terms;
    return built;
  }();
  const HermitianMatrix rho = make_state(spec);
  write_output(opt.out, matrix_to_json(rho).dump() + "\n");
  return kExitOk;
}

struct ThresholdsOptions {
  std::optional<double> eta;
  std::optional<double> temperature;
  std::optional<double> field;
  double moment = proton_magnetic_moment;
  std::vector<std::string> bounds;
  std::string output = "human";
};

ThresholdBound threshold_bound_from_string(const std::string& name) {
  if (name == "this-paper") return ThresholdBound::ThisPaper;
  if (name == "braunstein") return ThresholdBound::Braunstein;
  if (name == "thermal-full") return ThresholdBound::ThermalFull;
  if (name == "thermal-bipartite") return ThresholdBound::ThermalBipartite;
  if (name == "pseudopure-bipartite") return ThresholdBound::PseudopureBipartite;
  if (name == "pseudopure-upper") return ThresholdBound::PseudopureUpper;
  throw std::invalid_argument("unknown bound \"" + name + "\"");
}

int run_thresholds(const ThresholdsOptions& opt) {
  const NmrScenario scenario = [&]() {
    if (opt.eta.has_value()) return NmrScenario::from_eta(*opt.eta);
    if (opt.temperature.has_value() && opt.field.has_value()) {
      return NmrScenario::from_physics(*opt.temperature, *opt.field, opt.moment);
    }
    throw std::invalid_argument(
        "thresholds: provide --eta or both --temperature and --field");
  }();

  std::vector<ThresholdBound> bounds;
  if (opt.bounds.empty()) {
    bounds = {ThresholdBound::ThisPaper,        ThresholdBound::Braunstein,
              ThresholdBound::ThermalFull,      ThresholdBound::ThermalBipartite,
              ThresholdBound::PseudopureBipartite, ThresholdBound::PseudopureUpper};
  } else {
    for (const auto& name : opt.bounds) bounds.push_back(threshold_bound_from_string(name));
  }

  std::vector<ThresholdReport> reports;
  reports.reserve(bounds.size());
  for (const ThresholdBound b : bounds) reports.push_back(qubit_threshold(scenario.eta, b));

  if (opt.output == "json") {
    nlohmann::json j{{"eta", scenario.eta}, {"bounds", reports}};
    if (scenario.temperature_kelvin) j["temperature_kelvin"] = *scenario.temperature_kelvin;
    if (scenario.field_tesla) j["field_tesla"] = *scenario.field_tesla;
    if (scenario.magnetic_moment) j["magnetic_moment"] = *scenario.magnetic_moment;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << std::setprecision(6) << "eta: " << scenario.eta << "\n";
    std::cout << std::left << std::setw(22) << "bound" << std::right << std::setw(18)
              << "first_violating_m" << std::setw(20) << "separable_through" << std::setw(24)
              << "epsilon_at_threshold" << "\n";
    for (const auto& r : reports) {
      std::cout << std::left << std::setw(22) << r.bound_name << std::right << std::setw(18)
                << r.first_violating_m << std::setw(20) << r.guaranteed_separable_through
                << std::setw(24) << r.epsilon_at_threshold << "\n";
    }
  }
  return kExitOk;
}

struct OracleOptions {
  std::string input = "-";
  std::vector<int> dims;
  double tol = 1e-9;
  bool decompose = false;
  int budget = 10000;
  double search_tol = 1e-6;
  std::uint64_t seed = 0;
  std::string output = "human";
};

int run_oracle(const OracleOptions& opt) {
  const HermitianMatrix rho = load_matrix(opt.input, HermitianMatrix::default_hermiticity_tol);
  const MultipartiteStructure s(opt.dims);

  const double trace = rho.trace();
  bool normalized_for_ppt = false;
  HermitianMatrix state = rho;
  if (std::abs(trace - 1.0) > 1e-6) {
    if (!(trace > 0.0)) {
      throw std::invalid_argument("oracle: input trace must be positive, got " +
                                  detail::format_double(trace));
    }
    state = HermitianMatrix(rho.mat() / trace);
    normalized_for_ppt = true;
  }
  const PptReport report = ppt_check(state, s, opt.tol);

  std::optional<SearchResult> search;
  if (opt.decompose) {
    search = search_decomposition(rho, s, opt.budget, opt.search_tol, opt.seed);
  }

  if (opt.output == "json") {
    nlohmann::json j{{"ppt", report}, {"normalized_for_ppt", normalized_for_ppt}};
    if (search) j["search"] = *search;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << std::setprecision(12);
    if (normalized_for_ppt) {
      std::cout << "input trace " << trace << ": normalized before the transpose test\n";
    }
    for (const auto& entry : report.bipartitions) {
      std::cout << "transposed {";
      for (std::size_t i = 0; i < entry.transposed_parties.size(); ++i) {
        std::cout << (i ? "," : "") << entry.transposed_parties[i];
      }
      std::cout << "}: min eigenvalue " << entry.min_eigenvalue
                << (entry.psd ? "" : "  (negative: entangled across this cut)") << "\n";
    }
    std::cout << "all cuts psd: " << (report.all_psd ? "yes" : "no") << "\n";
    std::cout << "decisive: " << (report.decisive ? "yes" : "no") << "\n";
    if (search) {
      std::cout << "search: " << to_string(search->status) << " after " << search->iterations
                << " iterations, " << search->decomposition.terms.size()
                << " terms, reconstruction error "
                << search->decomposition.reconstruction_error << "\n";
      if (search->status == SearchStatus::BudgetExhausted) {
        std::cout << "note: budget exhaustion is not evidence of entanglement\n";
      }
    }
  }
  return kExitOk;
}

int run_fixture(const std::string& output) {
  const bool ok = sqrt2_fixture_check();
  if (output == "json") {
    std::cout << nlohmann::json{{"input_squared_frobenius_norm", 2.0},
                                {"image_squared_operator_norm", 4.0},
                                {"holds", ok}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "diagonal complex input has squared frobenius norm 2\n";
    std::cout << "its entrywise-map image has squared operator norm 4\n";
    std::cout << "fixture holds: " << (ok ? "yes" : "no") << "\n";
  }
  return ok ? kExitOk : kExitInputError;
}

void add_output_option(CLI::App* cmd, std::string& target) {
  cmd->add_option("--output", target, "Output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("SEPBALL_MAX_DIM")) {
    char* end = nullptr;
    const long long cap = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || cap < 2) {
      std::cerr << "error: SEPBALL_MAX_DIM must be an integer >= 2, got \"" << env << "\"\n";
      return kExitInputError;
    }
    sepball::set_max_total_dim(cap);
  }

  CLI::App app{"Separability certificates for multipartite density matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  CertifyOptions certify_opt;
  auto* certify = app.add_subcommand(
      "certify", "Run the ball criteria on a matrix and report certificates");
  certify->add_option("--input", certify_opt.input, "Matrix JSON file, or - for stdin")
      ->capture_default_str();
  certify->add_option("--structure", certify_opt.dims, "Comma-separated party dimensions")
      ->required()
      ->delimiter(',');
  certify->add_option("--tol", certify_opt.tol, "Hermiticity tolerance for the parser")
      ->capture_default_str();
  certify->add_flag("--normalized", certify_opt.normalized,
                    "Only the ball around identity/d (requires unit trace)");
  certify->add_flag("--unnormalized", certify_opt.unnormalized,
                    "Only the ball around the unnormalized identity");
  certify->add_flag("--tight", certify_opt.tight, "Normalized criterion at the tight radius");
  certify->add_flag("--loose", certify_opt.loose, "Normalized criterion at the loose radius");
  certify->add_flag("--rlin", certify_opt.rlin,
                    "Also test the real-separability ball of radius 1");
  certify->add_flag("--strict", certify_opt.strict, "Exit with status 2 unless certified");
  add_output_option(certify, certify_opt.output);

  std::string mu_input = "-";
  double mu_tol = HermitianMatrix::default_hermiticity_tol;
  std::string mu_output = "human";
  auto* mu_cmd = app.add_subcommand("mu", "Best scaling distance to the identity ray");
  mu_cmd->add_option("--input", mu_input, "Matrix JSON file, or - for stdin")
      ->capture_default_str();
  mu_cmd->add_option("--tol", mu_tol, "Hermiticity tolerance for the parser")
      ->capture_default_str();
  add_output_option(mu_cmd, mu_output);

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Generate a named state as matrix JSON");
  gen->add_option("--family", gen_opt.family,
                  "pseudopure, thermal, werner, max-entangled, random-ginibre, "
                  "random-product or identity");
  gen->add_option("--structure", gen_opt.dims, "Comma-separated party dimensions")
      ->delimiter(',');
  gen->add_option("--epsilon", gen_opt.epsilon, "Pseudopure admixture");
  gen->add_option("--eta", gen_opt.eta, "Thermal polarization");
  gen->add_option("--p", gen_opt.p, "Werner mixing parameter");
  gen->add_option("--seed", gen_opt.seed, "Random seed")->capture_default_str();
  gen->add_option("--terms", gen_opt.terms, "Mixture terms for random-product")
      ->capture_default_str();
  auto* spec_opt = gen->add_option("--spec", gen_opt.spec_path, "State spec JSON file");
  spec_opt->excludes("--family");
  gen->add_option("--out", gen_opt.out, "Output file, or - for stdout")->capture_default_str();

  ThresholdsOptions thr_opt;
  auto* thresholds = app.add_subcommand(
      "thresholds", "Spin counts at which separability guarantees first fail");
  auto* eta_opt = thresholds->add_option("--eta", thr_opt.eta, "Polarization in (0, 1)");
  auto* temp_opt =
      thresholds->add_option("--temperature", thr_opt.temperature, "Temperature in kelvin");
  auto* field_opt = thresholds->add_option("--field", thr_opt.field, "Field in tesla");
  thresholds->add_option("--moment", thr_opt.moment, "Magnetic moment in J/T")
      ->capture_default_str();
  eta_opt->excludes(temp_opt)->excludes(field_opt);
  thresholds->add_option("--bound", thr_opt.bounds,
                         "Bound names to scan (default: all six)");
  add_output_option(thresholds, thr_opt.output);

  OracleOptions oracle_opt;
  auto* oracle = app.add_subcommand(
      "oracle", "Partial-transpose screening and explicit decomposition search");
  oracle->add_option("--input", oracle_opt.input, "Matrix JSON file, or - for stdin")
      ->capture_default_str();
  oracle->add_option("--structure", oracle_opt.dims, "Comma-separated party dimensions")
      ->required()
      ->delimiter(',');
  oracle->add_option("--tol", oracle_opt.tol, "Eigenvalue tolerance for the transpose test")
      ->capture_default_str();
  oracle->add_flag("--decompose", oracle_opt.decompose,
                   "Also search for an explicit separable decomposition");
  oracle->add_option("--budget", oracle_opt.budget, "Search iteration budget")
      ->capture_default_str();
  oracle->add_option("--search-tol", oracle_opt.search_tol,
                     "Frobenius tolerance for search convergence")
      ->capture_default_str();
  oracle->add_option("--seed", oracle_opt.seed, "Search seed")->capture_default_str();
  add_output_option(oracle, oracle_opt.output);

  std::string fixture_output = "human";
  auto* fixture = app.add_subcommand(
      "fixture", "Verify the norm-doubling example behind the ball radius");
  add_output_option(fixture, fixture_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (app.got_subcommand(certify)) return run_certify(certify_opt);
    if (app.got_subcommand(mu_cmd)) return run_mu(mu_input, mu_tol, mu_output);
    if (app.got_subcommand(gen)) return run_gen(gen_opt);
    if (app.got_subcommand(thresholds)) return run_thresholds(thr_opt);
    if (app.got_subcommand(oracle)) return run_oracle(oracle_opt);
    if (app.got_subcommand(fixture)) return run_fixture(fixture_output);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: unexpected JSON shape: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
