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

// End-to-end tests that drive the installed binary through a shell, so they
// cover argument parsing, stdin piping, exit codes and stderr routing exactly
// as a user would see them. The binary path arrives in SEPBALL_CLI.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string cli_path() {
  const char* path = std::getenv("SEPBALL_CLI");
  REQUIRE(path != nullptr);
  return path;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs `prefix "$SEPBALL_CLI" args` under /bin/sh with stdin fed from a temp
/// file. `args` may itself reference the binary again for pipelines.
CliResult run_shell(const std::string& command, const std::string& input = "") {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string tag = "sepball_cli_" + std::to_string(::getpid()) + "_" +
                          std::to_string(counter++);
  const auto in_path = dir / (tag + ".in");
  const auto out_path = dir / (tag + ".out");
  const auto err_path = dir / (tag + ".err");
  {
    std::ofstream in(in_path);
    in << input;
  }
  const std::string full = "( " + command + " ) < '" + in_path.string() + "' > '" +
                           out_path.string() + "' 2> '" + err_path.string() + "'";
  const int status = std::system(full.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::filesystem::remove(in_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

CliResult run_cli(const std::string& args, const std::string& input = "") {
  return run_shell("'" + cli_path() + "' " + args, input);
}

std::string quoted_cli() { return "'" + cli_path() + "'"; }

}  // namespace

TEST_CASE("certify pipeline") {
  SECTION("identity is certified by the unnormalized ball") {
    const auto result =
        run_shell(quoted_cli() + " gen --family identity --structure 2,2 | " + quoted_cli() +
                  " certify --structure 2,2");
    INFO(result.err);
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("unnormalized-ball") != std::string::npos);
    CHECK(result.out.find("overall: certified-separable") != std::string::npos);
    CHECK(result.out.find("skipped: trace is 4, not 1") != std::string::npos);
  }

  SECTION("werner state just inside the tight ball certifies with a tiny margin") {
    const auto result = run_shell(
        quoted_cli() + " gen --family werner --p 0.3333333 | " + quoted_cli() +
        " certify --structure 2,2 --normalized --tight --output json");
    INFO(result.err);
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["overall"] == "certified-separable");
    REQUIRE(j["results"].size() == 1);
    const auto& r = j["results"][0];
    CHECK(r["criterion"] == "normalized-ball-tight");
    CHECK(r["verdict"] == "certified-separable");
    CHECK(std::abs(r["margin"].get<double>()) <= 1e-6);
  }

  SECTION("entangled werner state is inconclusive here and strict mode signals it") {
    const auto result =
        run_shell(quoted_cli() + " gen --family werner --p 0.9 | " + quoted_cli() +
                  " certify --structure 2,2 --strict");
    CHECK(result.exit_code == 2);
    CHECK(result.out.find("overall: inconclusive") != std::string::npos);
  }

  SECTION("rlin flag adds the real-separability criterion") {
    const auto result =
        run_shell(quoted_cli() + " gen --family identity --structure 2,2 | " + quoted_cli() +
                  " certify --structure 2,2 --rlin --output json");
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    bool saw_real = false;
    for (const auto& r : j["results"]) {
      if (r["criterion"] == "real-separable-ball") {
        saw_real = true;
        CHECK(r["verdict"] == "certified-real-separable");
      }
    }
    CHECK(saw_real);
  }

  SECTION("explicitly requesting the normalized criterion on a trace-4 input fails") {
    const auto result =
        run_shell(quoted_cli() + " gen --family identity --structure 2,2 | " + quoted_cli() +
                  " certify --structure 2,2 --normalized");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("trace must be 1") != std::string::npos);
  }
}

TEST_CASE("input error messages are distinct") {
  SECTION("malformed JSON") {
    const auto result =
        run_cli("certify --structure 2,2", R"({"dim": 4, "entries": [[1, 0)");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("malformed JSON") != std::string::npos);
  }

  SECTION("non-Hermitian entries") {
    const auto result = run_cli("certify --structure 2",
                                R"({"dim": 2, "entries": [[1,0],[1,0],[0,0],[1,0]]})");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("not Hermitian") != std::string::npos);
  }

  SECTION("dimension mismatch against the structure") {
    const auto result = run_cli("certify --structure 2,2",
                                R"({"dim": 2, "entries": [[1,0],[0,0],[0,0],[1,0]]})");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("does not match structure total") != std::string::npos);
  }

  SECTION("unreadable input file") {
    const auto result = run_cli("certify --structure 2,2 --input /nonexistent/rho.json");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("error:") != std::string::npos);
  }

  SECTION("dimension cap from the environment") {
    const auto result =
        run_shell("SEPBALL_MAX_DIM=3 " + quoted_cli() + " gen --family identity --structure 2,2");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("cap") != std::string::npos);
  }

  SECTION("garbage in the environment cap") {
    const auto result = run_shell("SEPBALL_MAX_DIM=zebra " + quoted_cli() + " fixture");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("SEPBALL_MAX_DIM") != std::string::npos);
  }
}

TEST_CASE("thresholds subcommand") {
  SECTION("reference polarization reproduces the published spin counts") {
    const auto result = run_cli("thresholds --eta 3.746e-5 --output json");
    INFO(result.err);
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    REQUIRE(j["bounds"].size() == 6);
    std::map<std::string, int> first;
    for (const auto& b : j["bounds"]) {
      first[b["bound"].get<std::string>()] = b["first_violating_m"].get<int>();
    }
    CHECK(first.at("this-paper") == 23);
    CHECK(first.at("braunstein") == 13);
    CHECK(first.at("thermal-full") == 14);
    CHECK(first.at("thermal-bipartite") == 25);
    CHECK(first.at("pseudopure-bipartite") == 26696);
    CHECK(first.at("pseudopure-upper") == 53391);
  }

  SECTION("physics inputs echo the scenario") {
    const auto result =
        run_cli("thresholds --temperature 300 --field 11 --bound this-paper --output json");
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["temperature_kelvin"] == 300.0);
    CHECK(j["field_tesla"] == 11.0);
    CHECK(j["bounds"][0]["first_violating_m"] == 23);
  }

  SECTION("eta and physics inputs are mutually exclusive") {
    const auto result = run_cli("thresholds --eta 1e-4 --temperature 300 --field 11");
    CHECK(result.exit_code == 1);
  }

  SECTION("unknown bound name") {
    const auto result = run_cli("thresholds --eta 1e-4 --bound no-such-bound");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("unknown bound") != std::string::npos);
  }
}

TEST_CASE("oracle subcommand") {
  SECTION("entangled werner fails a transpose cut") {
    const auto result =
        run_shell(quoted_cli() + " gen --family werner --p 0.4 | " + quoted_cli() +
                  " oracle --structure 2,2 --output json");
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["ppt"]["all_psd"] == false);
    CHECK(j["ppt"]["decisive"] == true);
    CHECK(j["normalized_for_ppt"] == false);
  }

  SECTION("separable werner passes decisively and decomposes") {
    const auto result =
        run_shell(quoted_cli() + " gen --family werner --p 0.3 | " + quoted_cli() +
                  " oracle --structure 2,2 --decompose --seed 11 --output json");
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["ppt"]["all_psd"] == true);
    CHECK(j["ppt"]["decisive"] == true);
    CHECK(j["search"]["status"] == "converged");
    CHECK(j["search"]["decomposition"]["reconstruction_error"].get<double>() <= 1e-6);
    CHECK(j["search"]["decomposition"]["terms"].size() >= 1);
  }

  SECTION("non-unit trace is normalized for the transpose test and flagged") {
    const auto result =
        run_shell(quoted_cli() + " gen --family identity --structure 2,2 | " + quoted_cli() +
                  " oracle --structure 2,2 --output json");
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["normalized_for_ppt"] == true);
    CHECK(j["ppt"]["all_psd"] == true);
  }
}

TEST_CASE("gen subcommand") {
  SECTION("seeded generation is byte-identical across runs") {
    const auto a = run_cli("gen --family random-ginibre --structure 2,2 --seed 42");
    const auto b = run_cli("gen --family random-ginibre --structure 2,2 --seed 42");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto c = run_cli("gen --family random-ginibre --structure 2,2 --seed 43");
    CHECK(a.out != c.out);
  }

  SECTION("werner defaults to two qubits") {
    const auto result = run_cli("gen --family werner --p 0.5");
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["dim"] == 4);
  }

  SECTION("other families require a structure") {
    const auto result = run_cli("gen --family thermal --eta 1e-4");
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("--structure is required") != std::string::npos);
  }

  SECTION("spec file round trip") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto spec_path = dir / "sepball_cli_spec.json";
    {
      std::ofstream out(spec_path);
      out << R"({"family": "pseudopure", "structure": [2, 2, 2], "epsilon": 0.01})";
    }
    const auto result = run_cli("gen --spec '" + spec_path.string() + "'");
    std::filesystem::remove(spec_path);
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["dim"] == 8);
  }
}

TEST_CASE("mu and fixture subcommands") {
  SECTION("mu reports the scaling geometry of a werner state") {
    const auto result = run_shell(quoted_cli() + " gen --family werner --p 0.4 | " +
                                  quoted_cli() + " mu --output json");
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["distance_to_normalized_identity"].get<double>() ==
          Catch::Approx(0.4 * std::sqrt(3.0) / 2.0).epsilon(1e-12));
    for (const auto& r : j["equivalence_residuals"]) {
      CHECK(r.get<double>() <= 1e-12);
    }
  }

  SECTION("fixture passes and exits zero") {
    const auto result = run_cli("fixture --output json");
    CHECK(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["holds"] == true);
    CHECK(j["input_squared_frobenius_norm"] == 2.0);
    CHECK(j["image_squared_operator_norm"] == 4.0);
  }
}
