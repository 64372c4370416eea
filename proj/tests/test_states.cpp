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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <sepball/blocks.hpp>
#include <sepball/states.hpp>

#include "test_helpers.hpp"

using namespace sepball;
using sepball::testing::MaxDimGuard;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

HermitianMatrix random_projector(Eigen::Index dim, Rng& rng) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.gaussian_complex();
  v /= v.norm();
  return HermitianMatrix(v * v.adjoint());
}

}  // namespace

TEST_CASE("pseudopure mixtures", "[states]") {
  Rng rng(211);

  SECTION("endpoints") {
    const HermitianMatrix projector = basis_state_projector(4, 1);
    const HermitianMatrix background = pseudopure(projector, 0.0);
    REQUIRE((background.mat() - GeneralMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <=
            1e-15);
    const HermitianMatrix pure = pseudopure(projector, 1.0);
    REQUIRE((pure.mat() - projector.mat()).cwiseAbs().maxCoeff() <= 1e-15);
  }

  SECTION("distance to the maximally mixed state is epsilon sqrt((d-1)/d)") {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index dim = 2 + trial % 7;
      const double epsilon = rng.uniform();
      const HermitianMatrix rho = pseudopure(random_projector(dim, rng), epsilon);
      const double expected =
          epsilon * std::sqrt((dim - 1.0) / static_cast<double>(dim));
      const double actual =
          (rho.mat() - GeneralMatrix::Identity(dim, dim) / static_cast<double>(dim)).norm();
      REQUIRE_THAT(actual, WithinAbs(expected, 1e-12));
    }
  }

  SECTION("rejects inputs that are not rank-one projectors") {
    // Unit trace but not idempotent.
    REQUIRE_THROWS_AS(pseudopure(HermitianMatrix(GeneralMatrix::Identity(2, 2) / 2.0), 0.5),
                      std::invalid_argument);
    // Idempotent but rank two.
    GeneralMatrix rank2 = GeneralMatrix::Zero(4, 4);
    rank2(0, 0) = 1.0;
    rank2(1, 1) = 1.0;
    REQUIRE_THROWS_AS(pseudopure(HermitianMatrix(rank2), 0.5), std::invalid_argument);
  }

  SECTION("rejects admixtures outside [0, 1]") {
    const HermitianMatrix projector = basis_state_projector(2);
    REQUIRE_THROWS_AS(pseudopure(projector, -0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(pseudopure(projector, 1.1), std::invalid_argument);
  }
}

TEST_CASE("thermal spin products", "[states]") {
  SECTION("zero polarization gives the maximally mixed state") {
    const HermitianMatrix rho = thermal_qubits(0.0, 3);
    REQUIRE((rho.mat() - GeneralMatrix::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff() <= 1e-15);
  }

  SECTION("matches the explicit tensor power") {
    const double eta = 0.37;
    GeneralMatrix single(2, 2);
    single << (1.0 + eta) / 2.0, 0.0, 0.0, (1.0 - eta) / 2.0;
    GeneralMatrix power = single;
    for (int m = 2; m <= 6; ++m) {
      power = tensor(power, single).eval();
      const HermitianMatrix rho = thermal_qubits(eta, m);
      REQUIRE((rho.mat() - power).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }

  SECTION("unit trace and diagonal form") {
    const HermitianMatrix rho = thermal_qubits(0.2, 5);
    REQUIRE_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
    GeneralMatrix off = rho.mat();
    off.diagonal().setZero();
    REQUIRE(off.cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("single-spin purity is (1 + eta^2) / 2") {
    for (double eta : {0.0, 0.1, 0.5, 0.9}) {
      REQUIRE_THAT(purity(thermal_qubits(eta, 1)), WithinRel((1.0 + eta * eta) / 2.0, 1e-14));
    }
  }

  SECTION("validation") {
    REQUIRE_THROWS_AS(thermal_qubits(-0.1, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(thermal_qubits(1.0, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(thermal_qubits(0.1, 0), std::invalid_argument);
    MaxDimGuard guard;
    set_max_total_dim(64);
    REQUIRE_THROWS_AS(thermal_qubits(0.1, 7), std::length_error);
    REQUIRE_NOTHROW(thermal_qubits(0.1, 6));
  }
}

TEST_CASE("maximally entangled states", "[states]") {
  SECTION("pure and unit trace") {
    for (int d : {2, 3, 4}) {
      const HermitianMatrix rho = max_entangled(d);
      REQUIRE_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
      REQUIRE_THAT(purity(rho), WithinAbs(1.0, 1e-12));
    }
  }

  SECTION("partial transpose reaches eigenvalue -1/d") {
    for (int d : {2, 3, 4}) {
      const MultipartiteStructure s({d, d});
      const double lambda = min_eigenvalue(partial_transpose(max_entangled(d), s, {1}));
      REQUIRE_THAT(lambda, WithinAbs(-1.0 / d, 1e-12));
    }
  }

  SECTION("both reductions are maximally mixed") {
    const int d = 3;
    const HermitianMatrix rho = max_entangled(d);
    const MultipartiteStructure s({d, d});
    const GeneralMatrix first = apply_blockwise(
        [](const GeneralMatrix& blk) {
          GeneralMatrix out(1, 1);
          out(0, 0) = blk.trace();
          return out;
        },
        rho, s);
    REQUIRE((first - GeneralMatrix::Identity(d, d) / d).cwiseAbs().maxCoeff() <= 1e-14);

    GeneralMatrix second = GeneralMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) second += block(rho, s, i, i);
    REQUIRE((second - GeneralMatrix::Identity(d, d) / d).cwiseAbs().maxCoeff() <= 1e-14);
  }

  SECTION("validation") {
    REQUIRE_THROWS_AS(max_entangled(1), std::invalid_argument);
    MaxDimGuard guard;
    set_max_total_dim(8);
    REQUIRE_THROWS_AS(max_entangled(3), std::length_error);
  }
}

TEST_CASE("werner mixtures", "[states]") {
  SECTION("endpoints") {
    REQUIRE((werner(0.0).mat() - GeneralMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <=
            1e-15);
    const HermitianMatrix singlet = werner(1.0);
    REQUIRE_THAT(purity(singlet), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(singlet.mat()(1, 2).real(), WithinAbs(-0.5, 1e-15));
  }

  SECTION("partial transpose eigenvalue is (1 - 3p) / 4") {
    const MultipartiteStructure s({2, 2});
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 1.0}) {
      const double lambda = min_eigenvalue(partial_transpose(werner(p), s, {1}));
      REQUIRE_THAT(lambda, WithinAbs((1.0 - 3.0 * p) / 4.0, 1e-12));
    }
  }

  SECTION("validation") {
    REQUIRE_THROWS_AS(werner(-0.01), std::invalid_argument);
    REQUIRE_THROWS_AS(werner(1.01), std::invalid_argument);
  }
}

TEST_CASE("random states", "[states]") {
  SECTION("ginibre states are unit trace, positive and reproducible") {
    Rng rng(223);
    for (int trial = 0; trial < 20; ++trial) {
      const HermitianMatrix rho = random_ginibre(4, rng);
      REQUIRE_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
      REQUIRE(min_eigenvalue(rho) >= -1e-12);
    }
    Rng a(7), b(7), c(8);
    const HermitianMatrix ra = random_ginibre(5, a);
    const HermitianMatrix rb = random_ginibre(5, b);
    const HermitianMatrix rc = random_ginibre(5, c);
    REQUIRE(ra.mat() == rb.mat());
    REQUIRE((ra.mat() - rc.mat()).cwiseAbs().maxCoeff() > 1e-3);
  }

  SECTION("product mixtures pass every partial transpose") {
    Rng rng(227);
    const MultipartiteStructure s({2, 2, 2});
    for (int trial = 0; trial < 20; ++trial) {
      const HermitianMatrix rho = random_product(s, 4, rng);
      REQUIRE_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
      REQUIRE(min_eigenvalue(rho) >= -1e-12);
      REQUIRE(min_eigenvalue(partial_transpose(rho, s, {1})) >= -1e-12);
      REQUIRE(min_eigenvalue(partial_transpose(rho, s, {2})) >= -1e-12);
      REQUIRE(min_eigenvalue(partial_transpose(rho, s, {1, 2})) >= -1e-12);
    }
  }

  SECTION("validation") {
    Rng rng(229);
    REQUIRE_THROWS_AS(random_ginibre(1, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(random_product(MultipartiteStructure({2, 2}), 0, rng),
                      std::invalid_argument);
  }
}

TEST_CASE("state spec dispatch", "[states]") {
  SECTION("every unit-trace family satisfies the output contract") {
    const StateSpec specs[] = {
        {StateFamily::Pseudopure, MultipartiteStructure({2, 2, 2}), 0.3},
        {StateFamily::Thermal, MultipartiteStructure({2, 2}), 0.0, 0.4},
        {StateFamily::Werner, MultipartiteStructure({2, 2}), 0.0, 0.0, 0.7},
        {StateFamily::MaxEntangled, MultipartiteStructure({3, 3})},
        {StateFamily::RandomGinibre, MultipartiteStructure({2, 3}), 0.0, 0.0, 0.0, 42},
        {StateFamily::RandomProduct, MultipartiteStructure({2, 2}), 0.0, 0.0, 0.0, 42, 3},
    };
    for (const auto& spec : specs) {
      const HermitianMatrix rho = make_state(spec);
      REQUIRE(rho.dim() == spec.structure.total_dim());
      REQUIRE_THAT(rho.trace(), WithinAbs(1.0, 1e-12));
      REQUIRE(min_eigenvalue(rho) >= -1e-12);
    }
  }

  SECTION("identity family emits the unnormalized ball center") {
    const HermitianMatrix eye =
        make_state({StateFamily::Identity, MultipartiteStructure({2, 2})});
    REQUIRE(eye.mat() == GeneralMatrix::Identity(4, 4));
  }

  SECTION("family and structure must be compatible") {
    REQUIRE_THROWS_AS(make_state({StateFamily::Thermal, MultipartiteStructure({2, 3})}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_state({StateFamily::Werner, MultipartiteStructure({2, 3})}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_state({StateFamily::MaxEntangled, MultipartiteStructure({2, 3})}),
                      std::invalid_argument);
  }
}
