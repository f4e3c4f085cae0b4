// Copyright 2026 The cnotsim Authors
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

#include <doctest.h>

#include "cnotsim/circuit.hpp"
#include "oracle.hpp"

using namespace cnotsim;

TEST_CASE("config validation") {
    CircuitConfig cfg;
    cfg.validate();  // ideal sources by default

    cfg.epsilon = PairAmplitude(0.1);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // both set
    cfg.ideal_sources = false;
    cfg.validate();
    cfg.epsilon.reset();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // neither set
}

TEST_CASE("config text round trip") {
    CircuitConfig cfg;
    cfg.input = InputSpec::from_tokens("+H");
    cfg.ideal_sources = false;
    cfg.epsilon = PairAmplitude(0.15);
    DistinguishabilityModel m{200.0, 700.0, 123.5};
    cfg.distinguishability = m;
    cfg.threshold_inference = true;
    cfg.herald_b4 = Polarization::V;

    const CircuitConfig back = CircuitConfig::from_text(cfg.to_text());
    CHECK(back.to_text() == cfg.to_text());
    CHECK(back.epsilon->epsilon == cfg.epsilon->epsilon);
    CHECK(back.distinguishability->delay_fs == 123.5);
    CHECK(back.herald_b4 == Polarization::V);

    // explicit amplitude lists survive the round trip too
    Eigen::Vector4cd a;
    a << Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(0.5, 0.0), Complex(0.0, -0.5);
    CircuitConfig custom;
    custom.input = InputSpec::from_amplitudes(a);
    const CircuitConfig custom_back = CircuitConfig::from_text(custom.to_text());
    CHECK((custom_back.input.amplitudes - a).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(CircuitConfig::from_text("nonsense\n"), std::invalid_argument);
}

TEST_CASE("canonical circuit structure") {
    CircuitConfig cfg;
    const Circuit ideal = build_canonical_circuit(cfg);
    CHECK(ideal.registry().tbins() == 1);
    CHECK(ideal.registry().size() == 16);
    CHECK(ideal.steps().size() == 7);
    CHECK(ideal.steps().front().type == "rotate_pol");

    cfg.distinguishability = DistinguishabilityModel{200.0, 700.0, 50.0};
    const Circuit delayed = build_canonical_circuit(cfg);
    CHECK(delayed.registry().tbins() == 2);
    REQUIRE(delayed.steps().size() == 9);
    CHECK(delayed.steps()[0].type == "delay_mix");
    CHECK(delayed.steps()[0].labels[0] == "a3");
    CHECK(delayed.steps()[1].labels[0] == "a4");
}

TEST_CASE("circuit dump reconstructs the circuit") {
    CircuitConfig cfg;
    cfg.distinguishability = DistinguishabilityModel{200.0, 700.0, 250.0};
    cfg.herald_b3 = Polarization::V;
    const Circuit circuit = build_canonical_circuit(cfg);
    const std::string text = circuit.to_text();
    const Circuit back = Circuit::from_text(text);
    CHECK(back.to_text() == text);

    // the rebuilt circuit evolves states identically
    const FockState initial =
        combine_disjoint(product_input(circuit.registry_ptr(), InputSpec::from_tokens("HV")),
                         bell_phi_plus(circuit.registry_ptr()));
    const FockState a = circuit.evolve(initial);
    const FockState b = back.evolve(initial);
    const FockState diff = superpose(1.0, a, -1.0, b);
    CHECK(diff.norm() < 1e-12);

    CHECK_THROWS_AS(Circuit::from_text("registry: a1\n"), std::invalid_argument);
}

TEST_CASE("transfer matrix matches the operator evolution") {
    const Circuit circuit = build_canonical_circuit(CircuitConfig{});
    const Eigen::MatrixXcd u = circuit_transfer_matrix(circuit);
    const int n = circuit.registry().size();
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);

    for (const char* tokens : {"HH", "+H", "RV"}) {
        const FockState initial = combine_disjoint(
            product_input(circuit.registry_ptr(), InputSpec::from_tokens(tokens)),
            bell_phi_plus(circuit.registry_ptr()));
        const FockState via_apply = circuit.evolve(initial);
        const FockState via_oracle = oracle::evolve(initial, u);
        const FockState diff = superpose(1.0, via_apply, -1.0, via_oracle);
        CHECK(diff.norm() < 1e-9);
    }
}
