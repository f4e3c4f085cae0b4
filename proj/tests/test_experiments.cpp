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

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "cnotsim/cli.hpp"
#include "cnotsim/experiments.hpp"

using namespace cnotsim;

namespace {
CircuitConfig with_delay(double delay_fs) {
    CircuitConfig cfg;
    cfg.distinguishability = DistinguishabilityModel{200.0, 700.0, delay_fs};
    return cfg;
}

double delay_for_overlap(double v) {
    DistinguishabilityModel m;
    return m.sigma_fs() * std::sqrt(-2.0 * std::log(v));
}
}  // namespace

TEST_CASE("ideal truth table is the gate permutation") {
    const TruthTableResult r = run_truth_table(CircuitConfig{});
    Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
    expect(0, 0) = expect(1, 1) = expect(2, 3) = expect(3, 2) = 1.0;
    CHECK((r.conditional - expect).cwiseAbs().maxCoeff() < 1e-9);
    for (int i = 0; i < 4; ++i) {
        CHECK(r.logical_fidelity(i) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.herald_probability(i) == doctest::Approx(1.0 / 16.0).epsilon(1e-9));
        CHECK(r.conditional.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("distinguishability grows the off-gate columns monotonically") {
    double previous = 1.1;
    for (double v : {1.0, 0.9, 0.8}) {
        const TruthTableResult r = run_truth_table(with_delay(delay_for_overlap(v)));
        for (int i = 0; i < 4; ++i) {
            // conditional success of each row degrades as (1 + v^2)/2
            CHECK(r.logical_fidelity(i) ==
                  doctest::Approx((1.0 + v * v) / 2.0).epsilon(1e-9));
        }
        CHECK(r.logical_fidelity(0) < previous);
        previous = r.logical_fidelity(0);
    }
}

TEST_CASE("zero delay with double pairs matches the ideal table") {
    CircuitConfig noisy = with_delay(0.0);
    noisy.ideal_sources = false;
    noisy.epsilon = PairAmplitude(0.1);
    const TruthTableResult noisy_r = run_truth_table(noisy);
    const TruthTableResult ideal_r = run_truth_table(CircuitConfig{});
    CHECK((noisy_r.conditional - ideal_r.conditional).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("entangler populations, coherence and fidelity") {
    SUBCASE("ideal") {
        const EntanglerResult r = run_entangler(CircuitConfig{});
        CHECK(r.populations(0) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(r.populations(3) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(r.populations(1) + r.populations(2) < 1e-12);
        CHECK(r.population_fidelity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.xx_expectation == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.coherence_fidelity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.state_fidelity == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("partial overlap") {
        // populations follow (1+v^2)/4 on the diagonal outcomes and the
        // XX correlation equals v^2
        for (double v : {0.9, 0.6}) {
            const EntanglerResult r = run_entangler(with_delay(delay_for_overlap(v)));
            CHECK(r.populations(0) == doctest::Approx((1.0 + v * v) / 4.0).epsilon(1e-9));
            CHECK(r.populations(1) == doctest::Approx((1.0 - v * v) / 4.0).epsilon(1e-9));
            CHECK(r.population_fidelity == doctest::Approx((1.0 + v * v) / 2.0).epsilon(1e-9));
            CHECK(r.xx_expectation == doctest::Approx(v * v).epsilon(1e-8));
            CHECK(r.coherence_fidelity < r.population_fidelity);
        }
    }
    SUBCASE("fully distinguishable wavepackets keep no coherence") {
        const EntanglerResult r = run_entangler(with_delay(1e5));
        CHECK(r.population_fidelity == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(std::abs(r.xx_expectation) < 1e-12);
    }
}

TEST_CASE("delay scan visibility") {
    CircuitConfig cfg = with_delay(0.0);
    const auto delays = hom_default_delays(cfg, 21, 5.0);
    REQUIRE(delays.size() == 21);
    CHECK(delays.front() == doctest::Approx(-3500.0));
    CHECK(delays.back() == doctest::Approx(3500.0));

    const auto points = run_hom_scan(cfg, delays);
    double at_zero = -1.0;
    for (const auto& p : points)
        if (p.delay_fs == 0.0) at_zero = p.visibility;
    CHECK(at_zero == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(points.front().visibility < 0.05);
    CHECK(points.back().visibility < 0.05);
    // spurious equals desired in the distinguishable limit
    CHECK(points.front().spurious == doctest::Approx(points.front().desired).epsilon(1e-9));

    // per-delay visibility equals the squared wavepacket overlap
    for (const auto& p : points) {
        DistinguishabilityModel m{200.0, 700.0, p.delay_fs};
        CHECK(p.visibility == doctest::Approx(m.overlap() * m.overlap()).epsilon(1e-7));
    }
}

TEST_CASE("noise study") {
    CircuitConfig cfg;
    cfg.input = InputSpec::from_tokens("+H");
    cfg.ideal_sources = false;
    cfg.epsilon = PairAmplitude(0.1);

    const NoiseStudyResult r = run_noise_study(cfg);
    CHECK(r.ancilla_two_pair_probability <= 1e-12);
    CHECK(r.input_two_pair_probability > 0.0);
    // raw condition (ii) rate: eps^4 * filter(1/12) * fourfold(1/16)
    CHECK(r.input_two_pair_probability ==
          doctest::Approx(std::pow(0.1, 4) / 192.0).epsilon(1e-9));
    CHECK(r.signal_rate == doctest::Approx(1.0 / 16.0).epsilon(1e-9));
    CHECK(r.noise_rate == doctest::Approx(0.01 / 48.0).epsilon(1e-9));
    CHECK(r.snr == doctest::Approx(3.0 / 0.01).epsilon(1e-9));

    // computational-basis inputs see no double-pair noise at all
    for (const char* tokens : {"HH", "HV", "VH", "VV"}) {
        CircuitConfig basis = cfg;
        basis.input = InputSpec::from_tokens(tokens);
        CHECK(run_noise_study(basis).noise_rate <= 1e-15);
    }

    // halving eps quarters the noise fraction in the perturbative regime
    CircuitConfig half = cfg;
    half.epsilon = PairAmplitude(0.05);
    const NoiseStudyResult rh = run_noise_study(half);
    CHECK(r.noise_fraction / rh.noise_fraction == doctest::Approx(4.0).epsilon(0.05));

    CircuitConfig missing;
    CHECK_THROWS_AS(run_noise_study(missing), std::invalid_argument);
}

TEST_CASE("noise null holds for random polarizer preparations") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::Vector2cd q1, q2;
        for (int i = 0; i < 2; ++i) {
            q1(i) = Complex(u(rng), u(rng));
            q2(i) = Complex(u(rng), u(rng));
        }
        q1.normalize();
        q2.normalize();
        Eigen::Vector4cd a;
        a << q1(0) * q2(0), q1(0) * q2(1), q1(1) * q2(0), q1(1) * q2(1);
        CircuitConfig cfg;
        cfg.input = InputSpec::from_amplitudes(a);
        cfg.ideal_sources = false;
        cfg.epsilon = PairAmplitude(0.12);
        CHECK(run_noise_study(cfg).ancilla_two_pair_probability <= 1e-12);
    }
}

TEST_CASE("feed-forward report") {
    const FeedForwardResult r = run_feed_forward(CircuitConfig{});
    CHECK(r.table.total_probability == doctest::Approx(0.25).epsilon(1e-9));
    const std::string text = r.report.to_text();
    CHECK(text.find("herald_HH_correction_IxI") != std::string::npos);
    CHECK(text.find("total_success_probability: 0.25") != std::string::npos);
}

TEST_CASE("reports are byte-deterministic") {
    CircuitConfig cfg = with_delay(321.0);
    const std::string a = run_entangler(cfg).report.to_text();
    const std::string b = run_entangler(cfg).report.to_text();
    CHECK(a == b);
    CHECK(a.rfind("format: 1\n", 0) == 0);
}

TEST_CASE("truth table csv names the sixteen combinations") {
    const TruthTableResult r = run_truth_table(CircuitConfig{});
    const std::string csv = truth_table_csv(r);
    std::istringstream is(csv);
    std::string header, data;
    std::getline(is, header);
    std::getline(is, data);
    int commas = 0;
    for (char c : header)
        if (c == ',') ++commas;
    CHECK(commas == 15);
    CHECK(header.find("in_HH_out_HH") == 0);
    CHECK(header.find("in_VV_out_VV") != std::string::npos);
    int cells = 1;
    for (char c : data)
        if (c == ',') ++cells;
    CHECK(cells == 16);
}

TEST_CASE("cli entry point") {
    SUBCASE("truth table to a file") {
        const std::string path = "cli_test_report.txt";
        CHECK(cli_main({"truth-table", "--ideal", "--out", path}) == 0);
        std::ifstream in(path);
        REQUIRE(in.good());
        std::string first;
        std::getline(in, first);
        CHECK(first == "format: 1");
        in.close();
        std::remove(path.c_str());
    }
    SUBCASE("emission amplitude out of range is a config error") {
        CHECK(cli_main({"truth-table", "--epsilon", "2.0"}) == 2);
    }
    SUBCASE("unknown flags are config errors") {
        CHECK(cli_main({"truth-table", "--frobnicate"}) == 2);
    }
    SUBCASE("noise study runs") {
        const std::string path = "cli_noise_report.txt";
        CHECK(cli_main({"noise", "--epsilon", "0.1", "--input", "+H", "--out", path}) == 0);
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str().find("ancilla_two_pair_probability: 0 ") != std::string::npos);
        in.close();
        std::remove(path.c_str());
    }
    SUBCASE("dump-circuit round trips") {
        const std::string path = "cli_dump.txt";
        CHECK(cli_main({"dump-circuit", "--delay", "10", "--out", path}) == 0);
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        const Circuit back = Circuit::from_text(ss.str());
        CHECK(back.to_text() == ss.str());
        in.close();
        std::remove(path.c_str());
    }
}
