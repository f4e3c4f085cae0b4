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

#include <random>

#include "cnotsim/elements.hpp"
#include "oracle.hpp"

using namespace cnotsim;

namespace {
Eigen::MatrixXcd random_unitary(int n, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    return Eigen::MatrixXcd(qr.householderQ());
}
}  // namespace

TEST_CASE("permanent sanity") {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    CHECK(oracle::permanent(m).real() == doctest::Approx(10.0));
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
    CHECK(oracle::permanent(id).real() == doctest::Approx(1.0));
}

TEST_CASE("multinomial application agrees with the permanent oracle") {
    std::mt19937 rng(20260811);
    auto reg = registry_create({"x", "y"}, 1);  // 4 modes
    const int n_modes = reg->size();
    std::uniform_int_distribution<int> photons(1, 3);
    std::uniform_int_distribution<int> mode(0, n_modes - 1);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);

    for (int rep = 0; rep < 50; ++rep) {
        const Eigen::MatrixXcd u = random_unitary(n_modes, rng);
        const Element e("rand", ElementKind::Unitary, {0, 1, 2, 3}, u);

        // superposition of two random occupations, same photon number not
        // required
        FockState in(reg);
        for (int t = 0; t < 2; ++t) {
            Occupation occ(n_modes, 0);
            const int n = photons(rng);
            for (int k = 0; k < n; ++k) occ[mode(rng)] += 1;
            in.add_term(occ, Complex(amp(rng), amp(rng)));
        }
        if (in.is_zero()) continue;

        const FockState via_apply = apply(in, e);
        const FockState via_oracle = oracle::evolve(in, u);

        const int n_max = in.max_photon_number();
        for (int n = 0; n <= n_max; ++n) {
            for (const auto& occ : oracle::enumerate_occupations(n_modes, n)) {
                const Complex a = via_apply.amplitude(occ);
                const Complex b = via_oracle.amplitude(occ);
                CHECK(std::abs(a - b) <= 1e-9);
            }
        }
    }
}
