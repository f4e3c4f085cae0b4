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

#ifndef CNOTSIM_SOURCES_HPP
#define CNOTSIM_SOURCES_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "cnotsim/fock.hpp"

namespace cnotsim {

/// Per-pass pair-emission amplitude of the down-conversion source.
/// Single-pair probability scales as epsilon^2 and double-pair as epsilon^4;
/// epsilon <= 0.3 keeps the two-pair truncation error below one percent.
struct PairAmplitude {
    double epsilon;

    explicit PairAmplitude(double eps);
};

/// General two-qubit input on paths a1 (control) and a2 (target):
/// amplitudes (alpha1..alpha4) over |HH>, |HV>, |VH>, |VV>.
struct InputSpec {
    Eigen::Vector4cd amplitudes;
    std::string label;  // token form when constructed from one, else "custom"

    static InputSpec from_amplitudes(const Eigen::Vector4cd& a);

    /// Two-character shorthand, one token per qubit, from {H, V, +, -, R, L}.
    static InputSpec from_tokens(const std::string& tokens);

    void validate() const;  // unit norm to 1e-12

    /// True when the input factorizes into single-qubit states q1 (x) q2;
    /// the factors are the polarizer settings that prepare it.
    bool factorize(Eigen::Vector2cd& q1, Eigen::Vector2cd& q2) const;
};

/// The entangled ancilla (|H,H> + |V,V>)/sqrt(2) on the given paths.
FockState bell_phi_plus(RegistryPtr reg, const std::string& l1 = "a3",
                        const std::string& l2 = "a4");

/// Prepared two-qubit input, one photon per path.
FockState product_input(RegistryPtr reg, const InputSpec& spec, const std::string& l1 = "a1",
                        const std::string& l2 = "a2");

/// Unit-norm symmetrized two-pair emission: the pair-creation operator applied
/// twice, with the bosonic weights that entails (|2H,2H>, |HV,HV> and |2V,2V>
/// components of equal magnitude).
FockState two_pair_state(RegistryPtr reg, const std::string& l1, const std::string& l2);

/// Truncated emission state: vacuum + eps * (Bell pair) + eps^2 * (two-pair),
/// with each order unit-normalized so that the two-pair to single-pair
/// probability ratio is exactly eps^2. Not normalized overall.
FockState spdc_emission(RegistryPtr reg, const std::string& l1, const std::string& l2,
                        const PairAmplitude& eps, int max_pairs);

/// The four-photon component of a double-pair emission into the input paths
/// after the preparation polarizers. The input must factorize into per-qubit
/// polarizer settings. Amplitudes keep the eps^2 emission scale; branch_weight
/// records the polarizer filtering probability.
FockState double_pair_input(RegistryPtr reg, const InputSpec& spec, const PairAmplitude& eps,
                            const std::string& l1 = "a1", const std::string& l2 = "a2");

}  // namespace cnotsim

#endif
