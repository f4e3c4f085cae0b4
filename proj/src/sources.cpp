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

#include "cnotsim/sources.hpp"

#include <cmath>
#include <stdexcept>

#include "cnotsim/elements.hpp"

namespace cnotsim {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;

Eigen::Vector2cd token_jones(char token) {
    switch (token) {
        case 'H': return jones_h();
        case 'V': return jones_v();
        case '+': return jones_plus();
        case '-': return jones_minus();
        case 'R': return jones_r();
        case 'L': return jones_l();
        default: throw std::invalid_argument(std::string("unknown polarization token: ") + token);
    }
}

// Adds c * a^dag_{l1,p1} a^dag_{l2,p2} applied to each term of `base`.
void add_pair(FockState& acc, const FockState& base, Complex c, const std::string& l1,
              Polarization p1, const std::string& l2, Polarization p2) {
    const auto& reg = acc.registry();
    const int i1 = reg.index(l1, p1, 0);
    const int i2 = reg.index(l2, p2, 0);
    for (const auto& [occ, amp] : base.terms()) {
        Occupation o = occ;
        // Raising twice picks up sqrt(n+1) each time.
        const double f1 = std::sqrt(o[i1] + 1.0);
        o[i1] += 1;
        const double f2 = std::sqrt(o[i2] + 1.0);
        o[i2] += 1;
        acc.add_term(o, c * amp * f1 * f2);
    }
}
}  // namespace

PairAmplitude::PairAmplitude(double eps) : epsilon(eps) {
    if (!(eps >= 0.0) || eps > 0.3)
        throw std::invalid_argument(
            "pair amplitude must lie in [0, 0.3] for the two-pair truncation to hold");
}

InputSpec InputSpec::from_amplitudes(const Eigen::Vector4cd& a) {
    InputSpec spec;
    spec.amplitudes = a;
    spec.label = "custom";
    spec.validate();
    return spec;
}

InputSpec InputSpec::from_tokens(const std::string& tokens) {
    if (tokens.size() != 2)
        throw std::invalid_argument("input shorthand must be two tokens, e.g. \"+H\"");
    const Eigen::Vector2cd q1 = token_jones(tokens[0]);
    const Eigen::Vector2cd q2 = token_jones(tokens[1]);
    InputSpec spec;
    spec.amplitudes << q1(0) * q2(0), q1(0) * q2(1), q1(1) * q2(0), q1(1) * q2(1);
    spec.label = tokens;
    spec.validate();
    return spec;
}

void InputSpec::validate() const {
    if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12)
        throw std::invalid_argument("input amplitudes must be unit norm");
}

bool InputSpec::factorize(Eigen::Vector2cd& q1, Eigen::Vector2cd& q2) const {
    Eigen::Matrix2cd m;
    m << amplitudes(0), amplitudes(1), amplitudes(2), amplitudes(3);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(1) > 1e-9) return false;
    q1 = svd.matrixU().col(0);
    q2 = svd.matrixV().col(0).conjugate();
    const Complex s = svd.singularValues()(0);
    q1 *= s;  // singular value is ~1 for a unit-norm product spec
    return true;
}

FockState bell_phi_plus(RegistryPtr reg, const std::string& l1, const std::string& l2) {
    FockState s(reg);
    const FockState vac = FockState::vacuum(reg);
    add_pair(s, vac, Complex(kInvSqrt2, 0.0), l1, Polarization::H, l2, Polarization::H);
    add_pair(s, vac, Complex(kInvSqrt2, 0.0), l1, Polarization::V, l2, Polarization::V);
    return s;
}

FockState product_input(RegistryPtr reg, const InputSpec& spec, const std::string& l1,
                        const std::string& l2) {
    spec.validate();
    FockState s(reg);
    const FockState vac = FockState::vacuum(reg);
    const Polarization pols[2] = {Polarization::H, Polarization::V};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            add_pair(s, vac, spec.amplitudes(2 * i + j), l1, pols[i], l2, pols[j]);
    return s;
}

FockState two_pair_state(RegistryPtr reg, const std::string& l1, const std::string& l2) {
    // (pair-creation)^2 |0>, normalized. The repeated raising produces the
    // bosonic weights: |2H,2H>, |HV,HV> and |2V,2V> end up with equal moduli.
    FockState once(reg);
    const FockState vac = FockState::vacuum(reg);
    add_pair(once, vac, Complex(kInvSqrt2, 0.0), l1, Polarization::H, l2, Polarization::H);
    add_pair(once, vac, Complex(kInvSqrt2, 0.0), l1, Polarization::V, l2, Polarization::V);
    FockState twice(reg);
    add_pair(twice, once, Complex(kInvSqrt2, 0.0), l1, Polarization::H, l2, Polarization::H);
    add_pair(twice, once, Complex(kInvSqrt2, 0.0), l1, Polarization::V, l2, Polarization::V);
    return normalized(twice);
}

FockState spdc_emission(RegistryPtr reg, const std::string& l1, const std::string& l2,
                        const PairAmplitude& eps, int max_pairs) {
    if (max_pairs < 1 || max_pairs > 2)
        throw std::invalid_argument("spdc_emission supports one or two pairs");
    FockState s = FockState::vacuum(reg);
    s = superpose(Complex(1.0, 0.0), s, Complex(eps.epsilon, 0.0), bell_phi_plus(reg, l1, l2));
    if (max_pairs == 2 && eps.epsilon > 0.0) {
        s = superpose(Complex(1.0, 0.0), s, Complex(eps.epsilon * eps.epsilon, 0.0),
                      two_pair_state(reg, l1, l2));
    }
    return s;
}

FockState double_pair_input(RegistryPtr reg, const InputSpec& spec, const PairAmplitude& eps,
                            const std::string& l1, const std::string& l2) {
    Eigen::Vector2cd q1, q2;
    if (!spec.factorize(q1, q2))
        throw std::invalid_argument(
            "double_pair_input needs a product input; entangled specs have no polarizer setting");
    if (eps.epsilon == 0.0) {
        FockState zero(reg);
        zero.set_branch_weight(0.0);
        return zero;
    }
    FockState tp = two_pair_state(reg, l1, l2);
    const double e2 = eps.epsilon * eps.epsilon;
    tp = superpose(Complex(e2, 0.0), tp, Complex(0.0, 0.0), tp);
    tp = apply(tp, polarizer_jones(*reg, l1, q1.normalized()));
    tp = apply(tp, polarizer_jones(*reg, l2, q2.normalized()));
    return tp;
}

}  // namespace cnotsim
