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

#include "cnotsim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cnotsim/circuit.hpp"
#include "cnotsim/elements.hpp"
#include "cnotsim/sources.hpp"

namespace cnotsim {

void HeraldRule::validate(const ModeRegistry& reg) const {
    if (ports.empty()) throw std::invalid_argument("herald rule needs at least one port");
    std::set<std::string> seen;
    for (const auto& p : ports) {
        if (!reg.has_label(p.label))
            throw std::invalid_argument("herald label not registered: " + p.label);
        if (!seen.insert(p.label).second)
            throw std::invalid_argument("duplicate herald label: " + p.label);
    }
    for (const auto& o : outputs) {
        if (!reg.has_label(o)) throw std::invalid_argument("output label not registered: " + o);
        if (seen.count(o))
            throw std::invalid_argument("output label overlaps a herald label: " + o);
    }
}

const FockState& HeraldResult::conditional() const {
    if (branches.size() != 1)
        throw std::logic_error("heralded result is an ensemble, not a single state");
    return branches.front().state;
}

HeraldResult herald(const FockState& state, const HeraldRule& rule) {
    rule.validate(state.registry());
    const auto& reg = state.registry();

    // Move each analyzed port into its analysis frame so that acceptance
    // reduces to reading H/V occupations.
    FockState work = state;
    for (const auto& p : rule.ports)
        if (p.analysis_angle_deg != 0.0)
            work = apply(work, rotate_pol(reg, p.label, -p.analysis_angle_deg));

    struct PortIdx {
        std::vector<int> accepted;  // modes of the accepted port, all tbins
        std::vector<int> vetoed;    // orthogonal port
    };
    std::vector<PortIdx> port_idx;
    for (const auto& p : rule.ports) {
        PortIdx pi;
        const Polarization want =
            p.accept_orthogonal ? Polarization::V : Polarization::H;
        const Polarization veto =
            p.accept_orthogonal ? Polarization::H : Polarization::V;
        for (int t = 0; t < reg.tbins(); ++t) {
            pi.accepted.push_back(reg.index(p.label, want, t));
            pi.vetoed.push_back(reg.index(p.label, veto, t));
        }
        port_idx.push_back(std::move(pi));
    }
    std::vector<int> herald_modes;
    for (const auto& p : rule.ports)
        for (int i : reg.label_indices(p.label)) herald_modes.push_back(i);
    std::sort(herald_modes.begin(), herald_modes.end());

    const bool exact = !rule.threshold_inference;
    auto count_over = [](const Occupation& occ, const std::vector<int>& idx) {
        int n = 0;
        for (int i : idx) n += occ[i];
        return n;
    };

    // Group the accepted terms by the exact occupation of the herald modes;
    // each group is one classically distinguishable micro-outcome.
    std::map<Occupation, FockState> groups;
    for (const auto& [occ, amp] : work.terms()) {
        bool ok = true;
        for (const auto& pi : port_idx) {
            const int acc = count_over(occ, pi.accepted);
            const int veto = count_over(occ, pi.vetoed);
            if (exact) {
                if (acc != 1 || veto != 0) { ok = false; break; }
            } else {
                if (acc < 1) { ok = false; break; }
            }
        }
        if (!ok) continue;
        for (const auto& o : rule.outputs) {
            const int n = count_over(occ, reg.label_indices(o));
            if (exact ? (n != 1) : (n < 1)) { ok = false; break; }
        }
        if (!ok) continue;
        Occupation key(herald_modes.size(), 0);
        for (std::size_t k = 0; k < herald_modes.size(); ++k) key[k] = occ[herald_modes[k]];
        Occupation stripped = occ;
        for (int i : herald_modes) stripped[i] = 0;
        auto [it, inserted] = groups.try_emplace(key, work.registry_ptr());
        it->second.add_term(stripped, amp);
    }

    HeraldResult result;
    for (auto& [key, group] : groups) {
        const double weight = group.squared_norm();
        const double prob = weight * work.branch_weight();
        if (prob <= 0.0) continue;
        HeraldBranch branch{normalized(group), prob};
        branch.state.set_branch_weight(1.0);
        result.branches.push_back(std::move(branch));
        result.probability += prob;
    }
    return result;
}

double fidelity(const FockState& state, const FockState& target) {
    if (std::abs(state.squared_norm() - 1.0) > 1e-9 ||
        std::abs(target.squared_norm() - 1.0) > 1e-9)
        throw std::invalid_argument("fidelity needs unit-norm states");
    return std::norm(inner_product(target, state));
}

std::map<std::pair<int, int>, Eigen::Vector4cd> qubit_amplitudes_by_tbin(
    const FockState& s, const std::string& l1, const std::string& l2) {
    const auto& reg = s.registry();
    std::map<std::pair<int, int>, Eigen::Vector4cd> out;
    for (const auto& [occ, amp] : s.terms()) {
        int i1 = -1, i2 = -1;
        bool valid = true;
        for (std::size_t i = 0; i < occ.size() && valid; ++i) {
            if (occ[i] == 0) continue;
            const Mode m = reg.mode(static_cast<int>(i));
            if (m.spatial == l1 && occ[i] == 1 && i1 < 0)
                i1 = static_cast<int>(i);
            else if (m.spatial == l2 && occ[i] == 1 && i2 < 0)
                i2 = static_cast<int>(i);
            else
                valid = false;
        }
        if (!valid || i1 < 0 || i2 < 0) continue;
        const Mode m1 = reg.mode(i1);
        const Mode m2 = reg.mode(i2);
        auto& vec = out.try_emplace({m1.tbin, m2.tbin}, Eigen::Vector4cd::Zero()).first->second;
        const int row = (m1.pol == Polarization::V ? 2 : 0) + (m2.pol == Polarization::V ? 1 : 0);
        vec(row) += amp;
    }
    return out;
}

double qubit_fidelity(const HeraldResult& result, const Eigen::Vector4cd& target,
                      const std::string& l1, const std::string& l2) {
    if (result.probability <= 0.0) return 0.0;
    double f = 0.0;
    for (const auto& b : result.branches) {
        double branch_f = 0.0;
        for (const auto& [tbins, vec] : qubit_amplitudes_by_tbin(b.state, l1, l2))
            branch_f += std::norm(target.dot(vec));
        f += (b.probability / result.probability) * branch_f;
    }
    return f;
}

Eigen::Vector4d outcome_populations(const HeraldResult& result, const std::string& l1,
                                    const std::string& l2, double angle1_deg, double angle2_deg) {
    Eigen::Vector4d pops = Eigen::Vector4d::Zero();
    if (result.probability <= 0.0) return pops;
    for (const auto& b : result.branches) {
        const auto& reg = b.state.registry();
        FockState rotated = b.state;
        if (angle1_deg != 0.0) rotated = apply(rotated, rotate_pol(reg, l1, -angle1_deg));
        if (angle2_deg != 0.0) rotated = apply(rotated, rotate_pol(reg, l2, -angle2_deg));
        const double share = b.probability / result.probability;
        for (const auto& [tbins, vec] : qubit_amplitudes_by_tbin(rotated, l1, l2))
            for (int i = 0; i < 4; ++i) pops(i) += share * std::norm(vec(i));
    }
    return pops;
}

std::map<std::vector<int>, double> detector_pattern_distribution(const FockState& s) {
    const auto& reg = s.registry();
    const int stations = static_cast<int>(reg.labels().size()) * 2;
    std::map<std::vector<int>, double> out;
    for (const auto& [occ, amp] : s.terms()) {
        std::vector<int> sig(stations, 0);
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (occ[i] == 0) continue;
            const Mode m = reg.mode(static_cast<int>(i));
            const auto label_pos =
                std::find(reg.labels().begin(), reg.labels().end(), m.spatial) -
                reg.labels().begin();
            sig[2 * label_pos + (m.pol == Polarization::V ? 1 : 0)] += occ[i];
        }
        out[sig] += std::norm(amp) * s.branch_weight();
    }
    return out;
}

std::string PauliOp::to_string() const {
    if (x && z) return "XZ";
    if (x) return "X";
    if (z) return "Z";
    return "I";
}

Eigen::Matrix2cd PauliOp::matrix() const {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    if (z) m(1, 1) = -1.0;
    if (x) {
        Eigen::Matrix2cd sx;
        sx << 0.0, 1.0, 1.0, 0.0;
        m = sx * m;
    }
    return m;
}

namespace {
Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) k(2 * i + r, 2 * j + c) = a(i, j) * b(r, c);
    return k;
}
}  // namespace

const FeedForwardEntry& FeedForwardTable::entry(Polarization b3, Polarization b4) const {
    for (const auto& e : entries)
        if (e.herald_b3 == b3 && e.herald_b4 == b4) return e;
    throw std::logic_error("missing feed-forward entry");
}

bool matches_up_to_global_phase(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b, double tol) {
    // Fit the phase on the largest component of b, then compare entrywise.
    int imax = 0;
    b.cwiseAbs().maxCoeff(&imax);
    if (std::abs(b(imax)) < tol) return a.cwiseAbs().maxCoeff() < tol;
    Complex phase = a(imax) / b(imax);
    const double mag = std::abs(phase);
    if (std::abs(mag - 1.0) > tol) return false;
    phase /= mag;
    return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

FeedForwardTable derive_feed_forward(const Circuit& circuit) {
    if (circuit.registry().tbins() != 1)
        throw std::invalid_argument("feed-forward derivation expects an ideal single-bin circuit");
    RegistryPtr reg = circuit.registry_ptr();
    const std::string l1 = circuit.herald_rule().outputs.at(0);
    const std::string l2 = circuit.herald_rule().outputs.at(1);

    Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();
    cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1.0;

    const char* input_tokens[4] = {"HH", "HV", "VH", "VV"};
    FeedForwardTable table;
    int slot = 0;
    for (Polarization b3 : {Polarization::H, Polarization::V}) {
        for (Polarization b4 : {Polarization::H, Polarization::V}) {
            const HeraldRule rule = circuit.herald_rule_for(b3, b4);
            // Columns: unnormalized conditional amplitudes of the four
            // computational inputs under this herald outcome.
            Eigen::Matrix4cd heralded = Eigen::Matrix4cd::Zero();
            double outcome_prob = 0.0;
            for (int i = 0; i < 4; ++i) {
                const FockState initial =
                    combine_disjoint(product_input(reg, InputSpec::from_tokens(input_tokens[i])),
                                     bell_phi_plus(reg));
                const HeraldResult res = herald(circuit.evolve(initial), rule);
                if (res.probability <= 0.0)
                    throw std::logic_error("herald outcome unreachable from a basis input");
                const auto vecs = qubit_amplitudes_by_tbin(res.conditional(), l1, l2);
                heralded.col(i) = std::sqrt(res.probability) * vecs.at({0, 0});
                outcome_prob += res.probability / 4.0;
            }
            bool found = false;
            FeedForwardEntry entry;
            entry.herald_b3 = b3;
            entry.herald_b4 = b4;
            entry.probability = outcome_prob;
            for (int pc = 0; pc < 4 && !found; ++pc) {
                for (int pt = 0; pt < 4 && !found; ++pt) {
                    const PauliOp on_control{(pc & 1) != 0, (pc & 2) != 0};
                    const PauliOp on_target{(pt & 1) != 0, (pt & 2) != 0};
                    const Eigen::Matrix4cd corrected =
                        kron2(on_control.matrix(), on_target.matrix()) * heralded;
                    const Complex c = (cnot.adjoint() * corrected).trace() / 4.0;
                    if ((corrected - c * cnot).cwiseAbs().maxCoeff() <= 1e-10) {
                        entry.on_control = on_control;
                        entry.on_target = on_target;
                        found = true;
                    }
                }
            }
            if (!found)
                throw std::logic_error(
                    "no Pauli correction makes this herald outcome a CNOT; the circuit "
                    "convention is broken");
            table.entries[slot++] = entry;
            table.total_probability += outcome_prob;
        }
    }
    return table;
}

}  // namespace cnotsim
