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

#ifndef CNOTSIM_MEASUREMENT_HPP
#define CNOTSIM_MEASUREMENT_HPP

#include <Eigen/Dense>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "cnotsim/fock.hpp"

namespace cnotsim {

class Circuit;

enum class DetectorKind { NumberResolving, Threshold };

/// Polarization-analyzed detection at one heralding path. `analysis_angle_deg`
/// sets the analysis basis; the accepted port is the polarization along that
/// angle unless `accept_orthogonal` is set.
struct HeraldPort {
    std::string label;
    double analysis_angle_deg = 0.0;
    bool accept_orthogonal = false;
    DetectorKind detector = DetectorKind::NumberResolving;
};

/// Post-selection rule: the heralding ports plus the four-fold condition of
/// one photon in each output path.
///
/// With number-resolving conditioning (the default) each heralding path must
/// hold exactly one photon, found in the accepted port, and each output path
/// exactly one photon. With `threshold_inference` set, the rule reproduces
/// what threshold detectors can certify: at least one photon in each accepted
/// herald port and in each output path, with no occupancy veto anywhere else.
struct HeraldRule {
    std::vector<HeraldPort> ports;
    std::vector<std::string> outputs;
    bool threshold_inference = false;

    void validate(const ModeRegistry& reg) const;
};

/// One heralded outcome branch: a unit-norm conditional state over the output
/// modes (herald modes emptied) and the probability of that micro-outcome.
struct HeraldBranch {
    FockState state;
    double probability = 0.0;
};

/// Post-selected result. Distinct herald micro-outcomes (the exact occupation
/// patterns of the heralding modes) are classically distinguishable, so the
/// conditional output is in general an ensemble of pure branches; with a
/// single temporal bin there is exactly one branch.
struct HeraldResult {
    std::vector<HeraldBranch> branches;
    double probability = 0.0;

    /// The single conditional state; throws std::logic_error if the result is
    /// a nontrivial ensemble.
    const FockState& conditional() const;
};

/// Projects onto the herald rule. Returns the branch ensemble and the total
/// branch probability (pre-normalization weight times branch_weight). A
/// zero-probability herald yields an empty ensemble with probability 0.
HeraldResult herald(const FockState& state, const HeraldRule& rule);

/// |<target|state>|^2 for unit-norm states.
double fidelity(const FockState& state, const FockState& target);

/// Amplitudes over (pol1, pol2) for states holding exactly one photon in each
/// of the two paths, keyed by the photons' temporal bins. Order: HH, HV, VH, VV.
std::map<std::pair<int, int>, Eigen::Vector4cd> qubit_amplitudes_by_tbin(
    const FockState& s, const std::string& l1, const std::string& l2);

/// Fidelity of the heralded polarization qubit pair against a two-qubit target
/// vector (H/V basis), tracing over the temporal bins.
double qubit_fidelity(const HeraldResult& result, const Eigen::Vector4cd& target,
                      const std::string& l1, const std::string& l2);

/// Conditional outcome probabilities of polarization analysis at the given
/// angles on the two output paths, summed over temporal bins and branches.
/// Order: both-accepted, first-accepted/second-orthogonal, etc. (HH, HV, VH, VV
/// when the angles are 0).
Eigen::Vector4d outcome_populations(const HeraldResult& result, const std::string& l1,
                                    const std::string& l2, double angle1_deg, double angle2_deg);

/// Distribution over detector signatures (photon counts per spatial path and
/// polarization, temporal bins summed). The probabilities over all signatures
/// add up to the squared norm of the state.
std::map<std::vector<int>, double> detector_pattern_distribution(const FockState& s);

/// Pauli correction on one polarization qubit: X swaps H and V, Z flips the
/// sign of V. XZ means X applied after Z.
struct PauliOp {
    bool x = false;
    bool z = false;

    std::string to_string() const;
    Eigen::Matrix2cd matrix() const;
};

struct FeedForwardEntry {
    Polarization herald_b3 = Polarization::H;
    Polarization herald_b4 = Polarization::H;
    PauliOp on_control;
    PauliOp on_target;
    double probability = 0.0;  // branch probability of this herald outcome
};

/// Map from herald outcome to the Pauli pair that turns the conditional map
/// into CNOT. The (H,H) entry is the passive outcome requiring no correction.
struct FeedForwardTable {
    std::array<FeedForwardEntry, 4> entries;
    double total_probability = 0.0;

    const FeedForwardEntry& entry(Polarization b3, Polarization b4) const;
};

/// Brute-force solves, for each of the four herald outcomes of an ideal
/// circuit, the Pauli pair making the corrected conditional map equal CNOT up
/// to a global phase. Throws std::logic_error if any outcome admits none,
/// which signals a broken circuit convention.
FeedForwardTable derive_feed_forward(const Circuit& circuit);

/// True when a = phase * b for some unit phase, entrywise to `tol`.
bool matches_up_to_global_phase(const Eigen::Vector4cd& a, const Eigen::Vector4cd& b, double tol);

}  // namespace cnotsim

#endif
