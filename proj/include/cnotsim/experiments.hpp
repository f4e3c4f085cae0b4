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

#ifndef CNOTSIM_EXPERIMENTS_HPP
#define CNOTSIM_EXPERIMENTS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cnotsim/circuit.hpp"

namespace cnotsim {

/// One reported scalar with the tolerance its consumers use.
struct ReportScalar {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
};

/// Named table: a header of column names plus rows of (label, values).
struct ReportTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::pair<std::string, std::vector<double>>> rows;
};

/// Structured experiment output. Serialization is byte-deterministic for a
/// given config; the leading line is `format: 1`.
struct ExperimentReport {
    std::string scenario;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<ReportScalar> scalars;
    std::vector<ReportTable> tables;

    std::string to_text() const;
};

/// Weighted pure-state ensemble fed to the network. With ideal sources this is
/// the prepared input and the Bell ancilla at weight 1. With an emission
/// amplitude configured, the double-pair contamination of the input source is
/// added at its relative weight: emitting two pairs instead of the one that
/// the preparation post-selects on costs a factor eps^2, scaled by the
/// polarizer filtering odds. The heralded gate operation itself (input and
/// ancilla pair both present) stays at weight 1, so reported rates are
/// per prepared input with the ancilla resource supplied.
struct SourceComponent {
    FockState state;
    double weight = 1.0;
    std::string role;  // "signal" or "double-pair-noise"
};
std::vector<SourceComponent> build_source_ensemble(const CircuitConfig& config,
                                                   RegistryPtr reg);

struct TruthTableResult {
    Eigen::Matrix4d conditional;       // rows: inputs HH,HV,VH,VV; cols: outcomes
    Eigen::Vector4d logical_fidelity;  // probability of the CNOT-correct column
    Eigen::Vector4d herald_probability;
    ExperimentReport report;
};

/// The four computational inputs through the gate, conditioned on the passive
/// herald, outcomes analyzed in the configured bases.
TruthTableResult run_truth_table(const CircuitConfig& config);

struct HomPoint {
    double delay_fs = 0.0;
    double desired = 0.0;   // both outputs in the accepted +/- ports
    double spurious = 0.0;  // target in the orthogonal port
    double visibility = 0.0;
};

struct EntanglerResult {
    Eigen::Vector4d populations;  // H/V-basis outcome shares
    double population_fidelity = 0.0;
    double xx_expectation = 0.0;
    double coherence_fidelity = 0.0;
    double state_fidelity = 0.0;  // against (|HH>+|VV>)/sqrt(2)
    std::vector<HomPoint> hom;    // present when a distinguishability model is set
    ExperimentReport report;
};

/// Input (|H>+|V>)/sqrt(2) (x) |H>: H/V populations, the entangled-state
/// fidelity, and the +/- basis coherence check. The coherence fidelity
/// combines the populations with the measured XX correlation:
///   F = (P_HH + P_VV)/2 + <XX>/2.
EntanglerResult run_entangler(const CircuitConfig& config);

/// Herald-conditioned coincidence rates in the +/- analysis basis against the
/// stage delay, in the entangler configuration (input (|H>+|V>)/sqrt(2) (x) |H>).
/// Per-delay visibility is (desired - spurious)/(desired + spurious).
std::vector<HomPoint> run_hom_scan(const CircuitConfig& config, const std::vector<double>& delays);
std::vector<double> hom_default_delays(const CircuitConfig& config, int points = 21,
                                       double span_factor = 5.0);
ExperimentReport hom_report(const CircuitConfig& config, const std::vector<HomPoint>& points);

struct NoiseStudyResult {
    double ancilla_two_pair_probability = 0.0;  // condition (i): expected exactly 0
    double input_two_pair_probability = 0.0;    // condition (ii): raw four-fold rate
    double signal_rate = 0.0;                   // heralded success, both pairs supplied
    double noise_rate = 0.0;                    // contamination rate per prepared input
    double noise_fraction = 0.0;
    double snr = 0.0;
    ExperimentReport report;
};

/// Three-condition double-pair study: (i) two pairs in the ancilla paths with
/// the inputs blocked (no four-fold can occur), (ii) two pairs in the input
/// paths with the ancilla blocked, (iii) contamination relative to the
/// heralded gate operation, which scales the noise fraction as eps^2.
NoiseStudyResult run_noise_study(const CircuitConfig& config);

struct FeedForwardResult {
    FeedForwardTable table;
    ExperimentReport report;
};
FeedForwardResult run_feed_forward(const CircuitConfig& config);

/// Flattened coincidence-matrix CSV: a header naming the 16 input/outcome
/// combinations and one row of conditional probabilities, 12 significant
/// digits.
std::string truth_table_csv(const TruthTableResult& result);

/// Scan CSV: delay_fs, desired, spurious, visibility per row.
std::string hom_csv(const std::vector<HomPoint>& points);

}  // namespace cnotsim

#endif
