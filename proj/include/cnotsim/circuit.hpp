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

#ifndef CNOTSIM_CIRCUIT_HPP
#define CNOTSIM_CIRCUIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "cnotsim/elements.hpp"
#include "cnotsim/measurement.hpp"
#include "cnotsim/sources.hpp"

namespace cnotsim {

/// Everything needed to set up one gate run.
struct CircuitConfig {
    InputSpec input = InputSpec::from_tokens("HH");
    bool ideal_sources = true;
    std::optional<PairAmplitude> epsilon;
    std::optional<DistinguishabilityModel> distinguishability;
    bool threshold_inference = false;
    double analysis_b1_deg = 0.0;
    double analysis_b2_deg = 0.0;
    Polarization herald_b3 = Polarization::H;
    Polarization herald_b4 = Polarization::H;

    void validate() const;  // exactly one of ideal_sources / epsilon, etc.

    std::string to_text() const;
    static CircuitConfig from_text(const std::string& text);
    static CircuitConfig from_file(const std::string& path);
};

/// Serializable description of one element in the network.
struct ElementStep {
    std::string type;                 // rotate_pol | half_wave_plate | pbs_hv | pbs_45
                                      // | polarizer | delay_mix
    std::vector<std::string> labels;  // spatial paths, in constructor order
    std::vector<double> params;       // angles in degrees, or pump/coherence/delay in fs
};

/// An ordered element network with its registry, heralding rule and output
/// analysis bases. Built once, applied as a pure function.
class Circuit {
  public:
    Circuit(RegistryPtr registry, std::vector<ElementStep> steps, HeraldRule herald,
            double analysis_b1_deg, double analysis_b2_deg);

    const ModeRegistry& registry() const { return *registry_; }
    RegistryPtr registry_ptr() const { return registry_; }
    const std::vector<ElementStep>& steps() const { return steps_; }
    const std::vector<Element>& elements() const { return elements_; }
    const HeraldRule& herald_rule() const { return herald_; }
    double analysis_b1_deg() const { return analysis_b1_; }
    double analysis_b2_deg() const { return analysis_b2_; }

    /// Rule identical to the circuit's, with the herald outcomes replaced.
    HeraldRule herald_rule_for(Polarization b3, Polarization b4) const;

    FockState evolve(const FockState& initial) const;

    /// Complete text form; from_text(to_text()) reconstructs the circuit.
    std::string to_text() const;
    static Circuit from_text(const std::string& text);

  private:
    RegistryPtr registry_;
    std::vector<ElementStep> steps_;
    std::vector<Element> elements_;
    HeraldRule herald_;
    double analysis_b1_ = 0.0;
    double analysis_b2_ = 0.0;
};

/// The pinned gate network. Order of operations:
///
///   1. delay_mix on a3 and a4          (only with a distinguishability model;
///                                       the translation stage shifts the
///                                       ancilla pair's arrival time)
///   2. rotate_pol(a2, -45)             target into the +/- frame
///   3. rotate_pol(a4, -45)             ancilla arm into the +/- frame
///   4. pbs_hv(a1, a3 -> b1, b3)        control/ancilla overlap
///   5. pbs_hv(a2, a4 -> b2, b4)        target/ancilla overlap; with steps 2-3
///                                      and 8-9 this realizes the 45-degree
///                                      polarizing beam splitter compositely
///   6. rotate_pol(b3, -45)             herald analysis back to H/V
///   7. rotate_pol(b2, +45)             output back to H/V
///   8. rotate_pol(b4, +45)             herald analysis back to H/V
///
/// Heralding on exactly one photon in each of b3 and b4, both found H, leaves
/// the CNOT image of the input on (b1, b2) with no correction needed; the
/// other three herald outcomes need only local Pauli corrections.
Circuit build_canonical_circuit(const CircuitConfig& config);

/// Element matrices embedded over the full registry and multiplied in network
/// order: the single-particle transfer matrix of the circuit. Defined for
/// all-unitary circuits.
Eigen::MatrixXcd circuit_transfer_matrix(const Circuit& circuit);

}  // namespace cnotsim

#endif
