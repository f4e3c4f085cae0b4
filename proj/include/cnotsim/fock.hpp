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

#ifndef CNOTSIM_FOCK_HPP
#define CNOTSIM_FOCK_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cnotsim/modes.hpp"

namespace cnotsim {

using Complex = std::complex<double>;

/// Photon counts per registered mode, ordered by the registry's dense index.
using Occupation = std::vector<std::uint8_t>;

int total_photons(const Occupation& occ);

/// Sparse few-photon state: occupation vectors mapped to complex amplitudes.
///
/// States are immutable values once built; every operation below is a pure
/// function returning a new state. `branch_weight` accumulates the
/// probability lost to non-unitary steps (projectors, heralding), so that
///     branch probability = branch_weight * sum |amplitude|^2
/// holds at every stage.
class FockState {
  public:
    /// Amplitudes with magnitude below this are dropped after every operation.
    static constexpr double kPruneTolerance = 1e-12;
    /// Exceeding this photon number is an error, never a silent truncation.
    static constexpr int kMaxPhotons = 6;

    explicit FockState(RegistryPtr registry);

    static FockState vacuum(RegistryPtr registry);

    const ModeRegistry& registry() const { return *registry_; }
    RegistryPtr registry_ptr() const { return registry_; }

    const std::map<Occupation, Complex>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    double branch_weight() const { return branch_weight_; }
    void set_branch_weight(double w) { branch_weight_ = w; }

    Complex amplitude(const Occupation& occ) const;

    /// Adds `amp` into the term at `occ`, pruning and enforcing the photon
    /// cutoff. Used by constructors and operations while assembling a state.
    void add_term(const Occupation& occ, Complex amp);

    double squared_norm() const;
    double norm() const;
    int max_photon_number() const;

    void prune();

  private:
    RegistryPtr registry_;
    std::map<Occupation, Complex> terms_;
    double branch_weight_ = 1.0;
};

/// One photon in the given mode, amplitude 1.
FockState state_single(RegistryPtr reg, const std::string& spatial, Polarization pol, int tbin = 0);

/// Termwise c1*s1 + c2*s2. The result is pruned but not normalized.
FockState superpose(Complex c1, const FockState& s1, Complex c2, const FockState& s2);

/// <s1|s2>, conjugate-linear in the first argument.
Complex inner_product(const FockState& s1, const FockState& s2);

/// Product state over disjoint spatial labels; registries are merged
/// deterministically (labels of s1 first) and norms multiply.
FockState tensor(const FockState& s1, const FockState& s2);

/// Product of two states on the same registry whose occupied modes do not
/// overlap, e.g. a source on a1/a2 with an ancilla on a3/a4.
FockState combine_disjoint(const FockState& s1, const FockState& s2);

FockState normalized(const FockState& s);

/// Probability distribution over occupations restricted to `labels`,
/// summing |amplitude|^2 over everything else.
std::map<Occupation, double> marginal_probabilities(const FockState& s,
                                                    const std::vector<std::string>& labels);

/// Text form: a header line with the registry labels and tbin count, then one
/// term per line as `occupation TAB re TAB im` with the occupation vector
/// comma-separated. Amplitudes survive a round trip bit-exactly.
std::string to_text(const FockState& s);
FockState fock_state_from_text(const std::string& text);

}  // namespace cnotsim

#endif
