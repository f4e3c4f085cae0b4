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

#ifndef CNOTSIM_ELEMENTS_HPP
#define CNOTSIM_ELEMENTS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cnotsim/fock.hpp"

namespace cnotsim {

enum class ElementKind { Unitary, Projector };

/// Temporal wavepacket overlap of two photons as a function of the relative
/// delay set by the translation stage. The overlap is Gaussian in the delay,
/// with the width derived from the filter coherence time treated as a FWHM:
///     v(delay) = exp(-delay^2 / (2 sigma^2)),  sigma = coherence / sqrt(8 ln 2).
/// The pump duration is carried for reporting; after spectral filtering the
/// coherence time alone sets the overlap.
struct DistinguishabilityModel {
    double pump_fs = 200.0;
    double coherence_fs = 700.0;
    double delay_fs = 0.0;

    double sigma_fs() const;
    double overlap() const;  // v in [0, 1], v(0) = 1

    void validate() const;  // throws std::invalid_argument
};

/// A linear-optical element: a rewrite rule for creation operators over a
/// listed subset of registry modes. `matrix` column c holds the image of the
/// input mode modes[c], i.e. a^dag_{modes[c]} -> sum_r matrix(r,c) a^dag_{modes[r]}.
///
/// Unitary elements must satisfy ||U^dag U - I||_max <= 1e-10; projectors must
/// be Hermitian and idempotent to the same tolerance. Both are checked at
/// construction.
class Element {
  public:
    static constexpr double kKindTolerance = 1e-10;

    Element(std::string name, ElementKind kind, std::vector<int> modes, Eigen::MatrixXcd matrix);

    const std::string& name() const { return name_; }
    ElementKind kind() const { return kind_; }
    const std::vector<int>& modes() const { return modes_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    /// Conjugate-transpose element; the inverse for unitary elements.
    Element adjoint() const;

    /// Labeled matrix dump with mode names, 15 significant digits.
    std::string to_text(const ModeRegistry& reg) const;

  private:
    std::string name_;
    ElementKind kind_;
    std::vector<int> modes_;
    Eigen::MatrixXcd matrix_;
};

/// Polarization rotation by `angle_deg` on every temporal bin of one path:
///   a^dag_H -> cos(t) a^dag_H + sin(t) a^dag_V
///   a^dag_V -> -sin(t) a^dag_H + cos(t) a^dag_V
Element rotate_pol(const ModeRegistry& reg, const std::string& spatial, double angle_deg);

/// Half-wave plate with its fast axis at `angle_deg`: a rotation by twice the
/// axis angle composed with a sign flip on V.
Element half_wave_plate(const ModeRegistry& reg, const std::string& spatial, double angle_deg);

/// Polarizing beam splitter in the H/V basis: transmits horizontally polarized
/// photons and reflects vertically polarized ones, identically per temporal
/// bin. All four coefficients are +1; no reflection phase is applied. This
/// phase convention is pinned by the golden element dumps and by the heralded
/// gate map matching CNOT.
///   in1,H -> out1,H   in2,H -> out2,H   in1,V -> out2,V   in2,V -> out1,V
/// The reverse images (out -> in) complete the matrix to a permutation.
Element pbs_hv(const ModeRegistry& reg, const std::string& in1, const std::string& in2,
               const std::string& out1, const std::string& out2);

/// Polarizing beam splitter rotated by 45 degrees: transmits (H+V)/sqrt(2),
/// reflects (H-V)/sqrt(2). Built compositely as rotate(-45) on the inputs,
/// pbs_hv, then rotate(+45) on the outputs.
Element pbs_45(const ModeRegistry& reg, const std::string& in1, const std::string& in2,
               const std::string& out1, const std::string& out2);

/// Projector onto the linear polarization at `angle_deg` on one path.
Element polarizer(const ModeRegistry& reg, const std::string& spatial, double angle_deg);

/// Projector onto an arbitrary (possibly complex) Jones vector.
Element polarizer_jones(const ModeRegistry& reg, const std::string& spatial,
                        const Eigen::Vector2cd& jones);

/// Wavepacket delay on one path: moves amplitude from the reference temporal
/// bin into bin 1 according to the model overlap,
///   a^dag_{pol,0} -> v a^dag_{pol,0} + sqrt(1-v^2) a^dag_{pol,1},
/// completed to a real rotation on the two-bin subspace. Requires tbins >= 2.
Element delay_mix(const ModeRegistry& reg, const std::string& spatial,
                  const DistinguishabilityModel& model);

/// Applies the element by rewriting every occupied creation operator through
/// the mode map and expanding multinomially; exact to floating precision.
/// Projectors go through a dedicated path that rescales the amplitudes back to
/// the input norm and folds the discarded weight into branch_weight.
FockState apply(const FockState& state, const Element& element);

}  // namespace cnotsim

#endif
