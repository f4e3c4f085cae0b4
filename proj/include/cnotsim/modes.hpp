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

#ifndef CNOTSIM_MODES_HPP
#define CNOTSIM_MODES_HPP

#include <Eigen/Core>
#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace cnotsim {

/// Computational polarization basis. H encodes logical 0, V logical 1.
enum class Polarization { H, V };

inline const char* to_string(Polarization p) { return p == Polarization::H ? "H" : "V"; }

/// Jones vectors of the derived polarization states, expressed in the H/V basis.
Eigen::Vector2cd jones_h();
Eigen::Vector2cd jones_v();
Eigen::Vector2cd jones_plus();   // (H+V)/sqrt(2)
Eigen::Vector2cd jones_minus();  // (H-V)/sqrt(2)
Eigen::Vector2cd jones_r();      // (H-iV)/sqrt(2)
Eigen::Vector2cd jones_l();      // (H+iV)/sqrt(2)

/// Jones vector of the linear polarization at `angle_deg` from H.
Eigen::Vector2cd jones_linear(double angle_deg);

/// One bosonic mode: a (spatial path, polarization, temporal bin) triple.
struct Mode {
    std::string spatial;
    Polarization pol = Polarization::H;
    int tbin = 0;
};

/// Dense, deterministic indexing of a set of modes.
///
/// Index layout is label-major, then polarization (H before V), then temporal
/// bin; this creation-order convention is what keeps serialized states and
/// golden files stable.
class ModeRegistry {
  public:
    ModeRegistry(std::vector<std::string> spatial_labels, int tbins);

    int size() const { return static_cast<int>(labels_.size()) * 2 * tbins_; }
    int tbins() const { return tbins_; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool has_label(const std::string& spatial) const;

    /// Dense index of a registered mode; throws std::invalid_argument otherwise.
    int index(const std::string& spatial, Polarization pol, int tbin = 0) const;

    Mode mode(int index) const;

    /// All mode indices belonging to one spatial label (every pol and tbin).
    std::vector<int> label_indices(const std::string& spatial) const;

    bool operator==(const ModeRegistry& other) const {
        return tbins_ == other.tbins_ && labels_ == other.labels_;
    }

  private:
    std::vector<std::string> labels_;
    int tbins_;
};

using RegistryPtr = std::shared_ptr<const ModeRegistry>;

RegistryPtr registry_create(std::vector<std::string> spatial_labels, int tbins = 1);

/// Registry over the concatenated label sets; labels must be disjoint and the
/// temporal-bin counts equal.
RegistryPtr registry_merge(const ModeRegistry& a, const ModeRegistry& b);

}  // namespace cnotsim

#endif
