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

#include "cnotsim/modes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cnotsim {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kDegToRad = 0.017453292519943295;
}  // namespace

Eigen::Vector2cd jones_h() { return {1.0, 0.0}; }
Eigen::Vector2cd jones_v() { return {0.0, 1.0}; }
Eigen::Vector2cd jones_plus() { return {kInvSqrt2, kInvSqrt2}; }
Eigen::Vector2cd jones_minus() { return {kInvSqrt2, -kInvSqrt2}; }
Eigen::Vector2cd jones_r() { return {kInvSqrt2, std::complex<double>(0.0, -kInvSqrt2)}; }
Eigen::Vector2cd jones_l() { return {kInvSqrt2, std::complex<double>(0.0, kInvSqrt2)}; }

Eigen::Vector2cd jones_linear(double angle_deg) {
    const double t = angle_deg * kDegToRad;
    return {std::cos(t), std::sin(t)};
}

ModeRegistry::ModeRegistry(std::vector<std::string> spatial_labels, int tbins)
    : labels_(std::move(spatial_labels)), tbins_(tbins) {
    if (labels_.empty()) throw std::invalid_argument("registry needs at least one spatial label");
    if (tbins_ < 1) throw std::invalid_argument("registry needs at least one temporal bin");
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw std::invalid_argument("empty spatial label");
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate spatial label: " + l);
    }
}

bool ModeRegistry::has_label(const std::string& spatial) const {
    return std::find(labels_.begin(), labels_.end(), spatial) != labels_.end();
}

int ModeRegistry::index(const std::string& spatial, Polarization pol, int tbin) const {
    auto it = std::find(labels_.begin(), labels_.end(), spatial);
    if (it == labels_.end())
        throw std::invalid_argument("unregistered spatial label: " + spatial);
    if (tbin < 0 || tbin >= tbins_)
        throw std::invalid_argument("temporal bin out of range for label " + spatial);
    const int label_idx = static_cast<int>(it - labels_.begin());
    return (label_idx * 2 + (pol == Polarization::H ? 0 : 1)) * tbins_ + tbin;
}

Mode ModeRegistry::mode(int index) const {
    if (index < 0 || index >= size()) throw std::invalid_argument("mode index out of range");
    const int tbin = index % tbins_;
    const int rest = index / tbins_;
    const Polarization pol = (rest % 2 == 0) ? Polarization::H : Polarization::V;
    return Mode{labels_[rest / 2], pol, tbin};
}

std::vector<int> ModeRegistry::label_indices(const std::string& spatial) const {
    std::vector<int> out;
    out.reserve(2 * tbins_);
    for (Polarization pol : {Polarization::H, Polarization::V})
        for (int t = 0; t < tbins_; ++t) out.push_back(index(spatial, pol, t));
    return out;
}

RegistryPtr registry_create(std::vector<std::string> spatial_labels, int tbins) {
    return std::make_shared<const ModeRegistry>(std::move(spatial_labels), tbins);
}

RegistryPtr registry_merge(const ModeRegistry& a, const ModeRegistry& b) {
    if (a.tbins() != b.tbins())
        throw std::invalid_argument("cannot merge registries with different tbin counts");
    std::vector<std::string> labels = a.labels();
    for (const auto& l : b.labels()) {
        if (a.has_label(l))
            throw std::invalid_argument("overlapping spatial label in merge: " + l);
        labels.push_back(l);
    }
    return registry_create(std::move(labels), a.tbins());
}

}  // namespace cnotsim
