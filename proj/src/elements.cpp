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

#include "cnotsim/elements.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cnotsim {

namespace {

constexpr double kDegToRad = 0.017453292519943295;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Eigen::Matrix2cd rotation2(double angle_deg) {
    const double t = angle_deg * kDegToRad;
    Eigen::Matrix2cd m;
    m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return m;
}

// Element over (pol x tbin) modes of one spatial label, acting as `jones` on
// polarization and identically on every temporal bin.
Element per_tbin_element(const ModeRegistry& reg, const std::string& spatial,
                         const Eigen::Matrix2cd& jones, ElementKind kind,
                         const std::string& name) {
    const int t = reg.tbins();
    std::vector<int> modes;
    modes.reserve(2 * t);
    for (Polarization pol : {Polarization::H, Polarization::V})
        for (int b = 0; b < t; ++b) modes.push_back(reg.index(spatial, pol, b));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * t, 2 * t);
    for (int pr = 0; pr < 2; ++pr)
        for (int pc = 0; pc < 2; ++pc)
            for (int b = 0; b < t; ++b) m(pr * t + b, pc * t + b) = jones(pr, pc);
    return Element(name, kind, std::move(modes), std::move(m));
}

}  // namespace

double DistinguishabilityModel::sigma_fs() const {
    return coherence_fs / std::sqrt(8.0 * std::log(2.0));
}

double DistinguishabilityModel::overlap() const {
    const double s = sigma_fs();
    return std::exp(-delay_fs * delay_fs / (2.0 * s * s));
}

void DistinguishabilityModel::validate() const {
    if (!(pump_fs > 0.0)) throw std::invalid_argument("pump duration must be positive");
    if (!(coherence_fs > 0.0)) throw std::invalid_argument("coherence time must be positive");
    if (!std::isfinite(delay_fs)) throw std::invalid_argument("delay must be finite");
}

Element::Element(std::string name, ElementKind kind, std::vector<int> modes,
                 Eigen::MatrixXcd matrix)
    : name_(std::move(name)), kind_(kind), modes_(std::move(modes)), matrix_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(modes_.size());
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw std::invalid_argument("element matrix must be square over the listed modes");
    std::set<int> uniq(modes_.begin(), modes_.end());
    if (uniq.size() != modes_.size())
        throw std::invalid_argument("element mode list has duplicates");
    if (kind_ == ElementKind::Unitary) {
        const double dev =
            (matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
        if (dev > kKindTolerance)
            throw std::invalid_argument("element '" + name_ + "' is not unitary");
    } else {
        const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
        const double idem = (matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff();
        if (herm > kKindTolerance || idem > kKindTolerance)
            throw std::invalid_argument("element '" + name_ + "' is not a projector");
    }
}

Element Element::adjoint() const {
    return Element(name_ + "^dag", kind_, modes_, matrix_.adjoint());
}

std::string Element::to_text(const ModeRegistry& reg) const {
    std::ostringstream os;
    os << "element: " << name_ << " ("
       << (kind_ == ElementKind::Unitary ? "unitary" : "projector") << ")\n";
    std::vector<std::string> names;
    for (int idx : modes_) {
        const Mode m = reg.mode(idx);
        std::string n = m.spatial + "." + to_string(m.pol);
        if (reg.tbins() > 1) n += "." + std::to_string(m.tbin);
        names.push_back(n);
    }
    char buf[64];
    for (Eigen::Index r = 0; r < matrix_.rows(); ++r) {
        os << names[r] << ":";
        for (Eigen::Index c = 0; c < matrix_.cols(); ++c) {
            std::snprintf(buf, sizeof buf, " (%.15g,%.15g)", matrix_(r, c).real(),
                          matrix_(r, c).imag());
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

Element rotate_pol(const ModeRegistry& reg, const std::string& spatial, double angle_deg) {
    std::ostringstream name;
    name << "rotate_pol(" << spatial << "," << angle_deg << ")";
    return per_tbin_element(reg, spatial, rotation2(angle_deg), ElementKind::Unitary, name.str());
}

Element half_wave_plate(const ModeRegistry& reg, const std::string& spatial, double angle_deg) {
    Eigen::Matrix2cd flip_v = Eigen::Matrix2cd::Identity();
    flip_v(1, 1) = -1.0;
    std::ostringstream name;
    name << "half_wave_plate(" << spatial << "," << angle_deg << ")";
    return per_tbin_element(reg, spatial, rotation2(2.0 * angle_deg) * flip_v,
                            ElementKind::Unitary, name.str());
}

Element pbs_hv(const ModeRegistry& reg, const std::string& in1, const std::string& in2,
               const std::string& out1, const std::string& out2) {
    const std::vector<std::string> labels = {in1, in2, out1, out2};
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != 4) throw std::invalid_argument("pbs_hv: spatial labels must be distinct");
    const int t = reg.tbins();
    std::vector<int> modes;
    auto slot = [&](int label_pos, Polarization pol, int tb) {
        return (label_pos * 2 + (pol == Polarization::H ? 0 : 1)) * t + tb;
    };
    for (const auto& l : labels)
        for (Polarization pol : {Polarization::H, Polarization::V})
            for (int b = 0; b < t; ++b) modes.push_back(reg.index(l, pol, b));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8 * t, 8 * t);
    for (int b = 0; b < t; ++b) {
        // H transmitted, V reflected; the out -> in images mirror them so the
        // matrix is a (self-inverse) permutation.
        m(slot(2, Polarization::H, b), slot(0, Polarization::H, b)) = 1.0;  // in1,H -> out1,H
        m(slot(3, Polarization::H, b), slot(1, Polarization::H, b)) = 1.0;  // in2,H -> out2,H
        m(slot(3, Polarization::V, b), slot(0, Polarization::V, b)) = 1.0;  // in1,V -> out2,V
        m(slot(2, Polarization::V, b), slot(1, Polarization::V, b)) = 1.0;  // in2,V -> out1,V
        m(slot(0, Polarization::H, b), slot(2, Polarization::H, b)) = 1.0;
        m(slot(1, Polarization::H, b), slot(3, Polarization::H, b)) = 1.0;
        m(slot(0, Polarization::V, b), slot(3, Polarization::V, b)) = 1.0;
        m(slot(1, Polarization::V, b), slot(2, Polarization::V, b)) = 1.0;
    }
    return Element("pbs_hv(" + in1 + "," + in2 + "->" + out1 + "," + out2 + ")",
                   ElementKind::Unitary, std::move(modes), std::move(m));
}

Element pbs_45(const ModeRegistry& reg, const std::string& in1, const std::string& in2,
               const std::string& out1, const std::string& out2) {
    const Element base = pbs_hv(reg, in1, in2, out1, out2);
    const int t = reg.tbins();
    auto embed_rotation = [&](int label_pos, double angle_deg) {
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(8 * t, 8 * t);
        const Eigen::Matrix2cd j = rotation2(angle_deg);
        for (int pr = 0; pr < 2; ++pr)
            for (int pc = 0; pc < 2; ++pc)
                for (int b = 0; b < t; ++b)
                    r((label_pos * 2 + pr) * t + b, (label_pos * 2 + pc) * t + b) = j(pr, pc);
        return r;
    };
    const Eigen::MatrixXcd rot_in = embed_rotation(0, -45.0) * embed_rotation(1, -45.0);
    const Eigen::MatrixXcd rot_out = embed_rotation(2, 45.0) * embed_rotation(3, 45.0);
    return Element("pbs_45(" + in1 + "," + in2 + "->" + out1 + "," + out2 + ")",
                   ElementKind::Unitary, base.modes(), rot_out * base.matrix() * rot_in);
}

Element polarizer(const ModeRegistry& reg, const std::string& spatial, double angle_deg) {
    std::ostringstream name;
    name << "polarizer(" << spatial << "," << angle_deg << ")";
    const Eigen::Vector2cd j = jones_linear(angle_deg);
    return per_tbin_element(reg, spatial, j * j.adjoint(), ElementKind::Projector, name.str());
}

Element polarizer_jones(const ModeRegistry& reg, const std::string& spatial,
                        const Eigen::Vector2cd& jones) {
    if (std::abs(jones.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("polarizer jones vector must be unit norm");
    return per_tbin_element(reg, spatial, jones * jones.adjoint(), ElementKind::Projector,
                            "polarizer_jones(" + spatial + ")");
}

Element delay_mix(const ModeRegistry& reg, const std::string& spatial,
                  const DistinguishabilityModel& model) {
    model.validate();
    if (reg.tbins() < 2)
        throw std::invalid_argument("delay_mix needs a registry with at least two temporal bins");
    const double v = model.overlap();
    const double w = std::sqrt(std::max(0.0, 1.0 - v * v));
    const int t = reg.tbins();
    std::vector<int> modes;
    for (Polarization pol : {Polarization::H, Polarization::V})
        for (int b = 0; b < t; ++b) modes.push_back(reg.index(spatial, pol, b));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * t, 2 * t);
    for (int p = 0; p < 2; ++p) {
        m(p * t + 0, p * t + 0) = v;
        m(p * t + 1, p * t + 0) = w;
        m(p * t + 0, p * t + 1) = -w;
        m(p * t + 1, p * t + 1) = v;
    }
    std::ostringstream name;
    name << "delay_mix(" << spatial << "," << model.delay_fs << "fs)";
    return Element(name.str(), ElementKind::Unitary, std::move(modes), std::move(m));
}

namespace {

// All ways of distributing n quanta from input mode `col` over the element's
// k output slots: (counts per slot, n!/(prod q!) * prod m(slot,col)^q).
std::vector<std::pair<std::vector<int>, Complex>> mode_power_terms(const Eigen::MatrixXcd& m,
                                                                   int col, int n) {
    const int k = static_cast<int>(m.rows());
    std::vector<std::pair<std::vector<int>, Complex>> out;
    std::vector<int> counts(k, 0);
    const double nf = factorial(n);
    auto rec = [&](auto&& self, int pos, int left, Complex coef) -> void {
        if (coef == Complex(0.0, 0.0)) return;
        if (pos == k - 1) {
            const Complex entry = m(pos, col);
            Complex c = coef;
            for (int q = 0; q < left; ++q) c *= entry;
            c /= factorial(left);
            if (c == Complex(0.0, 0.0)) return;
            counts[pos] = left;
            out.emplace_back(counts, nf * c);
            counts[pos] = 0;
            return;
        }
        const Complex entry = m(pos, col);
        Complex c = coef;
        for (int q = 0; q <= left; ++q) {
            counts[pos] = q;
            self(self, pos + 1, left - q, c / factorial(q));
            c *= entry;
        }
        counts[pos] = 0;
    };
    rec(rec, 0, n, Complex(1.0, 0.0));
    return out;
}

FockState apply_linear(const FockState& state, const Element& element) {
    const auto& modes = element.modes();
    const auto& m = element.matrix();
    const int k = static_cast<int>(modes.size());
    FockState out(state.registry_ptr());
    out.set_branch_weight(state.branch_weight());
    for (const auto& [occ, amp] : state.terms()) {
        Occupation base = occ;
        double in_fact = 1.0;
        for (int j = 0; j < k; ++j) {
            in_fact *= factorial(base[modes[j]]);
            base[modes[j]] = 0;
        }
        // Polynomial in the element's creation operators, one monomial per
        // entry; the element modes of the key hold the monomial powers.
        std::map<Occupation, Complex> poly;
        poly.emplace(std::move(base), amp / std::sqrt(in_fact));
        for (int c = 0; c < k; ++c) {
            const int n = occ[modes[c]];
            if (n == 0) continue;
            const auto terms = mode_power_terms(m, c, n);
            std::map<Occupation, Complex> next;
            for (const auto& [o, a] : poly) {
                for (const auto& [delta, coef] : terms) {
                    Occupation key = o;
                    for (int j = 0; j < k; ++j) key[modes[j]] += delta[j];
                    next[key] += a * coef;
                }
            }
            poly.swap(next);
        }
        for (const auto& [o, a] : poly) {
            double out_fact = 1.0;
            for (int mode : modes) out_fact *= factorial(o[mode]);
            out.add_term(o, a * std::sqrt(out_fact));
        }
    }
    out.prune();
    return out;
}

}  // namespace

FockState apply(const FockState& state, const Element& element) {
    if (state.max_photon_number() > FockState::kMaxPhotons)
        throw std::invalid_argument("photon-number cutoff exceeded");
    for (int mode : element.modes())
        if (mode < 0 || mode >= state.registry().size())
            throw std::invalid_argument("element mode outside the state's registry");
    if (element.kind() == ElementKind::Unitary) return apply_linear(state, element);

    // Projector path: the amplitudes are rescaled back to the input norm and
    // the discarded weight moves into branch_weight, so that
    // branch_weight * |amplitudes|^2 stays the branch probability.
    const double before = state.squared_norm();
    FockState projected = apply_linear(state, element);
    const double after = projected.squared_norm();
    if (before == 0.0 || after / before < FockState::kPruneTolerance * FockState::kPruneTolerance) {
        FockState zero(state.registry_ptr());
        zero.set_branch_weight(0.0);
        return zero;
    }
    const double kept = after / before;
    FockState out(state.registry_ptr());
    out.set_branch_weight(state.branch_weight() * kept);
    const double scale = std::sqrt(before / after);
    for (const auto& [occ, amp] : projected.terms()) out.add_term(occ, amp * scale);
    return out;
}

}  // namespace cnotsim
