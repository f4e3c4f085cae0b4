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

#include "cnotsim/fock.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cnotsim {

int total_photons(const Occupation& occ) {
    int n = 0;
    for (auto c : occ) n += c;
    return n;
}

FockState::FockState(RegistryPtr registry) : registry_(std::move(registry)) {
    if (!registry_) throw std::invalid_argument("null registry");
}

FockState FockState::vacuum(RegistryPtr registry) {
    FockState s(std::move(registry));
    s.add_term(Occupation(s.registry().size(), 0), Complex(1.0, 0.0));
    return s;
}

Complex FockState::amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void FockState::add_term(const Occupation& occ, Complex amp) {
    if (static_cast<int>(occ.size()) != registry_->size())
        throw std::invalid_argument("occupation length does not match registry");
    if (total_photons(occ) > kMaxPhotons)
        throw std::invalid_argument("photon-number cutoff exceeded");
    auto it = terms_.find(occ);
    if (it == terms_.end()) {
        if (std::abs(amp) >= kPruneTolerance) terms_.emplace(occ, amp);
        return;
    }
    it->second += amp;
    if (std::abs(it->second) < kPruneTolerance) terms_.erase(it);
}

double FockState::squared_norm() const {
    double s = 0.0;
    for (const auto& [occ, amp] : terms_) s += std::norm(amp);
    return s;
}

double FockState::norm() const { return std::sqrt(squared_norm()); }

int FockState::max_photon_number() const {
    int n = 0;
    for (const auto& [occ, amp] : terms_) n = std::max(n, total_photons(occ));
    return n;
}

void FockState::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < kPruneTolerance)
            it = terms_.erase(it);
        else
            ++it;
    }
}

FockState state_single(RegistryPtr reg, const std::string& spatial, Polarization pol, int tbin) {
    FockState s(reg);
    Occupation occ(reg->size(), 0);
    occ[reg->index(spatial, pol, tbin)] = 1;
    s.add_term(occ, Complex(1.0, 0.0));
    return s;
}

FockState superpose(Complex c1, const FockState& s1, Complex c2, const FockState& s2) {
    if (!(s1.registry() == s2.registry()))
        throw std::invalid_argument("superpose: registry mismatch");
    if (s1.branch_weight() != s2.branch_weight())
        throw std::invalid_argument("superpose: cannot mix branches of different weight");
    FockState out(s1.registry_ptr());
    out.set_branch_weight(s1.branch_weight());
    for (const auto& [occ, amp] : s1.terms()) out.add_term(occ, c1 * amp);
    for (const auto& [occ, amp] : s2.terms()) out.add_term(occ, c2 * amp);
    return out;
}

Complex inner_product(const FockState& s1, const FockState& s2) {
    if (!(s1.registry() == s2.registry()))
        throw std::invalid_argument("inner_product: registry mismatch");
    // Iterate the sparser map.
    const FockState& a = s1.term_count() <= s2.term_count() ? s1 : s2;
    const FockState& b = &a == &s1 ? s2 : s1;
    Complex acc(0.0, 0.0);
    for (const auto& [occ, amp] : a.terms()) {
        const Complex other = b.amplitude(occ);
        if (&a == &s1)
            acc += std::conj(amp) * other;
        else
            acc += std::conj(other) * amp;
    }
    return acc;
}

FockState tensor(const FockState& s1, const FockState& s2) {
    RegistryPtr merged = registry_merge(s1.registry(), s2.registry());
    const int n1 = s1.registry().size();
    FockState out(merged);
    out.set_branch_weight(s1.branch_weight() * s2.branch_weight());
    for (const auto& [occ1, amp1] : s1.terms()) {
        for (const auto& [occ2, amp2] : s2.terms()) {
            Occupation occ(merged->size(), 0);
            for (int i = 0; i < n1; ++i) occ[i] = occ1[i];
            for (std::size_t j = 0; j < occ2.size(); ++j) occ[n1 + j] = occ2[j];
            out.add_term(occ, amp1 * amp2);
        }
    }
    return out;
}

FockState combine_disjoint(const FockState& s1, const FockState& s2) {
    if (!(s1.registry() == s2.registry()))
        throw std::invalid_argument("combine_disjoint: registry mismatch");
    FockState out(s1.registry_ptr());
    out.set_branch_weight(s1.branch_weight() * s2.branch_weight());
    for (const auto& [occ1, amp1] : s1.terms()) {
        for (const auto& [occ2, amp2] : s2.terms()) {
            Occupation occ = occ1;
            for (std::size_t i = 0; i < occ.size(); ++i) {
                if (occ2[i] == 0) continue;
                if (occ[i] != 0)
                    throw std::invalid_argument("combine_disjoint: overlapping occupation");
                occ[i] = occ2[i];
            }
            out.add_term(occ, amp1 * amp2);
        }
    }
    return out;
}

FockState normalized(const FockState& s) {
    const double n = s.norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero state");
    FockState out(s.registry_ptr());
    out.set_branch_weight(s.branch_weight());
    for (const auto& [occ, amp] : s.terms()) out.add_term(occ, amp / n);
    return out;
}

std::map<Occupation, double> marginal_probabilities(const FockState& s,
                                                    const std::vector<std::string>& labels) {
    std::vector<int> indices;
    for (const auto& l : labels)
        for (int i : s.registry().label_indices(l)) indices.push_back(i);
    std::map<Occupation, double> out;
    for (const auto& [occ, amp] : s.terms()) {
        Occupation key(indices.size(), 0);
        for (std::size_t k = 0; k < indices.size(); ++k) key[k] = occ[indices[k]];
        out[key] += std::norm(amp);
    }
    return out;
}

std::string to_text(const FockState& s) {
    std::ostringstream os;
    os << "registry:";
    for (const auto& l : s.registry().labels()) os << ' ' << l;
    os << " tbins: " << s.registry().tbins();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", s.branch_weight());
    os << " weight: " << buf << '\n';
    for (const auto& [occ, amp] : s.terms()) {
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (i) os << ',';
            os << int(occ[i]);
        }
        std::snprintf(buf, sizeof buf, "%.17g", amp.real());
        os << '\t' << buf;
        std::snprintf(buf, sizeof buf, "%.17g", amp.imag());
        os << '\t' << buf << '\n';
    }
    return os.str();
}

FockState fock_state_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("empty state text");
    std::istringstream hs(header);
    std::string tok;
    hs >> tok;
    if (tok != "registry:") throw std::invalid_argument("missing registry header");
    std::vector<std::string> labels;
    int tbins = 1;
    double weight = 1.0;
    while (hs >> tok) {
        if (tok == "tbins:") {
            hs >> tbins;
        } else if (tok == "weight:") {
            hs >> weight;
        } else {
            labels.push_back(tok);
        }
    }
    FockState s(registry_create(labels, tbins));
    s.set_branch_weight(weight);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw std::invalid_argument("malformed state line: " + line);
        Occupation occ;
        std::istringstream cs(line.substr(0, t1));
        std::string cell;
        while (std::getline(cs, cell, ','))
            occ.push_back(static_cast<std::uint8_t>(std::atoi(cell.c_str())));
        const double re = std::strtod(line.c_str() + t1 + 1, nullptr);
        const double im = std::strtod(line.c_str() + t2 + 1, nullptr);
        s.add_term(occ, Complex(re, im));
    }
    return s;
}

}  // namespace cnotsim
