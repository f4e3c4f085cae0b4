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

#include "cnotsim/circuit.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cnotsim {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Element build_step(const ModeRegistry& reg, const ElementStep& step) {
    if (step.type == "rotate_pol") return rotate_pol(reg, step.labels.at(0), step.params.at(0));
    if (step.type == "half_wave_plate")
        return half_wave_plate(reg, step.labels.at(0), step.params.at(0));
    if (step.type == "pbs_hv")
        return pbs_hv(reg, step.labels.at(0), step.labels.at(1), step.labels.at(2),
                      step.labels.at(3));
    if (step.type == "pbs_45")
        return pbs_45(reg, step.labels.at(0), step.labels.at(1), step.labels.at(2),
                      step.labels.at(3));
    if (step.type == "polarizer") return polarizer(reg, step.labels.at(0), step.params.at(0));
    if (step.type == "delay_mix") {
        DistinguishabilityModel model;
        model.pump_fs = step.params.at(0);
        model.coherence_fs = step.params.at(1);
        model.delay_fs = step.params.at(2);
        return delay_mix(reg, step.labels.at(0), model);
    }
    throw std::invalid_argument("unknown element step type: " + step.type);
}

}  // namespace

void CircuitConfig::validate() const {
    input.validate();
    if (ideal_sources == epsilon.has_value())
        throw std::invalid_argument(
            "config must set exactly one of ideal sources or an emission amplitude");
    if (distinguishability) distinguishability->validate();
}

std::string CircuitConfig::to_text() const {
    std::ostringstream os;
    os << "[circuit]\n";
    os << "input = " << input.label;
    if (input.label == "custom") {
        os << " ;";
        for (int i = 0; i < 4; ++i)
            os << " " << fmt(input.amplitudes(i).real()) << "," << fmt(input.amplitudes(i).imag());
    }
    os << "\n";
    os << "sources = " << (ideal_sources ? "ideal" : "spdc") << "\n";
    if (epsilon) os << "epsilon = " << fmt(epsilon->epsilon) << "\n";
    if (distinguishability) {
        os << "pump_fs = " << fmt(distinguishability->pump_fs) << "\n";
        os << "coherence_fs = " << fmt(distinguishability->coherence_fs) << "\n";
        os << "delay_fs = " << fmt(distinguishability->delay_fs) << "\n";
    }
    os << "threshold_inference = " << (threshold_inference ? 1 : 0) << "\n";
    os << "analysis_b1_deg = " << fmt(analysis_b1_deg) << "\n";
    os << "analysis_b2_deg = " << fmt(analysis_b2_deg) << "\n";
    os << "[herald]\n";
    os << "b3 = " << to_string(herald_b3) << "\n";
    os << "b4 = " << to_string(herald_b4) << "\n";
    return os.str();
}

CircuitConfig CircuitConfig::from_text(const std::string& text) {
    CircuitConfig cfg;
    bool have_pump = false, have_coh = false, have_delay = false;
    DistinguishabilityModel model;
    std::istringstream is(text);
    std::string line, section;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed config line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section == "herald") {
            const Polarization p = value == "V" ? Polarization::V : Polarization::H;
            if (value != "H" && value != "V")
                throw std::invalid_argument("herald outcome must be H or V");
            if (key == "b3")
                cfg.herald_b3 = p;
            else if (key == "b4")
                cfg.herald_b4 = p;
            else
                throw std::invalid_argument("unknown herald key: " + key);
            continue;
        }
        if (key == "input") {
            const auto semi = value.find(';');
            if (semi == std::string::npos) {
                cfg.input = InputSpec::from_tokens(value);
            } else {
                Eigen::Vector4cd a;
                std::istringstream as(value.substr(semi + 1));
                for (int i = 0; i < 4; ++i) {
                    std::string cell;
                    as >> cell;
                    const auto comma = cell.find(',');
                    if (comma == std::string::npos)
                        throw std::invalid_argument("custom input needs re,im pairs");
                    a(i) = Complex(std::strtod(cell.c_str(), nullptr),
                                   std::strtod(cell.c_str() + comma + 1, nullptr));
                }
                cfg.input = InputSpec::from_amplitudes(a);
            }
        } else if (key == "sources") {
            cfg.ideal_sources = (value == "ideal");
        } else if (key == "epsilon") {
            cfg.epsilon = PairAmplitude(std::strtod(value.c_str(), nullptr));
        } else if (key == "pump_fs") {
            model.pump_fs = std::strtod(value.c_str(), nullptr);
            have_pump = true;
        } else if (key == "coherence_fs") {
            model.coherence_fs = std::strtod(value.c_str(), nullptr);
            have_coh = true;
        } else if (key == "delay_fs") {
            model.delay_fs = std::strtod(value.c_str(), nullptr);
            have_delay = true;
        } else if (key == "threshold_inference") {
            cfg.threshold_inference = (value == "1" || value == "true");
        } else if (key == "analysis_b1_deg") {
            cfg.analysis_b1_deg = std::strtod(value.c_str(), nullptr);
        } else if (key == "analysis_b2_deg") {
            cfg.analysis_b2_deg = std::strtod(value.c_str(), nullptr);
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    if (have_pump || have_coh || have_delay) cfg.distinguishability = model;
    cfg.validate();
    return cfg;
}

CircuitConfig CircuitConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

Circuit::Circuit(RegistryPtr registry, std::vector<ElementStep> steps, HeraldRule herald,
                 double analysis_b1_deg, double analysis_b2_deg)
    : registry_(std::move(registry)),
      steps_(std::move(steps)),
      herald_(std::move(herald)),
      analysis_b1_(analysis_b1_deg),
      analysis_b2_(analysis_b2_deg) {
    herald_.validate(*registry_);
    elements_.reserve(steps_.size());
    for (const auto& s : steps_) elements_.push_back(build_step(*registry_, s));
}

HeraldRule Circuit::herald_rule_for(Polarization b3, Polarization b4) const {
    HeraldRule rule = herald_;
    if (rule.ports.size() != 2) throw std::logic_error("expected two herald ports");
    rule.ports[0].accept_orthogonal = (b3 == Polarization::V);
    rule.ports[1].accept_orthogonal = (b4 == Polarization::V);
    return rule;
}

FockState Circuit::evolve(const FockState& initial) const {
    FockState s = initial;
    for (const auto& e : elements_) s = apply(s, e);
    return s;
}

std::string Circuit::to_text() const {
    std::ostringstream os;
    os << "format: 1\n";
    os << "registry:";
    for (const auto& l : registry_->labels()) os << ' ' << l;
    os << "\ntbins: " << registry_->tbins() << "\n";
    for (const auto& s : steps_) {
        os << "element: " << s.type;
        for (const auto& l : s.labels) os << ' ' << l;
        for (double p : s.params) os << ' ' << fmt(p);
        os << "\n";
    }
    for (const auto& p : herald_.ports) {
        os << "herald: " << p.label << " angle=" << fmt(p.analysis_angle_deg)
           << " want=" << (p.accept_orthogonal ? "V" : "H") << " detector="
           << (p.detector == DetectorKind::NumberResolving ? "number_resolving" : "threshold")
           << "\n";
    }
    os << "outputs:";
    for (const auto& o : herald_.outputs) os << ' ' << o;
    os << "\nthreshold_inference: " << (herald_.threshold_inference ? 1 : 0) << "\n";
    os << "analysis: b1=" << fmt(analysis_b1_) << " b2=" << fmt(analysis_b2_) << "\n";
    return os.str();
}

Circuit Circuit::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> labels;
    int tbins = 1;
    std::vector<ElementStep> steps;
    HeraldRule rule;
    double a1 = 0.0, a2 = 0.0;
    bool have_format = false;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "format:") {
            int version = 0;
            ls >> version;
            if (version != 1) throw std::invalid_argument("unsupported circuit format version");
            have_format = true;
        } else if (tag == "registry:") {
            std::string l;
            while (ls >> l) labels.push_back(l);
        } else if (tag == "tbins:") {
            ls >> tbins;
        } else if (tag == "element:") {
            ElementStep step;
            ls >> step.type;
            std::string tok;
            while (ls >> tok) {
                char* end = nullptr;
                const double v = std::strtod(tok.c_str(), &end);
                if (end && *end == '\0' && end != tok.c_str())
                    step.params.push_back(v);
                else
                    step.labels.push_back(tok);
            }
            steps.push_back(std::move(step));
        } else if (tag == "herald:") {
            HeraldPort port;
            ls >> port.label;
            std::string tok;
            while (ls >> tok) {
                if (tok.rfind("angle=", 0) == 0)
                    port.analysis_angle_deg = std::strtod(tok.c_str() + 6, nullptr);
                else if (tok.rfind("want=", 0) == 0)
                    port.accept_orthogonal = (tok.substr(5) == "V");
                else if (tok.rfind("detector=", 0) == 0)
                    port.detector = tok.substr(9) == "threshold" ? DetectorKind::Threshold
                                                                 : DetectorKind::NumberResolving;
            }
            rule.ports.push_back(std::move(port));
        } else if (tag == "outputs:") {
            std::string o;
            while (ls >> o) rule.outputs.push_back(o);
        } else if (tag == "threshold_inference:") {
            int v = 0;
            ls >> v;
            rule.threshold_inference = (v != 0);
        } else if (tag == "analysis:") {
            std::string tok;
            while (ls >> tok) {
                if (tok.rfind("b1=", 0) == 0) a1 = std::strtod(tok.c_str() + 3, nullptr);
                if (tok.rfind("b2=", 0) == 0) a2 = std::strtod(tok.c_str() + 3, nullptr);
            }
        } else {
            throw std::invalid_argument("unknown circuit line: " + line);
        }
    }
    if (!have_format) throw std::invalid_argument("circuit text missing format line");
    return Circuit(registry_create(labels, tbins), std::move(steps), std::move(rule), a1, a2);
}

Circuit build_canonical_circuit(const CircuitConfig& config) {
    config.validate();
    const int tbins = config.distinguishability ? 2 : 1;
    RegistryPtr reg =
        registry_create({"a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"}, tbins);

    std::vector<ElementStep> steps;
    if (config.distinguishability) {
        const auto& m = *config.distinguishability;
        steps.push_back({"delay_mix", {"a3"}, {m.pump_fs, m.coherence_fs, m.delay_fs}});
        steps.push_back({"delay_mix", {"a4"}, {m.pump_fs, m.coherence_fs, m.delay_fs}});
    }
    steps.push_back({"rotate_pol", {"a2"}, {-45.0}});
    steps.push_back({"rotate_pol", {"a4"}, {-45.0}});
    steps.push_back({"pbs_hv", {"a1", "a3", "b1", "b3"}, {}});
    steps.push_back({"pbs_hv", {"a2", "a4", "b2", "b4"}, {}});
    steps.push_back({"rotate_pol", {"b3"}, {-45.0}});
    steps.push_back({"rotate_pol", {"b2"}, {45.0}});
    steps.push_back({"rotate_pol", {"b4"}, {45.0}});

    HeraldRule rule;
    rule.ports.push_back({"b3", 0.0, config.herald_b3 == Polarization::V,
                          DetectorKind::NumberResolving});
    rule.ports.push_back({"b4", 0.0, config.herald_b4 == Polarization::V,
                          DetectorKind::NumberResolving});
    rule.outputs = {"b1", "b2"};
    rule.threshold_inference = config.threshold_inference;
    if (config.threshold_inference)
        for (auto& p : rule.ports) p.detector = DetectorKind::Threshold;

    return Circuit(reg, std::move(steps), std::move(rule), config.analysis_b1_deg,
                   config.analysis_b2_deg);
}

Eigen::MatrixXcd circuit_transfer_matrix(const Circuit& circuit) {
    const int n = circuit.registry().size();
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& e : circuit.elements()) {
        if (e.kind() != ElementKind::Unitary)
            throw std::invalid_argument("transfer matrix is defined for unitary networks only");
        Eigen::MatrixXcd embedded = Eigen::MatrixXcd::Identity(n, n);
        const auto& modes = e.modes();
        for (std::size_t r = 0; r < modes.size(); ++r)
            for (std::size_t c = 0; c < modes.size(); ++c)
                embedded(modes[r], modes[c]) = e.matrix()(r, c);
        total = embedded * total;
    }
    return total;
}

}  // namespace cnotsim
