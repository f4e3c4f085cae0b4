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

#include "cnotsim/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cnotsim {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::pair<std::string, std::string>> echo_config(const CircuitConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is(cfg.to_text());
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        out.emplace_back(line.substr(0, eq - 1), line.substr(eq + 2));
    }
    return out;
}

const char* kOutcomeNames[4] = {"HH", "HV", "VH", "VV"};

// Ensemble of herald results with their source weights merged into the branch
// probabilities, so downstream conditioning sees one distribution.
HeraldResult herald_sources(const Circuit& circuit, const std::vector<SourceComponent>& sources,
                            const HeraldRule& rule) {
    HeraldResult merged;
    for (const auto& src : sources) {
        const HeraldResult res = herald(circuit.evolve(src.state), rule);
        for (const auto& b : res.branches) {
            merged.branches.push_back({b.state, b.probability * src.weight});
            merged.probability += b.probability * src.weight;
        }
    }
    return merged;
}

}  // namespace

std::string ExperimentReport::to_text() const {
    std::ostringstream os;
    os << "format: 1\n";
    os << "scenario: " << scenario << "\n";
    os << "[config]\n";
    for (const auto& [k, v] : config_echo) os << k << ": " << v << "\n";
    if (!scalars.empty()) {
        os << "[scalars]\n";
        for (const auto& s : scalars)
            os << s.name << ": " << fmt(s.value) << " (tol " << fmt(s.tolerance) << ")\n";
    }
    for (const auto& t : tables) {
        os << "[table " << t.name << "]\n";
        os << "label";
        for (const auto& c : t.columns) os << ',' << c;
        os << "\n";
        for (const auto& [label, values] : t.rows) {
            os << label;
            for (double v : values) os << ',' << fmt(v);
            os << "\n";
        }
    }
    return os.str();
}

std::vector<SourceComponent> build_source_ensemble(const CircuitConfig& config, RegistryPtr reg) {
    config.validate();
    std::vector<SourceComponent> out;
    const FockState signal =
        combine_disjoint(product_input(reg, config.input), bell_phi_plus(reg));
    out.push_back({signal, 1.0, "signal"});
    if (config.epsilon && config.epsilon->epsilon > 0.0) {
        // Double-pair contamination, weighted relative to the single-pair
        // preparation the input post-selects on: emitting the extra pair costs
        // eps^2 in amplitude-squared, and the preparation polarizers filter
        // the two components differently.
        const FockState doubled = double_pair_input(reg, config.input, *config.epsilon);
        if (!doubled.is_zero()) {
            const FockState one_pair = bell_phi_plus(reg, "a1", "a2");
            Eigen::Vector2cd q1, q2;
            config.input.factorize(q1, q2);
            FockState filtered = apply(one_pair, polarizer_jones(*reg, "a1", q1.normalized()));
            filtered = apply(filtered, polarizer_jones(*reg, "a2", q2.normalized()));
            const double prep_probability = filtered.branch_weight();
            const double e2 = config.epsilon->epsilon * config.epsilon->epsilon;
            // `doubled` carries amplitude eps^2 and the polarizer filtering in
            // its branch weight already; dividing by the single-pair
            // preparation probability and one eps^2 leaves the relative rate.
            out.push_back({doubled, 1.0 / (e2 * prep_probability), "double-pair-noise"});
        }
    }
    return out;
}

TruthTableResult run_truth_table(const CircuitConfig& config) {
    config.validate();
    TruthTableResult result;
    result.report.scenario = "truth-table";
    result.report.config_echo = echo_config(config);

    const char* inputs[4] = {"HH", "HV", "VH", "VV"};
    ReportTable table{"coincidence_4x4", {"HH", "HV", "VH", "VV"}, {}};
    for (int i = 0; i < 4; ++i) {
        CircuitConfig row_cfg = config;
        row_cfg.input = InputSpec::from_tokens(inputs[i]);
        const Circuit circuit = build_canonical_circuit(row_cfg);
        const auto sources = build_source_ensemble(row_cfg, circuit.registry_ptr());
        const HeraldResult res = herald_sources(circuit, sources, circuit.herald_rule());
        result.herald_probability(i) = res.probability;
        const Eigen::Vector4d pops = outcome_populations(
            res, "b1", "b2", row_cfg.analysis_b1_deg, row_cfg.analysis_b2_deg);
        result.conditional.row(i) = pops.transpose();
        // CNOT image column: control unchanged, target flipped when control is V.
        const int correct = (i < 2) ? i : (i == 2 ? 3 : 2);
        result.logical_fidelity(i) = pops(correct);
        table.rows.emplace_back(inputs[i],
                                std::vector<double>(pops.data(), pops.data() + 4));
    }
    result.report.tables.push_back(std::move(table));
    for (int i = 0; i < 4; ++i)
        result.report.scalars.push_back(
            {std::string("logical_fidelity_") + inputs[i], result.logical_fidelity(i), 1e-9});
    for (int i = 0; i < 4; ++i)
        result.report.scalars.push_back(
            {std::string("herald_probability_") + inputs[i], result.herald_probability(i), 1e-9});
    return result;
}

std::vector<HomPoint> run_hom_scan(const CircuitConfig& config,
                                   const std::vector<double>& delays) {
    CircuitConfig cfg = config;
    // The interference check drives the entangler configuration.
    cfg.input = InputSpec::from_tokens("+H");
    if (!cfg.distinguishability) cfg.distinguishability = DistinguishabilityModel{};
    cfg.validate();
    std::vector<HomPoint> out;
    out.reserve(delays.size());
    for (double d : delays) {
        cfg.distinguishability->delay_fs = d;
        const Circuit circuit = build_canonical_circuit(cfg);
        const auto sources = build_source_ensemble(cfg, circuit.registry_ptr());
        const HeraldResult res = herald_sources(circuit, sources, circuit.herald_rule());
        // +/- analysis on both outputs; accepted ports along +45 degrees.
        const Eigen::Vector4d pops = outcome_populations(res, "b1", "b2", 45.0, 45.0);
        HomPoint p;
        p.delay_fs = d;
        p.desired = pops(0);   // control +, target +
        p.spurious = pops(1);  // control +, target -
        const double denom = p.desired + p.spurious;
        p.visibility = denom > 0.0 ? (p.desired - p.spurious) / denom : 0.0;
        out.push_back(p);
    }
    return out;
}

std::vector<double> hom_default_delays(const CircuitConfig& config, int points,
                                       double span_factor) {
    if (points < 2) throw std::invalid_argument("delay scan needs at least two points");
    const double coherence =
        config.distinguishability ? config.distinguishability->coherence_fs : 700.0;
    const double span = span_factor * coherence;
    std::vector<double> delays;
    delays.reserve(points);
    for (int i = 0; i < points; ++i)
        delays.push_back(-span + 2.0 * span * i / (points - 1));
    return delays;
}

ExperimentReport hom_report(const CircuitConfig& config, const std::vector<HomPoint>& points) {
    ExperimentReport report;
    report.scenario = "hom-scan";
    report.config_echo = echo_config(config);
    ReportTable table{"hom_scan", {"desired", "spurious", "visibility"}, {}};
    for (const auto& p : points)
        table.rows.emplace_back(fmt(p.delay_fs),
                                std::vector<double>{p.desired, p.spurious, p.visibility});
    report.tables.push_back(std::move(table));
    return report;
}

EntanglerResult run_entangler(const CircuitConfig& config) {
    CircuitConfig cfg = config;
    cfg.input = InputSpec::from_tokens("+H");
    cfg.validate();
    EntanglerResult result;
    result.report.scenario = "entangle";
    result.report.config_echo = echo_config(cfg);

    const Circuit circuit = build_canonical_circuit(cfg);
    const auto sources = build_source_ensemble(cfg, circuit.registry_ptr());
    const HeraldResult res = herald_sources(circuit, sources, circuit.herald_rule());

    result.populations = outcome_populations(res, "b1", "b2", 0.0, 0.0);
    result.population_fidelity = result.populations(0) + result.populations(3);

    const Eigen::Vector4d pm = outcome_populations(res, "b1", "b2", 45.0, 45.0);
    result.xx_expectation = pm(0) + pm(3) - pm(1) - pm(2);
    result.coherence_fidelity = result.population_fidelity / 2.0 + result.xx_expectation / 2.0;

    Eigen::Vector4cd target;
    target << kInvSqrt2, 0.0, 0.0, kInvSqrt2;
    result.state_fidelity = qubit_fidelity(res, target, "b1", "b2");

    if (cfg.distinguishability) result.hom = run_hom_scan(cfg, hom_default_delays(cfg));

    ReportTable pops{"populations", {"HH", "HV", "VH", "VV"}, {}};
    pops.rows.emplace_back("p", std::vector<double>(result.populations.data(),
                                                    result.populations.data() + 4));
    result.report.tables.push_back(std::move(pops));
    result.report.scalars.push_back({"herald_probability", res.probability, 1e-9});
    result.report.scalars.push_back({"population_fidelity", result.population_fidelity, 1e-9});
    result.report.scalars.push_back({"xx_expectation", result.xx_expectation, 1e-9});
    result.report.scalars.push_back({"coherence_fidelity", result.coherence_fidelity, 1e-9});
    result.report.scalars.push_back({"state_fidelity", result.state_fidelity, 1e-9});
    if (!result.hom.empty()) {
        ReportTable scan{"hom_scan", {"desired", "spurious", "visibility"}, {}};
        for (const auto& p : result.hom)
            scan.rows.emplace_back(fmt(p.delay_fs),
                                   std::vector<double>{p.desired, p.spurious, p.visibility});
        result.report.tables.push_back(std::move(scan));
    }
    return result;
}

NoiseStudyResult run_noise_study(const CircuitConfig& config) {
    CircuitConfig cfg = config;
    cfg.validate();
    if (!cfg.epsilon)
        throw std::invalid_argument("noise study needs an emission amplitude (epsilon)");
    NoiseStudyResult result;
    result.report.scenario = "noise";
    result.report.config_echo = echo_config(cfg);

    const Circuit circuit = build_canonical_circuit(cfg);
    RegistryPtr reg = circuit.registry_ptr();
    const double eps = cfg.epsilon->epsilon;
    const double e2 = eps * eps;

    // Condition (i): two pairs in the ancilla paths, inputs blocked. Both
    // photons of each emitted pair end up on the same side of their beam
    // splitter, so the four-fold never fires.
    {
        const FockState two_anc = two_pair_state(reg, "a3", "a4");
        const FockState scaled =
            superpose(Complex(e2, 0.0), two_anc, Complex(0.0, 0.0), two_anc);
        const HeraldResult res = herald(circuit.evolve(scaled), circuit.herald_rule());
        result.ancilla_two_pair_probability = res.probability;
    }

    // Condition (ii): two pairs in the input paths, ancilla blocked.
    {
        const FockState doubled = double_pair_input(reg, cfg.input, *cfg.epsilon);
        const HeraldResult res = herald(circuit.evolve(doubled), circuit.herald_rule());
        result.input_two_pair_probability = res.probability;
    }

    // Condition (iii): contamination relative to the heralded gate operation.
    // The signal rate conditions on both sources having fired (the gate as a
    // device, input and Bell pair supplied); the contamination rate is the
    // double-pair four-fold yield per prepared input, which keeps its eps^2
    // emission penalty. Their ratio therefore improves as 1/eps^2.
    {
        CircuitConfig ideal = cfg;
        ideal.epsilon.reset();
        ideal.ideal_sources = true;
        const auto signal_sources = build_source_ensemble(ideal, reg);
        const HeraldResult sig = herald_sources(circuit, signal_sources, circuit.herald_rule());
        result.signal_rate = sig.probability;

        const auto sources = build_source_ensemble(cfg, reg);
        double noise = 0.0;
        for (const auto& src : sources) {
            if (src.role != "double-pair-noise") continue;
            const HeraldResult res = herald(circuit.evolve(src.state), circuit.herald_rule());
            noise += res.probability * src.weight;
        }
        result.noise_rate = noise;
        const double denom = result.signal_rate + result.noise_rate;
        result.noise_fraction = denom > 0.0 ? result.noise_rate / denom : 0.0;
        result.snr = result.noise_rate > 0.0
                         ? result.signal_rate / result.noise_rate
                         : std::numeric_limits<double>::infinity();
    }

    result.report.scalars.push_back(
        {"ancilla_two_pair_probability", result.ancilla_two_pair_probability, 1e-12});
    result.report.scalars.push_back(
        {"input_two_pair_probability", result.input_two_pair_probability, 1e-12});
    result.report.scalars.push_back({"signal_rate", result.signal_rate, 1e-9});
    result.report.scalars.push_back({"noise_rate", result.noise_rate, 1e-9});
    result.report.scalars.push_back({"noise_fraction", result.noise_fraction, 1e-9});
    result.report.scalars.push_back({"snr", result.snr, 1e-9});
    return result;
}

FeedForwardResult run_feed_forward(const CircuitConfig& config) {
    CircuitConfig cfg = config;
    cfg.distinguishability.reset();
    cfg.epsilon.reset();
    cfg.ideal_sources = true;
    cfg.validate();
    FeedForwardResult result;
    const Circuit circuit = build_canonical_circuit(cfg);
    result.table = derive_feed_forward(circuit);
    result.report.scenario = "feed-forward";
    result.report.config_echo = echo_config(cfg);
    ReportTable table{"feed_forward", {"probability"}, {}};
    for (const auto& e : result.table.entries) {
        std::ostringstream label;
        label << "herald_" << to_string(e.herald_b3) << to_string(e.herald_b4) << "_correction_"
              << e.on_control.to_string() << "x" << e.on_target.to_string();
        table.rows.emplace_back(label.str(), std::vector<double>{e.probability});
    }
    result.report.tables.push_back(std::move(table));
    result.report.scalars.push_back(
        {"total_success_probability", result.table.total_probability, 1e-9});
    return result;
}

std::string truth_table_csv(const TruthTableResult& result) {
    std::ostringstream os;
    const char* inputs[4] = {"HH", "HV", "VH", "VV"};
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (!first) os << ',';
            os << "in_" << inputs[i] << "_out_" << kOutcomeNames[j];
            first = false;
        }
    }
    os << "\n";
    first = true;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (!first) os << ',';
            os << fmt(result.conditional(i, j));
            first = false;
        }
    }
    os << "\n";
    return os.str();
}

std::string hom_csv(const std::vector<HomPoint>& points) {
    std::ostringstream os;
    os << "delay_fs,desired,spurious,visibility\n";
    for (const auto& p : points)
        os << fmt(p.delay_fs) << ',' << fmt(p.desired) << ',' << fmt(p.spurious) << ','
           << fmt(p.visibility) << "\n";
    return os.str();
}

}  // namespace cnotsim
