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

#include "cnotsim/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cnotsim/experiments.hpp"

namespace cnotsim {

namespace {

struct CommonOpts {
    std::string config_path;
    std::string input = "HH";
    bool ideal = false;
    double epsilon = -1.0;
    double pump_fs = 200.0;
    double coherence_fs = 700.0;
    double delay_fs = 0.0;
    bool with_delay_model = false;
    bool threshold_inference = false;
    std::string herald = "HH";
    std::string out_path;
    std::string csv_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "config file (key = value with sections)");
    cmd->add_option("--input", o.input, "two-qubit input tokens from {H,V,+,-,R,L}");
    cmd->add_flag("--ideal", o.ideal, "deterministic single-pair sources");
    cmd->add_option("--epsilon", o.epsilon, "pair-emission amplitude (enables two-pair terms)");
    cmd->add_option("--pump", o.pump_fs, "pump pulse duration, fs");
    cmd->add_option("--coherence", o.coherence_fs, "filtered coherence time (FWHM), fs");
    cmd->add_option("--delay", o.delay_fs, "stage delay, fs (enables the wavepacket model)")
        ->each([&o](const std::string&) { o.with_delay_model = true; });
    cmd->add_flag("--threshold-inference", o.threshold_inference,
                  "use the weaker threshold-detector conditioning");
    cmd->add_option("--herald", o.herald, "required herald outcome at b3,b4 (e.g. HH)");
    cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
    cmd->add_option("--csv", o.csv_path, "also write the table as CSV");
}

CircuitConfig make_config(const CommonOpts& o, bool force_delay_model = false) {
    CircuitConfig cfg;
    if (!o.config_path.empty()) cfg = CircuitConfig::from_file(o.config_path);
    if (o.input != "HH" || o.config_path.empty()) cfg.input = InputSpec::from_tokens(o.input);
    if (o.epsilon >= 0.0) {
        cfg.epsilon = PairAmplitude(o.epsilon);
        cfg.ideal_sources = false;
    }
    if (o.ideal) {
        cfg.ideal_sources = true;
        cfg.epsilon.reset();
    }
    if (o.with_delay_model || force_delay_model) {
        DistinguishabilityModel m;
        m.pump_fs = o.pump_fs;
        m.coherence_fs = o.coherence_fs;
        m.delay_fs = o.delay_fs;
        cfg.distinguishability = m;
    }
    cfg.threshold_inference = o.threshold_inference;
    if (o.herald.size() != 2 || (o.herald[0] != 'H' && o.herald[0] != 'V') ||
        (o.herald[1] != 'H' && o.herald[1] != 'V'))
        throw std::invalid_argument("herald outcome must be two of H/V, e.g. HH");
    cfg.herald_b3 = o.herald[0] == 'V' ? Polarization::V : Polarization::H;
    cfg.herald_b4 = o.herald[1] == 'V' ? Polarization::V : Polarization::H;
    cfg.validate();
    return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write output file: " + out_path);
    out << text;
}

void emit_csv(const std::string& text, const std::string& csv_path) {
    if (csv_path.empty()) return;
    std::ofstream out(csv_path);
    if (!out) throw std::invalid_argument("cannot write csv file: " + csv_path);
    out << text;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"heralded linear-optical CNOT simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    int scan_points = 21;
    double scan_span = 5.0;

    auto* truth = app.add_subcommand("truth-table",
                                     "computational-basis inputs, passive-herald conditioned");
    add_common(truth, opts);
    auto* entangle =
        app.add_subcommand("entangle", "superposed control input and coherence check");
    add_common(entangle, opts);
    auto* hom = app.add_subcommand("hom-scan", "herald-conditioned rates against stage delay");
    add_common(hom, opts);
    hom->add_option("--points", scan_points, "number of scan points");
    hom->add_option("--span", scan_span, "scan half-width in units of the coherence time");
    auto* noise = app.add_subcommand("noise", "double-pair emission study");
    add_common(noise, opts);
    auto* ff = app.add_subcommand("feed-forward", "Pauli corrections per herald outcome");
    add_common(ff, opts);
    auto* dump = app.add_subcommand("dump-circuit", "print the pinned network");
    add_common(dump, opts);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError&) {
        std::cerr << app.help() << std::flush;
        return 2;
    }

    try {
        if (truth->parsed()) {
            const CircuitConfig cfg = make_config(opts);
            const TruthTableResult r = run_truth_table(cfg);
            emit(r.report.to_text(), opts.out_path);
            emit_csv(truth_table_csv(r), opts.csv_path);
        } else if (entangle->parsed()) {
            const CircuitConfig cfg = make_config(opts);
            const EntanglerResult r = run_entangler(cfg);
            emit(r.report.to_text(), opts.out_path);
            if (!r.hom.empty()) emit_csv(hom_csv(r.hom), opts.csv_path);
        } else if (hom->parsed()) {
            const CircuitConfig cfg = make_config(opts, /*force_delay_model=*/true);
            const auto delays = hom_default_delays(cfg, scan_points, scan_span);
            const auto points = run_hom_scan(cfg, delays);
            emit(hom_report(cfg, points).to_text(), opts.out_path);
            emit_csv(hom_csv(points), opts.csv_path);
        } else if (noise->parsed()) {
            const CircuitConfig cfg = make_config(opts);
            const NoiseStudyResult r = run_noise_study(cfg);
            emit(r.report.to_text(), opts.out_path);
        } else if (ff->parsed()) {
            const CircuitConfig cfg = make_config(opts);
            const FeedForwardResult r = run_feed_forward(cfg);
            emit(r.report.to_text(), opts.out_path);
        } else if (dump->parsed()) {
            const CircuitConfig cfg = make_config(opts);
            emit(build_canonical_circuit(cfg).to_text(), opts.out_path);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace cnotsim
