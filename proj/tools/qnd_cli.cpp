// Copyright 2026 The qndsim Authors
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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qnd/circuit.hpp"
#include "qnd/logical.hpp"
#include "qnd/metrics.hpp"
#include "qnd/sampling.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsageError = 1;
constexpr int kExitIoError = 2;
constexpr int kExitVerificationFailure = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt(qnd::Complex v) {
    return "(" + fmt(v.real()) + "," + fmt(v.imag()) + ")";
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw IoError("cannot open output path: " + out_path);
    f << text;
    f.flush();
    if (!f) throw IoError("cannot write output path: " + out_path);
}

struct SignalFlags {
    double theta = std::numbers::pi / 2.0;
    double phase = 0.0;
};

void add_signal_flags(CLI::App* cmd, SignalFlags& flags) {
    cmd->add_option("--theta", flags.theta,
                    "Polar angle; alpha = cos(theta/2) (default pi/2)");
    cmd->add_option("--phase", flags.phase,
                    "Relative phase; beta = e^{i phase} sin(theta/2) (default 0)");
}

std::string describe_signal(const qnd::SignalQubit& q) {
    return "signal alpha=" + fmt(q.alpha) + " beta=" + fmt(q.beta) + "\n";
}

std::string outcome_table(const std::vector<qnd::OutcomeRecord>& records) {
    std::ostringstream os;
    os << "outcome d1 d2 probability correction retained signal\n";
    for (const auto& rec : records) {
        os << rec.label << " " << rec.d1_photons << " " << rec.d2_photons << " "
           << fmt(rec.probability) << " " << rec.correction << " "
           << (rec.retained ? "true" : "false") << " ";
        if (rec.conditional_signal) {
            os << "alpha=" << fmt(rec.conditional_signal->alpha)
               << " beta=" << fmt(rec.conditional_signal->beta);
        } else {
            os << "none";
        }
        os << "\n";
    }
    return os.str();
}

std::string shot_report(const std::vector<qnd::OutcomeRecord>& records, long long shots,
                        std::uint64_t seed, const std::vector<std::string>& coincidence_labels) {
    const qnd::OutcomeDistribution dist = qnd::distribution_from_records(records);
    const std::vector<long long> counts = qnd::sample_shots(dist, shots, seed);
    std::ostringstream os;
    os << "shots " << shots << " seed " << seed << "\n";
    os << "label count frequency\n";
    long long coincident = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double freq = static_cast<double>(counts[i]) / static_cast<double>(shots);
        os << dist.labels[i] << " " << counts[i] << " " << fmt(freq) << "\n";
        for (const auto& label : coincidence_labels) {
            if (dist.labels[i] == label) coincident += counts[i];
        }
    }
    os << "empirical_coincidence "
       << fmt(static_cast<double>(coincident) / static_cast<double>(shots)) << "\n";
    return os.str();
}

std::vector<double> parse_grid(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        text.find(':', second + 1) != std::string::npos) {
        throw std::invalid_argument("grid must be start:stop:steps");
    }
    double start = 0.0;
    double stop = 0.0;
    long steps = 0;
    try {
        std::size_t used = 0;
        const std::string s0 = text.substr(0, first);
        const std::string s1 = text.substr(first + 1, second - first - 1);
        const std::string s2 = text.substr(second + 1);
        start = std::stod(s0, &used);
        if (used != s0.size()) throw std::invalid_argument(text);
        stop = std::stod(s1, &used);
        if (used != s1.size()) throw std::invalid_argument(text);
        steps = std::stol(s2, &used);
        if (used != s2.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must be start:stop:steps with numeric fields");
    }
    if (steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (long i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] =
            start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return grid;
}

std::string run_presence(const std::optional<qnd::SignalQubit>& signal, bool feed_forward,
                         std::optional<long long> shots, std::uint64_t seed) {
    const qnd::PresenceResult result = qnd::detect_presence(signal, feed_forward);
    std::ostringstream os;
    os << "regime presence\n";
    os << "feed_forward " << (feed_forward ? "true" : "false") << "\n";
    if (signal) {
        os << describe_signal(*signal);
    } else {
        os << "signal vacuum\n";
    }
    os << outcome_table(result.records);
    os << "coincidence_probability " << fmt(result.coincidence_probability) << "\n";
    os << "success_probability " << fmt(result.success_probability) << "\n";
    os << "min_retained_fidelity " << fmt(result.min_retained_fidelity) << "\n";
    os << "total_probability " << fmt(result.total_probability) << "\n";
    if (shots) {
        os << shot_report(result.records, *shots, seed, {"DD", "DA", "AD", "AA"});
    }
    return os.str();
}

std::string run_weak(const qnd::SignalQubit& signal, double phi) {
    const qnd::WeakMeasurementResult result = qnd::weak_measure(signal, phi);
    const qnd::CoherentInfoResult info = qnd::coherent_information_closed(signal, phi);
    qnd::JointDistribution joint;
    joint.p = result.joint;

    std::ostringstream os;
    os << "regime weak\n";
    os << "phi " << fmt(phi) << "\n";
    os << describe_signal(signal);
    os << "post_select_probability " << fmt(result.post_select_probability) << "\n";
    const char* pol = "HV";
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            os << "joint_" << pol[i] << pol[j] << " " << fmt(result.joint(i, j)) << "\n";
        }
    }
    const auto& basis = result.rho_out.basis();
    for (std::size_t u = 0; u < basis.size(); ++u) {
        for (std::size_t v = 0; v < basis.size(); ++v) {
            os << "rho_out_" << pol[basis[u][0] == 1 ? 0 : 1] << pol[basis[v][0] == 1 ? 0 : 1]
               << " "
               << fmt(result.rho_out.entries()(static_cast<Eigen::Index>(u),
                                               static_cast<Eigen::Index>(v)))
               << "\n";
        }
    }
    os << "fidelity_simulated " << fmt(qnd::state_fidelity(result.rho_out, signal)) << "\n";
    os << "fidelity_closed " << fmt(qnd::fidelity_closed(signal, phi)) << "\n";
    os << "coherent_info_simulated " << fmt(qnd::von_neumann_entropy_bits(result.rho_out))
       << "\n";
    os << "coherent_info_closed " << fmt(info.i_c) << "\n";
    os << "mutual_info_simulated " << fmt(qnd::mutual_information_bits(joint)) << "\n";
    os << "mutual_info_closed " << fmt(qnd::mutual_information_closed(signal, phi)) << "\n";
    os << "t_zz_simulated " << fmt(qnd::tzz_from_joint(joint)) << "\n";
    os << "t_zz_closed " << fmt(qnd::tzz_closed(phi)) << "\n";
    os << "holevo " << fmt(qnd::holevo_bound_bits(signal)) << "\n";
    os << outcome_table(result.outcomes);
    return os.str();
}

std::string run_sweep(const qnd::SignalQubit& signal, const std::vector<double>& grid) {
    const std::vector<qnd::TradeoffPoint> curve = qnd::tradeoff_curve(signal, grid);
    const double holevo = qnd::holevo_bound_bits(signal);
    std::ostringstream os;
    os << "phi,fidelity,coherent_info,mutual_info,t_zz,holevo\n";
    for (const auto& p : curve) {
        os << fmt(p.phi) << "," << fmt(p.fidelity) << "," << fmt(p.i_c) << ","
           << fmt(p.i_mutual) << "," << fmt(p.t_zz) << "," << fmt(holevo) << "\n";
    }
    return os.str();
}

std::string run_deterministic(const qnd::SignalQubit& signal, std::optional<long long> shots,
                              std::uint64_t seed) {
    const qnd::DeterministicResult result = qnd::deterministic_run(signal);
    std::ostringstream os;
    os << "regime deterministic\n";
    os << describe_signal(signal);
    os << outcome_table(result.records);
    os << "average_fidelity " << fmt(result.average_fidelity) << "\n";
    os << "total_probability " << fmt(result.total_probability) << "\n";
    if (shots) {
        os << shot_report(result.records, *shots, seed, {"coincidence"});
    }
    return os.str();
}

std::string run_verify(qnd::VerificationReport& report) {
    report = qnd::verify_against_optical(1e-10);
    std::ostringstream os;
    os << "cases " << report.cases << "\n";
    os << "max_deviation " << fmt(report.max_deviation) << "\n";
    os << "worst_case " << (report.worst_case.empty() ? "none" : report.worst_case) << "\n";
    os << "photon_coincidence_probability " << fmt(report.photon_coincidence_probability)
       << "\n";
    os << "vacuum_coincidence_probability " << fmt(report.vacuum_coincidence_probability)
       << "\n";
    os << "herald_consistent " << (report.herald_consistent ? "true" : "false") << "\n";
    os << "passed " << (report.passed ? "true" : "false") << "\n";
    return os.str();
}

std::string run_compare() {
    const qnd::ResourceComparison r = qnd::resource_comparison();
    std::ostringstream os;
    os << "entanglement_assisted_success " << fmt(r.entanglement_assisted_success) << "\n";
    os << "single_cnot_success " << fmt(r.single_cnot_success) << "\n";
    os << "consecutive_cnot_success " << fmt(r.consecutive_cnot_success) << "\n";
    os << "ancilla_photons " << r.ancilla_photons << "\n";
    os << "success_ratio " << fmt(r.success_ratio) << "\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement-assisted optical detection of single-photon presence"};
    app.require_subcommand(1);

    SignalFlags presence_signal;
    bool vacuum = false;
    bool no_feed_forward = false;
    long long presence_shots = 0;
    std::uint64_t presence_seed = 0;
    std::string presence_out;
    auto* presence = app.add_subcommand("presence", "Heralded presence detection at phi = pi/4");
    add_signal_flags(presence, presence_signal);
    auto* vac_opt = presence->add_flag("--vacuum", vacuum, "Run with no signal photon");
    presence->add_flag("--no-feed-forward", no_feed_forward,
                       "Discard the unequal-outcome coincidence branches");
    auto* shots_opt =
        presence->add_option("--shots", presence_shots, "Sample this many detection events")
            ->check(CLI::PositiveNumber);
    auto* seed_opt = presence->add_option("--seed", presence_seed, "Generator seed for --shots");
    shots_opt->needs(seed_opt);
    presence->add_option("--out", presence_out, "Write the report to this path");
    vac_opt->excludes(presence->get_option("--theta"));
    vac_opt->excludes(presence->get_option("--phase"));

    SignalFlags weak_signal;
    double weak_phi = 0.0;
    std::string weak_out;
    auto* weak = app.add_subcommand("weak", "Tunable measurement at analyzer angle phi");
    add_signal_flags(weak, weak_signal);
    weak->add_option("--phi", weak_phi, "Analyzer rotation angle in radians")->required();
    weak->add_option("--out", weak_out, "Write the report to this path");

    SignalFlags sweep_signal;
    std::string sweep_grid;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "CSV of metrics over a phi grid");
    add_signal_flags(sweep, sweep_signal);
    sweep->add_option("--phi-grid", sweep_grid, "Grid as start:stop:steps (steps >= 2)")
        ->required();
    sweep->add_option("--out", sweep_out, "Write the CSV to this path");

    SignalFlags det_signal;
    bool haar_average = false;
    long long det_shots = 0;
    std::uint64_t det_seed = 0;
    std::string det_out;
    auto* det = app.add_subcommand("deterministic", "Always-conclusive mode");
    add_signal_flags(det, det_signal);
    auto* haar_opt = det->add_flag("--haar-average", haar_average,
                                   "Print the input-averaged fidelity instead of one run");
    auto* det_shots_opt =
        det->add_option("--shots", det_shots, "Sample this many detection events")
            ->check(CLI::PositiveNumber);
    auto* det_seed_opt = det->add_option("--seed", det_seed, "Generator seed for --shots");
    det_shots_opt->needs(det_seed_opt);
    det->add_option("--out", det_out, "Write the report to this path");
    haar_opt->excludes(det->get_option("--theta"));
    haar_opt->excludes(det->get_option("--phase"));
    haar_opt->excludes(det_shots_opt);

    std::string verify_out;
    auto* verify = app.add_subcommand("verify", "Check the network against the reference unitary");
    verify->add_option("--out", verify_out, "Write the report to this path");

    std::string compare_out;
    auto* compare = app.add_subcommand("compare", "Success-rate comparison with heralded CNOTs");
    compare->add_option("--out", compare_out, "Write the report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    }

    try {
        if (presence->parsed()) {
            std::optional<qnd::SignalQubit> signal;
            if (!vacuum) {
                signal = qnd::SignalQubit::bloch(presence_signal.theta, presence_signal.phase);
            }
            std::optional<long long> shots;
            if (*shots_opt) shots = presence_shots;
            emit(run_presence(signal, !no_feed_forward, shots, presence_seed), presence_out);
        } else if (weak->parsed()) {
            qnd::CircuitConfig config{weak_phi, true, qnd::Regime::kWeak};
            config.validate();
            emit(run_weak(qnd::SignalQubit::bloch(weak_signal.theta, weak_signal.phase),
                          weak_phi),
                 weak_out);
        } else if (sweep->parsed()) {
            emit(run_sweep(qnd::SignalQubit::bloch(sweep_signal.theta, sweep_signal.phase),
                           parse_grid(sweep_grid)),
                 sweep_out);
        } else if (det->parsed()) {
            if (haar_average) {
                emit("haar_average_fidelity " +
                         fmt(qnd::haar_average_fidelity(qnd::Regime::kDeterministic)) + "\n",
                     det_out);
            } else {
                std::optional<long long> shots;
                if (*det_shots_opt) shots = det_shots;
                emit(run_deterministic(
                         qnd::SignalQubit::bloch(det_signal.theta, det_signal.phase), shots,
                         det_seed),
                     det_out);
            }
        } else if (verify->parsed()) {
            qnd::VerificationReport report;
            emit(run_verify(report), verify_out);
            if (!report.passed) return kExitVerificationFailure;
        } else if (compare->parsed()) {
            emit(run_compare(), compare_out);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    }
    return kExitOk;
}
