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

#include "qnd/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "qnd/elements.hpp"

namespace qnd {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

std::vector<ModeLabel> pair_modes(int path) {
    return {{path, Pol::H}, {path, Pol::V}};
}

std::vector<ModeLabel> pbs_modes(int path_a, int path_b) {
    return {{path_a, Pol::H}, {path_a, Pol::V}, {path_b, Pol::H}, {path_b, Pol::V}};
}

}  // namespace

ModeRegistry circuit_registry() {
    return ModeRegistry::dual_rail({kSignalPath, kD1Path, kD2Path});
}

SignalQubit::SignalQubit(Complex a, Complex b) : alpha(a), beta(b) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
        throw std::invalid_argument("SignalQubit: |alpha|^2 + |beta|^2 must equal 1");
    }
}

SignalQubit SignalQubit::bloch(double theta, double phase) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return SignalQubit(Complex{c, 0.0}, std::polar(s, phase));
}

double SignalQubit::fidelity(const SignalQubit& other) const {
    return std::norm(std::conj(alpha) * other.alpha + std::conj(beta) * other.beta);
}

void CircuitConfig::validate() const {
    if (!std::isfinite(phi)) {
        throw std::invalid_argument("CircuitConfig: phi must be finite");
    }
}

FockVector prepare_input(const SignalQubit& signal) {
    FockVector sig(ModeRegistry::dual_rail({kSignalPath}));
    sig.add_term({1, 0}, signal.alpha);
    sig.add_term({0, 1}, signal.beta);

    FockVector bell(ModeRegistry::dual_rail({kD1Path, kD2Path}));
    const double r = 1.0 / std::sqrt(2.0);
    bell.add_term({1, 0, 1, 0}, r);
    bell.add_term({0, 1, 0, 1}, r);

    return tensor(sig, bell);
}

FockVector prepare_vacuum_input() {
    FockVector empty(ModeRegistry::dual_rail({kSignalPath}));
    empty.add_term({0, 0}, 1.0);

    FockVector bell(ModeRegistry::dual_rail({kD1Path, kD2Path}));
    const double r = 1.0 / std::sqrt(2.0);
    bell.add_term({1, 0, 1, 0}, r);
    bell.add_term({0, 1, 0, 1}, r);

    return tensor(empty, bell);
}

FockVector propagate(const FockVector& input) {
    const Eigen::Matrix4cd split_01 = pbs(kSignalPath, kD1Path);
    const Eigen::Matrix4cd split_12 = pbs(kD1Path, kD2Path);
    const JonesMatrix swap = hwp(kQuarterPi);

    FockVector s = apply_element(input, pbs_modes(kSignalPath, kD1Path), split_01);
    s = apply_element(s, pair_modes(kSignalPath), swap);
    s = apply_element(s, pair_modes(kD1Path), swap);
    s = apply_element(s, pbs_modes(kSignalPath, kD1Path), split_01);
    s = apply_element(s, pair_modes(kSignalPath), swap);
    s = apply_element(s, pair_modes(kD1Path), swap);
    s = apply_element(s, pbs_modes(kD1Path, kD2Path), split_12);
    return s;
}

FockVector rotate_analyzers(const FockVector& state, double phi) {
    const JonesMatrix r = basis_rotation(-phi);
    FockVector s = apply_element(state, pair_modes(kD1Path), r);
    return apply_element(s, pair_modes(kD2Path), r);
}

FockVector apply_outcome_correction(const FockVector& state) {
    const auto& reg = state.registry();
    const std::size_t out_v = reg.index_of({kSignalPath, Pol::V});
    const std::size_t d1_h = reg.index_of({kD1Path, Pol::H});
    const std::size_t d1_v = reg.index_of({kD1Path, Pol::V});
    const std::size_t d2_h = reg.index_of({kD2Path, Pol::H});
    const std::size_t d2_v = reg.index_of({kD2Path, Pol::V});

    FockVector out(reg, state.multi_sector());
    for (const auto& [t, a] : state.terms()) {
        const bool one_each = t[d1_h] + t[d1_v] == 1 && t[d2_h] + t[d2_v] == 1;
        const bool differ = one_each && t[d1_h] != t[d2_h];
        out.add_term(t, differ && t[out_v] == 1 ? -a : a);
    }
    out.set_norm_tracked(state.norm_tracked());
    return out;
}

SignalQubit extract_signal(const FockVector& conditional) {
    const auto& reg = conditional.registry();
    const std::size_t out_h = reg.index_of({kSignalPath, Pol::H});
    const std::size_t out_v = reg.index_of({kSignalPath, Pol::V});

    // Amplitude pair (H, V) of the exit port, grouped by the occupations
    // of every other mode.
    std::map<OccupationTuple, std::pair<Complex, Complex>> groups;
    for (const auto& [t, a] : conditional.terms()) {
        if (t[out_h] + t[out_v] != 1) {
            throw std::logic_error("extract_signal: exit port does not hold exactly one photon");
        }
        OccupationTuple rest;
        rest.reserve(t.size() - 2);
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i != out_h && i != out_v) rest.push_back(t[i]);
        }
        auto& [h, v] = groups[rest];
        (t[out_h] == 1 ? h : v) += a;
    }
    if (groups.empty()) {
        throw std::logic_error("extract_signal: empty state");
    }

    auto weight = [](const std::pair<Complex, Complex>& p) {
        return std::norm(p.first) + std::norm(p.second);
    };
    auto best = groups.begin();
    for (auto it = groups.begin(); it != groups.end(); ++it) {
        if (weight(it->second) > weight(best->second)) best = it;
    }
    const Complex h0 = best->second.first;
    const Complex v0 = best->second.second;
    for (const auto& [rest, hv] : groups) {
        if (std::abs(hv.first * v0 - hv.second * h0) > 1e-10) {
            throw std::logic_error("extract_signal: exit port entangled with detector modes");
        }
    }
    const double n = std::sqrt(std::norm(h0) + std::norm(v0));
    return SignalQubit(h0 / n, v0 / n);
}

namespace {

char rotated_outcome_letter(Pol click) {
    // At pi/4 a V click projects onto the diagonal state, an H click onto
    // the antidiagonal one.
    return click == Pol::V ? 'D' : 'A';
}

std::map<ModeLabel, int> click_pattern(Pol d1, Pol d2) {
    return {{{kD1Path, Pol::H}, d1 == Pol::H ? 1 : 0},
            {{kD1Path, Pol::V}, d1 == Pol::V ? 1 : 0},
            {{kD2Path, Pol::H}, d2 == Pol::H ? 1 : 0},
            {{kD2Path, Pol::V}, d2 == Pol::V ? 1 : 0}};
}

}  // namespace

PresenceResult detect_presence(const std::optional<SignalQubit>& signal, bool feed_forward) {
    const bool photon = signal.has_value();
    const FockVector input = photon ? prepare_input(*signal) : prepare_vacuum_input();
    const FockVector propagated = propagate(input);
    const FockVector rotated = rotate_analyzers(propagated, kQuarterPi);

    PresenceResult result;

    const std::pair<Pol, Pol> clicks[] = {
        {Pol::V, Pol::V}, {Pol::V, Pol::H}, {Pol::H, Pol::V}, {Pol::H, Pol::H}};
    for (const auto& [d1, d2] : clicks) {
        OutcomeRecord rec;
        rec.label = std::string() + rotated_outcome_letter(d1) + rotated_outcome_letter(d2);
        rec.d1_photons = 1;
        rec.d2_photons = 1;
        const ProjectionResult pr = project_counts(rotated, click_pattern(d1, d2));
        rec.probability = pr.probability;
        result.coincidence_probability += pr.probability;
        if (pr.possible) {
            SignalQubit out = extract_signal(pr.conditional);
            const bool differ = d1 != d2;
            if (differ && feed_forward) {
                out = SignalQubit(out.alpha, -out.beta);
                rec.correction = "V->-V";
            }
            rec.retained = !differ || feed_forward;
            rec.conditional_signal = out;
        }
        result.records.push_back(std::move(rec));
    }

    struct FailureClass {
        std::string label;
        int d1, d2;
    };
    const std::vector<FailureClass> classes =
        photon ? std::vector<FailureClass>{{"double_D1", 2, 0}, {"double_D2", 0, 2}}
               : std::vector<FailureClass>{{"single_D1", 1, 0}, {"single_D2", 0, 1}};
    for (const auto& fc : classes) {
        OutcomeRecord rec;
        rec.label = fc.label;
        rec.d1_photons = fc.d1;
        rec.d2_photons = fc.d2;
        const ProjectionResult pr =
            project_path_counts(propagated, {{kD1Path, fc.d1}, {kD2Path, fc.d2}});
        rec.probability = pr.probability;
        if (pr.possible) rec.conditional_signal = extract_signal(pr.conditional);
        result.records.push_back(std::move(rec));
    }

    for (const auto& rec : result.records) {
        result.total_probability += rec.probability;
        if (rec.retained) {
            result.success_probability += rec.probability;
            if (photon && rec.conditional_signal) {
                result.min_retained_fidelity = std::min(
                    result.min_retained_fidelity, signal->fidelity(*rec.conditional_signal));
            }
        }
    }
    return result;
}

WeakMeasurementResult weak_measure(const SignalQubit& signal, double phi) {
    const FockVector propagated = propagate(prepare_input(signal));
    const ProjectionResult coincidence =
        project_path_counts(propagated, {{kD1Path, 1}, {kD2Path, 1}});

    WeakMeasurementResult result;
    result.post_select_probability = coincidence.probability;
    const FockVector corrected =
        apply_outcome_correction(rotate_analyzers(coincidence.conditional, phi));

    result.rho_out = reduce(corrected, pair_modes(kSignalPath));

    const Pol pols[] = {Pol::H, Pol::V};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const std::map<ModeLabel, int> pattern = {
                {{kSignalPath, Pol::H}, i == 0 ? 1 : 0},
                {{kSignalPath, Pol::V}, i == 0 ? 0 : 1},
                {{kD1Path, Pol::H}, j == 0 ? 1 : 0},
                {{kD1Path, Pol::V}, j == 0 ? 0 : 1}};
            result.joint(i, j) = project_counts(corrected, pattern).probability;
        }
    }

    for (Pol d1 : pols) {
        for (Pol d2 : pols) {
            OutcomeRecord rec;
            rec.label = std::string() + (d1 == Pol::H ? 'H' : 'V') + (d2 == Pol::H ? 'H' : 'V');
            rec.d1_photons = 1;
            rec.d2_photons = 1;
            const ProjectionResult pr = project_counts(corrected, click_pattern(d1, d2));
            rec.probability = pr.probability;
            rec.correction = d1 != d2 ? "V->-V" : "none";
            rec.retained = true;
            if (pr.possible) rec.conditional_signal = extract_signal(pr.conditional);
            result.outcomes.push_back(std::move(rec));
        }
    }

    result.corrected_state = corrected;
    return result;
}

DeterministicResult deterministic_run(const SignalQubit& signal) {
    DeterministicResult result;

    const PresenceResult presence = detect_presence(signal, true);
    OutcomeRecord coincidence;
    coincidence.label = "coincidence";
    coincidence.d1_photons = 1;
    coincidence.d2_photons = 1;
    coincidence.probability = presence.coincidence_probability;
    coincidence.correction = "V->-V on unequal outcomes";
    coincidence.retained = true;
    double coincidence_fidelity = presence.min_retained_fidelity;
    for (const auto& rec : presence.records) {
        if (rec.retained && rec.conditional_signal) {
            coincidence.conditional_signal = rec.conditional_signal;
            break;
        }
    }
    result.records.push_back(std::move(coincidence));
    result.average_fidelity += presence.coincidence_probability * coincidence_fidelity;

    const FockVector propagated = propagate(prepare_input(signal));
    struct DoubleClick {
        std::string label;
        int d1, d2;
    };
    for (const auto& dc : {DoubleClick{"double_D1", 2, 0}, DoubleClick{"double_D2", 0, 2}}) {
        OutcomeRecord rec;
        rec.label = dc.label;
        rec.d1_photons = dc.d1;
        rec.d2_photons = dc.d2;
        rec.correction = "H<->V";
        rec.retained = true;
        const ProjectionResult pr =
            project_path_counts(propagated, {{kD1Path, dc.d1}, {kD2Path, dc.d2}});
        rec.probability = pr.probability;
        if (pr.possible) {
            const FockVector flipped = apply_element(
                pr.conditional, pair_modes(kSignalPath), hwp(kQuarterPi));
            const SignalQubit out = extract_signal(flipped);
            rec.conditional_signal = out;
            result.average_fidelity += pr.probability * signal.fidelity(out);
        }
        result.records.push_back(std::move(rec));
    }

    for (const auto& rec : result.records) result.total_probability += rec.probability;
    return result;
}

}  // namespace qnd
