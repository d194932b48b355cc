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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnd/fock.hpp"

namespace qnd {

/// Spatial paths of the three-photon network. The signal enters on path 0,
/// which is also the exit port; the two ancilla photons enter on paths 1
/// and 2, which end at the detector regions D1 and D2.
inline constexpr int kSignalPath = 0;
inline constexpr int kD1Path = 1;
inline constexpr int kD2Path = 2;

/// Fixed mode order (0,H),(0,V),(1,H),(1,V),(2,H),(2,V).
ModeRegistry circuit_registry();

/// Polarization qubit (alpha, beta) on the H/V amplitude pair.
struct SignalQubit {
    Complex alpha;
    Complex beta;

    SignalQubit(Complex a, Complex b);

    /// alpha = cos(theta/2), beta = e^{i phase} sin(theta/2); normalized by
    /// construction for any real angles.
    static SignalQubit bloch(double theta, double phase);

    /// |<this|other>|^2.
    double fidelity(const SignalQubit& other) const;
};

enum class Regime { kPresence, kWeak, kDeterministic };

/// Run parameters. Defaults per regime: presence fixes phi = pi/4 and
/// feed_forward on; weak ignores feed_forward (the outcome-conditioned
/// correction is always part of the protocol); deterministic fixes both.
struct CircuitConfig {
    double phi = 0.0;
    bool feed_forward = true;
    Regime regime = Regime::kPresence;

    void validate() const;  // throws std::invalid_argument on non-finite phi
};

/// One exclusive detection pattern with its conditional output.
struct OutcomeRecord {
    std::string label;
    int d1_photons = 0;
    int d2_photons = 0;
    double probability = 0.0;
    /// Pure polarization state of the photon leaving the exit port, after
    /// the listed correction; absent when no photon exits in this branch
    /// or the branch has zero probability.
    std::optional<SignalQubit> conditional_signal;
    std::string correction = "none";
    bool retained = false;
};

/// Signal (or no photon) joined with the (|HH>+|VV>)/sqrt2 ancilla pair.
FockVector prepare_input(const SignalQubit& signal);
FockVector prepare_vacuum_input();

/// Sends the state through the fixed element network. The composed action
/// on creation operators is the permutation
///   (0,H)->(1,H)  (0,V)->(2,V)  (1,H)->(0,H)
///   (1,V)->(0,V)  (2,H)->(2,H)  (2,V)->(1,V)
/// so a lone H signal photon heralds at D1, a lone V signal photon at D2,
/// and the photon leaving path 0 is always the first ancilla.
FockVector propagate(const FockVector& input);

/// Rotates both detector mode pairs into the measurement basis at angle
/// phi. Detector H/V clicks afterwards are outcomes in the rotated basis;
/// at phi = pi/4 an H click is the antidiagonal outcome A = (H-V)/sqrt2
/// and a V click the diagonal outcome D = (H+V)/sqrt2.
FockVector rotate_analyzers(const FockVector& state, double phi);

/// Outcome-conditioned correction on the coincidence sector: flips the
/// sign of the exit-port V amplitude exactly on terms whose two detector
/// clicks carry different polarizations. Terms outside the
/// one-photon-per-detector sector pass through unchanged.
FockVector apply_outcome_correction(const FockVector& state);

/// Reads the exit-port qubit off a conditional state in which path 0
/// factorizes from the (fixed or traced-out) detector occupations.
/// Throws std::logic_error when no single-photon factor exists.
SignalQubit extract_signal(const FockVector& conditional);

struct PresenceResult {
    std::vector<OutcomeRecord> records;
    double coincidence_probability = 0.0;
    double success_probability = 0.0;
    /// Minimum fidelity between the input and a retained branch output;
    /// 1 when nothing is retained (vacuum input).
    double min_retained_fidelity = 1.0;
    double total_probability = 0.0;
};

/// Presence detection: analyzers fixed at pi/4, herald = one photon at
/// each detector. With feed_forward every coincidence branch is retained
/// and corrected; without it only the equal-outcome branches survive.
/// Pass std::nullopt for the no-photon run.
PresenceResult detect_presence(const std::optional<SignalQubit>& signal, bool feed_forward);

struct WeakMeasurementResult {
    double post_select_probability = 0.0;
    /// Joint distribution over (exit-port polarization, D1 click) within
    /// the post-selected, corrected ensemble. Rows H/V, columns H/V in the
    /// rotated detector basis.
    Eigen::Matrix2d joint = Eigen::Matrix2d::Zero();
    /// Exit-port state of the corrected ensemble, traced over detectors.
    DensityMatrix rho_out;
    /// The four detector click patterns, probabilities conditional on
    /// post-selection.
    std::vector<OutcomeRecord> outcomes;
    /// Post-selected, corrected, renormalized three-photon state.
    FockVector corrected_state;
};

/// Tunable measurement: post-select on coincidence, rotate analyzers by
/// phi, apply the outcome-conditioned correction, then tabulate.
WeakMeasurementResult weak_measure(const SignalQubit& signal, double phi);

struct DeterministicResult {
    std::vector<OutcomeRecord> records;
    double average_fidelity = 0.0;
    double total_probability = 0.0;
};

/// Always-conclusive mode: coincidence branches are handled as in
/// presence detection; a double click at D1 (D2) heralds a V (H) photon
/// at the exit port, which an H<->V plate maps to the likelier input.
DeterministicResult deterministic_run(const SignalQubit& signal);

}  // namespace qnd
