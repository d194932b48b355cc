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

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "qnd/fock.hpp"

namespace qnd {

/// Joint state of the signal sector {vacuum, H, V} and one ancilla qubit
/// {H, V}, with basis order
///   (vac,H) (vac,V) (H,H) (H,V) (V,H) (V,V).
using IdealJointState = Eigen::Matrix<Complex, 6, 1>;

inline constexpr int kIdealDim = 6;

/// Reference unitary: identity on the vacuum sector, ancilla flip on the
/// photon sector, signal polarization untouched. Involutory.
Eigen::Matrix<Complex, 6, 6> ideal_qnd_matrix();

/// Applies the reference unitary; the input must be normalized to 1e-12.
IdealJointState ideal_qnd(const IdealJointState& state);

/// Partial trace over the ancilla: 3x3 matrix on {vacuum, H, V}.
Eigen::Matrix3cd reduce_signal(const IdealJointState& state);

struct VerificationReport {
    double max_deviation = 0.0;
    double photon_coincidence_probability = 0.0;
    double vacuum_coincidence_probability = 0.0;
    bool herald_consistent = false;
    bool passed = false;
    int cases = 0;
    std::string worst_case;
};

/// Drives the optical scheme and the reference unitary side by side on
/// vacuum, the H/V basis states, two fixed superpositions, and
/// `random_inputs` seeded random qubits. For photon inputs the deviation
/// is the infidelity 1 - F between the input and every retained corrected
/// branch; the herald check requires coincidence probability 1/2 for
/// photons and exactly 0 for vacuum, mirroring the ancilla flip of the
/// reference.
VerificationReport verify_against_optical(double tolerance, int random_inputs = 100,
                                          std::uint64_t seed = 0x51f0d1a7u);

struct ResourceComparison {
    double entanglement_assisted_success = 0.0;
    double single_cnot_success = 0.0;
    double consecutive_cnot_success = 0.0;
    int ancilla_photons = 0;
    double success_ratio = 0.0;
};

/// Success-rate and resource tally of this scheme against the same
/// operation built from two consecutive heralded CNOT gates.
ResourceComparison resource_comparison();

}  // namespace qnd
