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
#include <vector>

#include <Eigen/Dense>

#include "qnd/circuit.hpp"
#include "qnd/fock.hpp"

namespace qnd {

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 := 0.
double binary_entropy_bits(double p);

/// Base-2 von Neumann entropy; eigenvalues below 1e-12 contribute 0.
double von_neumann_entropy_bits(const DensityMatrix& rho);

/// <psi|rho|psi> for a dual-rail qubit density matrix.
double state_fidelity(const DensityMatrix& rho, const SignalQubit& psi);

/// Spectrum data of the exit-port state. lambda1 >= lambda2, summing to 1
/// by construction; i_c is the binary entropy of lambda1 in bits.
struct CoherentInfoResult {
    double lambda1 = 1.0;
    double lambda2 = 0.0;
    double d_value = 1.0;
    double i_c = 0.0;
};

/// Closed form: d = 1 - 4|alpha|^2 |beta|^2 (1 - sin^4 2phi),
/// lambda = (1 +- sqrt(d)) / 2.
CoherentInfoResult coherent_information_closed(const SignalQubit& signal, double phi);

/// Entropy of the simulated exit-port density matrix.
double coherent_information_simulated(const SignalQubit& signal, double phi);

/// |alpha|^4 + |beta|^4 + 2 |alpha|^2 |beta|^2 sin^2 2phi.
double fidelity_closed(const SignalQubit& signal, double phi);

/// Overlap of the simulated exit-port state with the input.
double fidelity_simulated(const SignalQubit& signal, double phi);

/// Joint distribution over (exit-port polarization, D1 click), rows H/V,
/// columns H/V in the rotated detector basis. Entries sum to 1.
struct JointDistribution {
    Eigen::Matrix2d p = Eigen::Matrix2d::Zero();

    void validate() const;  // non-negative entries summing to 1 +- 1e-12
};

double mutual_information_bits(const JointDistribution& joint);

/// Explicit four-term expression with c = cos phi, s = sin phi:
///   |a|^2 c^2 log2(c^2/q) + |a|^2 s^2 log2(s^2/r)
/// + |b|^2 s^2 log2(s^2/q) + |b|^2 c^2 log2(c^2/r)
/// where q, r are the D1-click marginals.
double mutual_information_closed(const SignalQubit& signal, double phi);

JointDistribution joint_distribution_simulated(const SignalQubit& signal, double phi);

/// Binary entropy of |alpha|^2: entropy of the ensemble {H w.p. |alpha|^2,
/// V w.p. |beta|^2}, the ceiling for every information measure here.
double holevo_bound_bits(const SignalQubit& signal);

/// Pauli correlation matrix T(m,n) = <sigma_m (exit) sigma_n (D1)> of a
/// three-photon state holding one photon per path, axes ordered x, y, z.
Eigen::Matrix3d correlation_tensor(const FockVector& state);

double tzz_closed(double phi);  // cos 2phi

/// p(H,H) + p(V,V) - p(H,V) - p(V,H).
double tzz_from_joint(const JointDistribution& joint);

/// Uniform average over pure input qubits. The presence regime always
/// returns the input, so its average is exactly 1. The deterministic
/// per-state fidelity 1/2 + (|alpha|^4 + |beta|^4)/2 is quadratic in
/// t = |alpha|^2, which is uniform on [0,1] under the Haar measure, so
/// Simpson's rule integrates it exactly, giving 5/6. The weak regime has
/// no single figure of merit; requesting it throws std::invalid_argument.
double haar_average_fidelity(Regime regime);

/// Monte Carlo cross-check of the same average with a seeded generator.
double haar_average_fidelity_mc(Regime regime, long long samples, std::uint64_t seed);

struct TradeoffPoint {
    double phi = 0.0;
    double fidelity = 0.0;
    double i_c = 0.0;
    double i_mutual = 0.0;
    double t_zz = 0.0;
};

/// Closed-form metrics on a phi grid, one point per grid entry.
std::vector<TradeoffPoint> tradeoff_curve(const SignalQubit& signal,
                                          const std::vector<double>& phi_grid);

}  // namespace qnd
