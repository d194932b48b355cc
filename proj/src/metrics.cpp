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

#include "qnd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnd/sampling.hpp"

namespace qnd {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// Amplitude of the signal qubit on a dual-rail basis label.
Complex qubit_component(const SignalQubit& psi, const OccupationTuple& label) {
    if (label == OccupationTuple{1, 0}) return psi.alpha;
    if (label == OccupationTuple{0, 1}) return psi.beta;
    throw std::invalid_argument("qubit_component: basis label is not a dual-rail qubit state");
}

}  // namespace

double binary_entropy_bits(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double von_neumann_entropy_bits(const DensityMatrix& rho) {
    rho.validate();
    const Eigen::VectorXd ev = rho.eigenvalues();
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] > 1e-12) s -= xlog2x(ev[i]);
    }
    return s;
}

double state_fidelity(const DensityMatrix& rho, const SignalQubit& psi) {
    const auto& basis = rho.basis();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = qubit_component(psi, basis[i]);
    }
    return (v.adjoint() * rho.entries() * v).value().real();
}

CoherentInfoResult coherent_information_closed(const SignalQubit& signal, double phi) {
    const double a = std::norm(signal.alpha);
    const double b = std::norm(signal.beta);
    const double s2 = std::sin(2.0 * phi);
    const double sin4 = s2 * s2 * s2 * s2;
    double d = 1.0 - 4.0 * a * b * (1.0 - sin4);
    d = std::min(1.0, std::max(0.0, d));

    CoherentInfoResult r;
    r.d_value = d;
    r.lambda1 = (1.0 + std::sqrt(d)) / 2.0;
    r.lambda2 = 1.0 - r.lambda1;
    r.i_c = binary_entropy_bits(r.lambda1);
    return r;
}

double coherent_information_simulated(const SignalQubit& signal, double phi) {
    return von_neumann_entropy_bits(weak_measure(signal, phi).rho_out);
}

double fidelity_closed(const SignalQubit& signal, double phi) {
    const double a = std::norm(signal.alpha);
    const double b = std::norm(signal.beta);
    const double s2 = std::sin(2.0 * phi);
    return a * a + b * b + 2.0 * a * b * s2 * s2;
}

double fidelity_simulated(const SignalQubit& signal, double phi) {
    return state_fidelity(weak_measure(signal, phi).rho_out, signal);
}

void JointDistribution::validate() const {
    if (p.minCoeff() < 0.0) {
        throw std::logic_error("JointDistribution: negative probability");
    }
    if (std::abs(p.sum() - 1.0) > 1e-12) {
        throw std::logic_error("JointDistribution: probabilities do not sum to 1");
    }
}

double mutual_information_bits(const JointDistribution& joint) {
    joint.validate();
    const Eigen::Vector2d row = joint.p.rowwise().sum();
    const Eigen::Vector2d col = joint.p.colwise().sum();
    double info = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double pij = joint.p(i, j);
            if (pij > 0.0) info += pij * std::log2(pij / (row[i] * col[j]));
        }
    }
    return std::max(0.0, info);
}

double mutual_information_closed(const SignalQubit& signal, double phi) {
    const double a = std::norm(signal.alpha);
    const double b = std::norm(signal.beta);
    const double c2 = std::cos(phi) * std::cos(phi);
    const double s2 = std::sin(phi) * std::sin(phi);
    const double q = a * c2 + b * s2;  // D1 clicks H
    const double r = a * s2 + b * c2;  // D1 clicks V
    double info = 0.0;
    if (a * c2 > 0.0) info += a * c2 * std::log2(c2 / q);
    if (a * s2 > 0.0) info += a * s2 * std::log2(s2 / r);
    if (b * s2 > 0.0) info += b * s2 * std::log2(s2 / q);
    if (b * c2 > 0.0) info += b * c2 * std::log2(c2 / r);
    return std::max(0.0, info);
}

JointDistribution joint_distribution_simulated(const SignalQubit& signal, double phi) {
    JointDistribution joint;
    joint.p = weak_measure(signal, phi).joint;
    return joint;
}

double holevo_bound_bits(const SignalQubit& signal) {
    return binary_entropy_bits(std::norm(signal.alpha));
}

Eigen::Matrix3d correlation_tensor(const FockVector& state) {
    const auto& reg = state.registry();
    const std::size_t idx[3][2] = {
        {reg.index_of({kSignalPath, Pol::H}), reg.index_of({kSignalPath, Pol::V})},
        {reg.index_of({kD1Path, Pol::H}), reg.index_of({kD1Path, Pol::V})},
        {reg.index_of({kD2Path, Pol::H}), reg.index_of({kD2Path, Pol::V})}};

    // Qubit amplitudes psi[i][j][k], index 0 = H, over (exit, D1, D2).
    Complex psi[2][2][2] = {};
    for (const auto& [t, a] : state.terms()) {
        int q[3];
        for (int p = 0; p < 3; ++p) {
            const int h = t[idx[p][0]];
            const int v = t[idx[p][1]];
            if (h + v != 1) {
                throw std::invalid_argument(
                    "correlation_tensor: state must hold one photon per path");
            }
            q[p] = v;
        }
        psi[q[0]][q[1]][q[2]] = a;
    }

    Eigen::Matrix2cd sigma[3];
    sigma[0] << 0, 1, 1, 0;
    sigma[1] << 0, Complex{0, -1}, Complex{0, 1}, 0;
    sigma[2] << 1, 0, 0, -1;

    Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
    for (int m = 0; m < 3; ++m) {
        for (int n = 0; n < 3; ++n) {
            Complex e{0.0, 0.0};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        for (int i2 = 0; i2 < 2; ++i2)
                            for (int j2 = 0; j2 < 2; ++j2)
                                e += std::conj(psi[i][j][k]) * sigma[m](i, i2) *
                                     sigma[n](j, j2) * psi[i2][j2][k];
            t(m, n) = e.real();
        }
    }
    return t;
}

double tzz_closed(double phi) { return std::cos(2.0 * phi); }

double tzz_from_joint(const JointDistribution& joint) {
    return joint.p(0, 0) + joint.p(1, 1) - joint.p(0, 1) - joint.p(1, 0);
}

namespace {

double deterministic_state_fidelity(double t) {
    return 0.5 + (t * t + (1.0 - t) * (1.0 - t)) / 2.0;
}

}  // namespace

double haar_average_fidelity(Regime regime) {
    switch (regime) {
        case Regime::kPresence:
            return 1.0;
        case Regime::kDeterministic:
            // Simpson's rule on [0,1], exact for the quadratic integrand.
            return (deterministic_state_fidelity(0.0) + 4.0 * deterministic_state_fidelity(0.5) +
                    deterministic_state_fidelity(1.0)) /
                   6.0;
        case Regime::kWeak:
            break;
    }
    throw std::invalid_argument("haar_average_fidelity: no single figure of merit for this regime");
}

double haar_average_fidelity_mc(Regime regime, long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("haar_average_fidelity_mc: samples must be >= 1");
    if (regime == Regime::kPresence) return 1.0;
    if (regime != Regime::kDeterministic) {
        throw std::invalid_argument("haar_average_fidelity_mc: unsupported regime");
    }
    std::mt19937_64 gen(seed);
    double sum = 0.0;
    for (long long i = 0; i < samples; ++i) {
        const SignalQubit q = random_haar_qubit(gen);
        sum += deterministic_state_fidelity(std::norm(q.alpha));
    }
    return sum / static_cast<double>(samples);
}

std::vector<TradeoffPoint> tradeoff_curve(const SignalQubit& signal,
                                          const std::vector<double>& phi_grid) {
    if (phi_grid.empty()) throw std::invalid_argument("tradeoff_curve: empty grid");
    std::vector<TradeoffPoint> points;
    points.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        TradeoffPoint p;
        p.phi = phi;
        p.fidelity = fidelity_closed(signal, phi);
        p.i_c = coherent_information_closed(signal, phi).i_c;
        p.i_mutual = mutual_information_closed(signal, phi);
        p.t_zz = tzz_closed(phi);
        points.push_back(p);
    }
    return points;
}

}  // namespace qnd
