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

#include <cmath>
#include <random>

#include "doctest.h"
#include "qnd/logical.hpp"
#include "qnd/sampling.hpp"

using namespace qnd;

namespace {

IdealJointState unit(int index) {
    IdealJointState s = IdealJointState::Zero();
    s(index) = Complex{1.0, 0.0};
    return s;
}

}  // namespace

TEST_CASE("reference unitary flips the ancilla only when a photon is present") {
    SUBCASE("vacuum sector is fixed") {
        const IdealJointState out = ideal_qnd(unit(0));
        CHECK(std::abs(out(0) - Complex{1.0, 0.0}) < 1e-15);
        CHECK(out.norm() == doctest::Approx(1.0));
    }
    SUBCASE("a photon toggles the ancilla and keeps its polarization") {
        const IdealJointState hh = ideal_qnd(unit(2));
        CHECK(std::abs(hh(3) - Complex{1.0, 0.0}) < 1e-15);
        const IdealJointState vv = ideal_qnd(unit(5));
        CHECK(std::abs(vv(4) - Complex{1.0, 0.0}) < 1e-15);
    }
    SUBCASE("a polarization superposition rides through unchanged") {
        IdealJointState in = IdealJointState::Zero();
        in(2) = Complex{0.6, 0.0};  // (H, ancilla H)
        in(4) = Complex{0.0, 0.8};  // (V, ancilla H)
        const IdealJointState out = ideal_qnd(in);
        CHECK(std::abs(out(3) - Complex{0.6, 0.0}) < 1e-15);
        CHECK(std::abs(out(5) - Complex{0.0, 0.8}) < 1e-15);
    }
    SUBCASE("non-normalized inputs are rejected") {
        IdealJointState in = IdealJointState::Zero();
        in(0) = Complex{2.0, 0.0};
        CHECK_THROWS_AS(ideal_qnd(in), std::invalid_argument);
    }
}

TEST_CASE("reference unitary is an involution") {
    const Eigen::Matrix<Complex, 6, 6> u = ideal_qnd_matrix();
    CHECK((u * u - Eigen::Matrix<Complex, 6, 6>::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((u * u.adjoint() - Eigen::Matrix<Complex, 6, 6>::Identity()).cwiseAbs().maxCoeff() <
          1e-15);
}

TEST_CASE("reference unitary preserves sector-pure reduced states") {
    std::mt19937_64 gen(0x10adull);

    SUBCASE("photon-sector inputs") {
        for (int trial = 0; trial < 20; ++trial) {
            const SignalQubit q = random_haar_qubit(gen);
            const double anc = canonical_double(gen);
            IdealJointState in = IdealJointState::Zero();
            in(2) = q.alpha * std::sqrt(anc);
            in(3) = q.alpha * std::sqrt(1.0 - anc);
            in(4) = q.beta * std::sqrt(anc);
            in(5) = q.beta * std::sqrt(1.0 - anc);
            const Eigen::Matrix3cd before = reduce_signal(in);
            const Eigen::Matrix3cd after = reduce_signal(ideal_qnd(in));
            CHECK((before - after).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
    SUBCASE("vacuum-sector inputs") {
        IdealJointState in = IdealJointState::Zero();
        in(0) = Complex{0.6, 0.0};
        in(1) = Complex{0.0, 0.8};
        const Eigen::Matrix3cd before = reduce_signal(in);
        const Eigen::Matrix3cd after = reduce_signal(ideal_qnd(in));
        CHECK((before - after).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(std::abs(before(0, 0) - Complex{1.0, 0.0}) < 1e-14);
    }
}

TEST_CASE("reduced signal state is a valid density matrix") {
    std::mt19937_64 gen(0xdadaull);
    for (int trial = 0; trial < 10; ++trial) {
        IdealJointState in;
        for (int i = 0; i < kIdealDim; ++i) {
            in(i) = Complex{2.0 * canonical_double(gen) - 1.0,
                            2.0 * canonical_double(gen) - 1.0};
        }
        in /= in.norm();
        const Eigen::Matrix3cd rho = reduce_signal(in);
        CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("the optical network realizes the reference operation") {
    const VerificationReport report = verify_against_optical(1e-10, 40, 0x51f0d1a7u);
    CHECK(report.passed);
    CHECK(report.max_deviation < 1e-10);
    CHECK(report.herald_consistent);
    CHECK(report.vacuum_coincidence_probability == 0.0);
    CHECK(std::abs(report.photon_coincidence_probability - 0.5) < 1e-12);
    CHECK(report.cases == 45);
}

TEST_CASE("resource comparison against chained heralded gates") {
    const ResourceComparison rc = resource_comparison();
    CHECK(rc.entanglement_assisted_success == doctest::Approx(0.5));
    CHECK(rc.single_cnot_success == doctest::Approx(0.25));
    CHECK(rc.consecutive_cnot_success == doctest::Approx(0.0625));
    CHECK(rc.ancilla_photons == 2);
    CHECK(rc.success_ratio == doctest::Approx(8.0));
}
