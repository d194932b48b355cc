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
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qnd/circuit.hpp"
#include "qnd/elements.hpp"
#include "qnd/sampling.hpp"

using namespace qnd;

namespace {

constexpr double kPi = std::numbers::pi;
const double kRoot2 = std::sqrt(2.0);

const OutcomeRecord& find_record(const std::vector<OutcomeRecord>& records,
                                 const std::string& label) {
    for (const auto& r : records) {
        if (r.label == label) return r;
    }
    throw std::logic_error("missing outcome record " + label);
}

}  // namespace

TEST_CASE("signal qubit guards normalization") {
    CHECK_THROWS_AS(SignalQubit(Complex{1.0, 0.0}, Complex{1.0, 0.0}), std::invalid_argument);
    const SignalQubit q = SignalQubit::bloch(1.1, 0.7);
    CHECK(std::norm(q.alpha) + std::norm(q.beta) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.fidelity(q) == doctest::Approx(1.0).epsilon(1e-14));
    const SignalQubit h(Complex{1.0, 0.0}, Complex{0.0, 0.0});
    const SignalQubit v(Complex{0.0, 0.0}, Complex{1.0, 0.0});
    CHECK(h.fidelity(v) == doctest::Approx(0.0));
}

TEST_CASE("config rejects non-finite angles") {
    CircuitConfig cfg;
    cfg.phi = std::nan("");
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.phi = 0.3;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("prepared inputs join the signal with the photon pair") {
    const SignalQubit q(Complex{0.6, 0.0}, Complex{0.8, 0.0});
    const FockVector in = prepare_input(q);
    REQUIRE(in.term_count() == 4);
    CHECK(std::abs(in.amplitude({1, 0, 1, 0, 1, 0}) - Complex{0.6 / kRoot2, 0.0}) < 1e-15);
    CHECK(std::abs(in.amplitude({0, 1, 0, 1, 0, 1}) - Complex{0.8 / kRoot2, 0.0}) < 1e-15);
    CHECK(in.norm() == doctest::Approx(1.0).epsilon(1e-14));

    const FockVector vac = prepare_vacuum_input();
    REQUIRE(vac.term_count() == 2);
    CHECK(vac.amplitude({0, 0, 1, 0, 1, 0}).real() == doctest::Approx(1.0 / kRoot2));
    CHECK(vac.amplitude({0, 0, 0, 1, 0, 1}).real() == doctest::Approx(1.0 / kRoot2));
    CHECK(vac.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("the element network permutes basis states as documented") {
    const ModeRegistry reg = circuit_registry();
    const auto check_map = [&](OccupationTuple in, OccupationTuple out) {
        const FockVector result = propagate(FockVector::basis_state(reg, std::move(in)));
        REQUIRE(result.term_count() == 1);
        CHECK(std::abs(result.amplitude(out) - Complex{1.0, 0.0}) < 1e-12);
    };

    check_map({1, 0, 1, 0, 1, 0}, {1, 0, 1, 0, 1, 0});  // all H: fixed
    check_map({0, 1, 0, 1, 0, 1}, {0, 1, 0, 1, 0, 1});  // all V: fixed
    check_map({1, 0, 0, 1, 0, 1}, {0, 1, 1, 1, 0, 0});  // H signal, V pair: bunch at D1
    check_map({0, 1, 1, 0, 1, 0}, {1, 0, 0, 0, 1, 1});  // V signal, H pair: bunch at D2
    check_map({0, 0, 1, 0, 1, 0}, {1, 0, 0, 0, 1, 0});  // no signal: first H exits
    check_map({0, 0, 0, 1, 0, 1}, {0, 1, 0, 1, 0, 0});  // no signal: second V exits
}

TEST_CASE("propagation is unitary on the circuit registry") {
    std::mt19937_64 gen(0x90125ull);
    const ModeRegistry reg = circuit_registry();
    for (int trial = 0; trial < 10; ++trial) {
        const int photons = 1 + static_cast<int>(gen() % 3);
        const FockVector in = qnd_test::random_state(reg, photons, gen);
        CHECK(std::abs(propagate(in).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("presence detection heralds with probability one half") {
    std::mt19937_64 gen(0xabcd1234ull);
    for (int trial = 0; trial < 50; ++trial) {
        const SignalQubit q = random_haar_qubit(gen);
        const PresenceResult r = detect_presence(q, true);
        CHECK(std::abs(r.coincidence_probability - 0.5) < 1e-10);
        CHECK(std::abs(r.success_probability - 0.5) < 1e-10);
        CHECK(std::abs(r.min_retained_fidelity - 1.0) < 1e-10);
        CHECK(std::abs(r.total_probability - 1.0) < 1e-12);
    }
}

TEST_CASE("the four coincidence patterns are equally likely") {
    const SignalQubit q = SignalQubit::bloch(0.9, 2.3);
    const PresenceResult r = detect_presence(q, true);
    for (const char* label : {"DD", "DA", "AD", "AA"}) {
        const OutcomeRecord& rec = find_record(r.records, label);
        CHECK(std::abs(rec.probability - 0.125) < 1e-12);
        CHECK(rec.retained);
        REQUIRE(rec.conditional_signal.has_value());
        CHECK(std::abs(q.fidelity(*rec.conditional_signal) - 1.0) < 1e-12);
    }
    CHECK(find_record(r.records, "DA").correction == "V->-V");
    CHECK(find_record(r.records, "DD").correction == "none");
}

TEST_CASE("without the conditional flip only equal outcomes survive") {
    const SignalQubit q = SignalQubit::bloch(1.2, 0.4);
    const PresenceResult r = detect_presence(q, false);
    CHECK(std::abs(r.coincidence_probability - 0.5) < 1e-12);
    CHECK(std::abs(r.success_probability - 0.25) < 1e-12);

    const OutcomeRecord& da = find_record(r.records, "DA");
    CHECK_FALSE(da.retained);
    CHECK(da.correction == "none");
    REQUIRE(da.conditional_signal.has_value());
    CHECK(std::abs(da.conditional_signal->alpha - q.alpha) < 1e-12);
    CHECK(std::abs(da.conditional_signal->beta + q.beta) < 1e-12);

    const OutcomeRecord& dd = find_record(r.records, "DD");
    CHECK(dd.retained);
    REQUIRE(dd.conditional_signal.has_value());
    CHECK(std::abs(q.fidelity(*dd.conditional_signal) - 1.0) < 1e-12);
}

TEST_CASE("failure branches flag the input polarization") {
    const SignalQubit q = SignalQubit::bloch(1.0, 0.0);
    const double a = std::norm(q.alpha);
    const double b = std::norm(q.beta);
    const PresenceResult r = detect_presence(q, true);

    const OutcomeRecord& d1 = find_record(r.records, "double_D1");
    CHECK(std::abs(d1.probability - a / 2.0) < 1e-12);
    REQUIRE(d1.conditional_signal.has_value());
    CHECK(std::abs(d1.conditional_signal->beta) == doctest::Approx(1.0));

    const OutcomeRecord& d2 = find_record(r.records, "double_D2");
    CHECK(std::abs(d2.probability - b / 2.0) < 1e-12);
    REQUIRE(d2.conditional_signal.has_value());
    CHECK(std::abs(d2.conditional_signal->alpha) == doctest::Approx(1.0));
}

TEST_CASE("vacuum input never triggers a coincidence") {
    const PresenceResult r = detect_presence(std::nullopt, true);
    CHECK(r.coincidence_probability == 0.0);
    for (const char* label : {"DD", "DA", "AD", "AA"}) {
        CHECK(find_record(r.records, label).probability == 0.0);
    }
    const OutcomeRecord& s1 = find_record(r.records, "single_D1");
    const OutcomeRecord& s2 = find_record(r.records, "single_D2");
    CHECK(std::abs(s1.probability - 0.5) < 1e-12);
    CHECK(std::abs(s2.probability - 0.5) < 1e-12);
    REQUIRE(s1.conditional_signal.has_value());
    CHECK(std::abs(s1.conditional_signal->beta) == doctest::Approx(1.0));
    REQUIRE(s2.conditional_signal.has_value());
    CHECK(std::abs(s2.conditional_signal->alpha) == doctest::Approx(1.0));
    CHECK(std::abs(r.total_probability - 1.0) < 1e-12);
}

TEST_CASE("analyzer rotation produces the expected coincidence amplitudes") {
    const SignalQubit q = SignalQubit::bloch(1.1, 0.0);
    const Complex alpha = q.alpha;
    const Complex beta = q.beta;
    const double phi = 0.3;
    const double c = std::cos(phi);
    const double s = std::sin(phi);

    const FockVector propagated = propagate(prepare_input(q));
    const ProjectionResult post =
        project_path_counts(propagated, {{kD1Path, 1}, {kD2Path, 1}});
    REQUIRE(post.possible);
    const FockVector rotated = rotate_analyzers(post.conditional, phi);

    SUBCASE("before the correction the unequal outcomes carry a sign") {
        CHECK(std::abs(rotated.amplitude({1, 0, 1, 0, 1, 0}) - alpha * c * c) < 1e-12);
        CHECK(std::abs(rotated.amplitude({1, 0, 1, 0, 0, 1}) - alpha * c * s) < 1e-12);
        CHECK(std::abs(rotated.amplitude({1, 0, 0, 1, 1, 0}) - alpha * c * s) < 1e-12);
        CHECK(std::abs(rotated.amplitude({1, 0, 0, 1, 0, 1}) - alpha * s * s) < 1e-12);
        CHECK(std::abs(rotated.amplitude({0, 1, 1, 0, 1, 0}) - beta * s * s) < 1e-12);
        CHECK(std::abs(rotated.amplitude({0, 1, 1, 0, 0, 1}) + beta * c * s) < 1e-12);
        CHECK(std::abs(rotated.amplitude({0, 1, 0, 1, 1, 0}) + beta * c * s) < 1e-12);
        CHECK(std::abs(rotated.amplitude({0, 1, 0, 1, 0, 1}) - beta * c * c) < 1e-12);
    }
    SUBCASE("the correction makes both branches factorize") {
        const FockVector corrected = apply_outcome_correction(rotated);
        CHECK(std::abs(corrected.amplitude({0, 1, 1, 0, 0, 1}) - beta * c * s) < 1e-12);
        CHECK(std::abs(corrected.amplitude({0, 1, 0, 1, 1, 0}) - beta * c * s) < 1e-12);
        CHECK(std::abs(corrected.amplitude({1, 0, 1, 0, 1, 0}) - alpha * c * c) < 1e-12);
        CHECK(std::abs(corrected.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("tunable measurement at the trivial angle leaves the state alone") {
    const SignalQubit q = SignalQubit::bloch(0.8, 1.9);
    const WeakMeasurementResult r = weak_measure(q, 0.0);
    CHECK(std::abs(r.post_select_probability - 0.5) < 1e-12);
    CHECK(std::abs(r.corrected_state.amplitude({1, 0, 1, 0, 1, 0}) - q.alpha) < 1e-12);
    CHECK(std::abs(r.corrected_state.amplitude({0, 1, 0, 1, 0, 1}) - q.beta) < 1e-12);

    const double a = std::norm(q.alpha);
    const double b = std::norm(q.beta);
    CHECK(std::abs(r.joint(0, 0) - a) < 1e-12);
    CHECK(std::abs(r.joint(0, 1)) < 1e-12);
    CHECK(std::abs(r.joint(1, 0)) < 1e-12);
    CHECK(std::abs(r.joint(1, 1) - b) < 1e-12);
}

TEST_CASE("tunable measurement at the erasing angle restores purity") {
    const SignalQubit q = SignalQubit::bloch(1.3, 0.6);
    const WeakMeasurementResult r = weak_measure(q, kPi / 4);
    CHECK(std::abs(r.rho_out.purity() - 1.0) < 1e-12);

    const SignalQubit out = extract_signal(r.corrected_state);
    CHECK(std::abs(q.fidelity(out) - 1.0) < 1e-12);

    const double a = std::norm(q.alpha);
    const double b = std::norm(q.beta);
    CHECK(std::abs(r.joint(0, 0) - a / 2.0) < 1e-12);
    CHECK(std::abs(r.joint(0, 1) - a / 2.0) < 1e-12);
    CHECK(std::abs(r.joint(1, 0) - b / 2.0) < 1e-12);
    CHECK(std::abs(r.joint(1, 1) - b / 2.0) < 1e-12);
}

TEST_CASE("joint distribution matches the product form on a grid") {
    std::mt19937_64 gen(0x7e57ull);
    for (int trial = 0; trial < 6; ++trial) {
        const SignalQubit q = random_haar_qubit(gen);
        const double a = std::norm(q.alpha);
        const double b = std::norm(q.beta);
        for (int k = 0; k <= 6; ++k) {
            const double phi = kPi / 4 * k / 6.0;
            const double c2 = std::cos(phi) * std::cos(phi);
            const double s2 = 1.0 - c2;
            const WeakMeasurementResult r = weak_measure(q, phi);
            CHECK(std::abs(r.joint(0, 0) - a * c2) < 1e-12);
            CHECK(std::abs(r.joint(0, 1) - a * s2) < 1e-12);
            CHECK(std::abs(r.joint(1, 0) - b * s2) < 1e-12);
            CHECK(std::abs(r.joint(1, 1) - b * c2) < 1e-12);
            CHECK(std::abs(r.joint.sum() - 1.0) < 1e-12);

            double outcome_total = 0.0;
            for (const auto& rec : r.outcomes) outcome_total += rec.probability;
            CHECK(std::abs(outcome_total - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("a basis-state signal passes through the tunable measurement unchanged") {
    const SignalQubit h(Complex{1.0, 0.0}, Complex{0.0, 0.0});
    const WeakMeasurementResult r = weak_measure(h, 0.7);
    CHECK(std::abs(r.rho_out.purity() - 1.0) < 1e-12);
    const SignalQubit out = extract_signal(r.corrected_state);
    CHECK(std::abs(h.fidelity(out) - 1.0) < 1e-12);
}

TEST_CASE("always-conclusive branches cover the sample space") {
    SUBCASE("an H signal is never miscorrected") {
        const DeterministicResult r =
            deterministic_run(SignalQubit(Complex{1.0, 0.0}, Complex{0.0, 0.0}));
        CHECK(std::abs(find_record(r.records, "coincidence").probability - 0.5) < 1e-12);
        CHECK(std::abs(find_record(r.records, "double_D1").probability - 0.5) < 1e-12);
        CHECK(find_record(r.records, "double_D2").probability == doctest::Approx(0.0));
        CHECK(std::abs(r.average_fidelity - 1.0) < 1e-12);
        CHECK(std::abs(r.total_probability - 1.0) < 1e-12);

        const OutcomeRecord& d1 = find_record(r.records, "double_D1");
        REQUIRE(d1.conditional_signal.has_value());
        CHECK(std::abs(d1.conditional_signal->alpha) == doctest::Approx(1.0));
        CHECK(d1.correction == "H<->V");
    }
    SUBCASE("a balanced signal reaches three quarters") {
        const DeterministicResult r = deterministic_run(SignalQubit::bloch(kPi / 2, 0.0));
        CHECK(std::abs(find_record(r.records, "double_D1").probability - 0.25) < 1e-12);
        CHECK(std::abs(find_record(r.records, "double_D2").probability - 0.25) < 1e-12);
        CHECK(std::abs(r.average_fidelity - 0.75) < 1e-12);
    }
    SUBCASE("random signals follow the branch formula") {
        std::mt19937_64 gen(0xdead10ccull);
        for (int trial = 0; trial < 10; ++trial) {
            const SignalQubit q = random_haar_qubit(gen);
            const double a = std::norm(q.alpha);
            const double b = std::norm(q.beta);
            const DeterministicResult r = deterministic_run(q);
            CHECK(std::abs(find_record(r.records, "coincidence").probability - 0.5) < 1e-12);
            CHECK(std::abs(find_record(r.records, "double_D1").probability - a / 2.0) < 1e-12);
            CHECK(std::abs(find_record(r.records, "double_D2").probability - b / 2.0) < 1e-12);
            CHECK(std::abs(r.average_fidelity - (0.5 + (a * a + b * b) / 2.0)) < 1e-12);
            CHECK(std::abs(r.total_probability - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("signal extraction rejects states without a clean exit photon") {
    const ModeRegistry reg = circuit_registry();

    SUBCASE("two photons at the exit") {
        FockVector bad(reg);
        bad.add_term({2, 0, 1, 0, 0, 0}, 1.0);
        CHECK_THROWS_AS(extract_signal(bad), std::logic_error);
    }
    SUBCASE("exit entangled with the detectors") {
        FockVector bad(reg);
        bad.add_term({1, 0, 1, 0, 1, 0}, 1.0 / kRoot2);
        bad.add_term({0, 1, 0, 1, 0, 1}, 1.0 / kRoot2);
        CHECK_THROWS_AS(extract_signal(bad), std::logic_error);
    }
    SUBCASE("a clean factor is accepted even with detector photons present") {
        FockVector ok(reg);
        ok.add_term({1, 0, 1, 0, 1, 0}, 0.6);
        ok.add_term({0, 1, 1, 0, 1, 0}, 0.8);
        const SignalQubit out = extract_signal(ok);
        CHECK(std::abs(out.alpha - Complex{0.6, 0.0}) < 1e-12);
        CHECK(std::abs(out.beta - Complex{0.8, 0.0}) < 1e-12);
    }
}
