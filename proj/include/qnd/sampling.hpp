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
#include <random>
#include <string>
#include <vector>

#include "qnd/circuit.hpp"

namespace qnd {

/// Uniform double in [0, 1) with the full 53-bit mantissa, independent of
/// the standard library's unspecified distribution implementations, so
/// that seeded runs are reproducible across platforms.
double canonical_double(std::mt19937_64& gen);

/// Uniform pure qubit: cos(theta) uniform on [-1, 1], relative phase
/// uniform on [0, 2 pi).
SignalQubit random_haar_qubit(std::mt19937_64& gen);

/// Exhaustive labeled outcome distribution of one run; probabilities sum
/// to 1 over the exclusive detection classes.
struct OutcomeDistribution {
    std::vector<std::string> labels;
    std::vector<double> probabilities;
};

OutcomeDistribution distribution_from_records(const std::vector<OutcomeRecord>& records);

/// Draws `shots` outcomes with a generator seeded by `seed`; returns
/// counts aligned with the distribution labels. Deterministic for a fixed
/// (distribution, shots, seed) triple.
std::vector<long long> sample_shots(const OutcomeDistribution& dist, long long shots,
                                    std::uint64_t seed);

}  // namespace qnd
