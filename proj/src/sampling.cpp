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

#include "qnd/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnd {

double canonical_double(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

SignalQubit random_haar_qubit(std::mt19937_64& gen) {
    const double cos_theta = 2.0 * canonical_double(gen) - 1.0;
    const double theta = std::acos(cos_theta);
    const double phase = 2.0 * std::numbers::pi * canonical_double(gen);
    return SignalQubit::bloch(theta, phase);
}

OutcomeDistribution distribution_from_records(const std::vector<OutcomeRecord>& records) {
    OutcomeDistribution dist;
    double total = 0.0;
    for (const auto& rec : records) {
        dist.labels.push_back(rec.label);
        dist.probabilities.push_back(rec.probability);
        total += rec.probability;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("distribution_from_records: probabilities do not sum to 1");
    }
    return dist;
}

std::vector<long long> sample_shots(const OutcomeDistribution& dist, long long shots,
                                    std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_shots: shots must be >= 1");
    if (dist.labels.size() != dist.probabilities.size() || dist.labels.empty()) {
        throw std::invalid_argument("sample_shots: malformed distribution");
    }
    std::vector<double> cumulative(dist.probabilities.size());
    double run = 0.0;
    for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
        run += dist.probabilities[i];
        cumulative[i] = run;
    }
    cumulative.back() = 1.0;

    std::mt19937_64 gen(seed);
    std::vector<long long> counts(dist.labels.size(), 0);
    for (long long s = 0; s < shots; ++s) {
        const double u = canonical_double(gen);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        ++counts[static_cast<std::size_t>(it - cumulative.begin())];
    }
    return counts;
}

}  // namespace qnd
