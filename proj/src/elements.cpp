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

#include "qnd/elements.hpp"

#include <cmath>
#include <stdexcept>

namespace qnd {

JonesMatrix hwp(double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  JonesMatrix m;
  m << c, s, s, -c;
  return m;
}

JonesMatrix basis_rotation(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  JonesMatrix m;
  m << c, s, -s, c;
  return m;
}

Eigen::Matrix4cd pbs(int path_a, int path_b) {
  if (path_a == path_b) {
    throw std::invalid_argument("pbs: the two paths must be distinct");
  }
  // Row/column order is (aH, aV, bH, bV). H transmits, V crosses.
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1.0;  // aH -> aH
  m(3, 1) = 1.0;  // aV -> bV
  m(2, 2) = 1.0;  // bH -> bH
  m(1, 3) = 1.0;  // bV -> aV
  return m;
}

}  // namespace qnd
