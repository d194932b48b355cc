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

#include <Eigen/Dense>

namespace qnd {

/// 2x2 unitary acting on the (H, V) amplitude pair of one spatial mode.
using JonesMatrix = Eigen::Matrix2cd;

/// Half-wave plate at angle theta:
///   [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
/// hwp(pi/4) is the exact H<->V swap, hwp(0) is V -> -V. Its square is
/// the identity for every theta.
JonesMatrix hwp(double theta);

/// Polarization basis rotation by phi:
///   [[cos p, sin p], [-sin p, cos p]]
/// with determinant +1. Under the amplitude convention, H maps to
/// cos(p)|H> - sin(p)|V>, so at pi/4 the rotated outcomes are the
/// antidiagonal/diagonal pair A = (|H>-|V>)/sqrt2, D = (|H>+|V>)/sqrt2.
JonesMatrix basis_rotation(double phi);

/// Polarizing beam splitter over modes (aH, aV, bH, bV): transmits H on
/// each path and reflects V to the other path, all with coefficient +1.
/// The +1 reflection convention keeps every amplitude in the scheme real.
Eigen::Matrix4cd pbs(int path_a, int path_b);

}  // namespace qnd
