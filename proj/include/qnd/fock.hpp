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

#include <complex>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnd {

using Complex = std::complex<double>;

/// Hard cap on the total photon number handled by the simulator. The
/// scheme uses at most three photons; exceeding the cap is a programming
/// error, not a physics case.
inline constexpr int kMaxPhotons = 3;

/// Amplitudes below this magnitude are dropped after each element
/// application. Genuine amplitudes on the tested grids are products of
/// cos/sin factors well above 1e-8.
inline constexpr double kPruneThreshold = 1e-14;

inline constexpr double kUnitaryTol = 1e-12;

enum class Pol : int { H = 0, V = 1 };

/// One bosonic mode: a spatial rail together with a polarization.
struct ModeLabel {
    int path = 0;
    Pol pol = Pol::H;

    auto operator<=>(const ModeLabel&) const = default;
};

std::string to_string(const ModeLabel& m);

/// Fixed, totally ordered list of modes for one simulation run.
/// (path, pol) pairs are unique within a registry.
class ModeRegistry {
  public:
    ModeRegistry() = default;
    explicit ModeRegistry(std::vector<ModeLabel> modes);

    /// Registry with (p,H),(p,V) for each path, in the given path order.
    static ModeRegistry dual_rail(const std::vector<int>& paths);

    std::size_t size() const { return modes_.size(); }
    const ModeLabel& mode(std::size_t i) const { return modes_.at(i); }
    const std::vector<ModeLabel>& modes() const { return modes_; }
    bool contains(const ModeLabel& m) const;
    std::size_t index_of(const ModeLabel& m) const;  // throws on unknown mode

    bool operator==(const ModeRegistry&) const = default;

  private:
    std::vector<ModeLabel> modes_;
};

/// Photon counts per registered mode, in registry order.
using OccupationTuple = std::vector<int>;

int tuple_photons(const OccupationTuple& t);

/// Sparse superposition over occupation tuples of a fixed mode registry.
///
/// All stored tuples carry the same total photon number unless the state
/// was explicitly constructed with `allow_mixed_sectors` (needed only for
/// the vacuum-vs-one-photon signal comparison).
class FockVector {
  public:
    FockVector() = default;
    explicit FockVector(ModeRegistry reg, bool allow_mixed_sectors = false);

    static FockVector basis_state(const ModeRegistry& reg, OccupationTuple t);

    const ModeRegistry& registry() const { return reg_; }
    const std::map<OccupationTuple, Complex>& terms() const { return amps_; }
    bool multi_sector() const { return multi_sector_; }
    bool empty() const { return amps_.empty(); }
    std::size_t term_count() const { return amps_.size(); }

    Complex amplitude(const OccupationTuple& t) const;
    void add_term(const OccupationTuple& t, Complex amp);

    /// sqrt(sum |amplitude|^2), computed from the stored terms.
    double norm() const;
    /// Norm carried through construction and unitary bookkeeping; the
    /// invariant norm() == norm_tracked() to 1e-12 is checked by validate().
    double norm_tracked() const { return norm_tracked_; }
    void set_norm_tracked(double n) { norm_tracked_ = n; }

    void renormalize();
    void prune(double threshold = kPruneThreshold);
    void scale(Complex factor);

    /// Photon number shared by every stored tuple. Throws std::logic_error
    /// if the state holds mixed photon-number sectors.
    int total_photons() const;

    /// Checks every type invariant; throws std::logic_error on violation.
    void validate() const;

  private:
    ModeRegistry reg_;
    std::map<OccupationTuple, Complex> amps_;
    double norm_tracked_ = 0.0;
    bool multi_sector_ = false;
};

/// Tensor product of states on disjoint registries. The combined registry
/// is the concatenation; amplitudes multiply, and so do norms.
FockVector tensor(const FockVector& a, const FockVector& b);

/// <a|b> for identical registries.
Complex inner(const FockVector& a, const FockVector& b);

/// Applies a k-mode linear-optical element to the state via the
/// creation-operator substitution a_i^dag -> sum_j u(j,i) b_j^dag with
/// bosonic normalization. Single-photon amplitude vectors transform as
/// a -> u a. `u` must be unitary to 1e-12 and `modes` must belong to the
/// registry.
FockVector apply_element(const FockVector& state, const std::vector<ModeLabel>& modes,
                         const Eigen::MatrixXcd& u);

struct ProjectionResult {
    double probability = 0.0;
    FockVector conditional;  // renormalized; empty when the pattern is impossible
    bool possible = false;
};

/// Projects onto exact photon counts for the given modes. A
/// zero-probability pattern yields probability 0 and a flagged empty
/// conditional rather than an exception.
ProjectionResult project_counts(const FockVector& state, const std::map<ModeLabel, int>& pattern);

/// Projects onto total photon counts per spatial path (summed over
/// polarization), e.g. "one photon in each detector region".
ProjectionResult project_path_counts(const FockVector& state, const std::map<int, int>& pattern);

/// Hermitian, PSD, unit-trace operator on a designated mode subset.
/// Basis labels are occupation tuples over the kept modes, ordered
/// descending so that for one dual-rail qubit index 0 is H and 1 is V.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    DensityMatrix(Eigen::MatrixXcd entries, std::vector<OccupationTuple> basis);

    std::size_t dim() const { return basis_.size(); }
    const Eigen::MatrixXcd& entries() const { return m_; }
    const std::vector<OccupationTuple>& basis() const { return basis_; }

    double trace_real() const;
    double purity() const;  // tr rho^2
    Eigen::VectorXd eigenvalues() const;  // ascending

    /// Hermitian to 1e-12, eigenvalues >= -1e-10, trace = 1 +- 1e-12.
    void validate() const;

  private:
    Eigen::MatrixXcd m_;
    std::vector<OccupationTuple> basis_;
};

/// Partial trace onto the kept modes. The input must be normalized.
/// Keeping every mode reproduces the pure projector.
DensityMatrix reduce(const FockVector& state, const std::vector<ModeLabel>& keep);

}  // namespace qnd
