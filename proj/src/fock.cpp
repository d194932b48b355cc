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

#include "qnd/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qnd {

namespace {

const double kSqrtFact[] = {1.0, 1.0, std::sqrt(2.0), std::sqrt(6.0)};

std::string tuple_to_string(const OccupationTuple& t) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ")";
    return os.str();
}

}  // namespace

std::string to_string(const ModeLabel& m) {
    return std::to_string(m.path) + (m.pol == Pol::H ? "H" : "V");
}

ModeRegistry::ModeRegistry(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
    std::set<ModeLabel> seen;
    for (const auto& m : modes_) {
        if (!seen.insert(m).second) {
            throw std::invalid_argument("ModeRegistry: duplicate mode " + to_string(m));
        }
    }
}

ModeRegistry ModeRegistry::dual_rail(const std::vector<int>& paths) {
    std::vector<ModeLabel> modes;
    modes.reserve(2 * paths.size());
    for (int p : paths) {
        modes.push_back({p, Pol::H});
        modes.push_back({p, Pol::V});
    }
    return ModeRegistry(std::move(modes));
}

bool ModeRegistry::contains(const ModeLabel& m) const {
    return std::find(modes_.begin(), modes_.end(), m) != modes_.end();
}

std::size_t ModeRegistry::index_of(const ModeLabel& m) const {
    auto it = std::find(modes_.begin(), modes_.end(), m);
    if (it == modes_.end()) {
        throw std::invalid_argument("ModeRegistry: unknown mode " + to_string(m));
    }
    return static_cast<std::size_t>(it - modes_.begin());
}

int tuple_photons(const OccupationTuple& t) {
    return std::accumulate(t.begin(), t.end(), 0);
}

FockVector::FockVector(ModeRegistry reg, bool allow_mixed_sectors)
    : reg_(std::move(reg)), multi_sector_(allow_mixed_sectors) {}

FockVector FockVector::basis_state(const ModeRegistry& reg, OccupationTuple t) {
    FockVector v(reg);
    v.add_term(std::move(t), 1.0);
    return v;
}

Complex FockVector::amplitude(const OccupationTuple& t) const {
    auto it = amps_.find(t);
    return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

void FockVector::add_term(const OccupationTuple& t, Complex amp) {
    if (t.size() != reg_.size()) {
        throw std::invalid_argument("FockVector: tuple length " + std::to_string(t.size()) +
                                    " does not match registry size " + std::to_string(reg_.size()));
    }
    for (int c : t) {
        if (c < 0) throw std::invalid_argument("FockVector: negative photon count");
    }
    if (tuple_photons(t) > kMaxPhotons) {
        throw std::logic_error("FockVector: photon cap exceeded for tuple " + tuple_to_string(t));
    }
    if (!multi_sector_ && !amps_.empty() && tuple_photons(t) != tuple_photons(amps_.begin()->first)) {
        throw std::logic_error("FockVector: mixed photon-number sectors require an explicit flag");
    }
    auto [it, inserted] = amps_.try_emplace(t, amp);
    if (!inserted) it->second += amp;
    if (std::abs(it->second) == 0.0) amps_.erase(it);
    norm_tracked_ = norm();
}

double FockVector::norm() const {
    double s = 0.0;
    for (const auto& [t, a] : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void FockVector::renormalize() {
    double n = norm();
    if (n == 0.0) throw std::logic_error("FockVector: cannot renormalize the zero vector");
    for (auto& [t, a] : amps_) a /= n;
    norm_tracked_ = 1.0;
}

void FockVector::prune(double threshold) {
    for (auto it = amps_.begin(); it != amps_.end();) {
        if (std::abs(it->second) < threshold) {
            it = amps_.erase(it);
        } else {
            ++it;
        }
    }
}

void FockVector::scale(Complex factor) {
    for (auto& [t, a] : amps_) a *= factor;
    norm_tracked_ *= std::abs(factor);
}

int FockVector::total_photons() const {
    if (amps_.empty()) return 0;
    int n = tuple_photons(amps_.begin()->first);
    for (const auto& [t, a] : amps_) {
        if (tuple_photons(t) != n) {
            throw std::logic_error("FockVector: state spans several photon-number sectors");
        }
    }
    return n;
}

void FockVector::validate() const {
    int sector = -1;
    for (const auto& [t, a] : amps_) {
        if (t.size() != reg_.size()) throw std::logic_error("FockVector: tuple/registry size mismatch");
        int n = tuple_photons(t);
        if (n > kMaxPhotons) throw std::logic_error("FockVector: photon cap exceeded");
        if (std::abs(a) < kPruneThreshold) {
            throw std::logic_error("FockVector: amplitude below prune threshold kept at " + tuple_to_string(t));
        }
        if (!multi_sector_) {
            if (sector < 0) sector = n;
            if (n != sector) throw std::logic_error("FockVector: mixed sectors without flag");
        }
    }
    if (std::abs(norm() - norm_tracked_) > 1e-12) {
        throw std::logic_error("FockVector: tracked norm out of date");
    }
}

FockVector tensor(const FockVector& a, const FockVector& b) {
    for (const auto& m : b.registry().modes()) {
        if (a.registry().contains(m)) {
            throw std::invalid_argument("tensor: registries overlap on mode " + to_string(m));
        }
    }
    std::vector<ModeLabel> modes = a.registry().modes();
    modes.insert(modes.end(), b.registry().modes().begin(), b.registry().modes().end());
    FockVector out(ModeRegistry(std::move(modes)), a.multi_sector() || b.multi_sector());
    for (const auto& [ta, aa] : a.terms()) {
        for (const auto& [tb, ab] : b.terms()) {
            OccupationTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            out.add_term(std::move(t), aa * ab);
        }
    }
    out.set_norm_tracked(a.norm_tracked() * b.norm_tracked());
    return out;
}

Complex inner(const FockVector& a, const FockVector& b) {
    if (!(a.registry() == b.registry())) {
        throw std::invalid_argument("inner: mode registries differ");
    }
    Complex s{0.0, 0.0};
    for (const auto& [t, aa] : a.terms()) {
        auto it = b.terms().find(t);
        if (it != b.terms().end()) s += std::conj(aa) * it->second;
    }
    return s;
}

FockVector apply_element(const FockVector& state, const std::vector<ModeLabel>& modes,
                         const Eigen::MatrixXcd& u) {
    const auto k = static_cast<Eigen::Index>(modes.size());
    if (u.rows() != k || u.cols() != k) {
        throw std::invalid_argument("apply_element: matrix size does not match mode count");
    }
    const double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
    if (dev > kUnitaryTol) {
        throw std::invalid_argument("apply_element: matrix is not unitary (deviation " +
                                    std::to_string(dev) + ")");
    }
    std::vector<std::size_t> idx(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) idx[i] = state.registry().index_of(modes[i]);

    FockVector out(state.registry(), state.multi_sector());
    for (const auto& [t, amp] : state.terms()) {
        std::vector<int> sub(modes.size());
        for (std::size_t i = 0; i < idx.size(); ++i) sub[i] = t[idx[i]];

        // Expand prod_i (sum_j u(j,i) b_j^dag)^{sub[i]} as a polynomial in
        // output occupations over the element's modes.
        std::map<std::vector<int>, Complex> poly{{std::vector<int>(modes.size(), 0), Complex{1.0, 0.0}}};
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (int rep = 0; rep < sub[i]; ++rep) {
                std::map<std::vector<int>, Complex> next;
                for (const auto& [occ, c] : poly) {
                    for (std::size_t j = 0; j < modes.size(); ++j) {
                        const Complex uji = u(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
                        if (uji == Complex{0.0, 0.0}) continue;
                        std::vector<int> occ2 = occ;
                        ++occ2[j];
                        next[std::move(occ2)] += c * uji;
                    }
                }
                poly = std::move(next);
            }
        }

        double pref = 1.0;
        for (int c : sub) pref /= kSqrtFact[c];
        for (const auto& [occ, c] : poly) {
            double boson = pref;
            for (int m : occ) boson *= kSqrtFact[m];
            OccupationTuple t2 = t;
            for (std::size_t j = 0; j < idx.size(); ++j) t2[idx[j]] = occ[j];
            out.add_term(std::move(t2), amp * c * boson);
        }
    }
    out.prune();
    out.set_norm_tracked(state.norm_tracked());
    return out;
}

namespace {

ProjectionResult project_if(const FockVector& state,
                            const std::function<bool(const OccupationTuple&)>& matches) {
    const double total = state.norm();
    if (total == 0.0) throw std::invalid_argument("project: zero state");
    FockVector cond(state.registry(), state.multi_sector());
    double kept = 0.0;
    for (const auto& [t, a] : state.terms()) {
        if (matches(t)) {
            cond.add_term(t, a);
            kept += std::norm(a);
        }
    }
    ProjectionResult r;
    r.probability = kept / (total * total);
    if (kept == 0.0) {
        r.possible = false;
        r.probability = 0.0;
        r.conditional = FockVector(state.registry(), state.multi_sector());
        return r;
    }
    r.possible = true;
    cond.renormalize();
    r.conditional = std::move(cond);
    return r;
}

}  // namespace

ProjectionResult project_counts(const FockVector& state, const std::map<ModeLabel, int>& pattern) {
    std::vector<std::pair<std::size_t, int>> wanted;
    wanted.reserve(pattern.size());
    for (const auto& [m, c] : pattern) wanted.emplace_back(state.registry().index_of(m), c);
    return project_if(state, [&wanted](const OccupationTuple& t) {
        for (const auto& [i, c] : wanted) {
            if (t[i] != c) return false;
        }
        return true;
    });
}

ProjectionResult project_path_counts(const FockVector& state, const std::map<int, int>& pattern) {
    for (const auto& [p, c] : pattern) {
        if (!state.registry().contains({p, Pol::H}) && !state.registry().contains({p, Pol::V})) {
            throw std::invalid_argument("project_path_counts: unknown path " + std::to_string(p));
        }
    }
    const auto& reg = state.registry();
    return project_if(state, [&](const OccupationTuple& t) {
        for (const auto& [p, c] : pattern) {
            int n = 0;
            for (std::size_t i = 0; i < reg.size(); ++i) {
                if (reg.mode(i).path == p) n += t[i];
            }
            if (n != c) return false;
        }
        return true;
    });
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, std::vector<OccupationTuple> basis)
    : m_(std::move(entries)), basis_(std::move(basis)) {
    if (m_.rows() != m_.cols() || static_cast<std::size_t>(m_.rows()) != basis_.size()) {
        throw std::invalid_argument("DensityMatrix: entries/basis size mismatch");
    }
}

double DensityMatrix::trace_real() const { return m_.trace().real(); }

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

void DensityMatrix::validate() const {
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::logic_error("DensityMatrix: not Hermitian");
    }
    if (std::abs(trace_real() - 1.0) > 1e-12 || std::abs(m_.trace().imag()) > 1e-12) {
        throw std::logic_error("DensityMatrix: trace differs from 1");
    }
    if (eigenvalues().minCoeff() < -1e-10) {
        throw std::logic_error("DensityMatrix: negative eigenvalue");
    }
}

DensityMatrix reduce(const FockVector& state, const std::vector<ModeLabel>& keep) {
    if (std::abs(state.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("reduce: state must be normalized");
    }
    std::vector<std::size_t> kidx;
    kidx.reserve(keep.size());
    for (const auto& m : keep) kidx.push_back(state.registry().index_of(m));
    std::vector<bool> kept(state.registry().size(), false);
    for (auto i : kidx) kept[i] = true;

    // Split each term into kept and traced parts.
    struct Entry {
        OccupationTuple kept_part;
        Complex amp;
    };
    std::map<OccupationTuple, std::vector<Entry>> by_traced;
    std::set<OccupationTuple, std::greater<>> kept_support;
    for (const auto& [t, a] : state.terms()) {
        OccupationTuple kp(kidx.size());
        for (std::size_t i = 0; i < kidx.size(); ++i) kp[i] = t[kidx[i]];
        OccupationTuple tp;
        tp.reserve(t.size() - kidx.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!kept[i]) tp.push_back(t[i]);
        }
        kept_support.insert(kp);
        by_traced[tp].push_back({std::move(kp), a});
    }

    std::vector<OccupationTuple> basis(kept_support.begin(), kept_support.end());
    std::map<OccupationTuple, std::size_t> pos;
    for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.size()),
                                                  static_cast<Eigen::Index>(basis.size()));
    for (const auto& [tp, entries] : by_traced) {
        for (const auto& eu : entries) {
            for (const auto& ev : entries) {
                rho(static_cast<Eigen::Index>(pos[eu.kept_part]),
                    static_cast<Eigen::Index>(pos[ev.kept_part])) += eu.amp * std::conj(ev.amp);
            }
        }
    }
    DensityMatrix out(std::move(rho), std::move(basis));
    out.validate();
    return out;
}

}  // namespace qnd
