// Copyright 2026 The lightcone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Commutation structure across spacelike separation, at two levels.
 *
 * Scenario level: strong microcausality asks that the measurement
 * operators (not just observables) attached to spacelike separated events
 * pairwise commute. It is sufficient for order-independent state
 * assignment but not necessary: operator pairs that anticommute also give
 * order-independent updates, and the checker flags those separately.
 *
 * Net level: a finite lattice of qudit sites carries a net of local
 * algebras, a region's algebra being everything supported on the sites it
 * contains. On such a net the commutation axiom for spacelike separated
 * regions can be verified exhaustively on a generating set, and generic
 * entangled states still violate Bell inequalities across regions.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lightcone/agents.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/linalg.hpp"
#include "lightcone/optimize.hpp"
#include "lightcone/quantum.hpp"
#include "lightcone/spacetime.hpp"

namespace lightcone {

inline constexpr double kCommutatorTol = 1e-10;

struct StrongMicrocausalityReport {
    bool holds = false;
    std::vector<CommutationViolation> violations;
};

/// Check that all cross pairs of measurement operators attached to
/// spacelike separated events commute (max commutator entry <= tol).
inline StrongMicrocausalityReport check_strong_microcausality(const Scenario& scenario,
                                                              double tol = kCommutatorTol) {
    StrongMicrocausalityReport report;
    report.violations = spacelike_commutation_violations(scenario, tol);
    report.holds = report.violations.empty();
    return report;
}

/// Operators generating (or sampled from) the algebra of one region of a
/// lattice net, embedded at full dimension.
struct LocalizedOperatorSet {
    Region region;
    std::vector<ComplexMatrix> operators;
    std::set<std::size_t> site_support;
};

/// A finite lattice of qudit sites at fixed spatial positions (t = 0).
/// A spacetime region's algebra is the full matrix algebra on the sites
/// whose spatial position falls inside the region's spatial extent.
class LatticeNet {
  public:
    LatticeNet(std::vector<Event> sites, std::size_t site_dim = 2)
        : sites_(std::move(sites)), site_dim_(site_dim) {
        if (sites_.empty()) {
            throw PreconditionError("lattice net needs at least one site");
        }
        if (site_dim_ < 2) {
            throw PreconditionError("site dimension must be at least 2");
        }
        std::size_t total = 1;
        for (std::size_t s = 0; s < sites_.size(); ++s) {
            if (sites_[s].coord_count() != sites_.front().coord_count()) {
                throw DimensionError("lattice sites must share a coordinate count");
            }
            total *= site_dim_;
            if (total > 64) {
                throw PreconditionError("lattice net dimension exceeds 64");
            }
        }
        total_dim_ = total;
    }

    static LatticeNet from_positions(const std::vector<std::vector<double>>& positions,
                                     std::size_t site_dim = 2) {
        std::vector<Event> sites;
        sites.reserve(positions.size());
        for (const std::vector<double>& x : positions) {
            sites.emplace_back(0.0, x);
        }
        return LatticeNet(std::move(sites), site_dim);
    }

    const std::vector<Event>& sites() const { return sites_; }
    std::size_t site_dim() const { return site_dim_; }
    std::size_t total_dim() const { return total_dim_; }

    std::vector<std::size_t> dims() const {
        return std::vector<std::size_t>(sites_.size(), site_dim_);
    }

    /// Sites whose spatial position lies inside the region's spatial box.
    /// Sites persist in time, so the region's time extent is irrelevant to
    /// membership.
    std::vector<std::size_t> sites_in_region(const Region& region) const {
        if (region.center.coord_count() != sites_.front().coord_count()) {
            throw DimensionError("region coordinate count does not match lattice");
        }
        std::vector<std::size_t> out;
        for (std::size_t s = 0; s < sites_.size(); ++s) {
            bool inside = true;
            for (std::size_t i = 0; inside && i < sites_[s].x.size(); ++i) {
                inside = std::abs(sites_[s].x[i] - region.center.x[i]) <=
                         region.half_widths[i + 1];
            }
            if (inside) {
                out.push_back(s);
            }
        }
        return out;
    }

    /// Single-site matrix units E_ab on every contained site, embedded at
    /// full dimension. These generate the region's algebra, so commutation
    /// statements checked on them extend to the whole algebra by
    /// bilinearity and the product rule.
    LocalizedOperatorSet algebra_generators(const Region& region) const {
        LocalizedOperatorSet out;
        out.region = region;
        const std::vector<std::size_t> support = sites_in_region(region);
        out.site_support.insert(support.begin(), support.end());
        for (std::size_t s : support) {
            for (std::size_t a = 0; a < site_dim_; ++a) {
                for (std::size_t b = 0; b < site_dim_; ++b) {
                    ComplexMatrix unit(site_dim_, site_dim_);
                    unit(a, b) = 1.0;
                    out.operators.push_back(embed_at(unit, dims(), s));
                }
            }
        }
        return out;
    }

  private:
    std::vector<Event> sites_;
    std::size_t site_dim_;
    std::size_t total_dim_ = 0;
};

enum class NetCheck { Holds, Fails, NotApplicable };

inline const char* to_string(NetCheck c) {
    switch (c) {
        case NetCheck::Holds: return "holds";
        case NetCheck::Fails: return "fails";
        case NetCheck::NotApplicable: return "not-applicable";
    }
    return "?";
}

/// [A, B] = 0 for all A in the algebra of r1 and B in the algebra of r2,
/// verified on the generating sets. Reported NotApplicable unless the
/// regions are spacelike separated.
inline NetCheck check_algebraic_microcausality(const LatticeNet& net, const Region& r1,
                                               const Region& r2,
                                               double tol = kCommutatorTol) {
    if (!regions_spacelike_separated(r1, r2)) {
        return NetCheck::NotApplicable;
    }
    const LocalizedOperatorSet g1 = net.algebra_generators(r1);
    const LocalizedOperatorSet g2 = net.algebra_generators(r2);
    for (const ComplexMatrix& a : g1.operators) {
        for (const ComplexMatrix& b : g2.operators) {
            if (commutator(a, b).max_abs() > tol) {
                return NetCheck::Fails;
            }
        }
    }
    return NetCheck::Holds;
}

/// Isotony: nested regions have nested site supports, hence nested
/// algebras. Precondition: r1 is contained in r2 as a box.
inline bool check_isotony(const LatticeNet& net, const Region& r1, const Region& r2) {
    if (!region_contains_region(r2, r1)) {
        throw PreconditionError("isotony check requires r1 contained in r2");
    }
    const std::vector<std::size_t> s1 = net.sites_in_region(r1);
    const std::vector<std::size_t> s2 = net.sites_in_region(r2);
    return std::includes(s2.begin(), s2.end(), s1.begin(), s1.end());
}

struct NetBellOptions {
    std::size_t starts = 160;     // random multistart count
    std::size_t refine_iters = 250;
    std::uint64_t seed = 0;
};

/// Largest CHSH combination found over dichotomic observables drawn from
/// the two regions' algebras. Each setting is a tensor product over the
/// region's sites of Bloch observables n.sigma (the general +/-1-spectrum
/// single-site observable), optimized by seeded multistart simplex search.
inline double net_bell_correlation(const LatticeNet& net, const Region& r1, const Region& r2,
                                   const DensityOperator& state,
                                   const NetBellOptions& options = {}) {
    if (!regions_spacelike_separated(r1, r2)) {
        throw PreconditionError("net Bell correlation requires spacelike separated regions");
    }
    if (net.site_dim() != 2) {
        throw PreconditionError("dichotomic-observable search is implemented for qubit sites");
    }
    if (state.dims() != net.dims()) {
        throw DimensionError("state dims do not match the lattice");
    }
    const std::vector<std::size_t> s1 = net.sites_in_region(r1);
    const std::vector<std::size_t> s2 = net.sites_in_region(r2);
    if (s1.empty() || s2.empty()) {
        throw PreconditionError("both regions must contain at least one site");
    }

    auto bloch = [](double theta, double phi) {
        ComplexMatrix m(2, 2);
        m(0, 0) = std::cos(theta);
        m(0, 1) = cplx(std::sin(theta) * std::cos(phi), -std::sin(theta) * std::sin(phi));
        m(1, 0) = cplx(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi));
        m(1, 1) = -std::cos(theta);
        return m;
    };

    // Parameter layout: (theta, phi) per site, for A, A', B, B' in turn.
    const std::size_t per_side = 2 * s1.size();
    const std::size_t per_side_b = 2 * s2.size();
    const std::size_t n_params = 2 * per_side + 2 * per_side_b;

    auto observable = [&](const std::vector<std::size_t>& sites, const double* params) {
        ComplexMatrix op = ComplexMatrix::identity(state.dim());
        for (std::size_t k = 0; k < sites.size(); ++k) {
            op = op * embed_at(bloch(params[2 * k], params[2 * k + 1]), net.dims(), sites[k]);
        }
        return op;
    };

    auto chsh = [&](const std::vector<double>& params) {
        const ComplexMatrix a0 = observable(s1, params.data());
        const ComplexMatrix a1 = observable(s1, params.data() + per_side);
        const ComplexMatrix b0 = observable(s2, params.data() + 2 * per_side);
        const ComplexMatrix b1 = observable(s2, params.data() + 2 * per_side + per_side_b);
        auto corr = [&](const ComplexMatrix& x, const ComplexMatrix& y) {
            return (x * y * state.matrix()).trace().real();
        };
        return std::abs(corr(a0, b0) - corr(a0, b1) + corr(a1, b0) + corr(a1, b1));
    };

    Rng rng(options.seed);
    double best = 0.0;
    std::vector<double> best_params(n_params, 0.0);
    for (std::size_t start = 0; start < options.starts; ++start) {
        std::vector<double> params(n_params);
        for (std::size_t i = 0; i < n_params; ++i) {
            // theta over [0, pi), phase over the full circle
            params[i] = i % 2 == 0 ? rng.uniform(0.0, M_PI) : rng.uniform(0.0, 2.0 * M_PI);
        }
        const double value = chsh(params);
        if (value > best) {
            best = value;
            best_params = params;
        }
    }
    const std::vector<double> refined =
        nelder_mead_maximize(chsh, best_params, 0.2, options.refine_iters);
    return std::max(best, chsh(refined));
}

} // namespace lightcone
