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
 * The two-photon polarization scenario: the maximally entangled state
 * 1/sqrt(2)(|HH> + |VV>) measured by two parties at axis angles a, b.
 *
 * The analyses here separate three conditions on the joint statistics:
 * factorizability P(A,B) = P(A)P(B), outcome independence P(A|B) = P(A),
 * and parameter independence (each side's marginal ignores the other
 * side's setting). Quantum statistics violate the first two and satisfy
 * the third; the CHSH machinery quantifies how far, against the exhaustive
 * deterministic local-model bound of 2.
 *
 * Alice measures subsystem 0 (the left photon), Bob subsystem 1. Axis
 * angles are radians mod pi; outcome "par" records polarization parallel
 * to the axis, "perp" orthogonal to it.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lightcone/errors.hpp"
#include "lightcone/format.hpp"
#include "lightcone/linalg.hpp"
#include "lightcone/optimize.hpp"
#include "lightcone/quantum.hpp"

namespace lightcone {

inline constexpr const char* kParallel = "par";
inline constexpr const char* kPerpendicular = "perp";

inline ComplexVector ket_h() { return ComplexVector{cplx(1.0), cplx(0.0)}; }
inline ComplexVector ket_v() { return ComplexVector{cplx(0.0), cplx(1.0)}; }

/// Linear polarization ket along axis angle theta.
inline ComplexVector polarization_ket(double theta) {
    return ComplexVector{cplx(std::cos(theta)), cplx(std::sin(theta))};
}

/// 1/sqrt(2)(|HH> + |VV>).
inline ComplexVector phi_plus_ket() {
    const double r = 1.0 / std::sqrt(2.0);
    return ComplexVector{cplx(r), cplx(0.0), cplx(0.0), cplx(r)};
}

inline DensityOperator make_phi_plus() {
    return DensityOperator::from_ket(phi_plus_ket(), {2, 2});
}

/// |theta1> tensor |theta2>, both photons linearly polarized.
inline DensityOperator product_state(double theta1, double theta2) {
    return DensityOperator::from_ket(
        tensor_product(polarization_ket(theta1), polarization_ket(theta2)), {2, 2});
}

/// Projective polarization measurement along axis angle theta on one
/// photon: projectors onto (cos t, sin t) and (-sin t, cos t), reporting
/// +1 / -1 so correlation functions read off the eigenvalues.
inline MeasurementModel polarization_model(double theta, std::size_t target,
                                           const std::string& label = "polarization") {
    const ComplexVector par = polarization_ket(theta);
    const ComplexVector perp =
        ComplexVector{cplx(-std::sin(theta)), cplx(std::cos(theta))};
    std::vector<MeasurementOperator> ops;
    ops.push_back({kParallel, outer(par, par), +1.0});
    ops.push_back({kPerpendicular, outer(perp, perp), -1.0});
    return MeasurementModel(label, std::move(ops), target);
}

/// Joint outcome table with Alice at angle a on photon 0, Bob at angle b
/// on photon 1.
inline JointTable polarization_joint(const DensityOperator& state, double a, double b) {
    return joint_distribution(state, polarization_model(a, 0, "alice"),
                              polarization_model(b, 1, "bob"));
}

/// E(a,b) = P(same) - P(different).
inline double correlation(const DensityOperator& state, double a, double b) {
    const JointTable t = polarization_joint(state, a, b);
    return t.prob_of(kParallel, kParallel) + t.prob_of(kPerpendicular, kPerpendicular) -
           t.prob_of(kParallel, kPerpendicular) - t.prob_of(kPerpendicular, kParallel);
}

/// A local hidden-variable model: a finite mixture over lambda of
/// independent response distributions for the two wings. response_a/b give
/// P(par | setting angle, lambda index).
struct LhvModel {
    std::vector<double> weights;
    std::function<double(double, std::size_t)> response_a;
    std::function<double(double, std::size_t)> response_b;

    void validate() const {
        double sum = 0.0;
        for (double w : weights) {
            if (w < 0.0) {
                throw PreconditionError("LHV weights must be nonnegative");
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw PreconditionError("LHV weights must sum to 1");
        }
    }
};

/// Two-photon scenario: prepared state plus the two setting angles, with
/// an optional hidden-variable surrogate for comparison runs.
struct BellScenario {
    DensityOperator state;
    double setting_a = 0.0;
    double setting_b = 0.0;
    std::optional<LhvModel> hidden_model;

    BellScenario(DensityOperator s, double a, double b,
                 std::optional<LhvModel> hidden = std::nullopt)
        : state(std::move(s)), setting_a(a), setting_b(b), hidden_model(std::move(hidden)) {
        if (state.dims() != std::vector<std::size_t>{2, 2}) {
            throw DimensionError("Bell scenario requires a 2 tensor 2 state");
        }
    }
};

/// Mixture joint table of an LHV model at the given settings. Factorizes
/// per lambda by construction.
inline JointTable joint_from_lhv(const LhvModel& model, double a, double b) {
    model.validate();
    JointTable t;
    t.outcomes_a = {kParallel, kPerpendicular};
    t.outcomes_b = {kParallel, kPerpendicular};
    t.p.assign(4, 0.0);
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        const double pa = model.response_a(a, l);
        const double pb = model.response_b(b, l);
        if (pa < 0.0 || pa > 1.0 || pb < 0.0 || pb > 1.0) {
            throw PreconditionError("LHV response probabilities must lie in [0,1]");
        }
        t.at(0, 0) += model.weights[l] * pa * pb;
        t.at(0, 1) += model.weights[l] * pa * (1.0 - pb);
        t.at(1, 0) += model.weights[l] * (1.0 - pa) * pb;
        t.at(1, 1) += model.weights[l] * (1.0 - pa) * (1.0 - pb);
    }
    return t;
}

struct GapResult {
    bool holds = false;
    double max_gap = 0.0;
};

namespace detail {

inline JointTable scenario_joint(const BellScenario& s) {
    if (s.hidden_model.has_value()) {
        return joint_from_lhv(*s.hidden_model, s.setting_a, s.setting_b);
    }
    return polarization_joint(s.state, s.setting_a, s.setting_b);
}

} // namespace detail

/// Largest deviation |P(A,B) - P(A)P(B)| over the four outcome pairs.
inline GapResult check_factorizability(const BellScenario& s, double tol) {
    const JointTable joint = detail::scenario_joint(s);
    const Distribution ma = joint.marginal(Side::A);
    const Distribution mb = joint.marginal(Side::B);
    double gap = 0.0;
    for (std::size_t i = 0; i < joint.outcomes_a.size(); ++i) {
        for (std::size_t j = 0; j < joint.outcomes_b.size(); ++j) {
            gap = std::max(gap, std::abs(joint.at(i, j) - ma.p[i] * mb.p[j]));
        }
    }
    return {gap <= tol, gap};
}

/// Largest deviation |P(A|B) - P(A)| (both directions). Throws when a
/// conditioning outcome has numerically zero probability.
inline GapResult check_outcome_independence(const BellScenario& s, double tol) {
    const JointTable joint = detail::scenario_joint(s);
    const Distribution ma = joint.marginal(Side::A);
    const Distribution mb = joint.marginal(Side::B);
    double gap = 0.0;
    for (std::size_t j = 0; j < joint.outcomes_b.size(); ++j) {
        const Distribution cond = conditional_probability(joint, Side::B, joint.outcomes_b[j]);
        for (std::size_t i = 0; i < joint.outcomes_a.size(); ++i) {
            gap = std::max(gap, std::abs(cond.p[i] - ma.p[i]));
        }
    }
    for (std::size_t i = 0; i < joint.outcomes_a.size(); ++i) {
        const Distribution cond = conditional_probability(joint, Side::A, joint.outcomes_a[i]);
        for (std::size_t j = 0; j < joint.outcomes_b.size(); ++j) {
            gap = std::max(gap, std::abs(cond.p[j] - mb.p[j]));
        }
    }
    return {gap <= tol, gap};
}

/// Each wing's marginal at a fixed local setting must not move as the
/// remote setting sweeps the grid. The gap is the largest spread observed.
inline GapResult check_parameter_independence(const BellScenario& s,
                                              const std::vector<double>& settings_grid,
                                              double tol) {
    if (settings_grid.empty()) {
        throw PreconditionError("parameter-independence check needs a settings grid");
    }
    double gap = 0.0;
    for (double a : settings_grid) {
        std::array<double, 2> lo = {1.0, 1.0};
        std::array<double, 2> hi = {0.0, 0.0};
        for (double b : settings_grid) {
            const Distribution ma =
                detail::scenario_joint(BellScenario(s.state, a, b, s.hidden_model))
                    .marginal(Side::A);
            for (std::size_t i = 0; i < 2; ++i) {
                lo[i] = std::min(lo[i], ma.p[i]);
                hi[i] = std::max(hi[i], ma.p[i]);
            }
        }
        gap = std::max(gap, std::max(hi[0] - lo[0], hi[1] - lo[1]));
    }
    for (double b : settings_grid) {
        std::array<double, 2> lo = {1.0, 1.0};
        std::array<double, 2> hi = {0.0, 0.0};
        for (double a : settings_grid) {
            const Distribution mb =
                detail::scenario_joint(BellScenario(s.state, a, b, s.hidden_model))
                    .marginal(Side::B);
            for (std::size_t i = 0; i < 2; ++i) {
                lo[i] = std::min(lo[i], mb.p[i]);
                hi[i] = std::max(hi[i], mb.p[i]);
            }
        }
        gap = std::max(gap, std::max(hi[0] - lo[0], hi[1] - lo[1]));
    }
    return {gap <= tol, gap};
}

struct ChshResult {
    double s = 0.0;
    double abs_s = 0.0;
};

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
inline ChshResult chsh_value(const DensityOperator& state, double a, double a_prime, double b,
                             double b_prime) {
    const double s = correlation(state, a, b) - correlation(state, a, b_prime) +
                     correlation(state, a_prime, b) + correlation(state, a_prime, b_prime);
    return {s, std::abs(s)};
}

inline ChshResult chsh_of_lhv(const LhvModel& model, double a, double a_prime, double b,
                              double b_prime) {
    model.validate();
    auto corr = [&](double x, double y) {
        double e = 0.0;
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            e += model.weights[l] * (2.0 * model.response_a(x, l) - 1.0) *
                 (2.0 * model.response_b(y, l) - 1.0);
        }
        return e;
    };
    const double s = corr(a, b) - corr(a, b_prime) + corr(a_prime, b) + corr(a_prime, b_prime);
    return {s, std::abs(s)};
}

struct LhvBoundResult {
    double max_abs_s = 0.0;
    /// Best deterministic responses (A(a), A(a'), B(b), B(b')) as +/-1.
    std::array<int, 4> best_strategy = {0, 0, 0, 0};
};

/// Exhaustive scan of the 16 deterministic local strategies. Every local
/// hidden-variable model is a mixture of these, so its |S| cannot exceed
/// the extreme-point maximum, which is exactly 2.
inline LhvBoundResult lhv_chsh_bound() {
    LhvBoundResult out;
    for (int ra = -1; ra <= 1; ra += 2) {
        for (int ra2 = -1; ra2 <= 1; ra2 += 2) {
            for (int rb = -1; rb <= 1; rb += 2) {
                for (int rb2 = -1; rb2 <= 1; rb2 += 2) {
                    const int s = ra * rb - ra * rb2 + ra2 * rb + ra2 * rb2;
                    if (std::abs(s) > out.max_abs_s) {
                        out.max_abs_s = std::abs(s);
                        out.best_strategy = {ra, ra2, rb, rb2};
                    }
                }
            }
        }
    }
    return out;
}

/// Random finite-mixture LHV model with smooth sinusoidal responses, for
/// property tests of the |S| <= 2 bound.
inline LhvModel random_lhv(Rng& rng, std::size_t n_lambda) {
    std::vector<double> weights(n_lambda);
    double sum = 0.0;
    for (double& w : weights) {
        w = rng.uniform(0.05, 1.0);
        sum += w;
    }
    for (double& w : weights) {
        w /= sum;
    }
    std::vector<double> phase_a(n_lambda), phase_b(n_lambda);
    std::vector<double> contrast_a(n_lambda), contrast_b(n_lambda);
    for (std::size_t l = 0; l < n_lambda; ++l) {
        phase_a[l] = rng.uniform(0.0, M_PI);
        phase_b[l] = rng.uniform(0.0, M_PI);
        contrast_a[l] = rng.uniform(0.0, 1.0);
        contrast_b[l] = rng.uniform(0.0, 1.0);
    }
    LhvModel model;
    model.weights = std::move(weights);
    model.response_a = [phase_a, contrast_a](double theta, std::size_t l) {
        return 0.5 + 0.5 * contrast_a[l] * std::cos(2.0 * (theta - phase_a[l]));
    };
    model.response_b = [phase_b, contrast_b](double theta, std::size_t l) {
        return 0.5 + 0.5 * contrast_b[l] * std::cos(2.0 * (theta - phase_b[l]));
    };
    return model;
}

struct ChshSearchOptions {
    std::size_t grid_n = 64;       // coarse grid per angle
    std::size_t refine_iters = 400;
    std::uint64_t seed = 0;        // reserved for future stochastic phases
};

struct ChshSearchResult {
    ChshResult best;
    std::array<double, 4> angles = {0.0, 0.0, 0.0, 0.0}; // a, a', b, b'
};

/// Coarse grid scan (correlations cached per angle pair) followed by a
/// simplex refinement of |S|.
inline ChshSearchResult optimize_chsh(const DensityOperator& state,
                                      const ChshSearchOptions& options = {}) {
    const std::size_t n = options.grid_n;
    if (n < 2) {
        throw PreconditionError("CHSH search grid must have at least 2 points");
    }
    std::vector<double> angles(n);
    for (std::size_t k = 0; k < n; ++k) {
        angles[k] = M_PI * static_cast<double>(k) / static_cast<double>(n);
    }
    // E(theta_i, theta_j) once per pair; the quadruple scan is then lookups.
    std::vector<double> corr(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            corr[i * n + j] = correlation(state, angles[i], angles[j]);
        }
    }
    double best = -1.0;
    std::array<std::size_t, 4> best_idx = {0, 0, 0, 0};
    for (std::size_t ia = 0; ia < n; ++ia) {
        for (std::size_t ia2 = 0; ia2 < n; ++ia2) {
            for (std::size_t ib = 0; ib < n; ++ib) {
                const double e1 = corr[ia * n + ib];
                const double e3 = corr[ia2 * n + ib];
                for (std::size_t ib2 = 0; ib2 < n; ++ib2) {
                    const double s =
                        e1 - corr[ia * n + ib2] + e3 + corr[ia2 * n + ib2];
                    if (std::abs(s) > best) {
                        best = std::abs(s);
                        best_idx = {ia, ia2, ib, ib2};
                    }
                }
            }
        }
    }

    auto objective = [&](const std::vector<double>& x) {
        return chsh_value(state, x[0], x[1], x[2], x[3]).abs_s;
    };
    const std::vector<double> refined = nelder_mead_maximize(
        objective,
        {angles[best_idx[0]], angles[best_idx[1]], angles[best_idx[2]], angles[best_idx[3]]},
        M_PI / static_cast<double>(n), options.refine_iters);

    ChshSearchResult out;
    out.angles = {refined[0], refined[1], refined[2], refined[3]};
    out.best = chsh_value(state, refined[0], refined[1], refined[2], refined[3]);
    return out;
}

/// Largest |S| over uniformly random angle quadruples.
inline double chsh_random_scan(const DensityOperator& state, std::size_t samples,
                               std::uint64_t seed) {
    Rng rng(seed);
    double best = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double s = chsh_value(state, rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI),
                                    rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI))
                             .abs_s;
        best = std::max(best, s);
    }
    return best;
}

struct NoSignallingReport {
    bool pass = false;
    double max_dev_alice = 0.0; // across remote settings and vs no remote measurement
    double max_dev_bob = 0.0;
    double tol = 0.0;
};

/// Each wing's outcome distribution must be invariant both across the
/// remote wing's settings and against the remote measurement being absent
/// entirely (computed from the reduced state).
inline NoSignallingReport verify_no_signalling(const DensityOperator& state,
                                               const std::vector<double>& a_grid,
                                               const std::vector<double>& b_grid, double tol) {
    if (state.dims() != std::vector<std::size_t>{2, 2}) {
        throw DimensionError("no-signalling check requires a 2 tensor 2 state");
    }
    NoSignallingReport report;
    report.tol = tol;

    const DensityOperator rho_a = state.reduced(0);
    const DensityOperator rho_b = state.reduced(1);

    for (double a : a_grid) {
        const MeasurementModel local = polarization_model(a, 0, "alice");
        std::array<double, 2> baseline = {0.0, 0.0};
        for (std::size_t i = 0; i < 2; ++i) {
            baseline[i] = born_probability(
                rho_a, local.operators()[i].op.adjoint() * local.operators()[i].op);
        }
        for (double b : b_grid) {
            const Distribution ma = polarization_joint(state, a, b).marginal(Side::A);
            for (std::size_t i = 0; i < 2; ++i) {
                report.max_dev_alice =
                    std::max(report.max_dev_alice, std::abs(ma.p[i] - baseline[i]));
            }
        }
    }
    for (double b : b_grid) {
        const MeasurementModel local = polarization_model(b, 1, "bob");
        std::array<double, 2> baseline = {0.0, 0.0};
        for (std::size_t i = 0; i < 2; ++i) {
            baseline[i] = born_probability(
                rho_b, local.operators()[i].op.adjoint() * local.operators()[i].op);
        }
        for (double a : a_grid) {
            const Distribution mb = polarization_joint(state, a, b).marginal(Side::B);
            for (std::size_t i = 0; i < 2; ++i) {
                report.max_dev_bob =
                    std::max(report.max_dev_bob, std::abs(mb.p[i] - baseline[i]));
            }
        }
    }
    report.pass = report.max_dev_alice <= tol && report.max_dev_bob <= tol;
    return report;
}

/// One grid cell of the correlation analysis.
struct CorrelationRow {
    double a = 0.0;
    double b = 0.0;
    // P(par,par), P(par,perp), P(perp,par), P(perp,perp)
    std::array<double, 4> joint = {0.0, 0.0, 0.0, 0.0};
    double p_a = 0.0;    // P(Alice par)
    double p_b = 0.0;    // P(Bob par)
    double cond = 0.0;   // P(Alice par | Bob par), NaN when undefined
    double fact_gap = 0.0;
    double oi_gap = 0.0; // NaN when a conditioning outcome is null
    double pi_gap = 0.0;
};

struct CorrelationReport {
    std::vector<CorrelationRow> rows;
    double max_fact_gap = 0.0;
    double max_oi_gap = 0.0;
    double max_pi_gap = 0.0;
    bool pi_holds = false;
    double tol = 0.0;
};

/// Scan a setting grid and tabulate joints, marginals, conditionals, and
/// the three independence gaps.
inline CorrelationReport build_correlation_report(const DensityOperator& state,
                                                  const std::vector<double>& a_grid,
                                                  const std::vector<double>& b_grid,
                                                  double tol) {
    if (a_grid.empty() || b_grid.empty()) {
        throw PreconditionError("correlation report needs nonempty angle grids");
    }
    CorrelationReport report;
    report.tol = tol;

    // Marginal spreads for the parameter-independence column.
    std::vector<std::array<double, 2>> alice_lo(a_grid.size(), {1.0, 1.0});
    std::vector<std::array<double, 2>> alice_hi(a_grid.size(), {0.0, 0.0});
    std::vector<std::array<double, 2>> bob_lo(b_grid.size(), {1.0, 1.0});
    std::vector<std::array<double, 2>> bob_hi(b_grid.size(), {0.0, 0.0});

    std::vector<JointTable> tables;
    tables.reserve(a_grid.size() * b_grid.size());
    for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
        for (std::size_t ib = 0; ib < b_grid.size(); ++ib) {
            JointTable t = polarization_joint(state, a_grid[ia], b_grid[ib]);
            const Distribution ma = t.marginal(Side::A);
            const Distribution mb = t.marginal(Side::B);
            for (std::size_t i = 0; i < 2; ++i) {
                alice_lo[ia][i] = std::min(alice_lo[ia][i], ma.p[i]);
                alice_hi[ia][i] = std::max(alice_hi[ia][i], ma.p[i]);
                bob_lo[ib][i] = std::min(bob_lo[ib][i], mb.p[i]);
                bob_hi[ib][i] = std::max(bob_hi[ib][i], mb.p[i]);
            }
            tables.push_back(std::move(t));
        }
    }

    std::size_t cell = 0;
    for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
        for (std::size_t ib = 0; ib < b_grid.size(); ++ib, ++cell) {
            const JointTable& t = tables[cell];
            CorrelationRow row;
            row.a = a_grid[ia];
            row.b = b_grid[ib];
            row.joint = {t.at(0, 0), t.at(0, 1), t.at(1, 0), t.at(1, 1)};
            const Distribution ma = t.marginal(Side::A);
            const Distribution mb = t.marginal(Side::B);
            row.p_a = ma.p[0];
            row.p_b = mb.p[0];

            const BellScenario cell_scenario(state, a_grid[ia], b_grid[ib]);
            row.fact_gap = check_factorizability(cell_scenario, tol).max_gap;
            try {
                row.cond = conditional_probability(t, Side::B, kParallel).p[0];
            } catch (const ZeroProbabilityOutcome&) {
                row.cond = std::numeric_limits<double>::quiet_NaN();
            }
            try {
                row.oi_gap = check_outcome_independence(cell_scenario, tol).max_gap;
                report.max_oi_gap = std::max(report.max_oi_gap, row.oi_gap);
            } catch (const ZeroProbabilityOutcome&) {
                row.oi_gap = std::numeric_limits<double>::quiet_NaN();
            }
            row.pi_gap = std::max(
                std::max(alice_hi[ia][0] - alice_lo[ia][0], alice_hi[ia][1] - alice_lo[ia][1]),
                std::max(bob_hi[ib][0] - bob_lo[ib][0], bob_hi[ib][1] - bob_lo[ib][1]));

            report.max_fact_gap = std::max(report.max_fact_gap, row.fact_gap);
            report.max_pi_gap = std::max(report.max_pi_gap, row.pi_gap);
            report.rows.push_back(row);
        }
    }
    report.pi_holds = report.max_pi_gap <= tol;
    return report;
}

/// CSV rendering, 17 significant digits throughout.
inline std::string correlation_csv(const CorrelationReport& report) {
    std::string out =
        "a,b,p_par_par,p_par_perp,p_perp_par,p_perp_perp,p_alice_par,p_bob_par,"
        "cond_alice_par_given_bob_par,fact_gap,oi_gap,pi_gap\n";
    for (const CorrelationRow& row : report.rows) {
        out += format_g17(row.a) + ',' + format_g17(row.b);
        for (double v : row.joint) {
            out += ',' + format_g17(v);
        }
        out += ',' + format_g17(row.p_a) + ',' + format_g17(row.p_b) + ',' +
               format_g17(row.cond) + ',' + format_g17(row.fact_gap) + ',' +
               format_g17(row.oi_gap) + ',' + format_g17(row.pi_gap) + '\n';
    }
    return out;
}

} // namespace lightcone
