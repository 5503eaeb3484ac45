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
 * Quantum states and generalized measurements. A measurement is an indexed
 * set of operators {M_i} whose effects E_i = M_i^dag M_i sum to the
 * identity; recording outcome i updates a density operator rho to
 * M_i rho M_i^dag / Tr[M_i rho M_i^dag]. Operators may target a single
 * subsystem, in which case they are embedded with identities on demand.
 *
 * Basis convention: |H> = (1,0), |V> = (0,1); composite bases are ordered
 * left-factor major (HH, HV, VH, VV).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lightcone/errors.hpp"
#include "lightcone/linalg.hpp"

namespace lightcone {

/// Probabilities below this are treated as zero; state update and
/// conditioning are undefined there.
inline constexpr double kZeroProbabilityEps = 1e-12;

/// Validation tolerance for density operators (Hermiticity, trace,
/// positivity) and measurement-model completeness.
inline constexpr double kStateTol = 1e-10;

/// Positive unit-trace operator together with its subsystem factorization.
class DensityOperator {
  public:
    DensityOperator(ComplexMatrix matrix, std::vector<std::size_t> dims)
        : matrix_(std::move(matrix)), dims_(std::move(dims)) {
        std::size_t total = 1;
        for (std::size_t d : dims_) {
            if (d == 0) {
                throw DimensionError("zero subsystem dimension");
            }
            total *= d;
        }
        if (!matrix_.is_square() || matrix_.rows() != total) {
            throw DimensionError("state matrix " + matrix_.shape_string() +
                                 " does not match subsystem dims (product " +
                                 std::to_string(total) + ")");
        }
        if (!matrix_.is_hermitian(kStateTol)) {
            throw HermiticityError("density operator is not Hermitian");
        }
        if (std::abs(matrix_.trace() - cplx(1.0, 0.0)) > kStateTol) {
            throw PreconditionError("density operator trace differs from 1");
        }
        for (double ev : hermitian_eigenvalues(matrix_)) {
            if (ev < -kStateTol) {
                throw PreconditionError("density operator has negative eigenvalue " +
                                        std::to_string(ev));
            }
        }
    }

    static DensityOperator from_ket(const ComplexVector& ket, std::vector<std::size_t> dims) {
        const ComplexVector n = ket.normalized();
        return DensityOperator(outer(n, n), std::move(dims));
    }

    static DensityOperator maximally_mixed(std::vector<std::size_t> dims) {
        std::size_t total = 1;
        for (std::size_t d : dims) {
            total *= d;
        }
        ComplexMatrix m = ComplexMatrix::identity(total);
        m *= cplx(1.0 / static_cast<double>(total), 0.0);
        return DensityOperator(std::move(m), std::move(dims));
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return matrix_.rows(); }

    /// Reduced state of one subsystem (partial trace over the rest).
    DensityOperator reduced(std::size_t keep) const {
        return DensityOperator(partial_trace(matrix_, dims_, keep), {dims_.at(keep)});
    }

  private:
    ComplexMatrix matrix_;
    std::vector<std::size_t> dims_;
};

/// One branch of a measurement: outcome label, operator M_i, and (for
/// spectral models) the eigenvalue the outcome reports.
struct MeasurementOperator {
    std::string outcome;
    ComplexMatrix op;
    double eigenvalue = std::numeric_limits<double>::quiet_NaN();
};

/// Indexed measurement-operator set {M_i} with sum_i M_i^dag M_i = I,
/// acting on one subsystem (target set) or the whole system (target empty).
class MeasurementModel {
  public:
    MeasurementModel(std::string label, std::vector<MeasurementOperator> operators,
                     std::optional<std::size_t> target = std::nullopt)
        : label_(std::move(label)), operators_(std::move(operators)), target_(target) {
        if (operators_.empty()) {
            throw PreconditionError("measurement model needs at least one operator");
        }
        const std::size_t d = operators_.front().op.rows();
        ComplexMatrix completeness(d, d);
        for (const MeasurementOperator& mo : operators_) {
            if (!mo.op.is_square() || mo.op.rows() != d) {
                throw DimensionError("measurement operators must share one square shape");
            }
            completeness += mo.op.adjoint() * mo.op;
        }
        if (!completeness.approx_equal(ComplexMatrix::identity(d), kStateTol)) {
            throw PreconditionError("measurement model '" + label_ +
                                    "' violates completeness: sum M_i^dag M_i != I");
        }
    }

    const std::string& label() const { return label_; }
    const std::vector<MeasurementOperator>& operators() const { return operators_; }
    std::optional<std::size_t> target() const { return target_; }
    std::size_t operator_dim() const { return operators_.front().op.rows(); }

    const MeasurementOperator& operator_for(const std::string& outcome) const {
        for (const MeasurementOperator& mo : operators_) {
            if (mo.outcome == outcome) {
                return mo;
            }
        }
        throw PreconditionError("model '" + label_ + "' has no outcome '" + outcome + "'");
    }

    /// M_i lifted to the full system of the given decomposition.
    ComplexMatrix embedded_operator(const std::string& outcome,
                                    const std::vector<std::size_t>& dims) const {
        const ComplexMatrix& op = operator_for(outcome).op;
        if (!target_.has_value()) {
            std::size_t total = 1;
            for (std::size_t d : dims) {
                total *= d;
            }
            if (op.rows() != total) {
                throw DimensionError("full-system operator dimension mismatch");
            }
            return op;
        }
        return embed_at(op, dims, *target_);
    }

    /// Effect E_i = M_i^dag M_i lifted to the full system.
    ComplexMatrix embedded_effect(const std::string& outcome,
                                  const std::vector<std::size_t>& dims) const {
        const ComplexMatrix m = embedded_operator(outcome, dims);
        return m.adjoint() * m;
    }

  private:
    std::string label_;
    std::vector<MeasurementOperator> operators_;
    std::optional<std::size_t> target_;
};

/// Hermitian operator with a display name.
struct Observable {
    ComplexMatrix matrix;
    std::string name;

    Observable(ComplexMatrix m, std::string n) : matrix(std::move(m)), name(std::move(n)) {
        if (!matrix.is_hermitian(kStateTol)) {
            throw HermiticityError("observable '" + name + "' is not Hermitian");
        }
    }
};

/// Tr(E rho) for a full-dimension effect E. The effect must be positive
/// semidefinite and bounded by the identity; the result is clamped to [0,1]
/// against roundoff.
inline double born_probability(const DensityOperator& rho, const ComplexMatrix& effect) {
    if (!effect.is_square() || effect.rows() != rho.dim()) {
        throw DimensionError("effect dimension does not match state");
    }
    if (!effect.is_hermitian(kStateTol)) {
        throw EffectError("effect is not Hermitian");
    }
    const std::vector<double> evs = hermitian_eigenvalues(effect);
    if (evs.front() < -kStateTol) {
        throw EffectError("effect has negative eigenvalue " + std::to_string(evs.front()));
    }
    if (evs.back() > 1.0 + kStateTol) {
        throw EffectError("effect exceeds the identity (max eigenvalue " +
                          std::to_string(evs.back()) + ")");
    }
    const double p = (effect * rho.matrix()).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

/// Post-measurement state M_i rho M_i^dag / Tr[M_i rho M_i^dag] for the
/// recorded outcome. Throws ZeroProbabilityOutcome when the normalization
/// is numerically zero: the update rule is undefined there.
inline DensityOperator update_state(const DensityOperator& rho, const MeasurementModel& model,
                                    const std::string& outcome) {
    const ComplexMatrix m = model.embedded_operator(outcome, rho.dims());
    const ComplexMatrix updated = m * rho.matrix() * m.adjoint();
    const double norm = updated.trace().real();
    if (norm <= kZeroProbabilityEps) {
        throw ZeroProbabilityOutcome("outcome '" + outcome + "' of model '" + model.label() +
                                     "' has probability " + std::to_string(norm));
    }
    ComplexMatrix result = updated;
    result *= cplx(1.0 / norm, 0.0);
    return DensityOperator(std::move(result), rho.dims());
}

namespace detail {

inline std::string format_eigenvalue(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace detail

/// Ideal projective measurement of an observable: one operator per merged
/// eigenvalue, outcome labels carry the eigenvalue.
inline MeasurementModel spectral_measurement(const Observable& obs,
                                             std::optional<std::size_t> target = std::nullopt) {
    const Eigensystem eig = hermitian_eigensystem(obs.matrix);
    std::vector<MeasurementOperator> ops;
    ops.reserve(eig.values.size());
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        ops.push_back({detail::format_eigenvalue(eig.values[k]), eig.projectors[k],
                       eig.values[k]});
    }
    return MeasurementModel(obs.name, std::move(ops), target);
}

/// Discrete distribution with labeled support.
struct Distribution {
    std::vector<std::string> outcomes;
    std::vector<double> p;

    double prob_of(const std::string& outcome) const {
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (outcomes[i] == outcome) {
                return p[i];
            }
        }
        throw PreconditionError("no outcome '" + outcome + "' in distribution");
    }
};

enum class Side { A, B };

/// Joint outcome table P(i, j) for two compatible measurements.
struct JointTable {
    std::vector<std::string> outcomes_a;
    std::vector<std::string> outcomes_b;
    std::vector<double> p; // row-major over (a, b)

    double at(std::size_t i, std::size_t j) const { return p[i * outcomes_b.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return p[i * outcomes_b.size() + j]; }

    double prob_of(const std::string& a, const std::string& b) const {
        return at(index_of(Side::A, a), index_of(Side::B, b));
    }

    std::size_t index_of(Side side, const std::string& outcome) const {
        const std::vector<std::string>& labels = side == Side::A ? outcomes_a : outcomes_b;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == outcome) {
                return i;
            }
        }
        throw PreconditionError("no outcome '" + outcome + "' in joint table");
    }

    Distribution marginal(Side side) const {
        Distribution d;
        if (side == Side::A) {
            d.outcomes = outcomes_a;
            d.p.assign(outcomes_a.size(), 0.0);
            for (std::size_t i = 0; i < outcomes_a.size(); ++i) {
                for (std::size_t j = 0; j < outcomes_b.size(); ++j) {
                    d.p[i] += at(i, j);
                }
            }
        } else {
            d.outcomes = outcomes_b;
            d.p.assign(outcomes_b.size(), 0.0);
            for (std::size_t j = 0; j < outcomes_b.size(); ++j) {
                for (std::size_t i = 0; i < outcomes_a.size(); ++i) {
                    d.p[j] += at(i, j);
                }
            }
        }
        return d;
    }
};

/// Born rule generalized to a pair of compatible measurements:
/// P(i, j) = Tr[(E_i^A tensor E_j^B) rho], with effects embedded on their
/// disjoint targets. Overlapping targets are rejected.
inline JointTable joint_distribution(const DensityOperator& rho, const MeasurementModel& model_a,
                                     const MeasurementModel& model_b) {
    if (!model_a.target().has_value() || !model_b.target().has_value() ||
        *model_a.target() == *model_b.target()) {
        throw CompatibilityError("joint distribution requires disjoint subsystem targets");
    }
    JointTable table;
    for (const MeasurementOperator& mo : model_a.operators()) {
        table.outcomes_a.push_back(mo.outcome);
    }
    for (const MeasurementOperator& mo : model_b.operators()) {
        table.outcomes_b.push_back(mo.outcome);
    }
    table.p.assign(table.outcomes_a.size() * table.outcomes_b.size(), 0.0);
    for (std::size_t i = 0; i < table.outcomes_a.size(); ++i) {
        const ComplexMatrix ea = model_a.embedded_effect(table.outcomes_a[i], rho.dims());
        for (std::size_t j = 0; j < table.outcomes_b.size(); ++j) {
            const ComplexMatrix eb = model_b.embedded_effect(table.outcomes_b[j], rho.dims());
            const double p = (ea * eb * rho.matrix()).trace().real();
            table.at(i, j) = std::clamp(p, 0.0, 1.0);
        }
    }
    return table;
}

/// P(. | given) on the side opposite to `given_side`, by the standard ratio
/// P(A,B)/P(B). Conditioning on a numerically null outcome is undefined.
inline Distribution conditional_probability(const JointTable& joint, Side given_side,
                                            const std::string& given_outcome) {
    const Distribution denom = joint.marginal(given_side);
    const double pb = denom.prob_of(given_outcome);
    if (pb <= kZeroProbabilityEps) {
        throw ZeroProbabilityOutcome("conditioning on outcome '" + given_outcome +
                                     "' of probability " + std::to_string(pb));
    }
    Distribution out;
    if (given_side == Side::B) {
        const std::size_t j = joint.index_of(Side::B, given_outcome);
        out.outcomes = joint.outcomes_a;
        for (std::size_t i = 0; i < joint.outcomes_a.size(); ++i) {
            out.p.push_back(joint.at(i, j) / pb);
        }
    } else {
        const std::size_t i = joint.index_of(Side::A, given_outcome);
        out.outcomes = joint.outcomes_b;
        for (std::size_t j = 0; j < joint.outcomes_b.size(); ++j) {
            out.p.push_back(joint.at(i, j) / pb);
        }
    }
    return out;
}

} // namespace lightcone
