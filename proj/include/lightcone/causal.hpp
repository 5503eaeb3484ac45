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
 * Structural causal model over the two-wing scenario's variables:
 * preparation Lambda, settings a and b, Bob's outcome X and Alice's
 * outcome Y. Lambda and the settings are exogenous roots; the outcomes are
 * generated jointly by a single kernel P(X,Y | Lambda,a,b) with no edge
 * between X and Y. For entangled preparations the kernel does not
 * factorize, which is exactly why it is attached whole rather than split
 * into per-outcome mechanisms.
 *
 * Conditioning is Bayesian on the full joint. Intervening follows the
 * truncated-factorization rule: the target's mechanism is replaced by a
 * point mass, everything upstream keeps its prior, and - because the graph
 * has no outcome-to-outcome edge - intervening on one outcome leaves the
 * other at its kernel marginal. Comparing the two answers for the same
 * value is what the stability report tabulates.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lightcone/bell.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/format.hpp"
#include "lightcone/quantum.hpp"

namespace lightcone {

enum class CausalVariable { Preparation, SettingA, SettingB, OutcomeX, OutcomeY };

inline const char* to_string(CausalVariable v) {
    switch (v) {
        case CausalVariable::Preparation: return "Lambda";
        case CausalVariable::SettingA: return "a";
        case CausalVariable::SettingB: return "b";
        case CausalVariable::OutcomeX: return "X";
        case CausalVariable::OutcomeY: return "Y";
    }
    return "?";
}

/// Variable values: settings take angles, everything else takes labels.
using CausalValue = std::variant<std::string, double>;

struct CausalAssignment {
    CausalVariable var;
    CausalValue value;
};

struct InterventionSpec {
    CausalVariable target;
    CausalValue value;
};

/// Marginals of every variable after a conditioning or intervention step,
/// plus the joint over the two outcomes (rows X, columns Y).
struct CausalMarginals {
    Distribution preparation;
    Distribution setting_a;
    Distribution setting_b;
    Distribution outcome_x;
    Distribution outcome_y;
    JointTable outcomes;

    const Distribution& of(CausalVariable v) const {
        switch (v) {
            case CausalVariable::Preparation: return preparation;
            case CausalVariable::SettingA: return setting_a;
            case CausalVariable::SettingB: return setting_b;
            case CausalVariable::OutcomeX: return outcome_x;
            case CausalVariable::OutcomeY: return outcome_y;
        }
        throw PreconditionError("unknown causal variable");
    }
};

namespace detail {

inline std::size_t outcome_index(const std::string& label) {
    if (label == kParallel) {
        return 0;
    }
    if (label == kPerpendicular) {
        return 1;
    }
    throw PreconditionError("outcome must be 'par' or 'perp', got '" + label + "'");
}

inline bool angle_matches(double candidate, double wanted) {
    return std::abs(candidate - wanted) <= 1e-12;
}

} // namespace detail

/// Finite structural causal model. Preparations may be quantum states
/// (kernel = Born joint at the wing settings) or hidden-variable strata
/// (kernel = product of the stratum's response distributions, which
/// factorizes given the parents). Instances are value types: interventions
/// operate on surgered copies.
class CausalModel {
  public:
    struct Atom {
        std::size_t lambda;
        std::size_t a_index;
        std::size_t b_index;
        std::size_t x; // 0 = par, 1 = perp
        std::size_t y;
        double p;
    };

    /// Quantum model with point-mass exogenous roots.
    static CausalModel from_state(const DensityOperator& state, double a, double b,
                                  const std::string& preparation_name = "prep") {
        CausalModel m;
        m.preparations_.push_back({preparation_name, state, std::nullopt});
        m.lambda_weights_ = {1.0};
        m.a_values_ = {a};
        m.b_values_ = {b};
        return m;
    }

    /// Hidden-variable model: Lambda ranges over the strata with the
    /// mixture weights.
    static CausalModel from_lhv(const LhvModel& lhv, double a, double b) {
        lhv.validate();
        CausalModel m;
        for (std::size_t l = 0; l < lhv.weights.size(); ++l) {
            m.preparations_.push_back(
                {"lambda_" + std::to_string(l), std::nullopt, LhvStratum{lhv, l}});
        }
        m.lambda_weights_ = lhv.weights;
        m.a_values_ = {a};
        m.b_values_ = {b};
        return m;
    }

    /// Register an alternative preparation with prior weight zero, so that
    /// do(Lambda = name) has a defined kernel.
    void add_preparation(const std::string& name, const DensityOperator& state) {
        preparations_.push_back({name, state, std::nullopt});
        lambda_weights_.push_back(0.0);
    }

    std::size_t lambda_count() const { return preparations_.size(); }
    const std::string& lambda_name(std::size_t l) const { return preparations_.at(l).name; }
    const std::vector<double>& lambda_weights() const { return lambda_weights_; }
    const std::vector<double>& setting_a_values() const { return a_values_; }
    const std::vector<double>& setting_b_values() const { return b_values_; }

    std::size_t lambda_index_of(const std::string& name) const {
        for (std::size_t l = 0; l < preparations_.size(); ++l) {
            if (preparations_[l].name == name) {
                return l;
            }
        }
        throw PreconditionError("no preparation named '" + name + "'");
    }

    /// The name of the preparation actually in force (largest prior mass).
    const std::string& dominant_preparation() const {
        std::size_t best = 0;
        for (std::size_t l = 1; l < lambda_weights_.size(); ++l) {
            if (lambda_weights_[l] > lambda_weights_[best]) {
                best = l;
            }
        }
        return preparations_[best].name;
    }

    /// P(X, Y | Lambda, a, b); rows X (Bob, photon 1 at angle b), columns
    /// Y (Alice, photon 0 at angle a).
    JointTable kernel(std::size_t lambda_index, double a, double b) const {
        const Preparation& prep = preparations_.at(lambda_index);
        JointTable t;
        t.outcomes_a = {kParallel, kPerpendicular};
        t.outcomes_b = {kParallel, kPerpendicular};
        t.p.assign(4, 0.0);
        if (prep.state.has_value()) {
            const JointTable born = polarization_joint(*prep.state, a, b);
            for (std::size_t x = 0; x < 2; ++x) {
                for (std::size_t y = 0; y < 2; ++y) {
                    t.at(x, y) = born.at(y, x);
                }
            }
        } else {
            const LhvStratum& stratum = *prep.stratum;
            const double py = stratum.model.response_a(a, stratum.index); // Alice
            const double px = stratum.model.response_b(b, stratum.index); // Bob
            t.at(0, 0) = px * py;
            t.at(0, 1) = px * (1.0 - py);
            t.at(1, 0) = (1.0 - px) * py;
            t.at(1, 1) = (1.0 - px) * (1.0 - py);
        }
        return t;
    }

    /// The full joint as a finite list of weighted atoms.
    std::vector<Atom> joint_atoms() const {
        std::vector<Atom> atoms;
        atoms.reserve(preparations_.size() * a_values_.size() * b_values_.size() * 4);
        for (std::size_t l = 0; l < preparations_.size(); ++l) {
            if (lambda_weights_[l] == 0.0) {
                continue;
            }
            for (std::size_t ai = 0; ai < a_values_.size(); ++ai) {
                for (std::size_t bi = 0; bi < b_values_.size(); ++bi) {
                    const double base = lambda_weights_[l] /
                                        static_cast<double>(a_values_.size() * b_values_.size());
                    const JointTable k = kernel(l, a_values_[ai], b_values_[bi]);
                    for (std::size_t x = 0; x < 2; ++x) {
                        for (std::size_t y = 0; y < 2; ++y) {
                            atoms.push_back({l, ai, bi, x, y, base * k.at(x, y)});
                        }
                    }
                }
            }
        }
        return atoms;
    }

    /// Surgered copy with the preparation prior replaced by a point mass.
    CausalModel with_preparation_forced(const std::string& name) const {
        CausalModel post = *this;
        const std::size_t li = post.lambda_index_of(name);
        std::fill(post.lambda_weights_.begin(), post.lambda_weights_.end(), 0.0);
        post.lambda_weights_[li] = 1.0;
        return post;
    }

    /// Surgered copy with a setting forced to one angle.
    CausalModel with_setting_forced(CausalVariable setting, double angle) const {
        CausalModel post = *this;
        if (setting == CausalVariable::SettingA) {
            post.a_values_ = {angle};
        } else if (setting == CausalVariable::SettingB) {
            post.b_values_ = {angle};
        } else {
            throw PreconditionError("with_setting_forced expects a setting variable");
        }
        return post;
    }

    /// Widen a setting to a uniformly weighted finite domain (used by the
    /// reporting layer for setting sweeps).
    CausalModel with_setting_domain(CausalVariable setting, std::vector<double> values) const {
        if (values.empty()) {
            throw PreconditionError("setting domain must be nonempty");
        }
        CausalModel post = *this;
        if (setting == CausalVariable::SettingA) {
            post.a_values_ = std::move(values);
        } else if (setting == CausalVariable::SettingB) {
            post.b_values_ = std::move(values);
        } else {
            throw PreconditionError("with_setting_domain expects a setting variable");
        }
        return post;
    }

  private:
    struct LhvStratum {
        LhvModel model;
        std::size_t index;
    };
    struct Preparation {
        std::string name;
        std::optional<DensityOperator> state;
        std::optional<LhvStratum> stratum;
    };

    std::vector<Preparation> preparations_;
    std::vector<double> lambda_weights_;
    // Settings are uniformly weighted over their (usually singleton) domains.
    std::vector<double> a_values_;
    std::vector<double> b_values_;
};

namespace detail {

inline bool atom_matches(const CausalModel& model, const CausalModel::Atom& atom,
                         const CausalAssignment& given) {
    switch (given.var) {
        case CausalVariable::Preparation:
            return model.lambda_name(atom.lambda) == std::get<std::string>(given.value);
        case CausalVariable::SettingA:
            return angle_matches(model.setting_a_values()[atom.a_index],
                                 std::get<double>(given.value));
        case CausalVariable::SettingB:
            return angle_matches(model.setting_b_values()[atom.b_index],
                                 std::get<double>(given.value));
        case CausalVariable::OutcomeX:
            return atom.x == outcome_index(std::get<std::string>(given.value));
        case CausalVariable::OutcomeY:
            return atom.y == outcome_index(std::get<std::string>(given.value));
    }
    return false;
}

inline CausalMarginals summarize_atoms(const CausalModel& model,
                                       const std::vector<CausalModel::Atom>& atoms) {
    double total = 0.0;
    for (const auto& atom : atoms) {
        total += atom.p;
    }
    if (total <= kZeroProbabilityEps) {
        throw ZeroProbabilityOutcome("conditioning event has probability " +
                                     std::to_string(total));
    }

    CausalMarginals out;
    for (std::size_t l = 0; l < model.lambda_count(); ++l) {
        out.preparation.outcomes.push_back(model.lambda_name(l));
    }
    out.preparation.p.assign(model.lambda_count(), 0.0);
    for (double a : model.setting_a_values()) {
        out.setting_a.outcomes.push_back(format_g12(a));
    }
    out.setting_a.p.assign(model.setting_a_values().size(), 0.0);
    for (double b : model.setting_b_values()) {
        out.setting_b.outcomes.push_back(format_g12(b));
    }
    out.setting_b.p.assign(model.setting_b_values().size(), 0.0);
    out.outcome_x.outcomes = {kParallel, kPerpendicular};
    out.outcome_x.p.assign(2, 0.0);
    out.outcome_y.outcomes = {kParallel, kPerpendicular};
    out.outcome_y.p.assign(2, 0.0);
    out.outcomes.outcomes_a = {kParallel, kPerpendicular};
    out.outcomes.outcomes_b = {kParallel, kPerpendicular};
    out.outcomes.p.assign(4, 0.0);

    for (const auto& atom : atoms) {
        const double p = atom.p / total;
        out.preparation.p[atom.lambda] += p;
        out.setting_a.p[atom.a_index] += p;
        out.setting_b.p[atom.b_index] += p;
        out.outcome_x.p[atom.x] += p;
        out.outcome_y.p[atom.y] += p;
        out.outcomes.at(atom.x, atom.y) += p;
    }
    return out;
}

inline std::vector<CausalModel::Atom> filter_atoms(const CausalModel& model,
                                                   std::vector<CausalModel::Atom> atoms,
                                                   const std::vector<CausalAssignment>& given) {
    if (given.empty()) {
        return atoms;
    }
    std::vector<CausalModel::Atom> kept;
    for (const auto& atom : atoms) {
        bool match = true;
        for (const CausalAssignment& g : given) {
            match = match && atom_matches(model, atom, g);
        }
        if (match) {
            kept.push_back(atom);
        }
    }
    return kept;
}

} // namespace detail

/// Bayesian conditioning of the full joint on the given assignments.
inline CausalMarginals condition(const CausalModel& model,
                                 const std::vector<CausalAssignment>& given) {
    return detail::summarize_atoms(model,
                                   detail::filter_atoms(model, model.joint_atoms(), given));
}

inline CausalMarginals condition(const CausalModel& model, CausalVariable var,
                                 const CausalValue& value) {
    return condition(model, std::vector<CausalAssignment>{{var, value}});
}

/// do(target = value) by truncated factorization, optionally conditioned
/// afterwards on `given` (e.g. an exogenous stratum). Root targets replace
/// their prior with a point mass; outcome targets are pinned while the
/// partner outcome keeps its kernel marginal, since no outcome-to-outcome
/// edge exists to transmit the surgery.
inline CausalMarginals intervene(const CausalModel& model, const InterventionSpec& spec,
                                 const std::vector<CausalAssignment>& given = {}) {
    switch (spec.target) {
        case CausalVariable::Preparation: {
            const CausalModel post =
                model.with_preparation_forced(std::get<std::string>(spec.value));
            return condition(post, given);
        }
        case CausalVariable::SettingA:
        case CausalVariable::SettingB: {
            const CausalModel post =
                model.with_setting_forced(spec.target, std::get<double>(spec.value));
            return condition(post, given);
        }
        case CausalVariable::OutcomeX:
        case CausalVariable::OutcomeY: {
            const std::size_t forced =
                detail::outcome_index(std::get<std::string>(spec.value));
            std::vector<CausalModel::Atom> atoms = model.joint_atoms();
            // Marginalize the pinned outcome out of the kernel and re-pin it:
            // the partner keeps P(. | Lambda, a, b).
            for (auto& atom : atoms) {
                if (spec.target == CausalVariable::OutcomeX) {
                    atom.x = forced;
                } else {
                    atom.y = forced;
                }
            }
            return detail::summarize_atoms(model,
                                           detail::filter_atoms(model, std::move(atoms), given));
        }
    }
    throw PreconditionError("unknown intervention target");
}

/// One row of the stability table: the partner outcome's distribution when
/// conditioning on var = value versus forcing var = value.
struct StabilityEntry {
    CausalVariable intervened;
    std::string forced_value;
    CausalVariable partner;
    Distribution conditioned;
    Distribution under_do;
    /// Max |P(partner | var=v) - P(partner | do(var=v))|; NaN when
    /// conditioning is undefined (zero-probability value).
    double gap = 0.0;
};

struct StabilityReport {
    std::vector<StabilityEntry> rows;
    bool stable_x_to_y = false;
    bool stable_y_to_x = false;
    double tol = 0.0;
    /// Outcome interventions have no physical realization in the scenario;
    /// they are evaluated as conceptual surgeries only.
    bool conceptual = true;
};

/// Tabulate P(partner | outcome) against P(partner | do(outcome)) for both
/// outcome variables and both values. A direction is causal-stable iff the
/// two agree for every value with defined conditioning.
inline StabilityReport stability_report(const CausalModel& model, double tol) {
    StabilityReport report;
    report.tol = tol;
    const std::vector<std::pair<CausalVariable, CausalVariable>> directions = {
        {CausalVariable::OutcomeX, CausalVariable::OutcomeY},
        {CausalVariable::OutcomeY, CausalVariable::OutcomeX}};
    for (const auto& [var, partner] : directions) {
        bool stable = true;
        for (const std::string value : {kParallel, kPerpendicular}) {
            StabilityEntry entry;
            entry.intervened = var;
            entry.forced_value = value;
            entry.partner = partner;
            entry.under_do = intervene(model, {var, value}).of(partner);
            try {
                entry.conditioned = condition(model, var, value).of(partner);
                entry.gap = 0.0;
                for (std::size_t i = 0; i < entry.conditioned.p.size(); ++i) {
                    entry.gap = std::max(
                        entry.gap, std::abs(entry.conditioned.p[i] - entry.under_do.p[i]));
                }
                stable = stable && entry.gap <= tol;
            } catch (const ZeroProbabilityOutcome&) {
                entry.gap = std::numeric_limits<double>::quiet_NaN();
            }
            report.rows.push_back(std::move(entry));
        }
        if (var == CausalVariable::OutcomeX) {
            report.stable_x_to_y = stable;
        } else {
            report.stable_y_to_x = stable;
        }
    }
    return report;
}

/// Compare the outcome joint under the model's own preparation against a
/// do-intervention that swaps in an alternative preparation. A shift marks
/// the preparation as a probabilistic common cause of the outcomes.
struct CommonCauseProbe {
    std::string original;
    std::string alternative;
    JointTable joint_original;
    JointTable joint_alternative;
    double max_delta = 0.0;
    bool common_cause = false;
};

inline CommonCauseProbe preparation_intervention_probe(const CausalModel& model,
                                                       const std::string& alternative,
                                                       double tol) {
    CommonCauseProbe probe;
    probe.original = model.dominant_preparation();
    probe.alternative = alternative;
    probe.joint_original = intervene(model, {CausalVariable::Preparation, probe.original}).outcomes;
    probe.joint_alternative =
        intervene(model, {CausalVariable::Preparation, alternative}).outcomes;
    for (std::size_t k = 0; k < probe.joint_original.p.size(); ++k) {
        probe.max_delta = std::max(
            probe.max_delta, std::abs(probe.joint_original.p[k] - probe.joint_alternative.p[k]));
    }
    probe.common_cause = probe.max_delta > tol;
    return probe;
}

} // namespace lightcone
