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
 * Point-relative state assignment. An agent point determines a quantum
 * state by folding the update rule over every measurement event inside its
 * closed backward light cone, causal predecessors first. Events that are
 * mutually spacelike have no canonical order; the order policy decides how
 * they are sequenced, and the consistency checks quantify whether the
 * choice matters. When the operator sets attached to mutually spacelike
 * events pairwise commute, it provably does not.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lightcone/errors.hpp"
#include "lightcone/linalg.hpp"
#include "lightcone/quantum.hpp"
#include "lightcone/spacetime.hpp"

namespace lightcone {

/// Largest set of mutually spacelike events for which every linear
/// extension is enumerated under OrderPolicy::BothOrders.
inline constexpr std::size_t kMaxPermutedEvents = 6;

/// A recorded measurement: where it happened, how it was modeled, and
/// which outcome actually occurred. Outcomes are fixed inputs here; they
/// are never sampled during assignment.
struct MeasurementEvent {
    std::string label;
    Event location;
    MeasurementModel model;
    std::string outcome;
    std::string setting_label;
};

/// A prepared initial state plus localized measurement events and named
/// agent world-lines. Immutable after construction.
class Scenario {
  public:
    Scenario(DensityOperator initial_state, Region preparation_region,
             std::vector<MeasurementEvent> events,
             std::map<std::string, WorldLine> agents = {})
        : initial_state_(std::move(initial_state)),
          preparation_region_(std::move(preparation_region)), events_(std::move(events)),
          agents_(std::move(agents)) {
        for (const MeasurementEvent& ev : events_) {
            if (ev.location.coord_count() != preparation_region_.center.coord_count()) {
                throw DimensionError("event '" + ev.label +
                                     "' has wrong coordinate count for this scenario");
            }
            if (!region_forward_cone_contains(preparation_region_, ev.location)) {
                throw PreconditionError("event '" + ev.label +
                                        "' lies outside the forward light cone of the "
                                        "preparation region");
            }
            // Outcome must exist and the model must fit the state, which
            // embedded_operator checks as a side effect.
            (void)ev.model.embedded_operator(ev.outcome, initial_state_.dims());
        }
    }

    const DensityOperator& initial_state() const { return initial_state_; }
    const Region& preparation_region() const { return preparation_region_; }
    const std::vector<MeasurementEvent>& events() const { return events_; }
    const std::map<std::string, WorldLine>& agents() const { return agents_; }

    std::vector<Event> event_locations() const {
        std::vector<Event> out;
        out.reserve(events_.size());
        for (const MeasurementEvent& ev : events_) {
            out.push_back(ev.location);
        }
        return out;
    }

  private:
    DensityOperator initial_state_;
    Region preparation_region_;
    std::vector<MeasurementEvent> events_;
    std::map<std::string, WorldLine> agents_;
};

/// How mutually spacelike events are sequenced during assignment.
enum class OrderPolicy {
    Lexicographic, // sort incomparable events by coordinates
    AsListed,      // keep scenario order
    BothOrders,    // enumerate every linear extension and compare
};

inline const char* to_string(OrderPolicy p) {
    switch (p) {
        case OrderPolicy::Lexicographic: return "lexicographic";
        case OrderPolicy::AsListed: return "as_listed";
        case OrderPolicy::BothOrders: return "both_orders";
    }
    return "?";
}

/// Audit record of one assignment: which events were folded, in which
/// order, and what came out.
struct AssignmentTrace {
    Event point;
    std::vector<std::string> applied;
    DensityOperator state;
    /// Number of linear extensions examined (1 except under BothOrders).
    std::size_t order_count = 1;
    /// Largest trace-norm distance between extension results.
    double order_spread = 0.0;
};

namespace detail {

/// Fold the update rule over events in the given order, tagging zero
/// probability failures with the offending event.
inline DensityOperator fold_updates(const Scenario& scenario,
                                    const std::vector<std::size_t>& order) {
    DensityOperator state = scenario.initial_state();
    for (std::size_t idx : order) {
        const MeasurementEvent& ev = scenario.events()[idx];
        try {
            state = update_state(state, ev.model, ev.outcome);
        } catch (const ZeroProbabilityOutcome& e) {
            throw ZeroProbabilityOutcome(std::string(e.what()) + " (event '" + ev.label + "')");
        }
    }
    return state;
}

/// Strict causal precedence restricted to the given indices.
inline std::vector<std::vector<bool>> precedence(const Scenario& scenario,
                                                 const std::vector<std::size_t>& included) {
    const std::size_t n = included.size();
    std::vector<std::vector<bool>> prec(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) {
                continue;
            }
            const Event& ea = scenario.events()[included[a]].location;
            const Event& eb = scenario.events()[included[b]].location;
            prec[a][b] = in_backward_lightcone(ea, eb) && !in_backward_lightcone(eb, ea);
        }
    }
    return prec;
}

/// Kahn's algorithm with a choice rule among ready events.
template <typename Pick>
std::vector<std::size_t> topological_order(const std::vector<std::size_t>& included,
                                           const std::vector<std::vector<bool>>& prec,
                                           Pick pick_best) {
    const std::size_t n = included.size();
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (prec[a][b]) {
                ++indeg[b];
            }
        }
    }
    std::vector<bool> done(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::optional<std::size_t> pick;
        for (std::size_t a = 0; a < n; ++a) {
            if (done[a] || indeg[a] != 0) {
                continue;
            }
            if (!pick || pick_best(a, *pick)) {
                pick = a;
            }
        }
        if (!pick) {
            throw Error("causal precedence contains a cycle");
        }
        done[*pick] = true;
        order.push_back(included[*pick]);
        for (std::size_t b = 0; b < n; ++b) {
            if (prec[*pick][b]) {
                --indeg[b];
            }
        }
    }
    return order;
}

inline void all_linear_extensions(const std::vector<std::size_t>& included,
                                  const std::vector<std::vector<bool>>& prec,
                                  std::vector<std::size_t>& indeg, std::vector<bool>& used,
                                  std::vector<std::size_t>& current,
                                  std::vector<std::vector<std::size_t>>& out) {
    const std::size_t n = included.size();
    if (current.size() == n) {
        out.push_back(current);
        return;
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (used[a] || indeg[a] != 0) {
            continue;
        }
        used[a] = true;
        current.push_back(included[a]);
        for (std::size_t b = 0; b < n; ++b) {
            if (prec[a][b]) {
                --indeg[b];
            }
        }
        all_linear_extensions(included, prec, indeg, used, current, out);
        for (std::size_t b = 0; b < n; ++b) {
            if (prec[a][b]) {
                ++indeg[b];
            }
        }
        current.pop_back();
        used[a] = false;
    }
}

inline bool coords_less(const Event& a, const Event& b) {
    if (a.t != b.t) {
        return a.t < b.t;
    }
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
}

} // namespace detail

/// Assign the state at agent point p: fold the update rule over all
/// measurement events in the closed backward cone of p, causal order first,
/// ties broken by the order policy. Under BothOrders every linear extension
/// is computed and the spread between results is reported.
inline AssignmentTrace assign_state(const Scenario& scenario, const Event& p,
                                    OrderPolicy policy) {
    if (!region_forward_cone_contains(scenario.preparation_region(), p)) {
        throw PreconditionError(
            "agent point lies outside the forward light cone of the preparation region");
    }
    const CausalPastOrder past = causal_past(p, scenario.event_locations());
    std::vector<std::size_t> included;
    for (std::size_t i = 0; i < scenario.events().size(); ++i) {
        if (in_backward_lightcone(scenario.events()[i].location, p)) {
            included.push_back(i);
        }
    }
    const std::vector<std::vector<bool>> prec = detail::precedence(scenario, included);

    AssignmentTrace trace{p, {}, scenario.initial_state(), 1, 0.0};

    std::vector<std::size_t> order;
    if (policy == OrderPolicy::AsListed) {
        order = past.order; // stable causal sort, input order for ties
    } else if (policy == OrderPolicy::Lexicographic) {
        order = detail::topological_order(
            included, prec, [&](std::size_t a, std::size_t b) {
                const Event& ea = scenario.events()[included[a]].location;
                const Event& eb = scenario.events()[included[b]].location;
                if (detail::coords_less(ea, eb)) {
                    return true;
                }
                if (detail::coords_less(eb, ea)) {
                    return false;
                }
                return a < b;
            });
    } else {
        // BothOrders: enumerate all linear extensions, guarded against
        // factorial blowup by the count of events touched by spacelike pairs.
        std::set<std::size_t> permuted;
        for (const auto& [i, j] : past.spacelike_pairs) {
            permuted.insert(i);
            permuted.insert(j);
        }
        if (permuted.size() > kMaxPermutedEvents) {
            throw PreconditionError("BothOrders supports at most " +
                                    std::to_string(kMaxPermutedEvents) +
                                    " mutually spacelike events");
        }
        std::vector<std::vector<std::size_t>> extensions;
        std::vector<std::size_t> indeg(included.size(), 0);
        for (std::size_t a = 0; a < included.size(); ++a) {
            for (std::size_t b = 0; b < included.size(); ++b) {
                if (prec[a][b]) {
                    ++indeg[b];
                }
            }
        }
        std::vector<bool> used(included.size(), false);
        std::vector<std::size_t> current;
        detail::all_linear_extensions(included, prec, indeg, used, current, extensions);

        std::vector<DensityOperator> results;
        results.reserve(extensions.size());
        for (const std::vector<std::size_t>& ext : extensions) {
            results.push_back(detail::fold_updates(scenario, ext));
        }
        double spread = 0.0;
        for (std::size_t i = 0; i < results.size(); ++i) {
            for (std::size_t j = i + 1; j < results.size(); ++j) {
                spread = std::max(
                    spread, trace_norm_distance(results[i].matrix(), results[j].matrix()));
            }
        }
        order = extensions.empty() ? std::vector<std::size_t>{} : extensions.front();
        trace.order_count = extensions.empty() ? 1 : extensions.size();
        trace.order_spread = spread;
        if (!results.empty()) {
            trace.state = results.front();
        }
        for (std::size_t idx : order) {
            trace.applied.push_back(scenario.events()[idx].label);
        }
        return trace;
    }

    trace.state = detail::fold_updates(scenario, order);
    for (std::size_t idx : order) {
        trace.applied.push_back(scenario.events()[idx].label);
    }
    return trace;
}

/// Outcome of comparing the two extreme orderings of the spacelike events
/// seen from one point.
struct ConsistencyResult {
    bool consistent = false;
    double distance = 0.0;
    DensityOperator rho_ab;
    DensityOperator rho_ba;
    std::vector<std::string> order_ab;
    std::vector<std::string> order_ba;
};

/// Charlie's check: fold the causal past of p in scenario order and in
/// reversed order (both restricted to valid causal sequences) and compare
/// the resulting states by trace-norm distance. Requires at least two
/// mutually spacelike events in the past of p, otherwise there is nothing
/// to permute.
inline ConsistencyResult charlie_consistency(const Scenario& scenario, const Event& p,
                                             double tol) {
    const CausalPastOrder past = causal_past(p, scenario.event_locations());
    std::set<std::size_t> permuted;
    for (const auto& [i, j] : past.spacelike_pairs) {
        permuted.insert(i);
        permuted.insert(j);
    }
    if (permuted.size() < 2) {
        throw PreconditionError(
            "consistency check needs at least two mutually spacelike events in the causal "
            "past of the agent point");
    }
    std::vector<std::size_t> included;
    for (std::size_t i = 0; i < scenario.events().size(); ++i) {
        if (in_backward_lightcone(scenario.events()[i].location, p)) {
            included.push_back(i);
        }
    }
    const std::vector<std::vector<bool>> prec = detail::precedence(scenario, included);
    const std::vector<std::size_t> forward = detail::topological_order(
        included, prec, [](std::size_t a, std::size_t b) { return a < b; });
    const std::vector<std::size_t> reversed = detail::topological_order(
        included, prec, [](std::size_t a, std::size_t b) { return a > b; });

    ConsistencyResult result{false,
                             0.0,
                             detail::fold_updates(scenario, forward),
                             detail::fold_updates(scenario, reversed),
                             {},
                             {}};
    for (std::size_t idx : forward) {
        result.order_ab.push_back(scenario.events()[idx].label);
    }
    for (std::size_t idx : reversed) {
        result.order_ba.push_back(scenario.events()[idx].label);
    }
    result.distance = trace_norm_distance(result.rho_ab.matrix(), result.rho_ba.matrix());
    result.consistent = result.distance <= tol;
    return result;
}

/// One non-commuting operator pair found between spacelike events.
struct CommutationViolation {
    std::string event_a;
    std::string event_b;
    std::string outcome_a;
    std::string outcome_b;
    double commutator_norm = 0.0; // max-entry norm of [M, N]
    bool anticommutes = false;    // {M, N} = 0 despite [M, N] != 0
};

/// Scan every pair of measurement events at spacelike separated locations
/// and report all cross pairs of their (embedded) measurement operators
/// that fail to commute.
inline std::vector<CommutationViolation> spacelike_commutation_violations(
    const Scenario& scenario, double tol) {
    std::vector<CommutationViolation> out;
    const std::vector<std::size_t>& dims = scenario.initial_state().dims();
    const std::vector<MeasurementEvent>& events = scenario.events();
    for (std::size_t i = 0; i < events.size(); ++i) {
        for (std::size_t j = i + 1; j < events.size(); ++j) {
            if (!spacelike_separated(events[i].location, events[j].location)) {
                continue;
            }
            for (const MeasurementOperator& mo : events[i].model.operators()) {
                const ComplexMatrix m = events[i].model.embedded_operator(mo.outcome, dims);
                for (const MeasurementOperator& no : events[j].model.operators()) {
                    const ComplexMatrix n =
                        events[j].model.embedded_operator(no.outcome, dims);
                    const double comm = commutator(m, n).max_abs();
                    if (comm > tol) {
                        out.push_back({events[i].label, events[j].label, mo.outcome,
                                       no.outcome, comm,
                                       anticommutator(m, n).max_abs() <= tol});
                    }
                }
            }
        }
    }
    return out;
}

struct OrderAuditEntry {
    Event point;
    std::size_t order_count = 1;
    double spread = 0.0;
    bool pass = false;
};

struct OrderAuditReport {
    /// True when all spacelike-separated operator sets pairwise commute.
    bool operators_commute = false;
    std::vector<CommutationViolation> violations;
    std::vector<OrderAuditEntry> points;
    /// The theorem under test: commuting operators imply order-invariant
    /// assignment at every sampled point.
    bool holds = false;
};

/// Verify, point by point, that state assignment does not depend on the
/// ordering of mutually spacelike events whenever the attached operator
/// sets pairwise commute. Non-commuting scenarios are reported with the
/// witnessing operator pair.
inline OrderAuditReport order_independence_audit(const Scenario& scenario,
                                                 const std::vector<Event>& sample_points,
                                                 double tol) {
    OrderAuditReport report;
    report.violations = spacelike_commutation_violations(scenario, kHermitianTol);
    report.operators_commute = report.violations.empty();
    bool all_pass = true;
    for (const Event& p : sample_points) {
        const AssignmentTrace trace = assign_state(scenario, p, OrderPolicy::BothOrders);
        OrderAuditEntry entry{p, trace.order_count, trace.order_spread,
                              trace.order_spread <= tol};
        all_pass = all_pass && entry.pass;
        report.points.push_back(entry);
    }
    report.holds = !report.operators_commute || all_pass;
    return report;
}

} // namespace lightcone
