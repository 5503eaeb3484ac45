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
 * Flat-spacetime geometry: events, interval classification, closed light
 * cones, axis-aligned box regions, timelike world-lines, and causal ordering
 * of event sets. Signature (+,-,...,-) with c = 1; light cones are closed,
 * so the boundary counts as causally connected.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lightcone/errors.hpp"

namespace lightcone {

/// A point of flat spacetime in natural units. Spatial dimension defaults
/// to 1 but any count is supported.
struct Event {
    double t = 0.0;
    std::vector<double> x;

    Event() = default;
    Event(double time, std::vector<double> space) : t(time), x(std::move(space)) {}

    std::size_t coord_count() const { return 1 + x.size(); }
};

/// Convenience for the common 1+1 dimensional case.
inline Event event(double t, double x) { return Event(t, {x}); }

enum class IntervalType { Timelike, Spacelike, Lightlike, Coincident };

inline const char* to_string(IntervalType ty) {
    switch (ty) {
        case IntervalType::Timelike: return "timelike";
        case IntervalType::Spacelike: return "spacelike";
        case IntervalType::Lightlike: return "lightlike";
        case IntervalType::Coincident: return "coincident";
    }
    return "?";
}

namespace detail {

inline void require_same_coords(const Event& a, const Event& b) {
    if (a.x.size() != b.x.size()) {
        throw DimensionError("events have different coordinate counts");
    }
}

} // namespace detail

/// Squared invariant interval dt^2 - |dx|^2. Exact for integer inputs.
inline double interval_squared(const Event& a, const Event& b) {
    detail::require_same_coords(a, b);
    const double dt = a.t - b.t;
    double space = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        const double d = a.x[i] - b.x[i];
        space += d * d;
    }
    return dt * dt - space;
}

inline IntervalType interval_type(const Event& a, const Event& b) {
    detail::require_same_coords(a, b);
    const double s2 = interval_squared(a, b);
    if (s2 > 0.0) {
        return IntervalType::Timelike;
    }
    if (s2 < 0.0) {
        return IntervalType::Spacelike;
    }
    bool same = a.t == b.t;
    for (std::size_t i = 0; same && i < a.x.size(); ++i) {
        same = a.x[i] == b.x[i];
    }
    return same ? IntervalType::Coincident : IntervalType::Lightlike;
}

/// True iff e lies in the closed causal past of p (e == p included).
inline bool in_backward_lightcone(const Event& e, const Event& p) {
    detail::require_same_coords(e, p);
    return e.t <= p.t && interval_squared(e, p) >= 0.0;
}

/// True iff the two events cannot influence one another.
inline bool spacelike_separated(const Event& a, const Event& b) {
    return interval_type(a, b) == IntervalType::Spacelike;
}

/// Axis-aligned box region. half_widths has one entry per coordinate,
/// time first, all strictly positive.
struct Region {
    Event center;
    std::vector<double> half_widths;

    Region() = default;

    Region(Event c, std::vector<double> hw) : center(std::move(c)), half_widths(std::move(hw)) {
        if (half_widths.size() != center.coord_count()) {
            throw DimensionError("half_widths count must equal coordinate count");
        }
        for (double h : half_widths) {
            if (!(h > 0.0)) {
                throw PreconditionError("region half_widths must be strictly positive");
            }
        }
    }

    bool contains(const Event& e) const {
        if (e.coord_count() != center.coord_count()) {
            throw DimensionError("event/region coordinate mismatch");
        }
        if (std::abs(e.t - center.t) > half_widths[0]) {
            return false;
        }
        for (std::size_t i = 0; i < e.x.size(); ++i) {
            if (std::abs(e.x[i] - center.x[i]) > half_widths[i + 1]) {
                return false;
            }
        }
        return true;
    }
};

/// True iff inner is contained in outer as a box (closed inclusion).
inline bool region_contains_region(const Region& outer, const Region& inner) {
    if (outer.center.coord_count() != inner.center.coord_count()) {
        throw DimensionError("region coordinate mismatch");
    }
    if (std::abs(inner.center.t - outer.center.t) + inner.half_widths[0] >
        outer.half_widths[0]) {
        return false;
    }
    for (std::size_t i = 0; i < inner.center.x.size(); ++i) {
        if (std::abs(inner.center.x[i] - outer.center.x[i]) + inner.half_widths[i + 1] >
            outer.half_widths[i + 1]) {
            return false;
        }
    }
    return true;
}

/// Every point of r1 spacelike to every point of r2. Exact for axis-aligned
/// boxes: the extremal pair maximizes |dt| and minimizes per-axis spatial
/// gaps, so it suffices to compare those.
inline bool regions_spacelike_separated(const Region& r1, const Region& r2) {
    if (r1.center.coord_count() != r2.center.coord_count()) {
        throw DimensionError("region coordinate mismatch");
    }
    const double max_dt =
        std::abs(r1.center.t - r2.center.t) + r1.half_widths[0] + r2.half_widths[0];
    double min_space2 = 0.0;
    for (std::size_t i = 0; i < r1.center.x.size(); ++i) {
        const double gap = std::abs(r1.center.x[i] - r2.center.x[i]) - r1.half_widths[i + 1] -
                           r2.half_widths[i + 1];
        if (gap > 0.0) {
            min_space2 += gap * gap;
        }
    }
    return max_dt * max_dt < min_space2;
}

/// True iff e lies in the closed forward light cone of at least one point
/// of the region. The witness point takes the region's earliest time and
/// the spatial position clamped toward e, which is extremal for boxes.
inline bool region_forward_cone_contains(const Region& r, const Event& e) {
    if (e.coord_count() != r.center.coord_count()) {
        throw DimensionError("event/region coordinate mismatch");
    }
    Event source;
    source.t = r.center.t - r.half_widths[0];
    source.x.resize(e.x.size());
    for (std::size_t i = 0; i < e.x.size(); ++i) {
        const double lo = r.center.x[i] - r.half_widths[i + 1];
        const double hi = r.center.x[i] + r.half_widths[i + 1];
        source.x[i] = std::clamp(e.x[i], lo, hi);
    }
    return in_backward_lightcone(source, e);
}

/// Timelike (or lightlike) trajectory of an agent: strictly increasing t,
/// no spacelike segments.
struct WorldLine {
    std::vector<Event> points;

    WorldLine() = default;

    explicit WorldLine(std::vector<Event> pts) : points(std::move(pts)) {
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (!(points[i].t > points[i - 1].t)) {
                throw PreconditionError("world-line times must strictly increase");
            }
            if (interval_squared(points[i - 1], points[i]) < 0.0) {
                throw PreconditionError("world-line segment is spacelike");
            }
        }
    }
};

/// Result of ordering the events in the causal past of a point.
struct CausalPastOrder {
    /// Indices (into the input list) of events in the closed backward cone
    /// of the reference point, sorted so that causal predecessors come
    /// first. Causally incomparable pairs retain their input order.
    std::vector<std::size_t> order;
    /// Pairs of included indices that are mutually spacelike.
    std::vector<std::pair<std::size_t, std::size_t>> spacelike_pairs;
};

/// Select the events in the closed backward light cone of p and sort them
/// by causal order (stable for incomparable pairs).
inline CausalPastOrder causal_past(const Event& p, const std::vector<Event>& locations) {
    CausalPastOrder out;
    std::vector<std::size_t> included;
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (in_backward_lightcone(locations[i], p)) {
            included.push_back(i);
        }
    }
    const std::size_t n = included.size();

    // precedes[a][b]: a strictly precedes b in the causal order.
    std::vector<std::vector<bool>> precedes(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) {
                continue;
            }
            const Event& ea = locations[included[a]];
            const Event& eb = locations[included[b]];
            if (in_backward_lightcone(ea, eb) && !in_backward_lightcone(eb, ea)) {
                precedes[a][b] = true;
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (spacelike_separated(locations[included[a]], locations[included[b]])) {
                out.spacelike_pairs.emplace_back(included[a], included[b]);
            }
        }
    }

    // Kahn's algorithm picking the smallest input index first keeps
    // incomparable events in input order.
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (precedes[a][b]) {
                ++indegree[b];
            }
        }
    }
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t a = 0; a < n; ++a) {
            if (!done[a] && indegree[a] == 0) {
                pick = a;
                break;
            }
        }
        if (pick == n) {
            throw Error("causal order contains a cycle"); // unreachable for valid metrics
        }
        done[pick] = true;
        out.order.push_back(included[pick]);
        for (std::size_t b = 0; b < n; ++b) {
            if (precedes[pick][b]) {
                --indegree[b];
            }
        }
    }
    return out;
}

} // namespace lightcone
