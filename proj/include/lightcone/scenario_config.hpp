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
 * JSON scenario configs. Angles are radians; complex entries are [re, im]
 * pairs. Parse failures carry the JSON field path so the CLI can point at
 * the offending entry.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lightcone/agents.hpp"
#include "lightcone/bell.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/format.hpp"
#include "lightcone/quantum.hpp"
#include "lightcone/spacetime.hpp"

namespace lightcone {

using json = nlohmann::json;

/// Pointer into a JSON document that tracks its own field path and turns
/// missing/ill-typed fields into ConfigErrors naming that path.
class ConfigCursor {
  public:
    ConfigCursor(const json* node, std::string path) : node_(node), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    const json& node() const { return *node_; }
    bool exists() const { return node_ != nullptr; }

    ConfigCursor at(const std::string& key) const {
        require_exists();
        if (!node_->is_object()) {
            throw ConfigError(path_, "expected an object");
        }
        const auto it = node_->find(key);
        if (it == node_->end()) {
            throw ConfigError(path_ + "." + key, "missing required field");
        }
        return ConfigCursor(&*it, path_ + "." + key);
    }

    std::optional<ConfigCursor> maybe(const std::string& key) const {
        if (node_ == nullptr || !node_->is_object()) {
            return std::nullopt;
        }
        const auto it = node_->find(key);
        if (it == node_->end()) {
            return std::nullopt;
        }
        return ConfigCursor(&*it, path_ + "." + key);
    }

    ConfigCursor item(std::size_t index) const {
        require_exists();
        if (!node_->is_array() || index >= node_->size()) {
            throw ConfigError(path_ + "[" + std::to_string(index) + "]", "missing array item");
        }
        return ConfigCursor(&(*node_)[index], path_ + "[" + std::to_string(index) + "]");
    }

    std::size_t size() const {
        require_exists();
        if (!node_->is_array()) {
            throw ConfigError(path_, "expected an array");
        }
        return node_->size();
    }

    double as_double() const {
        require_exists();
        if (!node_->is_number()) {
            throw ConfigError(path_, "expected a number");
        }
        return node_->get<double>();
    }

    std::int64_t as_int() const {
        require_exists();
        if (!node_->is_number_integer()) {
            throw ConfigError(path_, "expected an integer");
        }
        return node_->get<std::int64_t>();
    }

    std::string as_string() const {
        require_exists();
        if (!node_->is_string()) {
            throw ConfigError(path_, "expected a string");
        }
        return node_->get<std::string>();
    }

    bool is_string() const { return node_ != nullptr && node_->is_string(); }
    bool is_object() const { return node_ != nullptr && node_->is_object(); }

    std::vector<double> as_double_list() const {
        require_exists();
        if (!node_->is_array()) {
            throw ConfigError(path_, "expected an array of numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < node_->size(); ++i) {
            out.push_back(item(i).as_double());
        }
        return out;
    }

  private:
    void require_exists() const {
        if (node_ == nullptr) {
            throw ConfigError(path_, "missing required field");
        }
    }

    const json* node_;
    std::string path_;
};

namespace config_detail {

inline cplx parse_complex(const ConfigCursor& c) {
    if (c.node().is_number()) {
        return cplx(c.as_double(), 0.0);
    }
    if (!c.node().is_array() || c.node().size() != 2) {
        throw ConfigError(c.path(), "expected [re, im]");
    }
    return cplx(c.item(0).as_double(), c.item(1).as_double());
}

inline ComplexMatrix parse_matrix(const ConfigCursor& c) {
    if (!c.node().is_array() || c.node().empty()) {
        throw ConfigError(c.path(), "expected a nonempty array of rows");
    }
    const std::size_t rows = c.size();
    const std::size_t cols = c.item(0).size();
    std::vector<cplx> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const ConfigCursor row = c.item(i);
        if (row.size() != cols) {
            throw ConfigError(row.path(), "ragged matrix rows");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            entries.push_back(parse_complex(row.item(j)));
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

inline Event parse_event(const ConfigCursor& c) {
    Event e;
    e.t = c.at("t").as_double();
    e.x = c.at("x").as_double_list();
    return e;
}

inline Region parse_region(const ConfigCursor& c) {
    const Event center = parse_event(c.at("center"));
    const std::vector<double> hw = c.at("half_widths").as_double_list();
    try {
        return Region(center, hw);
    } catch (const Error& e) {
        throw ConfigError(c.path(), e.what());
    }
}

/// "product(t1,t2)" -> angles. Returns false when the string is not of
/// that form.
inline bool parse_product_spec(const std::string& s, double& t1, double& t2) {
    if (s.rfind("product(", 0) != 0 || s.back() != ')') {
        return false;
    }
    const std::string inner = s.substr(8, s.size() - 9);
    const std::size_t comma = inner.find(',');
    if (comma == std::string::npos) {
        return false;
    }
    try {
        t1 = std::stod(inner.substr(0, comma));
        t2 = std::stod(inner.substr(comma + 1));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

} // namespace config_detail

/// Parse a preparation spec: "phi_plus", "product(t1,t2)", or an explicit
/// density matrix {"matrix": ..., "dims": [...]}.
inline DensityOperator parse_state(const ConfigCursor& c) {
    if (c.is_string()) {
        const std::string s = c.as_string();
        if (s == "phi_plus") {
            return make_phi_plus();
        }
        double t1 = 0.0, t2 = 0.0;
        if (config_detail::parse_product_spec(s, t1, t2)) {
            return product_state(t1, t2);
        }
        throw ConfigError(c.path(), "unknown state spec '" + s +
                                        "' (expected phi_plus, product(t1,t2), or an object)");
    }
    if (!c.is_object()) {
        throw ConfigError(c.path(), "expected a state string or object");
    }
    const ComplexMatrix m = config_detail::parse_matrix(c.at("matrix"));
    std::vector<std::size_t> dims = {2, 2};
    if (const auto d = c.maybe("dims")) {
        dims.clear();
        for (std::size_t i = 0; i < d->size(); ++i) {
            const std::int64_t v = d->item(i).as_int();
            if (v < 1) {
                throw ConfigError(d->item(i).path(), "dimension must be positive");
            }
            dims.push_back(static_cast<std::size_t>(v));
        }
    }
    try {
        return DensityOperator(m, dims);
    } catch (const Error& e) {
        throw ConfigError(c.path(), e.what());
    }
}

/// A grid of angles: either {"values": [...]} or
/// {"start": s, "stop": e, "count": n} giving n points from s with step
/// (e-s)/n (half-open).
inline std::vector<double> parse_angle_grid(const ConfigCursor& c) {
    if (const auto values = c.maybe("values")) {
        const std::vector<double> v = values->as_double_list();
        if (v.empty()) {
            throw ConfigError(values->path(), "grid must be nonempty");
        }
        return v;
    }
    const double start = c.at("start").as_double();
    const double stop = c.at("stop").as_double();
    const std::int64_t count = c.at("count").as_int();
    if (count < 1) {
        throw ConfigError(c.at("count").path(), "count must be at least 1");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) {
        out.push_back(start + (stop - start) * static_cast<double>(k) /
                                  static_cast<double>(count));
    }
    return out;
}

inline MeasurementEvent parse_measurement_event(const ConfigCursor& c,
                                                const std::vector<std::size_t>& dims) {
    MeasurementEvent ev{"", Event{}, MeasurementModel("placeholder",
                                                      {{"done", ComplexMatrix::identity(1)}}),
                        "", ""};
    ev.label = c.at("label").as_string();
    ev.location = config_detail::parse_event(c);
    ev.outcome = c.at("outcome").as_string();
    if (const auto sl = c.maybe("setting_label")) {
        ev.setting_label = sl->as_string();
    }

    const std::string kind = c.at("kind").as_string();
    std::optional<std::size_t> target;
    if (const auto t = c.maybe("target")) {
        if (!(t->is_string() && t->as_string() == "full")) {
            const std::int64_t idx = t->as_int();
            if (idx < 0 || static_cast<std::size_t>(idx) >= dims.size()) {
                throw ConfigError(t->path(), "target subsystem out of range");
            }
            target = static_cast<std::size_t>(idx);
        }
    }

    try {
        if (kind == "projective_polarization") {
            if (!target.has_value()) {
                throw ConfigError(c.path(), "projective_polarization requires a target");
            }
            const double angle = c.at("setting_angle").as_double();
            if (!std::isfinite(angle)) {
                throw ConfigError(c.at("setting_angle").path(), "angle must be finite");
            }
            ev.model = polarization_model(angle, *target, ev.label);
            if (ev.setting_label.empty()) {
                ev.setting_label = format_g12(angle);
            }
        } else if (kind == "explicit") {
            const ConfigCursor ops = c.at("operators");
            std::vector<MeasurementOperator> parsed;
            for (std::size_t i = 0; i < ops.size(); ++i) {
                const ConfigCursor op = ops.item(i);
                MeasurementOperator mo;
                mo.outcome = op.at("outcome").as_string();
                mo.op = config_detail::parse_matrix(op.at("matrix"));
                if (const auto eig = op.maybe("eigenvalue")) {
                    mo.eigenvalue = eig->as_double();
                }
                parsed.push_back(std::move(mo));
            }
            ev.model = MeasurementModel(ev.label, std::move(parsed), target);
        } else {
            throw ConfigError(c.at("kind").path(),
                              "unknown kind '" + kind +
                                  "' (expected projective_polarization or explicit)");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(c.path(), e.what());
    }
    return ev;
}

/// Fully parsed config: the preparation, an optional geometric scenario,
/// shared analysis knobs, and provenance (raw document + content hash).
struct ParsedConfig {
    json raw;
    std::string path;
    std::string file_name;
    std::uint64_t hash = 0;
    DensityOperator preparation;
    std::string preparation_desc;
    std::optional<Scenario> scenario;
    double tol = 1e-10;
    std::uint64_t seed = 0;

    ConfigCursor root() const { return ConfigCursor(&raw, "$"); }

    std::optional<ConfigCursor> analysis(const std::string& section) const {
        const ConfigCursor r = root();
        if (const auto a = r.maybe("analysis")) {
            return a->maybe(section);
        }
        return std::nullopt;
    }
};

inline ParsedConfig parse_config(const std::string& text, const std::string& path) {
    json raw;
    try {
        raw = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path, std::string("invalid JSON: ") + e.what());
    }

    const ConfigCursor root(&raw, "$");
    const ConfigCursor prep_state = root.at("preparation").at("state");
    DensityOperator preparation = parse_state(prep_state);
    std::string preparation_desc =
        prep_state.is_string() ? prep_state.as_string() : "explicit matrix";

    ParsedConfig out{std::move(raw),
                     path,
                     path.find('/') == std::string::npos
                         ? path
                         : path.substr(path.rfind('/') + 1),
                     fnv1a64(text),
                     std::move(preparation),
                     std::move(preparation_desc),
                     std::nullopt,
                     1e-10,
                     0};

    const ConfigCursor root2(&out.raw, "$");
    if (const auto analysis = root2.maybe("analysis")) {
        if (const auto tol = analysis->maybe("tol")) {
            out.tol = tol->as_double();
            if (!(out.tol > 0.0)) {
                throw ConfigError(tol->path(), "tolerance must be positive");
            }
        }
        if (const auto seed = analysis->maybe("seed")) {
            const std::int64_t s = seed->as_int();
            if (s < 0) {
                throw ConfigError(seed->path(), "seed must be nonnegative");
            }
            out.seed = static_cast<std::uint64_t>(s);
        }
    }

    if (const auto geometry = root2.maybe("geometry")) {
        const Region prep_region = config_detail::parse_region(geometry->at("preparation_region"));
        std::vector<MeasurementEvent> events;
        if (const auto evs = geometry->maybe("events")) {
            for (std::size_t i = 0; i < evs->size(); ++i) {
                events.push_back(
                    parse_measurement_event(evs->item(i), out.preparation.dims()));
            }
        }
        std::map<std::string, WorldLine> agents;
        if (const auto ags = geometry->maybe("agents")) {
            for (std::size_t i = 0; i < ags->size(); ++i) {
                const ConfigCursor agent = ags->item(i);
                const std::string name = agent.at("name").as_string();
                const ConfigCursor points = agent.at("points");
                std::vector<Event> pts;
                for (std::size_t k = 0; k < points.size(); ++k) {
                    pts.push_back(config_detail::parse_event(points.item(k)));
                }
                try {
                    agents.emplace(name, WorldLine(std::move(pts)));
                } catch (const Error& e) {
                    throw ConfigError(points.path(), e.what());
                }
            }
        }
        try {
            out.scenario.emplace(out.preparation, prep_region, std::move(events),
                                 std::move(agents));
        } catch (const Error& e) {
            throw ConfigError(geometry->path(), e.what());
        }
    }
    return out;
}

inline ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path, "cannot open config file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

} // namespace lightcone
