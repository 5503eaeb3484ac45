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
 * Deterministic random numbers and a derivative-free simplex maximizer for
 * the small smooth angle landscapes that show up in the Bell searches.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace lightcone {

/// Seeded RNG whose uniform doubles are a pure function of the mt19937_64
/// stream, so results are reproducible across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

  private:
    std::mt19937_64 gen_;
};

/// Nelder-Mead simplex maximization of f over R^n, started from `start`
/// with the given initial step. Returns the best point found; no
/// convergence guarantees beyond what the simplex method gives, which is
/// plenty for the 4-8 dimensional smooth trig landscapes used here.
inline std::vector<double> nelder_mead_maximize(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
    double step, std::size_t max_iter) {
    const std::size_t n = start.size();
    struct Vertex {
        std::vector<double> x;
        double value;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({start, f(start)});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x = start;
        x[i] += step;
        simplex.push_back({x, f(x)});
    }

    auto order = [&] {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
    };
    order();

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // Centroid of all but the worst vertex.
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += simplex[v].x[i];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(n);
        }
        Vertex& worst = simplex[n];

        auto blend = [&](double factor) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = centroid[i] + factor * (centroid[i] - worst.x[i]);
            }
            return x;
        };

        const std::vector<double> reflected = blend(1.0);
        const double fr = f(reflected);
        if (fr > simplex[0].value) {
            const std::vector<double> expanded = blend(2.0);
            const double fe = f(expanded);
            if (fe > fr) {
                worst = {expanded, fe};
            } else {
                worst = {reflected, fr};
            }
        } else if (fr > simplex[n - 1].value) {
            worst = {reflected, fr};
        } else {
            const std::vector<double> contracted = blend(-0.5);
            const double fc = f(contracted);
            if (fc > worst.value) {
                worst = {contracted, fc};
            } else {
                // Shrink toward the best vertex.
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t i = 0; i < n; ++i) {
                        simplex[v].x[i] =
                            simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
                    }
                    simplex[v].value = f(simplex[v].x);
                }
            }
        }
        order();
    }
    return simplex[0].x;
}

} // namespace lightcone
