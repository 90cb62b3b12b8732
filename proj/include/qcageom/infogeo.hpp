// Copyright 2026 The qcageom Authors
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
 * Zurek information distance and mutual information over qubit subsets,
 * pairwise distance fields, and the Werner / pure-family parameter sweeps.
 *
 * The distance is taken in its entropy form 2 S(AB) - S(A) - S(B) (bits). It
 * is zero for pure product marginals, negative under bipartite quantum
 * correlation and positive when classical uncertainty dominates.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "statealg.hpp"

namespace qcageom {

namespace detail {
inline void check_parts(std::span<const Label> a, std::span<const Label> b) {
    require(!a.empty() && !b.empty(), "information distance: empty subsystem");
    for (Label x : a) {
        require(std::find(b.begin(), b.end(), x) == b.end(), "information distance: subsystems overlap");
    }
}

inline std::vector<Label> join(std::span<const Label> a, std::span<const Label> b) {
    std::vector<Label> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

struct Entropies {
    double ab, a, b;
};

inline Entropies subsystem_entropies(const DensityMatrix &joint, std::span<const Label> a, std::span<const Label> b) {
    check_parts(a, b);
    const auto ab_labels = join(a, b);
    const DensityMatrix rho_ab = partial_trace(joint, ab_labels);
    return {von_neumann_entropy(rho_ab), von_neumann_entropy(partial_trace(rho_ab, a)),
            von_neumann_entropy(partial_trace(rho_ab, b))};
}

inline Entropies subsystem_entropies(const StateVector &joint, std::span<const Label> a, std::span<const Label> b) {
    check_parts(a, b);
    const auto ab_labels = join(a, b);
    const DensityMatrix rho_ab = partial_trace(joint, ab_labels);
    return {von_neumann_entropy(rho_ab), von_neumann_entropy(partial_trace(rho_ab, a)),
            von_neumann_entropy(partial_trace(rho_ab, b))};
}
} // namespace detail

/// delta(A, B) = 2 S(AB) - S(A) - S(B), in bits.
template <typename Joint>
double info_distance(const Joint &joint, std::span<const Label> part_a, std::span<const Label> part_b) {
    const auto e = detail::subsystem_entropies(joint, part_a, part_b);
    return 2.0 * e.ab - e.a - e.b;
}

template <typename Joint>
double info_distance(const Joint &joint, std::initializer_list<Label> a, std::initializer_list<Label> b) {
    return info_distance(joint, std::span<const Label>(a.begin(), a.size()), std::span<const Label>(b.begin(), b.size()));
}

/// H(A:B) = S(A) + S(B) - S(AB), in bits.
template <typename Joint>
double mutual_information(const Joint &joint, std::span<const Label> part_a, std::span<const Label> part_b) {
    const auto e = detail::subsystem_entropies(joint, part_a, part_b);
    return e.a + e.b - e.ab;
}

template <typename Joint>
double mutual_information(const Joint &joint, std::initializer_list<Label> a, std::initializer_list<Label> b) {
    return mutual_information(joint, std::span<const Label>(a.begin(), a.size()),
                              std::span<const Label>(b.begin(), b.size()));
}

// ---------------------------------------------------------------------------
// Distance fields

/// Which qubit pairs a DistanceField evaluates.
struct PairSelection {
    enum class Mode { all_pairs, nearest_neighbor };
    Mode mode = Mode::all_pairs;
    /// Explicit adjacency for nearest_neighbor; empty means chain adjacency
    /// along the field's label order.
    std::vector<std::pair<Label, Label>> edges;

    static PairSelection all() { return {Mode::all_pairs, {}}; }
    static PairSelection chain() { return {Mode::nearest_neighbor, {}}; }
    static PairSelection from_edges(std::vector<std::pair<Label, Label>> e) {
        detail::require(!e.empty(), "pair selection: empty edge list");
        return {Mode::nearest_neighbor, std::move(e)};
    }
};

/// Symmetric matrix of pairwise distances at one time step. Uncomputed pairs
/// hold NaN; the diagonal is exactly 0.
struct DistanceField {
    int time_step = 0;
    std::vector<Label> labels;
    std::vector<std::vector<double>> values;

    [[nodiscard]] std::size_t size() const { return labels.size(); }
    [[nodiscard]] std::size_t index_of(Label l) const { return detail::position_of(labels, l); }
    [[nodiscard]] double at(Label a, Label b) const { return values[index_of(a)][index_of(b)]; }
};

/// Pairwise distances over two-qubit marginals of a pure global state.
/// With include_boundary = false the first and last register labels (the
/// static boundary ancillae) are left out of the field.
inline DistanceField distance_field(const StateVector &state, const PairSelection &pairs, bool include_boundary,
                                    int time_step = 0) {
    std::vector<Label> labels(state.labels().begin(), state.labels().end());
    if (!include_boundary) {
        detail::require(labels.size() >= 3, "distance_field: register too small to drop boundaries");
        labels = std::vector<Label>(labels.begin() + 1, labels.end() - 1);
    }
    const std::size_t n = labels.size();
    detail::require(n >= 2, "distance_field: need at least two qubits");

    std::vector<std::pair<std::size_t, std::size_t>> todo;
    if (pairs.mode == PairSelection::Mode::all_pairs) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                todo.emplace_back(i, j);
            }
        }
    } else if (pairs.edges.empty()) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            todo.emplace_back(i, i + 1);
        }
    } else {
        for (const auto &[a, b] : pairs.edges) {
            detail::require(a != b, "distance_field: self pair");
            todo.emplace_back(detail::position_of(labels, a), detail::position_of(labels, b));
        }
    }
    detail::require(!todo.empty(), "distance_field: empty pair selection");

    DistanceField f;
    f.time_step = time_step;
    f.labels = labels;
    f.values.assign(n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t i = 0; i < n; ++i) {
        f.values[i][i] = 0.0;
    }
    for (const auto &[i, j] : todo) {
        const Label a = labels[i];
        const Label b = labels[j];
        const double d = info_distance(state, {a}, {b});
        f.values[i][j] = d;
        f.values[j][i] = d;
    }
    return f;
}

/// Single-qubit reduced entropies S(q) for every label of the state.
inline std::vector<double> site_entropies(const StateVector &state) {
    std::vector<double> out;
    out.reserve(state.n_qubits());
    for (Label l : state.labels()) {
        out.push_back(von_neumann_entropy(partial_trace(state, {l})));
    }
    return out;
}

/// Probability of |1> on every label.
inline std::vector<double> occupations(const StateVector &state) {
    const std::size_t n = state.n_qubits();
    std::vector<double> p(n, 0.0);
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        const double w = std::norm(state[idx]);
        if (w == 0.0) {
            continue;
        }
        for (std::size_t q = 0; q < n; ++q) {
            if ((idx >> (n - 1 - q)) & 1U) {
                p[q] += w;
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// GHZ-style block structure

/// Partition of a distance field into an interior block and its exterior,
/// read from the graph of positive entries.
struct BlockStructure {
    bool block_present = false;   // some entry exceeds the positive threshold
    bool pattern_holds = false;   // complete bipartite positive pattern, null elsewhere
    std::vector<Label> interior;
    std::vector<Label> exterior;
    double max_abs_interior = 0.0;  // largest |delta| inside the interior block
    double max_abs_exterior = 0.0;  // largest |delta| among exterior pairs
    double min_cross = std::numeric_limits<double>::infinity();  // smallest interior/exterior entry
};

/// The exterior is the class that contains the field's first label (the left
/// boundary when boundaries are included). Entries must all be computed.
inline BlockStructure block_structure(const DistanceField &f, double null_tol = 1e-8, double positive_tol = 1e-6) {
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            detail::require(!std::isnan(f.values[i][j]), "block_structure: field has uncomputed pairs");
        }
    }
    BlockStructure r;
    std::vector<int> color(n, -1);
    bool bipartite = true;
    for (std::size_t s = 0; s < n; ++s) {
        if (color[s] != -1) {
            continue;
        }
        color[s] = 0;
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (v == u || f.values[u][v] <= positive_tol) {
                    continue;
                }
                r.block_present = true;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    bipartite = false;
                }
            }
        }
    }
    // Each component is coloured 0 from its smallest index, so labels with no
    // positive entry fall in the exterior class.
    for (std::size_t i = 0; i < n; ++i) {
        (color[i] == color[0] ? r.exterior : r.interior).push_back(f.labels[i]);
    }
    auto in_interior = [&](std::size_t i) { return color[i] != color[0]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = f.values[i][j];
            if (in_interior(i) && in_interior(j)) {
                r.max_abs_interior = std::max(r.max_abs_interior, std::abs(d));
            } else if (!in_interior(i) && !in_interior(j)) {
                r.max_abs_exterior = std::max(r.max_abs_exterior, std::abs(d));
            } else {
                r.min_cross = std::min(r.min_cross, d);
            }
        }
    }
    r.pattern_holds = r.block_present && bipartite && !r.interior.empty() && r.max_abs_interior <= null_tol &&
                      r.max_abs_exterior <= null_tol && r.min_cross >= positive_tol;
    return r;
}

// ---------------------------------------------------------------------------
// Parameter sweeps

struct SweepCurve {
    std::vector<double> z;
    std::vector<double> delta;
};

namespace detail {
inline void check_grid(std::span<const double> grid) {
    require(!grid.empty(), "sweep: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(grid[i] >= 0.0 && grid[i] <= 1.0, "sweep: grid value outside [0, 1]");
        require(i == 0 || grid[i] > grid[i - 1], "sweep: grid must be strictly increasing");
    }
}
} // namespace detail

/// n evenly spaced points on [0, 1] (endpoints exact).
inline std::vector<double> uniform_grid(std::size_t n) {
    detail::require(n >= 2, "uniform_grid: need at least two samples");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

inline double werner_distance(double z) {
    const auto rho = states::werner(z);
    return info_distance(rho, {0}, {1});
}

/// sqrt(1-z)|00> + sqrt(z)(|01> + |10>), normalized by 1/sqrt(1+z).
inline StateVector pure_family_state(double z) {
    detail::require(z >= 0.0 && z <= 1.0, "pure family: z outside [0, 1]");
    const double r = std::sqrt(z);
    return StateVector::normalized({std::sqrt(1.0 - z), r, r, 0.0}, {0, 1});
}

inline double pure_family_distance(double z) { return info_distance(pure_family_state(z), {0}, {1}); }

inline SweepCurve werner_sweep(std::span<const double> grid) {
    detail::check_grid(grid);
    SweepCurve c;
    for (double z : grid) {
        c.z.push_back(z);
        c.delta.push_back(werner_distance(z));
    }
    return c;
}

inline SweepCurve pure_family_sweep(std::span<const double> grid) {
    detail::check_grid(grid);
    SweepCurve c;
    for (double z : grid) {
        c.z.push_back(z);
        c.delta.push_back(pure_family_distance(z));
    }
    return c;
}

/// Bisection for the sign change of werner_distance on [lo, hi].
inline double werner_null_crossing(double lo = 1.0 / 3.0, double hi = 1.0, double tol = 1e-8) {
    detail::require(werner_distance(lo) > 0.0 && werner_distance(hi) < 0.0, "werner_null_crossing: no sign change on bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = werner_distance(mid);
        (fm > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Bisection for the PPT boundary of the Werner family on [lo, hi].
inline double werner_ppt_boundary(double lo = 0.0, double hi = 1.0, double tol = 1e-9) {
    detail::require(ppt_separable_2q(states::werner(lo)) && !ppt_separable_2q(states::werner(hi)),
                    "werner_ppt_boundary: no separability change on bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (ppt_separable_2q(states::werner(mid)) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace qcageom
