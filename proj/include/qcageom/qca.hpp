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
 * One-dimensional block-partitioned quantum cellular automaton.
 *
 * The register holds N sites q1..qN plus two static ancillae q0 and q(N+1)
 * fixed to |0>. Qubit labels equal site indices, so label 0 (the left
 * ancilla) is the most significant amplitude bit. A site update applies
 * u_c to the site, where c = 2 * (left neighbour bit) + (right neighbour bit).
 * A global update applies the B species layer, then the A species layer.
 */

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "infogeo.hpp"
#include "statealg.hpp"

namespace qcageom::qca {

enum class Species { A, B };

/// Which parity of sites forms species B (the layer applied first).
enum class Partition {
    odd_is_b,   // A = even sites, B = odd sites
    even_is_b,  // A = odd sites, B = even sites
};

enum class Granularity { per_species_layer, per_global_step };

inline const char *to_string(Species s) { return s == Species::A ? "A" : "B"; }
inline const char *to_string(Partition p) { return p == Partition::odd_is_b ? "odd_is_b" : "even_is_b"; }
inline const char *to_string(Granularity g) {
    return g == Granularity::per_species_layer ? "per_species_layer" : "per_global_step";
}

/// Four single-qubit unitaries indexed by the neighbour control pattern
/// 0 -> |00>, 1 -> |01>, 2 -> |10>, 3 -> |11> (left neighbour written first).
class UpdateRule {
  public:
    UpdateRule(ComplexMatrix u0, ComplexMatrix u1, ComplexMatrix u2, ComplexMatrix u3)
        : u_{std::move(u0), std::move(u1), std::move(u2), std::move(u3)} {
        for (const auto &m : u_) {
            detail::require(m.rows() == 2 && m.cols() == 2, "UpdateRule: entries must be 2x2");
            detail::require(m.is_unitary(kStateTol), "UpdateRule: entry is not unitary");
        }
    }

    static UpdateRule identity() {
        const auto i = gates::identity2();
        return {i, i, i, i};
    }

    /// (1, e^{-i a sigma_x}, e^{-i a sigma_x}, e^{-i pi sigma_x})
    static UpdateRule pulse(double angle) {
        return {gates::identity2(), gates::exp_sigma_x(angle), gates::exp_sigma_x(angle),
                gates::exp_sigma_x(std::numbers::pi)};
    }

    [[nodiscard]] const ComplexMatrix &operator[](std::size_t c) const { return u_.at(c); }
    [[nodiscard]] const std::array<ComplexMatrix, 4> &entries() const { return u_; }

    friend bool operator==(const UpdateRule &, const UpdateRule &) = default;

  private:
    std::array<ComplexMatrix, 4> u_;
};

struct QcaConfig {
    int n_sites = 2;
    UpdateRule rule = UpdateRule::identity();
    Partition partition = Partition::odd_is_b;

    void validate() const {
        detail::require(n_sites >= 2, "QcaConfig: need at least two sites");
        detail::require(static_cast<std::size_t>(n_sites) + 2 <= kMaxQubits,
                        "QcaConfig: register exceeds the dense-state limit");
    }

    [[nodiscard]] int register_size() const { return n_sites + 2; }
    [[nodiscard]] int left_boundary() const { return 0; }
    [[nodiscard]] int right_boundary() const { return n_sites + 1; }

    [[nodiscard]] Species species_of(int site) const {
        detail::require(site >= 1 && site <= n_sites, "species_of: site out of range");
        const bool odd = site % 2 == 1;
        const bool is_b = partition == Partition::odd_is_b ? odd : !odd;
        return is_b ? Species::B : Species::A;
    }

    [[nodiscard]] std::vector<int> sites_of(Species s) const {
        std::vector<int> out;
        for (int site = 1; site <= n_sites; ++site) {
            if (species_of(site) == s) {
                out.push_back(site);
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<Label> labels() const { return detail::default_labels(register_size()); }

    friend bool operator==(const QcaConfig &, const QcaConfig &) = default;
};

// ---------------------------------------------------------------------------
// Local update unitaries

/// Qubits the site update acts on, most significant first: (left, site, right)
/// in the interior, (site, right) at site 1 and (left, site) at site N.
inline std::vector<Label> site_update_targets(int site, int n_sites) {
    detail::require(n_sites >= 2, "site update: need at least two sites");
    detail::require(site >= 1 && site <= n_sites, "site update: site out of range");
    if (site == 1) {
        return {1, 2};
    }
    if (site == n_sites) {
        return {n_sites - 1, n_sites};
    }
    return {site - 1, site, site + 1};
}

/// Multiply-controlled unitary for one site. The boundary ancilla is |0>, so
/// site 1 reduces to (u0, u1) selected by the right bit and site N to
/// (u0, u2) selected by the left bit.
inline ComplexMatrix site_update_unitary(const UpdateRule &rule, int site, int n_sites) {
    const auto targets = site_update_targets(site, n_sites);
    if (targets.size() == 3) {
        ComplexMatrix m(8, 8);
        for (std::size_t l = 0; l < 2; ++l) {
            for (std::size_t r = 0; r < 2; ++r) {
                const auto &u = rule[2 * l + r];
                for (std::size_t s = 0; s < 2; ++s) {
                    for (std::size_t s2 = 0; s2 < 2; ++s2) {
                        m(4 * l + 2 * s + r, 4 * l + 2 * s2 + r) = u(s, s2);
                    }
                }
            }
        }
        return m;
    }
    ComplexMatrix m(4, 4);
    const bool left_edge = site == 1;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto &u = left_edge ? rule[c] : rule[2 * c];
        for (std::size_t s = 0; s < 2; ++s) {
            for (std::size_t s2 = 0; s2 < 2; ++s2) {
                if (left_edge) {
                    m(2 * s + c, 2 * s2 + c) = u(s, s2);  // (site, right)
                } else {
                    m(2 * c + s, 2 * c + s2) = u(s, s2);  // (left, site)
                }
            }
        }
    }
    return m;
}

namespace detail {
inline void check_register(const StateVector &s, const QcaConfig &config) {
    config.validate();
    qcageom::detail::require(s.n_qubits() == static_cast<std::size_t>(config.register_size()),
                             "QCA: state dimension does not match register (N + 2 qubits)");
    for (int i = 0; i < config.register_size(); ++i) {
        qcageom::detail::require(s.labels()[i] == i, "QCA: register labels must be 0..N+1 in order");
    }
}
} // namespace detail

inline StateVector apply_site_update(const StateVector &state, const QcaConfig &config, int site) {
    const auto targets = site_update_targets(site, config.n_sites);
    return apply_unitary(state, site_update_unitary(config.rule, site, config.n_sites), targets);
}

inline StateVector species_update(const StateVector &state, const QcaConfig &config, Species species) {
    detail::check_register(state, config);
    StateVector s = state;
    for (int site : config.sites_of(species)) {
        s = apply_site_update(s, config, site);
    }
    return s;
}

inline StateVector global_update(const StateVector &state, const QcaConfig &config) {
    return species_update(species_update(state, config, Species::B), config, Species::A);
}

// ---------------------------------------------------------------------------
// Traces

enum class LayerKind { species_b, species_a, global_step, single_qubit };

inline const char *to_string(LayerKind k) {
    switch (k) {
    case LayerKind::species_b: return "species_b";
    case LayerKind::species_a: return "species_a";
    case LayerKind::global_step: return "global_step";
    case LayerKind::single_qubit: return "single_qubit";
    }
    return "?";
}

struct GateRecord {
    int target = 0;
    std::vector<int> controls;
    std::string unitary;

    friend bool operator==(const GateRecord &, const GateRecord &) = default;
};

struct Layer {
    int index = 0;
    LayerKind kind = LayerKind::species_b;
    std::vector<GateRecord> gates;

    friend bool operator==(const Layer &, const Layer &) = default;
};

/// Recorded evolution. snapshots[k] is the state after the first k layers,
/// so snapshots.size() == layers.size() + 1.
struct RunTrace {
    QcaConfig config;
    Granularity granularity = Granularity::per_species_layer;
    int global_steps = 0;
    std::vector<Layer> layers;
    std::vector<StateVector> snapshots;

    [[nodiscard]] const StateVector &final_state() const { return snapshots.back(); }
};

inline const char *unitary_id(Species s) { return s == Species::A ? "U^A" : "U^B"; }

/// Gate records of one species layer. Controls are both register neighbours,
/// including a boundary ancilla where it is adjacent.
inline std::vector<GateRecord> species_gate_records(const QcaConfig &config, Species s) {
    std::vector<GateRecord> out;
    for (int site : config.sites_of(s)) {
        out.push_back({site, {site - 1, site + 1}, unitary_id(s)});
    }
    return out;
}

inline void append_species_layer(RunTrace &trace, Species s) {
    trace.layers.push_back({static_cast<int>(trace.layers.size()),
                            s == Species::B ? LayerKind::species_b : LayerKind::species_a,
                            species_gate_records(trace.config, s)});
    trace.snapshots.push_back(species_update(trace.snapshots.back(), trace.config, s));
}

inline void append_global_step(RunTrace &trace) {
    if (trace.granularity == Granularity::per_species_layer) {
        append_species_layer(trace, Species::B);
        append_species_layer(trace, Species::A);
    } else {
        auto gates = species_gate_records(trace.config, Species::B);
        auto a = species_gate_records(trace.config, Species::A);
        gates.insert(gates.end(), a.begin(), a.end());
        trace.layers.push_back({static_cast<int>(trace.layers.size()), LayerKind::global_step, std::move(gates)});
        trace.snapshots.push_back(global_update(trace.snapshots.back(), trace.config));
    }
    ++trace.global_steps;
}

/// Single-qubit gate on a register site, recorded as its own layer.
inline void append_single_qubit(RunTrace &trace, int site, const ComplexMatrix &u, std::string id) {
    qcageom::detail::require(site >= 1 && site <= trace.config.n_sites, "single-qubit layer: site out of range");
    trace.layers.push_back({static_cast<int>(trace.layers.size()), LayerKind::single_qubit, {{site, {}, std::move(id)}}});
    trace.snapshots.push_back(apply_unitary(trace.snapshots.back(), u, {site}));
}

inline RunTrace run(const QcaConfig &config, int global_steps, const StateVector &initial,
                    Granularity record = Granularity::per_species_layer) {
    detail::check_register(initial, config);
    qcageom::detail::require(global_steps >= 0, "run: negative step count");
    RunTrace trace{config, record, 0, {}, {initial}};
    for (int step = 0; step < global_steps; ++step) {
        append_global_step(trace);
    }
    return trace;
}

/// Product register with the given single-qubit states on chosen sites and
/// |0> elsewhere (including both ancillae).
inline StateVector product_register(int n_sites, const std::map<int, StateVector> &seeds = {}) {
    qcageom::detail::require(n_sites >= 2, "product_register: need at least two sites");
    for (const auto &[site, qubit] : seeds) {
        qcageom::detail::require(site >= 1 && site <= n_sites, "product_register: seed site out of range");
        qcageom::detail::require(qubit.n_qubits() == 1, "product_register: seeds must be single qubits");
    }
    StateVector s = states::zero().relabeled({0});
    for (int q = 1; q < n_sites + 2; ++q) {
        auto it = seeds.find(q);
        const StateVector &qubit = it == seeds.end() ? states::zero() : it->second;
        s = tensor(s, qubit.relabeled({q}));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Experiments

struct ExperimentResult {
    RunTrace trace;
    double fidelity = 0.0;
};

/// Calibrated Rz angle (Rz(theta) = exp(-i theta sigma_z / 2)) that fixes the
/// relative phase picked up by a propagated qubit.
inline constexpr double kPropagationZAngle = std::numbers::pi;

inline constexpr double kPulseAngle = std::numbers::pi / 2.0;
inline constexpr double kDiffusionAngle = std::numbers::pi / 3.0;

/// Carries |q1> = psi to site N with N/2 global updates (even sites form
/// species B) and a final Z rotation on site N. Fidelity is <psi|rho_N|psi>.
inline ExperimentResult propagate_experiment(int n_sites, const StateVector &psi,
                                             Granularity record = Granularity::per_species_layer,
                                             double z_angle = kPropagationZAngle) {
    qcageom::detail::require(n_sites >= 2 && n_sites % 2 == 0, "propagate: N must be even");
    qcageom::detail::require(psi.n_qubits() == 1, "propagate: psi must be a single qubit");
    const QcaConfig config{n_sites, UpdateRule::pulse(kPulseAngle), Partition::even_is_b};
    RunTrace trace = run(config, n_sites / 2, product_register(n_sites, {{1, psi}}), record);
    append_single_qubit(trace, n_sites, gates::rz(z_angle), "Rz");
    const double f = fidelity(psi.relabeled({n_sites}), partial_trace(trace.final_state(), {n_sites}));
    return {std::move(trace), f};
}

/// Target GHZ state on sites 1..N with both ancillae in |0>.
inline StateVector register_ghz(int n_sites) {
    const std::size_t n = static_cast<std::size_t>(n_sites) + 2;
    std::vector<Complex> a(std::size_t{1} << n);
    a[0] = 1.0 / std::numbers::sqrt2;
    a[((std::size_t{1} << n_sites) - 1) << 1] = 1.0 / std::numbers::sqrt2;
    return StateVector(std::move(a), qcageom::detail::default_labels(n));
}

struct GhzPlan {
    int seed_site;
    int global_steps;
    bool extra_b_layer;
};

inline GhzPlan ghz_plan(int n_sites) {
    qcageom::detail::require(n_sites >= 4 && n_sites % 2 == 0, "ghz: N must be even and at least 4");
    if (n_sites % 4 == 0) {
        return {n_sites / 2, n_sites / 4, false};
    }
    return {n_sites / 2 + 1, (n_sites - 2) / 4, true};
}

/// Seeds |+>, runs k global updates (plus one B layer when N mod 4 = 2) and
/// applies exp((-1)^m i pi/4 sigma_z) to the seed site, m = number of B layers.
inline ExperimentResult ghz_experiment(int n_sites, Granularity record = Granularity::per_species_layer) {
    const GhzPlan plan = ghz_plan(n_sites);
    const QcaConfig config{n_sites, UpdateRule::pulse(kPulseAngle), Partition::odd_is_b};
    RunTrace trace = run(config, plan.global_steps, product_register(n_sites, {{plan.seed_site, states::plus()}}), record);
    if (plan.extra_b_layer) {
        append_species_layer(trace, Species::B);
    }
    // The extra B layer counts like a step for the sign: (-1)^(number of B layers).
    const int b_layers = plan.global_steps + (plan.extra_b_layer ? 1 : 0);
    const double sign = b_layers % 2 == 0 ? 1.0 : -1.0;
    append_single_qubit(trace, plan.seed_site, gates::exp_sigma_z(-sign * std::numbers::pi / 4.0), "phase");
    const double f = fidelity(register_ghz(n_sites), trace.final_state());
    return {std::move(trace), f};
}

/// Diffusion rule (1, e^{-i pi/3 sigma_x}, e^{-i pi/3 sigma_x}, e^{-i pi sigma_x})
/// from |+> on seed_site.
inline RunTrace pi3_experiment(int n_sites, int seed_site, int global_steps,
                               Granularity record = Granularity::per_species_layer) {
    qcageom::detail::require(seed_site >= 1 && seed_site <= n_sites, "pi3: seed site out of range");
    const QcaConfig config{n_sites, UpdateRule::pulse(kDiffusionAngle), Partition::odd_is_b};
    return run(config, global_steps, product_register(n_sites, {{seed_site, states::plus()}}), record);
}

} // namespace qcageom::qca
