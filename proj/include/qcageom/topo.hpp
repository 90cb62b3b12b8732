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
 * Simplicial complexes over anti-chain shadows and their GF(2) homology.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "causal.hpp"
#include "error.hpp"

namespace qcageom::topo {

using Vertex = int;
using Simplex = std::vector<Vertex>;  // sorted, no repeats

/// Face-closed set of simplices. Every stored simplex has all of its nonempty
/// faces stored as well.
class SimplicialComplex {
  public:
    static constexpr std::size_t kMaxSimplexSize = 24;

    void add_vertex(Vertex v) { simplices_.insert({v}); }

    void add_simplex(Simplex s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        detail::require(!s.empty(), "add_simplex: empty simplex");
        detail::require(s.size() <= kMaxSimplexSize, "add_simplex: simplex too large");
        if (simplices_.contains(s)) {
            return;
        }
        const std::uint32_t full = (std::uint32_t{1} << s.size()) - 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            Simplex face;
            for (std::size_t b = 0; b < s.size(); ++b) {
                if ((mask >> b) & 1U) {
                    face.push_back(s[b]);
                }
            }
            simplices_.insert(std::move(face));
        }
    }

    /// Removes the edge {a, b} and every simplex containing it.
    void remove_edge(Vertex a, Vertex b) {
        detail::require(a != b, "remove_edge: degenerate edge");
        std::erase_if(simplices_, [&](const Simplex &s) {
            return std::binary_search(s.begin(), s.end(), a) && std::binary_search(s.begin(), s.end(), b);
        });
    }

    [[nodiscard]] bool contains(Simplex s) const {
        std::sort(s.begin(), s.end());
        return simplices_.contains(s);
    }

    [[nodiscard]] std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        for (const auto &s : simplices_) {
            if (s.size() == 1) {
                out.push_back(s[0]);
            }
        }
        return out;
    }

    /// -1 for the empty complex.
    [[nodiscard]] int dimension() const {
        std::size_t top = 0;
        for (const auto &s : simplices_) {
            top = std::max(top, s.size());
        }
        return static_cast<int>(top) - 1;
    }

    [[nodiscard]] std::vector<Simplex> simplices(int k) const {
        std::vector<Simplex> out;
        for (const auto &s : simplices_) {
            if (static_cast<int>(s.size()) == k + 1) {
                out.push_back(s);
            }
        }
        return out;
    }

    [[nodiscard]] const std::set<Simplex> &all() const { return simplices_; }
    [[nodiscard]] std::size_t size() const { return simplices_.size(); }

    /// Simplices that are not a proper face of another.
    [[nodiscard]] std::vector<Simplex> maximal_simplices() const {
        std::vector<Simplex> out;
        for (const auto &s : simplices_) {
            bool covered = false;
            for (const auto &t : simplices_) {
                if (t.size() == s.size() + 1 && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                out.push_back(s);
            }
        }
        return out;
    }

    /// counts()[k] = number of k-simplices.
    [[nodiscard]] std::vector<std::size_t> counts() const {
        std::vector<std::size_t> c(static_cast<std::size_t>(dimension() + 1), 0);
        for (const auto &s : simplices_) {
            ++c[s.size() - 1];
        }
        return c;
    }

    [[nodiscard]] long euler_characteristic() const {
        long chi = 0;
        for (const auto &s : simplices_) {
            chi += s.size() % 2 == 1 ? 1 : -1;
        }
        return chi;
    }

    [[nodiscard]] bool is_face_closed() const {
        for (const auto &s : simplices_) {
            if (s.size() < 2) {
                continue;
            }
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                if (!simplices_.contains(face)) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const SimplicialComplex &, const SimplicialComplex &) = default;

  private:
    std::set<Simplex> simplices_;
};

// ---------------------------------------------------------------------------
// Homology over GF(2)

/// Rank of the boundary map from k-simplices to (k-1)-simplices.
inline std::size_t boundary_rank(const SimplicialComplex &complex, int k) {
    if (k <= 0 || k > complex.dimension()) {
        return 0;
    }
    const auto faces = complex.simplices(k - 1);
    const std::size_t words = (faces.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto &s : complex.simplices(k)) {
        std::vector<std::uint64_t> row(words, 0);
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            const auto idx = static_cast<std::size_t>(std::lower_bound(faces.begin(), faces.end(), face) - faces.begin());
            row[idx / 64] |= std::uint64_t{1} << (idx % 64);
        }
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < faces.size() && rank < rows.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & bit)) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r][w] & bit)) {
                for (std::size_t x = 0; x < words; ++x) {
                    rows[r][x] ^= rows[rank][x];
                }
            }
        }
        ++rank;
    }
    return rank;
}

/// Betti numbers b_0..b_dim. Comparison ignores trailing zeros.
struct BettiVector {
    std::vector<std::size_t> values;

    [[nodiscard]] std::size_t operator[](std::size_t k) const { return k < values.size() ? values[k] : 0; }
    [[nodiscard]] std::size_t b0() const { return (*this)[0]; }

    [[nodiscard]] long euler_characteristic() const {
        long chi = 0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            chi += (k % 2 == 0 ? 1L : -1L) * static_cast<long>(values[k]);
        }
        return chi;
    }

    friend bool operator==(const BettiVector &a, const BettiVector &b) {
        const std::size_t n = std::max(a.values.size(), b.values.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (a[k] != b[k]) {
                return false;
            }
        }
        return true;
    }
};

inline BettiVector betti(const SimplicialComplex &complex) {
    const int dim = complex.dimension();
    BettiVector b;
    const auto counts = complex.counts();
    std::size_t rank_k = 0;  // rank of boundary_k
    for (int k = 0; k <= dim; ++k) {
        const std::size_t rank_next = boundary_rank(complex, k + 1);
        b.values.push_back(counts[k] - rank_k - rank_next);
        rank_k = rank_next;
    }
    return b;
}

// ---------------------------------------------------------------------------
// Shadow constructions

namespace detail {
using qcageom::detail::fail;
using qcageom::detail::require;

inline std::vector<Vertex> base_sites(const causal::CausalPoset &poset, const causal::AntiChain &base) {
    std::vector<Vertex> sites;
    for (auto id : base.nodes) {
        sites.push_back(poset.node(id).site);
    }
    auto sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    qcageom::detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                             "shadow complex: base repeats a site");
    return sites;
}

inline std::vector<Vertex> shadow_sites(const causal::CausalPoset &poset, causal::NodeId p,
                                        const causal::AntiChain &base) {
    std::vector<Vertex> out;
    for (auto a : causal::shadow(poset, p, base.nodes)) {
        out.push_back(poset.node(a).site);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Distinct shadows (as site sets) of the maximal elements of the thickened
/// anti-chain, with shadows strictly contained in another one dropped.
inline std::vector<Simplex> major_shadows(const causal::CausalPoset &poset, const causal::AntiChain &base, int thickness) {
    detail::base_sites(poset, base);
    const auto t = causal::thicken(poset, base, thickness);
    qcageom::detail::require(!t.maximal.empty(), "shadow complex: no maximal elements");
    std::set<Simplex> distinct;
    for (auto m : t.maximal) {
        distinct.insert(detail::shadow_sites(poset, m, base));
    }
    std::vector<Simplex> out;
    for (const auto &s : distinct) {
        const bool dominated = std::any_of(distinct.begin(), distinct.end(), [&](const Simplex &o) {
            return o.size() > s.size() && std::includes(o.begin(), o.end(), s.begin(), s.end());
        });
        if (!dominated) {
            out.push_back(s);
        }
    }
    return out;
}

/// Nerve of the maximal-element shadows: vertex k is major_shadows()[k], and
/// a set of vertices spans a simplex when the shadows share a base point.
inline SimplicialComplex shadow_complex(const causal::CausalPoset &poset, const causal::AntiChain &base, int thickness) {
    const auto shadows = major_shadows(poset, base, thickness);
    SimplicialComplex c;
    for (std::size_t k = 0; k < shadows.size(); ++k) {
        c.add_vertex(static_cast<Vertex>(k));
    }
    for (Vertex x : detail::base_sites(poset, base)) {
        Simplex cover;
        for (std::size_t k = 0; k < shadows.size(); ++k) {
            if (std::binary_search(shadows[k].begin(), shadows[k].end(), x)) {
                cover.push_back(static_cast<Vertex>(k));
            }
        }
        if (!cover.empty()) {
            c.add_simplex(cover);
        }
    }
    return c;
}

/// Vertices are the base wires (by site). Every gate of the thickened
/// anti-chain contributes the full simplex on its shadow. With simplification,
/// the edge between the two base control wires of a gate is removed, with
/// its cofaces, unless another gate's shadow holds both endpoints.
inline SimplicialComplex unitary_shadow_complex(const causal::CausalPoset &poset, const causal::AntiChain &base,
                                                int thickness, bool controlled_simplification) {
    const auto sites = detail::base_sites(poset, base);
    const auto t = causal::thicken(poset, base, thickness);
    qcageom::detail::require(!t.maximal.empty(), "shadow complex: no maximal elements");

    SimplicialComplex c;
    for (Vertex v : sites) {
        c.add_vertex(v);
    }
    std::vector<causal::NodeId> gate_ids;
    std::vector<Simplex> gate_shadows;
    for (auto p : t.members) {
        if (poset.node(p).is_gate()) {
            gate_ids.push_back(p);
            gate_shadows.push_back(detail::shadow_sites(poset, p, base));
            c.add_simplex(gate_shadows.back());
        }
    }
    if (!controlled_simplification) {
        return c;
    }

    std::set<causal::NodeId> base_set(base.nodes.begin(), base.nodes.end());
    for (std::size_t g = 0; g < gate_ids.size(); ++g) {
        const auto &gate = poset.node(gate_ids[g]);
        if (gate.controls.size() != 2) {
            continue;
        }
        // Both control wires must sit on the base slice.
        std::size_t on_base = 0;
        for (auto pred : poset.predecessors(gate_ids[g])) {
            const auto &w = poset.node(pred);
            if (w.site != gate.site && base_set.contains(pred)) {
                ++on_base;
            }
        }
        if (on_base != 2) {
            continue;
        }
        const Vertex a = std::min(gate.controls[0], gate.controls[1]);
        const Vertex b = std::max(gate.controls[0], gate.controls[1]);
        bool shared = false;
        for (std::size_t o = 0; o < gate_ids.size() && !shared; ++o) {
            const auto &s = gate_shadows[o];
            shared = o != g && std::binary_search(s.begin(), s.end(), a) && std::binary_search(s.begin(), s.end(), b);
        }
        if (!shared) {
            c.remove_edge(a, b);
        }
    }
    return c;
}

struct StableComplex {
    std::optional<int> thickness;     // t*, when found
    SimplicialComplex complex;        // at t*, or at i_max when none was found
    std::vector<BettiVector> filtration;  // thickness 0..i_max
};

/// Earliest thickness t with b0 = 1 whose Betti vector is unchanged at t+1
/// and t+2, searched over the unitary-shadow filtration 0..i_max.
inline StableComplex stable_complex(const causal::CausalPoset &poset, const causal::AntiChain &base, int i_max,
                                    bool controlled_simplification) {
    qcageom::detail::require(i_max >= 1, "stable_complex: i_max must be at least 1");
    std::vector<SimplicialComplex> complexes;
    StableComplex out;
    for (int t = 0; t <= i_max; ++t) {
        complexes.push_back(unitary_shadow_complex(poset, base, t, controlled_simplification));
        out.filtration.push_back(betti(complexes.back()));
    }
    for (int t = 0; t + 2 <= i_max; ++t) {
        const auto &b = out.filtration;
        if (b[t].b0() == 1 && b[t] == b[t + 1] && b[t] == b[t + 2]) {
            out.thickness = t;
            out.complex = complexes[t];
            return out;
        }
    }
    out.complex = complexes.back();
    return out;
}

} // namespace qcageom::topo
