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
 * Causal order of a recorded QCA run.
 *
 * Nodes are wires (a site's Hilbert space between two layers) and gates
 * (local unitaries). Covering relations run wire -> gate for every wire in a
 * gate's domain and gate -> wire for the fresh target wire it emits. Sites a
 * layer does not target pass through an explicit identity gate, so every
 * layer produces a complete, disjoint slice of wires.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "qca.hpp"

namespace qcageom::causal {

using NodeId = std::size_t;

enum class NodeKind { wire, gate };

struct Node {
    NodeKind kind = NodeKind::wire;
    int site = 0;   // wire: its site; gate: its target site
    int level = 0;  // wire: slice index; gate: layer index
    std::string unitary;         // gates only; "identity" for inserted copies
    std::vector<int> controls;   // gates only, by site

    [[nodiscard]] bool is_gate() const { return kind == NodeKind::gate; }
    [[nodiscard]] bool is_identity() const { return is_gate() && unitary == "identity"; }
};

/// Fixed-size bit row for reachability.
class BitRow {
  public:
    BitRow() = default;
    explicit BitRow(std::size_t n) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    [[nodiscard]] bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    BitRow &operator|=(const BitRow &o) {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] |= o.words_[w];
        }
        return *this;
    }

  private:
    std::vector<std::uint64_t> words_;
};

class CausalPoset {
  public:
    /// Builds from covering edges (from, to). Throws on cycles.
    CausalPoset(std::vector<Node> nodes, const std::vector<std::pair<NodeId, NodeId>> &edges)
        : nodes_(std::move(nodes)), succ_(nodes_.size()), pred_(nodes_.size()) {
        const std::size_t n = nodes_.size();
        for (const auto &[a, b] : edges) {
            detail::require(a < n && b < n, "poset: edge endpoint out of range");
            detail::require(a != b, "poset: self edge");
            succ_[a].push_back(b);
            pred_[b].push_back(a);
        }
        for (auto &v : succ_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        for (auto &v : pred_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        // Kahn's algorithm; ties broken by id for a deterministic order.
        std::vector<std::size_t> indeg(n);
        for (NodeId v = 0; v < n; ++v) {
            indeg[v] = pred_[v].size();
        }
        std::vector<NodeId> ready;
        for (NodeId v = n; v-- > 0;) {
            if (indeg[v] == 0) {
                ready.push_back(v);
            }
        }
        while (!ready.empty()) {
            const NodeId v = ready.back();
            ready.pop_back();
            topo_.push_back(v);
            for (NodeId w : succ_[v]) {
                if (--indeg[w] == 0) {
                    ready.push_back(w);
                }
            }
        }
        detail::require(topo_.size() == n, "poset: covering relation has a cycle");

        down_.assign(n, BitRow(n));
        up_.assign(n, BitRow(n));
        for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
            up_[*it].set(*it);
            for (NodeId w : succ_[*it]) {
                up_[*it] |= up_[w];
            }
        }
        for (NodeId v : topo_) {
            down_[v].set(v);
            for (NodeId u : pred_[v]) {
                down_[v] |= down_[u];
            }
        }
    }

    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] const Node &node(NodeId id) const { return nodes_.at(id); }
    [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }
    [[nodiscard]] std::span<const NodeId> successors(NodeId id) const { return succ_.at(id); }
    [[nodiscard]] std::span<const NodeId> predecessors(NodeId id) const { return pred_.at(id); }
    [[nodiscard]] std::span<const NodeId> topological_order() const { return topo_; }

    /// x ⪯ y (reflexive).
    [[nodiscard]] bool precedes(NodeId x, NodeId y) const {
        check(x);
        check(y);
        return up_[x].test(y);
    }
    [[nodiscard]] bool related(NodeId x, NodeId y) const { return precedes(x, y) || precedes(y, x); }

    /// {y | p ⪯ y}: points p can influence, p included.
    [[nodiscard]] std::vector<NodeId> future_cone(NodeId p) const { return collect(up_.at(checked(p))); }
    /// {y | y ⪯ p}: points that can influence p, p included.
    [[nodiscard]] std::vector<NodeId> past_cone(NodeId p) const { return collect(down_.at(checked(p))); }

    [[nodiscard]] bool is_antichain(std::span<const NodeId> set) const {
        for (std::size_t i = 0; i < set.size(); ++i) {
            for (std::size_t j = i + 1; j < set.size(); ++j) {
                if (set[i] == set[j] || related(set[i], set[j])) {
                    return false;
                }
            }
        }
        return true;
    }

    /// Anti-chain such that every outside point is related to some member.
    [[nodiscard]] bool is_maximal_antichain(std::span<const NodeId> set) const {
        if (!is_antichain(set)) {
            return false;
        }
        BitRow touched(size());
        for (NodeId m : set) {
            touched |= up_[checked(m)];
            touched |= down_[m];
        }
        for (NodeId v = 0; v < size(); ++v) {
            if (!touched.test(v)) {
                return false;
            }
        }
        return true;
    }

    // Slice bookkeeping, filled by build_poset.
    [[nodiscard]] std::size_t slice_count() const { return slices_.size(); }
    [[nodiscard]] std::span<const NodeId> slice(std::size_t j) const {
        detail::require(j < slices_.size(), "poset: slice index out of range");
        return slices_[j];
    }
    [[nodiscard]] NodeId wire(int site, std::size_t slice_index) const {
        for (NodeId id : slice(slice_index)) {
            if (nodes_[id].site == site) {
                return id;
            }
        }
        detail::fail("poset: no wire for site " + std::to_string(site));
    }
    void set_slices(std::vector<std::vector<NodeId>> slices) { slices_ = std::move(slices); }

  private:
    void check(NodeId id) const { detail::require(id < nodes_.size(), "poset: unknown node"); }
    NodeId checked(NodeId id) const {
        check(id);
        return id;
    }
    std::vector<NodeId> collect(const BitRow &row) const {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < size(); ++v) {
            if (row.test(v)) {
                out.push_back(v);
            }
        }
        return out;
    }

    std::vector<Node> nodes_;
    std::vector<std::vector<NodeId>> succ_;
    std::vector<std::vector<NodeId>> pred_;
    std::vector<NodeId> topo_;
    std::vector<BitRow> up_;    // up_[x] = {y | x ⪯ y}
    std::vector<BitRow> down_;  // down_[x] = {y | y ⪯ x}
    std::vector<std::vector<NodeId>> slices_;
};

/// Poset of a run's layers. Slice 0 holds the initial wires of all N + 2
/// register qubits; slice k + 1 holds the wires emitted by layer k.
inline CausalPoset build_poset(const qca::QcaConfig &config, std::span<const qca::Layer> layers) {
    config.validate();
    const int n_reg = config.register_size();
    std::vector<Node> nodes;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::vector<NodeId>> slices(1);

    for (int q = 0; q < n_reg; ++q) {
        slices[0].push_back(nodes.size());
        nodes.push_back({NodeKind::wire, q, 0, {}, {}});
    }
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto &prev = slices.back();
        std::vector<NodeId> next(n_reg);
        std::vector<bool> targeted(n_reg, false);
        const int level = static_cast<int>(k);
        for (const auto &g : layers[k].gates) {
            detail::require(g.target >= 0 && g.target < n_reg, "build_poset: gate target out of range");
            detail::require(!targeted[g.target], "build_poset: two gates target the same site in one layer");
            targeted[g.target] = true;
            const NodeId gid = nodes.size();
            nodes.push_back({NodeKind::gate, g.target, level, g.unitary, g.controls});
            edges.emplace_back(prev[g.target], gid);
            for (int c : g.controls) {
                detail::require(c >= 0 && c < n_reg && c != g.target, "build_poset: bad control site");
                edges.emplace_back(prev[c], gid);
            }
            next[g.target] = nodes.size();
            nodes.push_back({NodeKind::wire, g.target, level + 1, {}, {}});
            edges.emplace_back(gid, next[g.target]);
        }
        for (int q = 0; q < n_reg; ++q) {
            if (targeted[q]) {
                continue;
            }
            const NodeId gid = nodes.size();
            nodes.push_back({NodeKind::gate, q, level, "identity", {}});
            edges.emplace_back(prev[q], gid);
            next[q] = nodes.size();
            nodes.push_back({NodeKind::wire, q, level + 1, {}, {}});
            edges.emplace_back(gid, next[q]);
        }
        slices.push_back(std::move(next));
    }
    CausalPoset poset(std::move(nodes), edges);
    poset.set_slices(std::move(slices));
    return poset;
}

inline CausalPoset build_poset(const qca::RunTrace &trace) { return build_poset(trace.config, trace.layers); }

// ---------------------------------------------------------------------------
// Anti-chains and foliations

struct AntiChain {
    std::vector<NodeId> nodes;
    bool maximal = false;
};

inline AntiChain make_antichain(const CausalPoset &poset, std::vector<NodeId> nodes) {
    detail::require(poset.is_antichain(nodes), "anti-chain: members are related");
    const bool maximal = poset.is_maximal_antichain(nodes);
    return {std::move(nodes), maximal};
}

/// All wires of slice `layer`; throws if the result is not maximal.
inline AntiChain slice_antichain(const CausalPoset &poset, std::size_t layer) {
    auto s = poset.slice(layer);
    AntiChain a = make_antichain(poset, {s.begin(), s.end()});
    if (!a.maximal) {
        throw InvariantViolation("slice anti-chain is not maximal");
    }
    return a;
}

inline AntiChain slice_antichain(const qca::RunTrace &trace, std::size_t layer) {
    return slice_antichain(build_poset(trace), layer);
}

/// One maximal anti-chain per slice, in layer order.
inline std::vector<AntiChain> foliate(const CausalPoset &poset) {
    std::vector<AntiChain> out;
    for (std::size_t j = 0; j < poset.slice_count(); ++j) {
        out.push_back(slice_antichain(poset, j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Thickening

struct ThickenedAntiChain {
    AntiChain base;
    int thickness = 0;
    std::vector<NodeId> members;  // sorted
    std::vector<NodeId> maximal;  // maximal elements of the member subposet
};

/// For every point p in the future of `base`, the number of elements on the
/// longest chain from the base to p inside J-(p) ∩ J+(base), counting the
/// starting base element and every gate after it. -1 outside the future.
inline std::vector<int> interval_card(const CausalPoset &poset, std::span<const NodeId> base) {
    std::vector<int> card(poset.size(), -1);
    for (NodeId a : base) {
        card.at(a) = 1;
    }
    for (NodeId v : poset.topological_order()) {
        if (card[v] == 1 && std::find(base.begin(), base.end(), v) != base.end()) {
            continue;
        }
        int best = -1;
        for (NodeId u : poset.predecessors(v)) {
            best = std::max(best, card[u]);
        }
        if (best >= 0) {
            card[v] = best + (poset.node(v).is_gate() ? 1 : 0);
        }
    }
    return card;
}

/// Points of the future of `base` whose interval cardinality is at most
/// thickness + 1. Thickness t therefore spans the next t gate layers and the
/// wires they emit.
inline ThickenedAntiChain thicken(const CausalPoset &poset, const AntiChain &base, int thickness) {
    detail::require(thickness >= 0, "thicken: negative thickness");
    detail::require(!base.nodes.empty() && poset.is_maximal_antichain(base.nodes), "thicken: base is not a maximal anti-chain");
    const auto card = interval_card(poset, base.nodes);
    ThickenedAntiChain t{base, thickness, {}, {}};
    std::vector<bool> member(poset.size(), false);
    for (NodeId v = 0; v < poset.size(); ++v) {
        if (card[v] >= 1 && card[v] <= thickness + 1) {
            member[v] = true;
            t.members.push_back(v);
        }
    }
    for (NodeId v : t.members) {
        const auto succ = poset.successors(v);
        if (std::none_of(succ.begin(), succ.end(), [&](NodeId w) { return member[w]; })) {
            t.maximal.push_back(v);
        }
    }
    return t;
}

/// Points of `base` in the causal past of p.
inline std::vector<NodeId> shadow(const CausalPoset &poset, NodeId p, std::span<const NodeId> base) {
    std::vector<NodeId> out;
    for (NodeId a : base) {
        if (poset.precedes(a, p)) {
            out.push_back(a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qcageom::causal
