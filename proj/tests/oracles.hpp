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

// Independent reference implementations used by the tests and the acceptance
// binary. Deliberately naive: direct index sums, dense matrices, exhaustive
// search.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "qcageom/qcageom.hpp"

namespace qcageom::oracle {

/// rho_keep[i][j] = sum_env psi[i, env] conj(psi[j, env]) with the index bits
/// assembled one qubit at a time.
/// Kept qubits are ordered as in the register.
inline ComplexMatrix partial_trace(const StateVector &psi, std::vector<Label> keep) {
    std::sort(keep.begin(), keep.end(), [&](Label a, Label b) {
        const auto &l = psi.labels();
        return std::find(l.begin(), l.end(), a) < std::find(l.begin(), l.end(), b);
    });
    const std::size_t n = psi.n_qubits();
    std::vector<std::size_t> keep_pos;
    std::vector<std::size_t> env_pos;
    for (Label l : keep) {
        keep_pos.push_back(static_cast<std::size_t>(std::find(psi.labels().begin(), psi.labels().end(), l) -
                                                    psi.labels().begin()));
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(keep_pos.begin(), keep_pos.end(), q) == keep_pos.end()) {
            env_pos.push_back(q);
        }
    }
    const std::size_t dk = std::size_t{1} << keep_pos.size();
    const std::size_t de = std::size_t{1} << env_pos.size();
    auto full_index = [&](std::size_t k, std::size_t e) {
        std::size_t idx = 0;
        for (std::size_t b = 0; b < keep_pos.size(); ++b) {
            if ((k >> (keep_pos.size() - 1 - b)) & 1U) {
                idx |= std::size_t{1} << (n - 1 - keep_pos[b]);
            }
        }
        for (std::size_t b = 0; b < env_pos.size(); ++b) {
            if ((e >> (env_pos.size() - 1 - b)) & 1U) {
                idx |= std::size_t{1} << (n - 1 - env_pos[b]);
            }
        }
        return idx;
    };
    ComplexMatrix rho(dk, dk);
    for (std::size_t i = 0; i < dk; ++i) {
        for (std::size_t j = 0; j < dk; ++j) {
            Complex s = 0.0;
            for (std::size_t e = 0; e < de; ++e) {
                s += psi[full_index(i, e)] * std::conj(psi[full_index(j, e)]);
            }
            rho(i, j) = s;
        }
    }
    return rho;
}

inline StateVector random_state(std::mt19937_64 &rng, std::size_t n_qubits) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> a(std::size_t{1} << n_qubits);
    for (auto &z : a) {
        z = {g(rng), g(rng)};
    }
    return StateVector::normalized(std::move(a), qcageom::detail::default_labels(n_qubits));
}

// ---------------------------------------------------------------------------
// GF(2) homology

inline std::size_t gf2_rank(std::vector<std::vector<int>> m) {
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) {
            ++p;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[p], m[rank]);
        for (std::size_t r = rank + 1; r < m.size(); ++r) {
            if (m[r][c]) {
                for (std::size_t x = c; x < cols; ++x) {
                    m[r][x] ^= m[rank][x];
                }
            }
        }
        ++rank;
    }
    return rank;
}

/// Betti numbers from dense boundary matrices: b_k = dim ker d_k - dim im d_{k+1}.
inline std::vector<std::size_t> betti(const std::set<std::vector<int>> &simplices) {
    int dim = -1;
    for (const auto &s : simplices) {
        dim = std::max(dim, static_cast<int>(s.size()) - 1);
    }
    std::vector<std::vector<std::vector<int>>> by_dim(static_cast<std::size_t>(dim + 2));
    for (const auto &s : simplices) {
        by_dim[s.size() - 1].push_back(s);
    }
    auto boundary = [&](int k) {  // rows: k-simplices, cols: (k-1)-simplices
        const auto &rows = by_dim[static_cast<std::size_t>(k)];
        const auto &cols = by_dim[static_cast<std::size_t>(k - 1)];
        std::vector<std::vector<int>> m(rows.size(), std::vector<int>(cols.size(), 0));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                m[r][c] = std::includes(rows[r].begin(), rows[r].end(), cols[c].begin(), cols[c].end()) ? 1 : 0;
            }
        }
        return gf2_rank(m);
    };
    std::vector<std::size_t> b;
    for (int k = 0; k <= dim; ++k) {
        const std::size_t rk = k == 0 ? 0 : boundary(k);
        const std::size_t rk1 = k + 1 <= dim ? boundary(k + 1) : 0;
        b.push_back(by_dim[static_cast<std::size_t>(k)].size() - rk - rk1);
    }
    return b;
}

/// Random complex on at most max_vertices vertices built from random
/// generating simplices of size 1..4.
inline topo::SimplicialComplex random_complex(std::mt19937_64 &rng, int max_vertices) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    const int v = nv(rng);
    std::uniform_int_distribution<int> pick(0, v - 1);
    std::uniform_int_distribution<int> size(1, std::min(4, v));
    std::uniform_int_distribution<int> count(1, 2 * v);
    topo::SimplicialComplex c;
    const int gens = count(rng);
    for (int g = 0; g < gens; ++g) {
        topo::Simplex s;
        const int k = size(rng);
        while (static_cast<int>(s.size()) < k) {
            const int x = pick(rng);
            if (std::find(s.begin(), s.end(), x) == s.end()) {
                s.push_back(x);
            }
        }
        c.add_simplex(s);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Posets

/// reach[x][y] = x ⪯ y by Floyd-Warshall over the covering edges.
inline std::vector<std::vector<bool>> reachability(const causal::CausalPoset &p) {
    const std::size_t n = p.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) {
        r[x][x] = true;
        for (auto y : p.successors(x)) {
            r[x][y] = true;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!r[i][k]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (r[k][j]) {
                    r[i][j] = true;
                }
            }
        }
    }
    return r;
}

/// Thickened members by direct evaluation: for each p, enumerate the interval
/// J-(p) ∩ J+(A) and find its longest chain starting on A, counting the
/// starting element and every gate after it.
inline std::vector<causal::NodeId> thicken_members(const causal::CausalPoset &p, const std::vector<causal::NodeId> &base,
                                                   int thickness) {
    const auto r = reachability(p);
    const std::size_t n = p.size();
    std::vector<causal::NodeId> out;
    for (std::size_t target = 0; target < n; ++target) {
        std::vector<std::size_t> interval;
        for (std::size_t y = 0; y < n; ++y) {
            const bool above_base = std::any_of(base.begin(), base.end(), [&](auto a) { return r[a][y]; });
            if (above_base && r[y][target]) {
                interval.push_back(y);
            }
        }
        if (interval.empty()) {
            continue;
        }
        // Longest chain by exhaustive extension from every base element.
        int best = 0;
        std::vector<std::size_t> chain;
        auto extend = [&](auto &&self, std::size_t last, int card) -> void {
            if (last == target) {
                best = std::max(best, card);
            }
            for (std::size_t y : interval) {
                if (y != last && r[last][y]) {
                    self(self, y, card + (p.node(y).is_gate() ? 1 : 0));
                }
            }
        };
        for (std::size_t a : interval) {
            if (std::find(base.begin(), base.end(), a) != base.end()) {
                extend(extend, a, 1);
            }
        }
        if (best >= 1 && best <= thickness + 1) {
            out.push_back(target);
        }
    }
    return out;
}

/// Brute-force maximality: no node outside the set is unrelated to all members.
inline bool is_maximal_antichain(const causal::CausalPoset &p, const std::vector<causal::NodeId> &set) {
    const auto r = reachability(p);
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (i != j && r[set[i]][set[j]]) {
                return false;
            }
        }
    }
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (std::find(set.begin(), set.end(), x) != set.end()) {
            continue;
        }
        const bool related = std::any_of(set.begin(), set.end(), [&](auto m) { return r[m][x] || r[x][m]; });
        if (!related) {
            return false;
        }
    }
    return true;
}

} // namespace qcageom::oracle
