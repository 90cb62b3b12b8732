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
 * Dense complex linear algebra and qubit-state primitives.
 *
 * Qubits carry integer labels. Within a register, the qubit at position 0
 * (the first label) is the most significant bit of the amplitude index, so
 * amplitudes read left to right in circuit-diagram order.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace qcageom {

using Complex = std::complex<double>;
using Label = int;

inline constexpr std::size_t kMaxQubits = 16;
inline constexpr double kStateTol = 1e-10;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        detail::require(data_.size() == rows_ * cols_, "ComplexMatrix: entry count does not match shape");
        for (const auto &z : data_) {
            detail::require(std::isfinite(z.real()) && std::isfinite(z.imag()),
                            "ComplexMatrix: non-finite entry");
        }
    }
    /// Row-major initializer, e.g. {{1, 0}, {0, 1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows) {
            detail::require(r.size() == cols_, "ComplexMatrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }
    [[nodiscard]] std::span<const Complex> entries() const { return data_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    [[nodiscard]] Complex trace() const {
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// Largest entrywise modulus of (this - other).
    [[nodiscard]] double max_abs_diff(const ComplexMatrix &other) const {
        detail::require(rows_ == other.rows_ && cols_ == other.cols_, "max_abs_diff: shape mismatch");
        double m = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            m = std::max(m, std::abs(data_[i] - other.data_[i]));
        }
        return m;
    }

    [[nodiscard]] bool is_hermitian(double tol = kStateTol) const {
        if (!is_square()) {
            return false;
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = r; c < cols_; ++c) {
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    [[nodiscard]] bool is_unitary(double tol = kStateTol) const {
        if (!is_square()) {
            return false;
        }
        return (adjoint() * (*this)).max_abs_diff(identity(rows_)) <= tol;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
        detail::require(a.cols_ == b.rows_, "matrix product: inner dimensions differ");
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{0.0, 0.0}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        detail::require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum: shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            a.data_[i] += b.data_[i];
        }
        return a;
    }

    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        for (auto &z : a.data_) {
            z *= s;
        }
        return a;
    }

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product a ⊗ b.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

namespace gates {
inline ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() { return {{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}}; }
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
inline ComplexMatrix hadamard() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {{h, h}, {h, -h}};
}
/// exp(-i theta sigma_x), no factor 1/2 in the exponent.
inline ComplexMatrix exp_sigma_x(double theta) {
    const Complex c{std::cos(theta), 0.0};
    const Complex s{0.0, -std::sin(theta)};
    return {{c, s}, {s, c}};
}
/// exp(-i theta sigma_z), no factor 1/2 in the exponent.
inline ComplexMatrix exp_sigma_z(double theta) {
    return {{std::polar(1.0, -theta), 0.0}, {0.0, std::polar(1.0, theta)}};
}
/// Standard rotation Rz(theta) = exp(-i theta sigma_z / 2).
inline ComplexMatrix rz(double theta) { return exp_sigma_z(theta / 2.0); }
inline ComplexMatrix cnot() {
    return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
}
} // namespace gates

namespace detail {

inline void check_labels(std::span<const Label> labels) {
    require(labels.size() <= kMaxQubits, "too many qubits (max " + std::to_string(kMaxQubits) + ")");
    std::vector<Label> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "duplicate qubit labels");
}

inline std::vector<Label> default_labels(std::size_t n) {
    std::vector<Label> l(n);
    for (std::size_t i = 0; i < n; ++i) {
        l[i] = static_cast<Label>(i);
    }
    return l;
}

inline std::size_t qubits_for_dim(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    require((std::size_t{1} << n) == dim, "dimension is not a power of two");
    return n;
}

/// Position of `label` within `labels`; throws when absent.
inline std::size_t position_of(std::span<const Label> labels, Label label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    require(it != labels.end(), "unknown qubit label " + std::to_string(label));
    return static_cast<std::size_t>(it - labels.begin());
}

} // namespace detail

/// Pure state of n labelled qubits.
class StateVector {
  public:
    StateVector() = default;

    /// Validates unit norm within kStateTol.
    StateVector(std::vector<Complex> amplitudes, std::vector<Label> labels)
        : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
        detail::check_labels(labels_);
        detail::require(amps_.size() == (std::size_t{1} << labels_.size()),
                        "StateVector: amplitude count must be 2^n");
        detail::require(std::abs(norm_squared() - 1.0) <= kStateTol, "StateVector: not normalized");
    }
    explicit StateVector(std::vector<Complex> amplitudes)
        : StateVector(amplitudes, detail::default_labels(detail::qubits_for_dim(amplitudes.size()))) {}

    /// Scales arbitrary nonzero amplitudes to unit norm.
    static StateVector normalized(std::vector<Complex> amplitudes, std::vector<Label> labels) {
        double n2 = 0.0;
        for (const auto &a : amplitudes) {
            n2 += std::norm(a);
        }
        detail::require(n2 > 0.0 && std::isfinite(n2), "cannot normalize a zero or non-finite vector");
        const double s = 1.0 / std::sqrt(n2);
        for (auto &a : amplitudes) {
            a *= s;
        }
        return StateVector(std::move(amplitudes), std::move(labels));
    }

    static StateVector basis(std::size_t n_qubits, std::uint64_t index) {
        detail::require(n_qubits <= kMaxQubits, "too many qubits");
        detail::require(index < (std::uint64_t{1} << n_qubits), "basis index out of range");
        std::vector<Complex> a(std::size_t{1} << n_qubits);
        a[index] = 1.0;
        return StateVector(std::move(a), detail::default_labels(n_qubits));
    }

    /// Single-qubit state from two amplitudes (normalized on input).
    static StateVector qubit(Complex zero, Complex one, Label label = 0) {
        return normalized({zero, one}, {label});
    }

    [[nodiscard]] std::size_t n_qubits() const { return labels_.size(); }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<const Label> labels() const { return labels_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    [[nodiscard]] StateVector relabeled(std::vector<Label> labels) const {
        detail::require(labels.size() == labels_.size(), "relabel: count mismatch");
        return StateVector(amps_, std::move(labels));
    }

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    std::vector<Label> labels_;
    std::vector<Complex> amps_;
};

/// Hermitian, unit-trace density matrix over labelled qubits. Positivity is
/// checked where a spectrum is computed.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    DensityMatrix(ComplexMatrix m, std::vector<Label> labels) : labels_(std::move(labels)), m_(std::move(m)) {
        detail::check_labels(labels_);
        detail::require(m_.is_square() && m_.rows() == (std::size_t{1} << labels_.size()),
                        "DensityMatrix: shape must be 2^n x 2^n");
        detail::require(m_.is_hermitian(kStateTol), "DensityMatrix: not Hermitian");
        detail::require(std::abs(m_.trace() - Complex{1.0, 0.0}) <= kStateTol, "DensityMatrix: trace is not 1");
    }
    explicit DensityMatrix(ComplexMatrix m)
        : DensityMatrix(m, detail::default_labels(detail::qubits_for_dim(m.rows()))) {}

    /// |psi><psi|
    static DensityMatrix projector(const StateVector &psi) {
        const std::size_t d = psi.dim();
        ComplexMatrix m(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                m(i, j) = psi[i] * std::conj(psi[j]);
            }
        }
        return DensityMatrix(std::move(m), {psi.labels().begin(), psi.labels().end()});
    }

    static DensityMatrix maximally_mixed(std::size_t n_qubits) {
        const std::size_t d = std::size_t{1} << n_qubits;
        return DensityMatrix((1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d),
                             detail::default_labels(n_qubits));
    }

    [[nodiscard]] std::size_t n_qubits() const { return labels_.size(); }
    [[nodiscard]] std::size_t dim() const { return m_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const { return m_; }
    [[nodiscard]] std::span<const Label> labels() const { return labels_; }
    [[nodiscard]] const Complex &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  private:
    std::vector<Label> labels_;
    ComplexMatrix m_;
};

// ---------------------------------------------------------------------------
// Named states

namespace states {
inline StateVector zero() { return StateVector({1.0, 0.0}); }
inline StateVector one() { return StateVector({0.0, 1.0}); }
inline StateVector plus() {
    const double h = 1.0 / std::numbers::sqrt2;
    return StateVector({h, h});
}
/// (|00> + |11>)/sqrt(2)
inline StateVector bell_phi_plus() {
    const double h = 1.0 / std::numbers::sqrt2;
    return StateVector({h, 0.0, 0.0, h});
}
/// (|0...0> + |1...1>)/sqrt(2)
inline StateVector ghz(std::size_t n) {
    detail::require(n >= 1 && n <= kMaxQubits, "ghz: bad qubit count");
    std::vector<Complex> a(std::size_t{1} << n);
    a.front() = 1.0 / std::numbers::sqrt2;
    a.back() = 1.0 / std::numbers::sqrt2;
    return StateVector(std::move(a));
}
/// Werner family (1-z) I/4 + z |beta+><beta+|, z in [0, 1].
inline DensityMatrix werner(double z) {
    detail::require(z >= 0.0 && z <= 1.0, "werner: z outside [0, 1]");
    const auto bell = DensityMatrix::projector(bell_phi_plus()).matrix();
    return DensityMatrix(((1.0 - z) / 4.0) * ComplexMatrix::identity(4) + Complex{z, 0.0} * bell);
}
} // namespace states

// ---------------------------------------------------------------------------
// Composition

inline StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<Label> labels(a.labels().begin(), a.labels().end());
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    detail::check_labels(labels);
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(std::move(amps), std::move(labels));
}

inline DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    std::vector<Label> labels(a.labels().begin(), a.labels().end());
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    detail::check_labels(labels);
    return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(labels));
}

/// Applies a 2^k x 2^k unitary to the qubits `targets` (by label). The first
/// target is the most significant bit of the gate's own basis index.
inline StateVector apply_unitary(const StateVector &s, const ComplexMatrix &u, std::span<const Label> targets) {
    const std::size_t k = targets.size();
    detail::require(k >= 1 && k <= s.n_qubits(), "apply_unitary: bad target count");
    detail::require(u.is_square() && u.rows() == (std::size_t{1} << k), "apply_unitary: gate shape does not match targets");
    detail::require(u.is_unitary(kStateTol), "apply_unitary: gate is not unitary");

    const std::size_t n = s.n_qubits();
    std::vector<std::size_t> shifts(k);
    std::size_t target_mask = 0;
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t pos = detail::position_of(s.labels(), targets[t]);
        shifts[t] = n - 1 - pos;
        detail::require((target_mask & (std::size_t{1} << shifts[t])) == 0, "apply_unitary: repeated target");
        target_mask |= std::size_t{1} << shifts[t];
    }

    const std::size_t gdim = std::size_t{1} << k;
    std::vector<std::size_t> offsets(gdim, 0);
    for (std::size_t g = 0; g < gdim; ++g) {
        for (std::size_t t = 0; t < k; ++t) {
            if ((g >> (k - 1 - t)) & 1U) {
                offsets[g] |= std::size_t{1} << shifts[t];
            }
        }
    }

    std::vector<Complex> out(s.amplitudes().begin(), s.amplitudes().end());
    std::vector<Complex> local(gdim);
    for (std::size_t base = 0; base < s.dim(); ++base) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t g = 0; g < gdim; ++g) {
            local[g] = s[base | offsets[g]];
        }
        for (std::size_t r = 0; r < gdim; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < gdim; ++c) {
                acc += u(r, c) * local[c];
            }
            out[base | offsets[r]] = acc;
        }
    }
    return StateVector(std::move(out), {s.labels().begin(), s.labels().end()});
}

inline StateVector apply_unitary(const StateVector &s, const ComplexMatrix &u, std::initializer_list<Label> targets) {
    return apply_unitary(s, u, std::span<const Label>(targets.begin(), targets.size()));
}

// ---------------------------------------------------------------------------
// Reduction

namespace detail {

struct Split {
    std::vector<Label> kept_labels;        // in register order
    std::vector<std::size_t> kept_shifts;  // bit shift of each kept qubit, most significant first
    std::vector<std::size_t> traced_shifts;
};

inline Split split_labels(std::span<const Label> labels, std::span<const Label> keep) {
    require(!keep.empty(), "partial_trace: keep set is empty");
    std::vector<bool> kept(labels.size(), false);
    for (Label l : keep) {
        const std::size_t p = position_of(labels, l);
        require(!kept[p], "partial_trace: duplicate label in keep set");
        kept[p] = true;
    }
    Split s;
    const std::size_t n = labels.size();
    for (std::size_t p = 0; p < n; ++p) {
        if (kept[p]) {
            s.kept_labels.push_back(labels[p]);
            s.kept_shifts.push_back(n - 1 - p);
        } else {
            s.traced_shifts.push_back(n - 1 - p);
        }
    }
    return s;
}

inline std::size_t scatter(std::size_t local, const std::vector<std::size_t> &shifts) {
    std::size_t full = 0;
    const std::size_t m = shifts.size();
    for (std::size_t t = 0; t < m; ++t) {
        if ((local >> (m - 1 - t)) & 1U) {
            full |= std::size_t{1} << shifts[t];
        }
    }
    return full;
}

} // namespace detail

/// Reduced state on `keep` (labels, any order; output in register order).
inline DensityMatrix partial_trace(const StateVector &psi, std::span<const Label> keep) {
    const auto split = detail::split_labels(psi.labels(), keep);
    const std::size_t dk = std::size_t{1} << split.kept_shifts.size();
    const std::size_t dt = std::size_t{1} << split.traced_shifts.size();

    std::vector<std::size_t> kept_off(dk), traced_off(dt);
    for (std::size_t i = 0; i < dk; ++i) {
        kept_off[i] = detail::scatter(i, split.kept_shifts);
    }
    for (std::size_t t = 0; t < dt; ++t) {
        traced_off[t] = detail::scatter(t, split.traced_shifts);
    }

    ComplexMatrix rho(dk, dk);
    for (std::size_t i = 0; i < dk; ++i) {
        for (std::size_t j = i; j < dk; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t t = 0; t < dt; ++t) {
                acc += psi[kept_off[i] | traced_off[t]] * std::conj(psi[kept_off[j] | traced_off[t]]);
            }
            rho(i, j) = acc;
            rho(j, i) = std::conj(acc);
        }
    }
    return DensityMatrix(std::move(rho), split.kept_labels);
}

inline DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const Label> keep) {
    const auto split = detail::split_labels(rho.labels(), keep);
    const std::size_t dk = std::size_t{1} << split.kept_shifts.size();
    const std::size_t dt = std::size_t{1} << split.traced_shifts.size();

    std::vector<std::size_t> kept_off(dk), traced_off(dt);
    for (std::size_t i = 0; i < dk; ++i) {
        kept_off[i] = detail::scatter(i, split.kept_shifts);
    }
    for (std::size_t t = 0; t < dt; ++t) {
        traced_off[t] = detail::scatter(t, split.traced_shifts);
    }

    ComplexMatrix out(dk, dk);
    for (std::size_t i = 0; i < dk; ++i) {
        for (std::size_t j = 0; j < dk; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t t = 0; t < dt; ++t) {
                acc += rho(kept_off[i] | traced_off[t], kept_off[j] | traced_off[t]);
            }
            out(i, j) = acc;
        }
    }
    // Symmetrize away summation-order asymmetry.
    for (std::size_t i = 0; i < dk; ++i) {
        out(i, i) = Complex{out(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < dk; ++j) {
            const Complex avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = avg;
            out(j, i) = std::conj(avg);
        }
    }
    return DensityMatrix(std::move(out), split.kept_labels);
}

inline DensityMatrix partial_trace(const StateVector &psi, std::initializer_list<Label> keep) {
    return partial_trace(psi, std::span<const Label>(keep.begin(), keep.size()));
}
inline DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<Label> keep) {
    return partial_trace(rho, std::span<const Label>(keep.begin(), keep.size()));
}

// ---------------------------------------------------------------------------
// Spectra and entropies

/// Eigenvalues of a Hermitian matrix in descending order (cyclic complex
/// Jacobi).
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    detail::require(m.is_hermitian(kStateTol), "hermitian_eigenvalues: matrix is not Hermitian");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;

    double scale = 0.0;
    for (const auto &z : a.entries()) {
        scale = std::max(scale, std::abs(z));
    }
    const double eps = 1e-15 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off = std::max(off, std::abs(a(p, q)));
            }
        }
        if (off <= eps) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= eps) {
                    continue;
                }
                // G = diag(1, e^{-i phi}) R(theta) zeroes a(p, q).
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const Complex gpp{c, 0.0};
                const Complex gpq{s, 0.0};
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) {
        ev[i] = a(i, i).real();
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

inline constexpr double kNegativeEigenTol = 1e-10;
inline constexpr double kZeroEigenTol = 1e-12;

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(rho.matrix())) {
        detail::require(lambda >= -kNegativeEigenTol, "von_neumann_entropy: matrix is not positive semidefinite");
        if (lambda > kZeroEigenTol) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::max(s, 0.0);
}

/// |<a|b>|^2
inline double fidelity(const StateVector &a, const StateVector &b) {
    detail::require(a.dim() == b.dim(), "fidelity: dimension mismatch");
    Complex ip{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        ip += std::conj(a[i]) * b[i];
    }
    return std::clamp(std::norm(ip), 0.0, 1.0);
}

/// <psi| rho |psi> for a pure reference psi.
inline double fidelity(const StateVector &psi, const DensityMatrix &rho) {
    detail::require(psi.dim() == rho.dim(), "fidelity: dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        for (std::size_t j = 0; j < psi.dim(); ++j) {
            acc += std::conj(psi[i]) * rho(i, j) * psi[j];
        }
    }
    return std::clamp(acc.real(), 0.0, 1.0);
}

/// Partial transpose on the second qubit of a two-qubit density matrix.
inline ComplexMatrix partial_transpose_second(const DensityMatrix &rho) {
    detail::require(rho.n_qubits() == 2, "partial transpose: expected a two-qubit state");
    ComplexMatrix pt(4, 4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    pt(2 * i + j, 2 * k + l) = rho(2 * i + l, 2 * k + j);
                }
            }
        }
    }
    return pt;
}

/// Peres-Horodecki test; exact for two qubits.
inline bool ppt_separable_2q(const DensityMatrix &rho) {
    const auto ev = hermitian_eigenvalues(partial_transpose_second(rho));
    return ev.back() >= -kNegativeEigenTol;
}

} // namespace qcageom
