// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spin_basis.hpp
 * @brief Full 2^Q Hilbert space of M+N spin-1/2 systems in two rows.
 *
 * Bit i of a basis index is 1 when spin i is up (excited). Spins 0..M-1 form
 * the top row, spins M..M+N-1 the bottom row. Collective operators act as
 * sparse sweeps over the amplitude array; no matrices are stored.
 */

#pragma once

#include <dicke/errors.hpp>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace dicke {

using cplx = std::complex<double>;

/// Largest spin count for which full-space states are allocated by default.
inline constexpr int kDefaultMaxSpins = 24;

/// Hard structural limit of the bit encoding.
inline constexpr int kBitLimit = 62;

/// Tolerance for checks that are exact in real arithmetic.
inline constexpr double kExactTol = 1e-12;

/// Two-row arrangement: `m_top` excited spins above `n_bottom` ground spins.
struct RowSplit {
    int m_top = 0;
    int n_bottom = 0;

    [[nodiscard]] constexpr int q() const noexcept { return m_top + n_bottom; }
    [[nodiscard]] constexpr std::uint64_t top_mask() const noexcept {
        return (std::uint64_t{1} << m_top) - 1;
    }
    [[nodiscard]] constexpr std::uint64_t bottom_mask() const noexcept {
        return ((std::uint64_t{1} << q()) - 1) & ~top_mask();
    }
    /// Throws unless 0 <= m_top and 0 <= n_bottom. Full-space size limits are
    /// enforced where amplitudes get allocated.
    void validate() const {
        if (m_top < 0 || n_bottom < 0)
            throw ArgumentError("row sizes must be non-negative");
    }
    /// Dark-state constructors additionally need M <= N.
    void require_dark() const {
        validate();
        if (m_top > n_bottom) throw ArgumentError("M must not exceed N");
    }

    constexpr bool operator==(const RowSplit&) const = default;
};

/// One computational basis configuration of q spins.
struct BasisState {
    std::uint64_t bits = 0;
    int q = 0;

    [[nodiscard]] constexpr int up_count() const noexcept { return std::popcount(bits); }
    /// m_tot = popcount - q/2.
    [[nodiscard]] constexpr double m_tot() const noexcept {
        return up_count() - 0.5 * q;
    }
    [[nodiscard]] constexpr bool is_valid() const noexcept {
        return q >= 0 && q <= kBitLimit && (bits >> q) == 0;
    }
    [[nodiscard]] constexpr bool spin_up(int i) const noexcept { return (bits >> i) & 1U; }

    constexpr bool operator==(const BasisState&) const = default;
};

/// Dense amplitude vector over the 2^q computational basis.
struct FullState {
    int q = 0;
    std::vector<cplx> amplitudes;

    FullState() : amplitudes(1, cplx{0.0, 0.0}) {}

    /// Zero vector on q spins; throws CapacityError above `max_spins`.
    static FullState zeros(int q, int max_spins = kDefaultMaxSpins) {
        if (q < 0) throw ArgumentError("spin count must be non-negative");
        if (q > max_spins || q > kBitLimit)
            throw CapacityError("full-space state of " + std::to_string(q) +
                                " spins exceeds the limit of " +
                                std::to_string(max_spins) + "; use the sector representation");
        FullState s;
        s.q = q;
        s.amplitudes.assign(std::size_t{1} << q, cplx{0.0, 0.0});
        return s;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes.size(); }
    [[nodiscard]] const cplx& operator[](std::uint64_t i) const { return amplitudes[i]; }
    cplx& operator[](std::uint64_t i) { return amplitudes[i]; }

    FullState& operator+=(const FullState& o) {
        check_same(o);
        for (std::size_t i = 0; i < dim(); ++i) amplitudes[i] += o.amplitudes[i];
        return *this;
    }
    FullState& operator-=(const FullState& o) {
        check_same(o);
        for (std::size_t i = 0; i < dim(); ++i) amplitudes[i] -= o.amplitudes[i];
        return *this;
    }
    FullState& operator*=(cplx c) {
        for (auto& a : amplitudes) a *= c;
        return *this;
    }
    friend FullState operator+(FullState a, const FullState& b) { return a += b; }
    friend FullState operator-(FullState a, const FullState& b) { return a -= b; }
    friend FullState operator*(cplx c, FullState a) { return a *= c; }

    void check_same(const FullState& o) const {
        if (o.q != q) throw ArgumentError("states live on different spin counts");
    }
};

/// Product state with the top row up and the bottom row down.
inline FullState product_state(const RowSplit& split, int max_spins = kDefaultMaxSpins) {
    split.validate();
    FullState s = FullState::zeros(split.q(), max_spins);
    s[split.top_mask()] = 1.0;
    return s;
}

/// Basis-vector state |bits>.
inline FullState basis_vector(const BasisState& b, int max_spins = kDefaultMaxSpins) {
    if (!b.is_valid()) throw ArgumentError("basis state has bits above q");
    FullState s = FullState::zeros(b.q, max_spins);
    s[b.bits] = 1.0;
    return s;
}

/// S^-_tot psi: every up spin flipped down once with unit matrix element.
inline FullState apply_lowering(const FullState& psi) {
    FullState out = FullState::zeros(psi.q, kBitLimit);
    for (std::uint64_t b = 0; b < psi.dim(); ++b) {
        const cplx a = psi[b];
        if (a == cplx{}) continue;
        for (std::uint64_t rest = b; rest != 0; rest &= rest - 1)
            out[b ^ (rest & (~rest + 1))] += a;
    }
    return out;
}

/// S^+_tot psi, the adjoint of apply_lowering.
inline FullState apply_raising(const FullState& psi) {
    FullState out = FullState::zeros(psi.q, kBitLimit);
    const std::uint64_t full = psi.dim() - 1;
    for (std::uint64_t b = 0; b < psi.dim(); ++b) {
        const cplx a = psi[b];
        if (a == cplx{}) continue;
        for (std::uint64_t rest = ~b & full; rest != 0; rest &= rest - 1)
            out[b | (rest & (~rest + 1))] += a;
    }
    return out;
}

/// S^z_tot psi.
inline FullState apply_sz(const FullState& psi) {
    FullState out = psi;
    for (std::uint64_t b = 0; b < psi.dim(); ++b)
        out[b] *= std::popcount(b) - 0.5 * psi.q;
    return out;
}

/// S^2_tot psi = S^- S^+ psi + S^z (S^z + 1) psi.
inline FullState apply_s_squared(const FullState& psi) {
    FullState out = apply_lowering(apply_raising(psi));
    for (std::uint64_t b = 0; b < psi.dim(); ++b) {
        const double m = std::popcount(b) - 0.5 * psi.q;
        out[b] += m * (m + 1.0) * psi[b];
    }
    return out;
}

/// <psi|phi>, antilinear in the first argument.
inline cplx inner_product(const FullState& psi, const FullState& phi) {
    psi.check_same(phi);
    cplx acc{};
    for (std::size_t i = 0; i < psi.dim(); ++i) acc += std::conj(psi[i]) * phi[i];
    return acc;
}

inline double norm_squared(const FullState& psi) {
    double acc = 0.0;
    for (const auto& a : psi.amplitudes) acc += std::norm(a);
    return acc;
}

inline double norm(const FullState& psi) { return std::sqrt(norm_squared(psi)); }

inline FullState normalize(const FullState& psi) {
    const double n = norm(psi);
    if (!(n > 0.0) || !std::isfinite(n)) throw ArgumentError("cannot normalize a zero or non-finite vector");
    FullState out = psi;
    out *= 1.0 / n;
    return out;
}

/// Largest |amplitude| of psi.
inline double max_abs(const FullState& psi) {
    double m = 0.0;
    for (const auto& a : psi.amplitudes) m = std::max(m, std::abs(a));
    return m;
}

/// max_i |psi_i - phi_i|.
inline double max_abs_diff(const FullState& psi, const FullState& phi) {
    psi.check_same(phi);
    double m = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) m = std::max(m, std::abs(psi[i] - phi[i]));
    return m;
}

/// Relabels spins a <-> b.
inline FullState apply_transposition(const FullState& psi, int a, int b) {
    if (a < 0 || b < 0 || a >= psi.q || b >= psi.q) throw ArgumentError("spin index out of range");
    FullState out = FullState::zeros(psi.q, kBitLimit);
    for (std::uint64_t idx = 0; idx < psi.dim(); ++idx) {
        const std::uint64_t ba = (idx >> a) & 1U, bb = (idx >> b) & 1U;
        std::uint64_t j = idx;
        if (ba != bb) j ^= (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
        out[j] = psi[idx];
    }
    return out;
}

/// Tensor product of a top-row state and a bottom-row state, both embedded in
/// the q-spin space with the other row all down.
inline FullState tensor_rows(const FullState& top, const FullState& bottom, const RowSplit& split) {
    if (top.q != split.q() || bottom.q != split.q())
        throw ArgumentError("row states must be embedded in the full split");
    FullState out = FullState::zeros(split.q(), kBitLimit);
    const auto tm = split.top_mask(), bm = split.bottom_mask();
    for (std::uint64_t b = 0; b < out.dim(); ++b) out[b] = top[b & tm] * bottom[b & bm];
    return out;
}

/// <psi|S^2|psi> / <psi|psi>.
inline double s_squared_expectation(const FullState& psi) {
    return inner_product(psi, apply_s_squared(psi)).real() / norm_squared(psi);
}

/// <psi|S^z|psi> / <psi|psi>.
inline double sz_expectation(const FullState& psi) {
    return inner_product(psi, apply_sz(psi)).real() / norm_squared(psi);
}

} // namespace dicke
