// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sector.hpp
 * @brief Doubly-symmetric sector |M/2, m_t>_top (x) |N/2, m_b>_bottom.
 *
 * Grid entry (i, j) is the amplitude of |M/2, M/2 - i>_t (x) |N/2, N/2 - j>_b,
 * i.e. i down spins in the top row and j down spins in the bottom row. The
 * sector has dimension (M+1)(N+1) and needs no 2^Q storage.
 */

#pragma once

#include <dicke/angular.hpp>
#include <dicke/errors.hpp>
#include <dicke/spin_basis.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace dicke {

struct SectorState {
    RowSplit split;
    std::vector<cplx> amps;  ///< row-major, index i * (N+1) + j

    SectorState() : amps(1, cplx{}) {}

    static SectorState zeros(const RowSplit& split) {
        split.validate();
        SectorState s;
        s.split = split;
        s.amps.assign(static_cast<std::size_t>(split.m_top + 1) * (split.n_bottom + 1), cplx{});
        return s;
    }
    /// One-hot grid at (i, j).
    static SectorState basis(const RowSplit& split, int i, int j) {
        SectorState s = zeros(split);
        s.at(i, j) = 1.0;
        return s;
    }

    [[nodiscard]] int rows() const noexcept { return split.m_top + 1; }
    [[nodiscard]] int cols() const noexcept { return split.n_bottom + 1; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps.size(); }
    [[nodiscard]] bool in_range(int i, int j) const noexcept { return i >= 0 && j >= 0 && i < rows() && j < cols(); }

    cplx& at(int i, int j) {
        if (!in_range(i, j)) throw ArgumentError("sector index out of range");
        return amps[static_cast<std::size_t>(i) * cols() + j];
    }
    [[nodiscard]] const cplx& at(int i, int j) const {
        if (!in_range(i, j)) throw ArgumentError("sector index out of range");
        return amps[static_cast<std::size_t>(i) * cols() + j];
    }

    /// m_tot of grid entry (i, j).
    [[nodiscard]] double m_tot(int i, int j) const noexcept {
        return 0.5 * (split.m_top + split.n_bottom) - i - j;
    }

    SectorState& operator+=(const SectorState& o) {
        check_same(o);
        for (std::size_t k = 0; k < dim(); ++k) amps[k] += o.amps[k];
        return *this;
    }
    SectorState& operator-=(const SectorState& o) {
        check_same(o);
        for (std::size_t k = 0; k < dim(); ++k) amps[k] -= o.amps[k];
        return *this;
    }
    SectorState& operator*=(cplx c) {
        for (auto& a : amps) a *= c;
        return *this;
    }
    friend SectorState operator+(SectorState a, const SectorState& b) { return a += b; }
    friend SectorState operator-(SectorState a, const SectorState& b) { return a -= b; }

    void check_same(const SectorState& o) const {
        if (!(o.split == split)) throw ArgumentError("sector states have different splits");
    }
};

/// Schmidt coefficients across the top/bottom cut of a definite-m_tot sector state.
struct SchmidtSpectrum {
    std::vector<double> coefficients;

    [[nodiscard]] double weight() const {
        double w = 0.0;
        for (double c : coefficients) w += c * c;
        return w;
    }
};

inline std::size_t sector_dimension(const RowSplit& split) {
    split.validate();
    return static_cast<std::size_t>(split.m_top + 1) * (split.n_bottom + 1);
}

inline cplx inner_product(const SectorState& a, const SectorState& b) {
    a.check_same(b);
    cplx acc{};
    for (std::size_t k = 0; k < a.dim(); ++k) acc += std::conj(a.amps[k]) * b.amps[k];
    return acc;
}

inline double norm_squared(const SectorState& s) {
    double acc = 0.0;
    for (const auto& a : s.amps) acc += std::norm(a);
    return acc;
}

inline double norm(const SectorState& s) { return std::sqrt(norm_squared(s)); }

inline SectorState normalize(const SectorState& s) {
    const double n = norm(s);
    if (!(n > 0.0) || !std::isfinite(n)) throw ArgumentError("cannot normalize a zero or non-finite sector state");
    SectorState out = s;
    out *= 1.0 / n;
    return out;
}

inline double max_abs_diff(const SectorState& a, const SectorState& b) {
    a.check_same(b);
    double m = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) m = std::max(m, std::abs(a.amps[k] - b.amps[k]));
    return m;
}

/// Full-space image sum_{i,j} amps[i][j] |M/2,M/2-i>_t (x) |N/2,N/2-j>_b.
inline FullState embed(const SectorState& s, int max_spins = kDefaultMaxSpins) {
    const RowSplit& sp = s.split;
    FullState out = FullState::zeros(sp.q(), max_spins);
    std::vector<double> top_scale(s.rows()), bottom_scale(s.cols());
    for (int i = 0; i < s.rows(); ++i) top_scale[i] = 1.0 / std::sqrt(static_cast<double>(binomial(sp.m_top, i)));
    for (int j = 0; j < s.cols(); ++j) bottom_scale[j] = 1.0 / std::sqrt(static_cast<double>(binomial(sp.n_bottom, j)));
    const auto tm = sp.top_mask(), bm = sp.bottom_mask();
    for (std::uint64_t b = 0; b < out.dim(); ++b) {
        const int i = sp.m_top - std::popcount(b & tm);
        const int j = sp.n_bottom - std::popcount(b & bm);
        out[b] = s.at(i, j) * (top_scale[i] * bottom_scale[j]);
    }
    return out;
}

struct Compressed {
    SectorState state;
    double residual;  ///< ||psi - embed(state)||
};

/// Projection of psi onto the sector basis plus the norm of what was left out.
inline Compressed compress_with_residual(const FullState& psi, const RowSplit& split) {
    split.validate();
    if (psi.q != split.q()) throw ArgumentError("state and split disagree on the spin count");
    SectorState s = SectorState::zeros(split);
    std::vector<double> top_scale(s.rows()), bottom_scale(s.cols());
    for (int i = 0; i < s.rows(); ++i) top_scale[i] = 1.0 / std::sqrt(static_cast<double>(binomial(split.m_top, i)));
    for (int j = 0; j < s.cols(); ++j) bottom_scale[j] = 1.0 / std::sqrt(static_cast<double>(binomial(split.n_bottom, j)));
    const auto tm = split.top_mask(), bm = split.bottom_mask();
    for (std::uint64_t b = 0; b < psi.dim(); ++b) {
        const int i = split.m_top - std::popcount(b & tm);
        const int j = split.n_bottom - std::popcount(b & bm);
        s.at(i, j) += psi[b] * (top_scale[i] * bottom_scale[j]);
    }
    const double residual = norm(psi - embed(s, psi.q));
    return {std::move(s), residual};
}

/// Sector coordinates of psi; throws NotInSectorError when the residual exceeds `tol`.
inline SectorState compress(const FullState& psi, const RowSplit& split, double tol = 1e-10) {
    auto c = compress_with_residual(psi, split);
    if (c.residual > tol)
        throw NotInSectorError("state is not symmetric under in-row permutations (residual " +
                                   std::to_string(c.residual) + ")",
                               c.residual);
    return std::move(c.state);
}

/// Anti-diagonal grid with entries C_lambda at (lambda, N - lambda).
inline SectorState dark_sector_state(const RowSplit& split) {
    split.require_dark();
    SectorState s = SectorState::zeros(split);
    for (int l = 0; l <= split.m_top; ++l) s.at(l, split.n_bottom - l) = dark_coefficient(split.m_top, split.n_bottom, l);
    return s;
}

/// Top-row product |up..up> (x) bottom |dn..dn>.
inline SectorState sector_product_state(const RowSplit& split) {
    return SectorState::basis(split, 0, split.n_bottom);
}

/**
 * Reads the Schmidt coefficients off a state supported on one anti-diagonal
 * i + j = d, indexed by i. The global phase is removed so the first nonzero
 * entry is positive; if the entries are then real up to 1e-12 the signed
 * values are returned, otherwise their magnitudes.
 */
inline SchmidtSpectrum schmidt_spectrum(const SectorState& s) {
    double scale = 0.0;
    for (const auto& a : s.amps) scale = std::max(scale, std::abs(a));
    if (scale == 0.0) throw ContractError("zero state has no Schmidt spectrum");
    const double cut = 1e-13 * scale;
    int diag = -1;
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j) {
            if (std::abs(s.at(i, j)) <= cut) continue;
            if (diag < 0) diag = i + j;
            else if (diag != i + j)
                throw ContractError("state has support on several m_tot values; use a full SVD of the grid instead");
        }
    const int lo = std::max(0, diag - s.split.n_bottom), hi = std::min(s.split.m_top, diag);
    std::vector<cplx> raw;
    for (int i = lo; i <= hi; ++i) raw.push_back(std::abs(s.at(i, diag - i)) <= cut ? cplx{} : s.at(i, diag - i));

    cplx phase{1.0, 0.0};
    for (const auto& a : raw)
        if (a != cplx{}) {
            phase = std::conj(a) / std::abs(a);
            break;
        }
    bool real = true;
    for (auto& a : raw) {
        a *= phase;
        if (std::abs(a.imag()) > 1e-12 * scale) real = false;
    }
    SchmidtSpectrum out;
    for (const auto& a : raw) out.coefficients.push_back(real ? a.real() : std::abs(a));
    return out;
}

/// Von Neumann entropy of either row, -sum c^2 ln c^2, in nats.
inline double entanglement_entropy(const SchmidtSpectrum& spec) {
    double h = 0.0;
    for (double c : spec.coefficients) {
        const double w = c * c;
        if (w > 0.0) h -= w * std::log(w);
    }
    return h;
}

/// (N - M + 1) / (N + 1).
inline double null_emission_probability(const RowSplit& split) {
    split.require_dark();
    return static_cast<double>(split.n_bottom - split.m_top + 1) / static_cast<double>(split.n_bottom + 1);
}

enum class Ladder { raise, lower };

/// Collective S^+ or S^- as the sum of the two row actions on the grid.
inline SectorState sector_ladder(const SectorState& s, Ladder which) {
    SectorState out = SectorState::zeros(s.split);
    const int m = s.split.m_top, n = s.split.n_bottom;
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j) {
            const cplx a = s.at(i, j);
            if (a == cplx{}) continue;
            if (which == Ladder::lower) {
                if (i < m) out.at(i + 1, j) += a * std::sqrt(static_cast<double>(m - i) * (i + 1));
                if (j < n) out.at(i, j + 1) += a * std::sqrt(static_cast<double>(n - j) * (j + 1));
            } else {
                if (i > 0) out.at(i - 1, j) += a * std::sqrt(static_cast<double>(i) * (m - i + 1));
                if (j > 0) out.at(i, j - 1) += a * std::sqrt(static_cast<double>(j) * (n - j + 1));
            }
        }
    return out;
}

inline SectorState sector_sz(const SectorState& s) {
    SectorState out = s;
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j) out.at(i, j) *= s.m_tot(i, j);
    return out;
}

/// S^2 = S^- S^+ + S^z (S^z + 1) on the grid.
inline SectorState sector_s_squared(const SectorState& s) {
    SectorState out = sector_ladder(sector_ladder(s, Ladder::raise), Ladder::lower);
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j) {
            const double mt = s.m_tot(i, j);
            out.at(i, j) += mt * (mt + 1.0) * s.at(i, j);
        }
    return out;
}

inline double s_squared_expectation(const SectorState& s) {
    return inner_product(s, sector_s_squared(s)).real() / norm_squared(s);
}

inline double sz_expectation(const SectorState& s) {
    return inner_product(s, sector_sz(s)).real() / norm_squared(s);
}

} // namespace dicke
