// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rvb.hpp
 * @brief Three independent constructions of the M,N dark (RVB) state and a
 *        certificate that they coincide.
 *
 *  - rvb_permutation_sum: in-phase sum over every top-to-bottom pairing of
 *    singlets (|up_t dn_b> - |dn_t up_b>)/sqrt(2), top spin written first.
 *  - rvb_closed_form: row-wise Schmidt form sum_l C_l |M/2,M/2-l>_t |N/2,l-N/2>_b.
 *  - dark_state_projection: S = (N-M)/2 projector applied to |up..up dn..dn>.
 */

#pragma once

#include <dicke/angular.hpp>
#include <dicke/errors.hpp>
#include <dicke/spin_basis.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace dicke {

/// Largest bottom row for which the factorial-cost pairing sums are allowed.
inline constexpr int kMaxPairingBottom = 8;

/// Assignment of a bottom-row partner to every top-row spin.
struct DimerCover {
    std::vector<int> pairing;  ///< pairing[i] = bottom index (0-based within the row) of top spin i

    /// True when entries are distinct and inside [0, n_bottom).
    [[nodiscard]] bool is_valid(int n_bottom) const {
        std::vector<bool> seen(static_cast<std::size_t>(std::max(n_bottom, 0)), false);
        for (int b : pairing) {
            if (b < 0 || b >= n_bottom || seen[b]) return false;
            seen[b] = true;
        }
        return true;
    }
};

/// Calls `visit(cover)` for each of the N!/(N-M)! ordered pairings, in
/// lexicographic order of the pairing vector.
inline void for_each_dimer_cover(const RowSplit& split, const std::function<void(const DimerCover&)>& visit) {
    split.require_dark();
    DimerCover cover;
    cover.pairing.assign(split.m_top, -1);
    std::vector<bool> used(split.n_bottom, false);
    std::function<void(int)> rec = [&](int i) {
        if (i == split.m_top) {
            visit(cover);
            return;
        }
        for (int b = 0; b < split.n_bottom; ++b) {
            if (used[b]) continue;
            used[b] = true;
            cover.pairing[i] = b;
            rec(i + 1);
            used[b] = false;
        }
    };
    rec(0);
}

/// Adds `weight` times the product of singlets of `cover` (unpaired bottom spins down) into `acc`.
inline void accumulate_dimer_cover(FullState& acc, const DimerCover& cover, const RowSplit& split, double weight) {
    const int m = split.m_top;
    const std::uint64_t top = split.top_mask();
    for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << m); ++flips) {
        std::uint64_t bits = top & ~flips;
        for (int i = 0; i < m; ++i)
            if ((flips >> i) & 1U) bits |= std::uint64_t{1} << (m + cover.pairing[i]);
        acc[bits] += (std::popcount(flips) % 2 == 0) ? weight : -weight;
    }
}

/// Unnormalized single-cover state with the 2^{-M/2} singlet normalization.
inline FullState dimer_cover_state(const DimerCover& cover, const RowSplit& split, int max_spins = kDefaultMaxSpins) {
    split.require_dark();
    if (static_cast<int>(cover.pairing.size()) != split.m_top || !cover.is_valid(split.n_bottom))
        throw ArgumentError("dimer cover must pair every top spin with a distinct bottom spin");
    FullState s = FullState::zeros(split.q(), max_spins);
    accumulate_dimer_cover(s, cover, split, std::pow(2.0, -0.5 * split.m_top));
    return s;
}

namespace detail {
inline void require_pairing_capacity(const RowSplit& split) {
    if (split.n_bottom > kMaxPairingBottom)
        throw CapacityError("pairing sum limited to N <= " + std::to_string(kMaxPairingBottom) +
                            "; use rvb_closed_form for larger systems");
}
} // namespace detail

/// Normalized equal-amplitude in-phase superposition over all N!/(N-M)! dimer covers.
inline FullState rvb_permutation_sum(const RowSplit& split, int max_spins = kDefaultMaxSpins) {
    split.require_dark();
    detail::require_pairing_capacity(split);
    FullState s = FullState::zeros(split.q(), max_spins);
    for_each_dimer_cover(split, [&](const DimerCover& c) { accumulate_dimer_cover(s, c, split, 1.0); });
    return normalize(s);
}

/// Same state written as a sum over all N! permutations of the bottom row,
/// top spin i paired with bottom spin perm[i]. Normalized.
inline FullState rvb_bottom_permutation_sum(const RowSplit& split, int max_spins = kDefaultMaxSpins) {
    split.require_dark();
    detail::require_pairing_capacity(split);
    FullState s = FullState::zeros(split.q(), max_spins);
    std::vector<int> perm(split.n_bottom);
    std::iota(perm.begin(), perm.end(), 0);
    DimerCover cover;
    do {
        cover.pairing.assign(perm.begin(), perm.begin() + split.m_top);
        accumulate_dimer_cover(s, cover, split, 1.0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return normalize(s);
}

/// sum_l C_l |M/2, M/2-l>_top (x) |N/2, l-N/2>_bottom built from symmetric Dicke states.
inline FullState rvb_closed_form(const RowSplit& split, int max_spins = kDefaultMaxSpins) {
    split.require_dark();
    FullState s = FullState::zeros(split.q(), max_spins);
    for (int l = 0; l <= split.m_top; ++l) {
        const FullState top = symmetric_dicke_state(split.m_top, l, Row::top, split, max_spins);
        const FullState bottom = symmetric_dicke_state(split.n_bottom, split.n_bottom - l, Row::bottom, split, max_spins);
        FullState term = tensor_rows(top, bottom, split);
        term *= dark_coefficient(split.m_top, split.n_bottom, l);
        s += term;
    }
    return normalize(s);
}

struct ProjectedDarkState {
    FullState state;     ///< normalized
    double probability;  ///< squared norm before normalization
};

/// Projects the two-row product state onto S = (N-M)/2.
inline ProjectedDarkState dark_state_projection(const RowSplit& split, int max_spins = kDefaultMaxSpins) {
    split.require_dark();
    const FullState projected =
        project_total_spin(product_state(split, max_spins), HalfInt::from_twice(split.n_bottom - split.m_top));
    const double p = norm_squared(projected);
    return {normalize(projected), p};
}

/// Multiplies psi by the phase that makes the amplitude of |up..up dn..dn>
/// real and non-negative. Returns the removed phase angle (radians).
inline double gauge_fix(FullState& psi, const RowSplit& split) {
    const cplx ref = psi[split.top_mask()];
    if (std::abs(ref) == 0.0) return 0.0;
    psi *= std::conj(ref) / std::abs(ref);
    return std::arg(ref);
}

struct EquivalenceReport {
    RowSplit split;
    std::map<std::string, double> residuals;      ///< "a_vs_b" -> max-norm residual
    std::map<std::string, double> global_phase;   ///< constructor -> removed phase
    std::vector<std::string> skipped;             ///< constructors outside their capacity
    double tolerance = 1e-10;
    bool pass = false;
};

/// Builds the dark state with every constructor that fits its capacity
/// guard, gauge-fixes each, and compares all pairs in max norm.
inline EquivalenceReport certify_equivalence(const RowSplit& split, double tolerance = 1e-10,
                                             int max_spins = kDefaultMaxSpins) {
    split.require_dark();
    EquivalenceReport rep;
    rep.split = split;
    rep.tolerance = tolerance;

    std::vector<std::pair<std::string, FullState>> states;
    auto attempt = [&](const std::string& name, auto&& build) {
        try {
            FullState s = build();
            rep.global_phase[name] = gauge_fix(s, split);
            states.emplace_back(name, std::move(s));
        } catch (const CapacityError&) {
            rep.skipped.push_back(name);
        }
    };
    attempt("permutation", [&] { return rvb_permutation_sum(split, max_spins); });
    attempt("closed", [&] { return rvb_closed_form(split, max_spins); });
    attempt("projection", [&] { return dark_state_projection(split, max_spins).state; });

    rep.pass = states.size() >= 2;
    for (std::size_t a = 0; a < states.size(); ++a)
        for (std::size_t b = a + 1; b < states.size(); ++b) {
            const double r = max_abs_diff(states[a].second, states[b].second);
            rep.residuals[states[a].first + "_vs_" + states[b].first] = r;
            if (!(r < tolerance)) rep.pass = false;
        }
    return rep;
}

} // namespace dicke
