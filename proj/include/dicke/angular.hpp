// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file angular.hpp
 * @brief Clebsch-Gordan coefficients, dark-state Schmidt coefficients,
 *        symmetric Dicke states and the total-spin projector.
 */

#pragma once

#include <dicke/errors.hpp>
#include <dicke/spin_basis.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace dicke {

/// Angular-momentum quantum number stored as twice its value.
struct HalfInt {
    int twice = 0;

    static constexpr HalfInt from_twice(int t) noexcept { return HalfInt{t}; }
    static constexpr HalfInt whole(int v) noexcept { return HalfInt{2 * v}; }
    static constexpr HalfInt half(int numerator) noexcept { return HalfInt{numerator}; }

    /// Parses "3", "-2", "3/2", "-1/2" or "0.5".
    static HalfInt parse(std::string_view text) {
        auto bad = [&] { return ArgumentError("not an integer or half-integer: '" + std::string(text) + "'"); };
        if (text.empty()) throw bad();
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            int num = 0, den = 0;
            auto num_s = text.substr(0, slash), den_s = text.substr(slash + 1);
            if (std::from_chars(num_s.data(), num_s.data() + num_s.size(), num).ptr != num_s.data() + num_s.size() ||
                std::from_chars(den_s.data(), den_s.data() + den_s.size(), den).ptr != den_s.data() + den_s.size())
                throw bad();
            if (den == 1) return whole(num);
            if (den == 2) return half(num);
            throw bad();
        }
        const std::string s(text);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) throw bad();
        const double t = 2.0 * v;
        if (std::abs(t - std::round(t)) > 1e-9) throw bad();
        return from_twice(static_cast<int>(std::lround(t)));
    }

    [[nodiscard]] constexpr double value() const noexcept { return 0.5 * twice; }
    [[nodiscard]] constexpr bool is_integer() const noexcept { return twice % 2 == 0; }

    constexpr HalfInt operator-() const noexcept { return HalfInt{-twice}; }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) noexcept { return HalfInt{a.twice + b.twice}; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) noexcept { return HalfInt{a.twice - b.twice}; }
    constexpr auto operator<=>(const HalfInt&) const = default;
};

namespace detail {

/// ln(n!) from lgamma; relative accuracy a few ulp.
inline double log_factorial(int n) {
    if (n < 0) throw ArgumentError("factorial of a negative number");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

inline bool same_parity(HalfInt j, HalfInt m) noexcept { return ((j.twice - m.twice) % 2) == 0; }

} // namespace detail

/// Exact binomial coefficient C(n, k) for n <= 62.
inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (n > kBitLimit) throw CapacityError("binomial argument too large");
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        // r * (n-i) / (i+1) is exact; dividing first keeps every intermediate below the result.
        const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i + 1));
        r = (r / g) * (static_cast<std::uint64_t>(n - i) / (static_cast<std::uint64_t>(i + 1) / g));
    }
    return r;
}

/**
 * <j1 m1; j2 m2 | J (m1+m2)> with the Condon-Shortley phase, evaluated by the
 * Racah single-sum formula in log-factorial form.
 *
 * Returns 0 for triangle violations or |m1+m2| > J. Throws ArgumentError for
 * negative j, |m| > j, or mismatched integer/half-integer parity.
 */
inline double clebsch_gordan(HalfInt j1, HalfInt j2, HalfInt J, HalfInt m1, HalfInt m2) {
    if (j1.twice < 0 || j2.twice < 0 || J.twice < 0) throw ArgumentError("angular momentum must be non-negative");
    if (!detail::same_parity(j1, m1) || !detail::same_parity(j2, m2))
        throw ArgumentError("j and m must both be integer or both half-integer");
    if (std::abs(m1.twice) > j1.twice || std::abs(m2.twice) > j2.twice)
        throw ArgumentError("|m| exceeds j");
    if ((j1.twice + j2.twice + J.twice) % 2 != 0) throw ArgumentError("j1 + j2 + J must be an integer");

    if (J.twice < std::abs(j1.twice - j2.twice) || J.twice > j1.twice + j2.twice) return 0.0;
    const HalfInt M = m1 + m2;
    if (std::abs(M.twice) > J.twice) return 0.0;

    // All of these are integers once the parity checks pass.
    const int a = (j1.twice + j2.twice - J.twice) / 2;  // j1+j2-J
    const int b = (j1.twice - m1.twice) / 2;            // j1-m1
    const int c = (j2.twice + m2.twice) / 2;            // j2+m2
    const int d = (J.twice - j2.twice + m1.twice) / 2;  // J-j2+m1
    const int e = (J.twice - j1.twice - m2.twice) / 2;  // J-j1-m2

    using detail::log_factorial;
    const double log_pref =
        0.5 * (std::log(J.twice + 1.0) + log_factorial(a) + log_factorial((j1.twice - j2.twice + J.twice) / 2) +
               log_factorial((-j1.twice + j2.twice + J.twice) / 2) -
               log_factorial((j1.twice + j2.twice + J.twice) / 2 + 1) + log_factorial((j1.twice + m1.twice) / 2) +
               log_factorial(b) + log_factorial(c) + log_factorial((j2.twice - m2.twice) / 2) +
               log_factorial((J.twice + M.twice) / 2) + log_factorial((J.twice - M.twice) / 2));

    const int kmin = std::max({0, -d, -e});
    const int kmax = std::min({a, b, c});
    double sum = 0.0;
    for (int k = kmin; k <= kmax; ++k) {
        const double log_den = log_factorial(k) + log_factorial(a - k) + log_factorial(b - k) +
                               log_factorial(c - k) + log_factorial(d + k) + log_factorial(e + k);
        const double term = std::exp(log_pref - log_den);
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

/**
 * Schmidt coefficient C_lambda of the M,N dark state on
 * |M/2, M/2-lambda>_top (x) |N/2, lambda-N/2>_bottom:
 *
 *   C_lambda = (-1)^lambda sqrt[(N-M+1) M! (N-lambda)! / ((N+1)! (M-lambda)!)]
 *
 * The factorial ratio is accumulated as a sum of logs of paired factors
 * (M-k)/(N-k), each <= 1, before exponentiation.
 */
inline double dark_coefficient(int m, int n, int lambda) {
    if (m < 0 || n < 0) throw ArgumentError("row sizes must be non-negative");
    if (m > n) throw ArgumentError("M must not exceed N");
    if (lambda < 0 || lambda > m) throw ArgumentError("lambda must lie in [0, M]");
    double log_sq = std::log(static_cast<double>(n - m + 1)) - std::log(static_cast<double>(n + 1));
    for (int k = 0; k < lambda; ++k)
        log_sq += std::log(static_cast<double>(m - k)) - std::log(static_cast<double>(n - k));
    const double mag = std::exp(0.5 * log_sq);
    return (lambda % 2 == 0) ? mag : -mag;
}

enum class Row { top, bottom };

/**
 * Normalized symmetric Dicke state of one row: equal-amplitude sum over all
 * configurations of that row with `k_down` spins down, embedded in the split
 * with the other row all down. Eigenstate of the row S^2 with S = P/2 and of
 * the row S^z with m = P/2 - k_down.
 */
inline FullState symmetric_dicke_state(int p, int k_down, Row row, const RowSplit& split,
                                       int max_spins = kDefaultMaxSpins) {
    split.validate();
    const int row_size = row == Row::top ? split.m_top : split.n_bottom;
    if (p != row_size) throw ArgumentError("P must equal the size of the chosen row");
    if (k_down < 0 || k_down > p) throw ArgumentError("k_down must lie in [0, P]");

    FullState s = FullState::zeros(split.q(), max_spins);
    const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(p, k_down)));
    const int shift = row == Row::top ? 0 : split.m_top;
    const int ups = p - k_down;
    for (std::uint64_t local = 0; local < (std::uint64_t{1} << p); ++local)
        if (std::popcount(local) == ups) s[local << shift] = amp;
    return s;
}

/// Total-spin values (as twice S) attainable by q spin-1/2 systems.
inline std::vector<int> attainable_twice_spins(int q) {
    std::vector<int> out;
    for (int t = q % 2; t <= q; t += 2) out.push_back(t);
    return out;
}

/**
 * Applies P_Sigma = prod_{S' != Sigma} [S^2 - S'(S'+1)] / [Sigma(Sigma+1) - S'(S'+1)]
 * as one S^2 sweep per factor. Output is unnormalized; its squared norm is
 * the weight of psi in the S = Sigma subspace.
 */
inline FullState project_total_spin(const FullState& psi, HalfInt sigma) {
    if (sigma.twice < 0 || sigma.twice > psi.q) throw ArgumentError("Sigma must lie in [0, Q/2]");
    if ((sigma.twice - psi.q) % 2 != 0) throw ArgumentError("2*Sigma must have the parity of Q");

    const double target = sigma.value() * (sigma.value() + 1.0);
    FullState out = psi;
    auto spins = attainable_twice_spins(psi.q);
    // Largest S' first keeps intermediate amplitudes small.
    std::reverse(spins.begin(), spins.end());
    for (int t : spins) {
        if (t == sigma.twice) continue;
        const double s = 0.5 * t;
        const double eig = s * (s + 1.0);
        const double inv = 1.0 / (target - eig);
        FullState next = apply_s_squared(out);
        for (std::size_t i = 0; i < next.dim(); ++i) next.amplitudes[i] = (next.amplitudes[i] - eig * out.amplitudes[i]) * inv;
        out = std::move(next);
    }
    return out;
}

} // namespace dicke
