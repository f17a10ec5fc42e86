// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON and CSV encodings of states, reports and trajectory ensembles.
 *
 * FullState:   {"q": int, "amplitudes": [[index, re, im], ...]}  (|amp| > 1e-15, ascending)
 * SectorState: {"m": int, "n": int, "amps": [[i, j, re, im], ...]} (same cutoff)
 * Doubles go through nlohmann::json, which prints the shortest string that
 * round-trips exactly; CSV fields use %.17g.
 */

#pragma once

#include <dicke/dynamics.hpp>
#include <dicke/rvb.hpp>
#include <dicke/sector.hpp>
#include <dicke/spin_basis.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace dicke {

inline constexpr double kSerializeCutoff = 1e-15;

inline nlohmann::json to_json(const FullState& s) {
    nlohmann::json amps = nlohmann::json::array();
    for (std::uint64_t b = 0; b < s.dim(); ++b)
        if (std::abs(s[b]) > kSerializeCutoff) amps.push_back({b, s[b].real(), s[b].imag()});
    return {{"q", s.q}, {"amplitudes", std::move(amps)}};
}

inline FullState full_state_from_json(const nlohmann::json& j, int max_spins = kDefaultMaxSpins) {
    FullState s = FullState::zeros(j.at("q").get<int>(), max_spins);
    for (const auto& e : j.at("amplitudes")) {
        const auto idx = e.at(0).get<std::uint64_t>();
        if (idx >= s.dim()) throw ArgumentError("amplitude index out of range");
        s[idx] = cplx{e.at(1).get<double>(), e.at(2).get<double>()};
    }
    return s;
}

inline nlohmann::json to_json(const SectorState& s) {
    nlohmann::json amps = nlohmann::json::array();
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j)
            if (std::abs(s.at(i, j)) > kSerializeCutoff) amps.push_back({i, j, s.at(i, j).real(), s.at(i, j).imag()});
    return {{"m", s.split.m_top}, {"n", s.split.n_bottom}, {"amps", std::move(amps)}};
}

inline SectorState sector_state_from_json(const nlohmann::json& j) {
    SectorState s = SectorState::zeros({j.at("m").get<int>(), j.at("n").get<int>()});
    for (const auto& e : j.at("amps")) s.at(e.at(0).get<int>(), e.at(1).get<int>()) = cplx{e.at(2).get<double>(), e.at(3).get<double>()};
    return s;
}

inline nlohmann::json to_json(const SchmidtSpectrum& s) { return s.coefficients; }

inline nlohmann::json to_json(const EquivalenceReport& r) {
    nlohmann::json res = nlohmann::json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    nlohmann::json phases = nlohmann::json::object();
    for (const auto& [k, v] : r.global_phase) phases[k] = v;
    return {{"m", r.split.m_top},      {"n", r.split.n_bottom}, {"residuals", std::move(res)},
            {"global_phase", phases}, {"skipped", r.skipped},  {"tolerance", r.tolerance},
            {"pass", r.pass}};
}

/// NaN is not representable in JSON; it becomes null.
inline nlohmann::json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

inline nlohmann::json to_json(const EnsembleStats& s) {
    return {{"n_traj", s.n_traj},
            {"n_null", s.n_null},
            {"p_null_hat", s.p_null_hat},
            {"std_err", s.std_err},
            {"mean_fidelity_to_rvb", json_number(s.mean_fidelity_to_rvb)}};
}

/// "%.17g", or the empty string for NaN.
inline std::string format_g17(double v) {
    if (std::isnan(v)) return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Header plus one row per trajectory: index,n_jumps,first_jump_time,null_flag,fidelity.
inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records) {
    os << "index,n_jumps,first_jump_time,null_flag,fidelity\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        const auto first = r.first_jump_time();
        os << k << ',' << r.emitted_count << ',' << (first ? format_g17(*first) : std::string{}) << ','
           << (r.null ? 1 : 0) << ',' << format_g17(r.fidelity) << '\n';
    }
}

} // namespace dicke
