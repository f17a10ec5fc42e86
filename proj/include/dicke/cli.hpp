// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief Subcommand implementations behind the dicke_rvb executable.
 *
 * Each command takes resolved RunOptions, writes machine-readable output and
 * returns the process exit code (0 ok, 1 verification failure, 2 usage
 * error, 3 capacity error). Argument parsing lives in tools/dicke_rvb.cpp.
 */

#pragma once

#include <dicke/angular.hpp>
#include <dicke/dynamics.hpp>
#include <dicke/io.hpp>
#include <dicke/rvb.hpp>
#include <dicke/sector.hpp>
#include <dicke/spin_basis.hpp>

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#ifndef DICKE_RVB_VERSION
#define DICKE_RVB_VERSION "0.1.0"
#endif

namespace dicke::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCapacity = 3 };

struct RunOptions {
    int m = 1;
    int n = 1;
    std::string method = "closed";   // perm | closed | project
    std::string repr = "auto";       // auto | full | sector (construct --method closed)
    std::string model = "effective"; // effective | full
    std::string integrator = "auto"; // auto | rk4 | exact
    std::uint64_t n_traj = 10000;
    std::uint64_t seed = 0;
    double t_max = 20.0;
    double dt = 0.01;
    double kappa = 100.0;
    double g = 1.0;
    double deadtime_factor = 20.0;
    double detector_efficiency = 1.0;
    int photon_cutoff = -1;
    int max_n = -1;                  // verify sweep
    std::string j1, j2, j, m1, m2;   // cg
    std::string out;
    unsigned threads = 1;
};

/// Full-space representation is used by `construct --repr auto` up to this many spins.
inline constexpr int kAutoFullSpins = 16;

/// Parallelism cap: DICKE_RVB_THREADS if set, else hardware concurrency.
inline unsigned default_threads() {
    unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DICKE_RVB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

/// UTC timestamp; SOURCE_DATE_EPOCH pins it for reproducible manifests.
inline std::string manifest_timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

inline nlohmann::json make_manifest(const std::string& command, const RunOptions& o) {
    nlohmann::json p = {{"m", o.m}, {"n", o.n}};
    if (command == "construct") {
        p["method"] = o.method;
        p["repr"] = o.repr;
    } else if (command == "verify") {
        p["max_n"] = o.max_n;
    } else if (command == "simulate") {
        p.update({{"model", o.model},
                  {"integrator", o.integrator},
                  {"n_traj", o.n_traj},
                  {"t_max", o.t_max},
                  {"dt", o.dt},
                  {"kappa", o.kappa},
                  {"g", o.g},
                  {"deadtime_factor", o.deadtime_factor},
                  {"detector_efficiency", o.detector_efficiency},
                  {"photon_cutoff", o.photon_cutoff}});
    } else if (command == "cg") {
        p = {{"j1", o.j1}, {"j2", o.j2}, {"j", o.j}, {"m1", o.m1}, {"m2", o.m2}};
    }
    return {{"command", command},
            {"parameters", std::move(p)},
            {"seed", o.seed},
            {"tool_version", DICKE_RVB_VERSION},
            {"timestamp", manifest_timestamp()}};
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

/// construct: writes the state JSON to o.out (if set) plus <out>.manifest.json.
inline int cmd_construct(const RunOptions& o, std::ostream& out) {
    const RowSplit split{o.m, o.n};
    split.require_dark();
    nlohmann::json summary = {{"method", o.method}, {"m", o.m}, {"n", o.n}};
    nlohmann::json state_json;

    const bool sector = o.method == "closed" &&
                        (o.repr == "sector" || (o.repr == "auto" && split.q() > kAutoFullSpins));
    if (o.repr != "auto" && o.repr != "full" && o.repr != "sector") throw ArgumentError("unknown --repr '" + o.repr + "'");
    if (o.repr == "sector" && o.method != "closed") throw ArgumentError("only --method closed has a sector representation");

    if (sector) {
        const SectorState s = dark_sector_state(split);
        summary["repr"] = "sector";
        summary["norm"] = norm(s);
        summary["m_tot"] = sz_expectation(s);
        summary["s2_expectation"] = s_squared_expectation(s);
        state_json = to_json(s);
    } else {
        FullState s;
        if (o.method == "perm") {
            s = rvb_permutation_sum(split);
        } else if (o.method == "closed") {
            s = rvb_closed_form(split);
        } else if (o.method == "project") {
            auto res = dark_state_projection(split);
            summary["squared_norm_before_normalize"] = res.probability;
            s = std::move(res.state);
        } else {
            throw ArgumentError("unknown --method '" + o.method + "' (expected perm, closed or project)");
        }
        summary["repr"] = "full";
        summary["norm"] = norm(s);
        summary["m_tot"] = sz_expectation(s);
        summary["s2_expectation"] = s_squared_expectation(s);
        state_json = to_json(s);
    }
    if (!o.out.empty()) {
        write_file(o.out, dump(state_json));
        write_file(o.out + ".manifest.json", dump(make_manifest("construct", o)));
        summary["out"] = o.out;
    }
    out << summary.dump() << '\n';
    return kOk;
}

struct VerifyOutcome {
    EquivalenceReport equivalence;
    double lowering_residual = 0.0;
    double raising_residual = 0.0;  ///< only meaningful for M = N
    double s2_value = 0.0;
    bool pass = false;
};

/// Equivalence certificate plus dark (S^- psi = 0) and, for M = N, doubly-dark checks.
inline VerifyOutcome verify_split(const RowSplit& split) {
    VerifyOutcome v;
    v.equivalence = certify_equivalence(split);
    const FullState psi = rvb_closed_form(split);
    v.lowering_residual = max_abs(apply_lowering(psi));
    v.s2_value = s_squared_expectation(psi);
    const double spin = 0.5 * (split.n_bottom - split.m_top);
    v.pass = v.equivalence.pass && v.lowering_residual < kExactTol && std::abs(v.s2_value - spin * (spin + 1)) < 1e-10;
    if (split.m_top == split.n_bottom) {
        v.raising_residual = max_abs(apply_raising(psi));
        v.pass = v.pass && v.raising_residual < kExactTol;
    }
    return v;
}

inline nlohmann::json to_json(const VerifyOutcome& v, const RowSplit& split) {
    nlohmann::json j = dicke::to_json(v.equivalence);
    j["lowering_residual"] = v.lowering_residual;
    if (split.m_top == split.n_bottom) j["raising_residual"] = v.raising_residual;
    j["s2_expectation"] = v.s2_value;
    j["pass"] = v.pass;
    return j;
}

inline int cmd_verify(const RunOptions& o, std::ostream& out) {
    nlohmann::json report;
    bool all = true;
    if (o.max_n >= 0) {
        out << std::setw(3) << "M" << std::setw(4) << "N" << std::setw(16) << "max_residual" << std::setw(16)
            << "dark_residual" << "  result\n";
        nlohmann::json rows = nlohmann::json::array();
        for (int n = 0; n <= o.max_n; ++n)
            for (int m = 0; m <= n; ++m) {
                const RowSplit split{m, n};
                const VerifyOutcome v = verify_split(split);
                double worst = 0.0;
                for (const auto& [k, r] : v.equivalence.residuals) worst = std::max(worst, r);
                out << std::setw(3) << m << std::setw(4) << n << std::setw(16) << std::scientific
                    << std::setprecision(3) << worst << std::setw(16) << v.lowering_residual << std::defaultfloat
                    << "  " << (v.pass ? "PASS" : "FAIL") << '\n';
                rows.push_back(to_json(v, split));
                all = all && v.pass;
            }
        report = {{"sweep", std::move(rows)}, {"pass", all}};
    } else {
        const RowSplit split{o.m, o.n};
        split.require_dark();
        const VerifyOutcome v = verify_split(split);
        report = to_json(v, split);
        all = v.pass;
        out << report.dump() << '\n';
    }
    if (!o.out.empty()) {
        report["manifest"] = make_manifest("verify", o);
        write_file(o.out, dump(report));
    }
    return all ? kOk : kVerifyFailed;
}

/// Closed-form probability, Schmidt spectrum and entropy via the sector path only.
inline nlohmann::json analyze_split(const RowSplit& split) {
    const SectorState s = dark_sector_state(split);
    const SchmidtSpectrum spec = schmidt_spectrum(s);
    return {{"m", split.m_top},
            {"n", split.n_bottom},
            {"p_null", null_emission_probability(split)},
            {"schmidt_spectrum", to_json(spec)},
            {"entropy", entanglement_entropy(spec)},
            {"entropy_units", "nats"},
            {"sector_dim", sector_dimension(split)}};
}

inline int cmd_analyze(const RunOptions& o, std::ostream& out) {
    const RowSplit split{o.m, o.n};
    split.require_dark();
    nlohmann::json j = analyze_split(split);
    out << j.dump() << '\n';
    if (!o.out.empty()) {
        j["manifest"] = make_manifest("analyze", o);
        write_file(o.out, dump(j));
    }
    return kOk;
}

inline TrajectoryConfig trajectory_config(const RunOptions& o) {
    TrajectoryConfig cfg;
    if (o.model == "effective") cfg.model = Model::effective;
    else if (o.model == "full") cfg.model = Model::full_cavity;
    else throw ArgumentError("unknown --model '" + o.model + "' (expected effective or full)");
    if (o.integrator == "auto") cfg.integrator = Integrator::automatic;
    else if (o.integrator == "rk4") cfg.integrator = Integrator::rk4;
    else if (o.integrator == "exact") cfg.integrator = Integrator::exact;
    else throw ArgumentError("unknown --integrator '" + o.integrator + "'");
    cfg.t_max = o.t_max;
    cfg.dt = o.dt;
    cfg.n_traj = o.n_traj;
    cfg.seed = o.seed;
    cfg.deadtime_factor = o.deadtime_factor;
    cfg.detector_efficiency = o.detector_efficiency;
    return cfg;
}

/// simulate: <out>.csv (one row per trajectory) and <out>.json (stats + manifest).
inline int cmd_simulate(const RunOptions& o, std::ostream& out) {
    const RowSplit split{o.m, o.n};
    split.require_dark();
    CavityParams params;
    params.coupling = o.g;
    params.cavity_decay = o.kappa;
    params.photon_cutoff = o.photon_cutoff;
    const TrajectoryConfig cfg = trajectory_config(o);
    const auto records = run_ensemble(params, split, cfg, o.threads);
    const EnsembleStats st = estimate_null_probability(records);
    const double target = null_emission_probability(split);

    nlohmann::json summary = to_json(st);
    summary["p_null_closed_form"] = target;
    summary["gamma_eff"] = params.gamma_eff();
    summary["lossy_regime"] = params.lossy_regime(split.q());
    if (!o.out.empty()) {
        std::ostringstream csv;
        write_trajectory_csv(csv, records);
        write_file(o.out + ".csv", csv.str());
        nlohmann::json file = summary;
        file["manifest"] = make_manifest("simulate", o);
        write_file(o.out + ".json", dump(file));
    }
    out << "p_null_hat = " << format_g17(st.p_null_hat) << " +/- " << format_g17(st.std_err)
        << " (closed form " << format_g17(target) << ", n_traj " << st.n_traj << ")\n";
    out << summary.dump() << '\n';
    return kOk;
}

inline int cmd_cg(const RunOptions& o, std::ostream& out) {
    const double v = clebsch_gordan(HalfInt::parse(o.j1), HalfInt::parse(o.j2), HalfInt::parse(o.j),
                                    HalfInt::parse(o.m1), HalfInt::parse(o.m2));
    out << nlohmann::json{{"j1", o.j1}, {"j2", o.j2}, {"J", o.j}, {"m1", o.m1}, {"m2", o.m2}, {"value", v}}.dump()
        << '\n';
    return kOk;
}

/// Runs `body`, mapping library exceptions onto exit codes with a message on `err`.
template <typename F>
int guarded(F&& body, std::ostream& err) {
    try {
        return body();
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kCapacity;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
}

} // namespace dicke::cli
