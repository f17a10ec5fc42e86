// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// dicke_rvb: construct, verify, analyze and simulate dark/RVB states.

#include <dicke/cli.hpp>

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

namespace {

using dicke::cli::RunOptions;

// Fills options not given on the command line from a JSON config document.
// Keys are the long flag names, with '-' or '_'.
void apply_config(const std::string& path, CLI::App& sub, RunOptions& o) {
    std::ifstream f(path);
    if (!f) throw dicke::ArgumentError("cannot read config '" + path + "'");
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw dicke::ArgumentError(std::string("malformed config JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw dicke::ArgumentError("config must be a JSON object");

    const std::map<std::string, std::function<void(const nlohmann::json&)>> setters = {
        {"m", [&](const auto& v) { o.m = v.template get<int>(); }},
        {"n", [&](const auto& v) { o.n = v.template get<int>(); }},
        {"method", [&](const auto& v) { o.method = v.template get<std::string>(); }},
        {"repr", [&](const auto& v) { o.repr = v.template get<std::string>(); }},
        {"model", [&](const auto& v) { o.model = v.template get<std::string>(); }},
        {"integrator", [&](const auto& v) { o.integrator = v.template get<std::string>(); }},
        {"n-traj", [&](const auto& v) { o.n_traj = v.template get<std::uint64_t>(); }},
        {"seed", [&](const auto& v) { o.seed = v.template get<std::uint64_t>(); }},
        {"t-max", [&](const auto& v) { o.t_max = v.template get<double>(); }},
        {"dt", [&](const auto& v) { o.dt = v.template get<double>(); }},
        {"kappa", [&](const auto& v) { o.kappa = v.template get<double>(); }},
        {"g", [&](const auto& v) { o.g = v.template get<double>(); }},
        {"deadtime-factor", [&](const auto& v) { o.deadtime_factor = v.template get<double>(); }},
        {"detector-efficiency", [&](const auto& v) { o.detector_efficiency = v.template get<double>(); }},
        {"photon-cutoff", [&](const auto& v) { o.photon_cutoff = v.template get<int>(); }},
        {"max-n", [&](const auto& v) { o.max_n = v.template get<int>(); }},
        {"out", [&](const auto& v) { o.out = v.template get<std::string>(); }},
    };
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        std::string key = it.key();
        std::replace(key.begin(), key.end(), '_', '-');
        auto s = setters.find(key);
        if (s == setters.end()) throw dicke::ArgumentError("unknown config key '" + it.key() + "'");
        CLI::Option* opt = nullptr;
        try {
            opt = sub.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            continue;  // key belongs to another subcommand
        }
        if (opt->count() > 0) continue;
        try {
            s->second(it.value());
        } catch (const nlohmann::json::exception&) {
            throw dicke::ArgumentError("config key '" + it.key() + "' has the wrong type");
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dark-state / RVB construction, verification and trajectory simulation for the two-row Dicke protocol"};
    app.set_version_flag("--version", DICKE_RVB_VERSION);
    app.require_subcommand(1);

    RunOptions o;
    o.threads = dicke::cli::default_threads();
    std::string config;

    auto add_split = [&](CLI::App* s) {
        s->add_option("--m", o.m, "excited spins (top row)")->check(CLI::NonNegativeNumber);
        s->add_option("--n", o.n, "ground-state spins (bottom row)")->check(CLI::NonNegativeNumber);
    };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--out", o.out, "output path");
        s->add_option("--config", config, "JSON config; command-line flags take precedence");
        s->add_option("--seed", o.seed, "RNG seed");
    };

    auto* construct = app.add_subcommand("construct", "build the dark/RVB state and write it as JSON");
    add_split(construct);
    add_common(construct);
    construct->add_option("--method", o.method, "perm | closed | project")->capture_default_str();
    construct->add_option("--repr", o.repr, "auto | full | sector (closed only)")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "certify that all constructors agree");
    add_split(verify);
    add_common(verify);
    verify->add_option("--max-n", o.max_n, "sweep every M <= N <= max-n");

    auto* analyze = app.add_subcommand("analyze", "null-emission probability, Schmidt spectrum, entropy");
    add_split(analyze);
    add_common(analyze);

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo trajectories of the detection protocol");
    add_split(simulate);
    add_common(simulate);
    simulate->add_option("--model", o.model, "effective | full")->capture_default_str();
    simulate->add_option("--integrator", o.integrator, "auto | rk4 | exact")->capture_default_str();
    simulate->add_option("--n-traj", o.n_traj, "number of trajectories")->capture_default_str();
    simulate->add_option("--t-max", o.t_max, "simulated time, units of 1/Gamma")->capture_default_str();
    simulate->add_option("--dt", o.dt, "time step, units of 1/Gamma")->capture_default_str();
    simulate->add_option("--kappa", o.kappa, "cavity decay rate")->capture_default_str();
    simulate->add_option("--g", o.g, "spin-cavity coupling")->capture_default_str();
    simulate->add_option("--deadtime-factor", o.deadtime_factor, "null requires no click before this many 1/Gamma")
        ->capture_default_str();
    simulate->add_option("--detector-efficiency", o.detector_efficiency, "click probability per photon")
        ->capture_default_str();
    simulate->add_option("--photon-cutoff", o.photon_cutoff, "Fock cutoff for the full model (default M+1)");

    auto* cg = app.add_subcommand("cg", "Clebsch-Gordan coefficient <j1 m1; j2 m2 | J m1+m2>");
    add_common(cg);
    cg->add_option("--j1", o.j1)->required();
    cg->add_option("--j2", o.j2)->required();
    cg->add_option("--j", o.j, "total J")->required();
    cg->add_option("--m1", o.m1)->required();
    cg->add_option("--m2", o.m2)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : dicke::cli::kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    return dicke::cli::guarded(
        [&] {
            if (!config.empty()) apply_config(config, *sub, o);
            if (sub == construct) return dicke::cli::cmd_construct(o, std::cout);
            if (sub == verify) return dicke::cli::cmd_verify(o, std::cout);
            if (sub == analyze) return dicke::cli::cmd_analyze(o, std::cout);
            if (sub == simulate) return dicke::cli::cmd_simulate(o, std::cout);
            return dicke::cli::cmd_cg(o, std::cout);
        },
        std::cerr);
}
