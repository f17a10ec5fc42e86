// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dynamics.hpp
 * @brief Lossy-cavity Dicke dynamics and Monte-Carlo wavefunction trajectories
 *        conditioned on photon detection.
 *
 * Two models share one trajectory engine:
 *
 *  - full cavity: sector (x) Fock space with
 *      H = w_q S^z + w_c a^dag a + g (S^- a^dag + S^+ a),
 *    no-jump drift H - (i kappa / 2) a^dag a and jump operator sqrt(kappa) a;
 *  - effective collective decay (cavity adiabatically eliminated):
 *    drift w_q S^z - (i Gamma / 2) S^+ S^- and jump sqrt(Gamma) S^-,
 *    Gamma = 4 g^2 / kappa.
 *
 * Times in TrajectoryConfig are in units of 1/Gamma for both models.
 */

#pragma once

#include <dicke/errors.hpp>
#include <dicke/sector.hpp>
#include <dicke/spin_basis.hpp>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace dicke {

struct CavityParams {
    double qubit_splitting = 0.0;  ///< w_q; defaults describe the frame rotating at resonance
    double cavity_freq = 0.0;      ///< w_c
    double coupling = 1.0;         ///< g
    double cavity_decay = 100.0;   ///< kappa
    int photon_cutoff = -1;        ///< n_max; negative selects M + 1

    [[nodiscard]] double gamma_eff() const noexcept { return 4.0 * coupling * coupling / cavity_decay; }

    /// kappa >= 10 g sqrt(Q), the regime where the effective model applies.
    [[nodiscard]] bool lossy_regime(int q) const noexcept {
        return cavity_decay >= 10.0 * std::abs(coupling) * std::sqrt(static_cast<double>(q));
    }

    [[nodiscard]] int resolved_cutoff(const RowSplit& split) const noexcept {
        return photon_cutoff < 0 ? split.m_top + 1 : photon_cutoff;
    }
};

/// Amplitudes over (i, j, n): sector grid entry (i, j) with n photons.
struct SpinPhotonState {
    RowSplit split;
    int n_max = 1;
    std::vector<cplx> amps;

    static SpinPhotonState zeros(const RowSplit& split, int n_max) {
        split.validate();
        if (n_max < 0) throw ConfigError("photon cutoff must be non-negative");
        SpinPhotonState s;
        s.split = split;
        s.n_max = n_max;
        s.amps.assign(static_cast<std::size_t>(split.m_top + 1) * (split.n_bottom + 1) * (n_max + 1), cplx{});
        return s;
    }
    /// sector (x) |0 photons>.
    static SpinPhotonState from_sector(const SectorState& s, int n_max) {
        SpinPhotonState out = zeros(s.split, n_max);
        for (int i = 0; i <= s.split.m_top; ++i)
            for (int j = 0; j <= s.split.n_bottom; ++j) out.at(i, j, 0) = s.at(i, j);
        return out;
    }

    [[nodiscard]] std::size_t index(int i, int j, int n) const noexcept {
        return (static_cast<std::size_t>(i) * (split.n_bottom + 1) + j) * (n_max + 1) + n;
    }
    cplx& at(int i, int j, int n) { return amps[index(i, j, n)]; }
    [[nodiscard]] const cplx& at(int i, int j, int n) const { return amps[index(i, j, n)]; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps.size(); }
};

inline double norm_squared(const SpinPhotonState& s) {
    double acc = 0.0;
    for (const auto& a : s.amps) acc += std::norm(a);
    return acc;
}

namespace detail {

inline Eigen::VectorXcd to_vector(const std::vector<cplx>& v) {
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<cplx> to_std(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

/// Dense S^- on the (M+1)(N+1) sector grid.
inline Eigen::MatrixXcd sector_lowering_matrix(const RowSplit& split) {
    const auto d = static_cast<Eigen::Index>(sector_dimension(split));
    Eigen::MatrixXcd low = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        SectorState e = SectorState::zeros(split);
        e.amps[k] = 1.0;
        const SectorState col = sector_ladder(e, Ladder::lower);
        for (Eigen::Index r = 0; r < d; ++r) low(r, k) = col.amps[r];
    }
    return low;
}

inline Eigen::VectorXd sector_sz_diagonal(const RowSplit& split) {
    SectorState s = SectorState::zeros(split);
    Eigen::VectorXd out(static_cast<Eigen::Index>(s.dim()));
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j) out(i * s.cols() + j) = s.m_tot(i, j);
    return out;
}

} // namespace detail

/**
 * Dicke Hamiltonian in the rotating-wave approximation on the
 * sector (x) Fock space. Terms that would push the photon number past the
 * cutoff are dropped symmetrically, so the truncated matrix stays Hermitian.
 */
class CavityHamiltonian {
public:
    CavityHamiltonian(const CavityParams& params, const RowSplit& split) : params_(params), split_(split) {
        split.validate();
        n_max_ = params.resolved_cutoff(split);
        if (n_max_ < 1) throw ConfigError("photon cutoff must be at least 1");
        if (n_max_ < split.m_top)
            throw ConfigError("photon cutoff " + std::to_string(n_max_) + " cannot hold the " +
                              std::to_string(split.m_top) + " photons the spins can emit");
        if (params.cavity_decay < 0.0) throw ConfigError("cavity decay must be non-negative");

        const auto proto = SpinPhotonState::zeros(split, n_max_);
        const auto d = static_cast<Eigen::Index>(proto.dim());
        h_ = Eigen::MatrixXcd::Zero(d, d);
        a_ = Eigen::MatrixXcd::Zero(d, d);
        lower_ = Eigen::MatrixXcd::Zero(d, d);
        excitations_ = Eigen::VectorXd::Zero(d);

        const int m = split.m_top, nb = split.n_bottom;
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= nb; ++j)
                for (int n = 0; n <= n_max_; ++n) {
                    const auto k = static_cast<Eigen::Index>(proto.index(i, j, n));
                    const double mt = 0.5 * (m + nb) - i - j;
                    h_(k, k) = params.qubit_splitting * mt + params.cavity_freq * n;
                    excitations_(k) = (m - i) + (nb - j) + n;
                    if (n > 0) a_(static_cast<Eigen::Index>(proto.index(i, j, n - 1)), k) = std::sqrt(static_cast<double>(n));
                    if (i < m)
                        lower_(static_cast<Eigen::Index>(proto.index(i + 1, j, n)), k) =
                            std::sqrt(static_cast<double>(m - i) * (i + 1));
                    if (j < nb)
                        lower_(static_cast<Eigen::Index>(proto.index(i, j + 1, n)), k) =
                            std::sqrt(static_cast<double>(nb - j) * (j + 1));
                }
        // Truncated a^dag drops the n_max -> n_max+1 row, so g(S^- a^dag + h.c.) stays Hermitian.
        const Eigen::MatrixXcd emit = lower_ * a_.adjoint();
        h_ += params.coupling * (emit + emit.adjoint());
    }

    [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return h_; }
    /// Photon annihilation a.
    [[nodiscard]] const Eigen::MatrixXcd& annihilation() const noexcept { return a_; }
    /// Collective S^- (x) identity.
    [[nodiscard]] const Eigen::MatrixXcd& spin_lowering() const noexcept { return lower_; }
    /// Diagonal of the conserved number (up spins) + (photons).
    [[nodiscard]] const Eigen::VectorXd& excitation_number() const noexcept { return excitations_; }
    [[nodiscard]] int photon_cutoff() const noexcept { return n_max_; }
    [[nodiscard]] const RowSplit& split() const noexcept { return split_; }
    [[nodiscard]] const CavityParams& params() const noexcept { return params_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return h_.rows(); }

    [[nodiscard]] SpinPhotonState apply(const SpinPhotonState& s) const {
        if (!(s.split == split_) || s.n_max != n_max_) throw ArgumentError("state does not match the Hamiltonian space");
        SpinPhotonState out = s;
        const Eigen::VectorXcd v = h_ * detail::to_vector(s.amps);
        out.amps = detail::to_std(v);
        return out;
    }

private:
    CavityParams params_;
    RowSplit split_;
    int n_max_ = 1;
    Eigen::MatrixXcd h_, a_, lower_;
    Eigen::VectorXd excitations_;
};

inline CavityHamiltonian build_hamiltonian(const CavityParams& params, const RowSplit& split) {
    return CavityHamiltonian(params, split);
}

enum class Model { full_cavity, effective };
enum class Integrator { automatic, rk4, exact };

inline std::string to_string(Model m) { return m == Model::full_cavity ? "full" : "effective"; }
inline std::string to_string(Integrator i) {
    switch (i) {
    case Integrator::rk4: return "rk4";
    case Integrator::exact: return "exact";
    default: return "auto";
    }
}

struct TrajectoryConfig {
    Model model = Model::effective;
    double t_max = 20.0;            ///< units of 1/Gamma
    double dt = 0.01;               ///< units of 1/Gamma
    std::uint64_t n_traj = 1000;
    std::uint64_t seed = 0;
    double deadtime_factor = 20.0;  ///< null requires no detection before deadtime_factor / Gamma
    double detector_efficiency = 1.0;
    /// automatic: RK4 for the effective model, exact step exponential for the full cavity.
    Integrator integrator = Integrator::automatic;

    [[nodiscard]] Integrator resolved_integrator() const noexcept {
        if (integrator != Integrator::automatic) return integrator;
        return model == Model::effective ? Integrator::rk4 : Integrator::exact;
    }
};

/// Independent uniform stream for trajectory `stream` of ensemble `seed`.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }
    /// Uniform on (0, 1] with 53 random bits.
    double uniform() { return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53; }

private:
    std::mt19937_64 engine_;
};

struct TrajectoryRecord {
    std::vector<double> jump_times;  ///< units of 1/Gamma
    int emitted_count = 0;           ///< all emissions
    int detected_count = 0;          ///< emissions registered by the detector
    double elapsed = 0.0;            ///< units of 1/Gamma
    bool null = false;
    double fidelity = std::numeric_limits<double>::quiet_NaN();  ///< |<RVB|final>|^2, NaN when M > N
    std::variant<SectorState, SpinPhotonState> final_state;

    [[nodiscard]] std::optional<double> first_jump_time() const {
        if (jump_times.empty()) return std::nullopt;
        return jump_times.front();
    }
};

struct EnsembleStats {
    std::uint64_t n_traj = 0;
    std::uint64_t n_null = 0;
    double p_null_hat = 0.0;
    double std_err = 0.0;
    double mean_fidelity_to_rvb = std::numeric_limits<double>::quiet_NaN();  ///< over null runs
};

/**
 * Precomputed no-jump propagators and jump operator for one (model, split,
 * config). Immutable after construction; run() may be called concurrently.
 *
 * The drift conserves a block label (down-spin count for the effective
 * model, up spins + photons for the full cavity), so the one-step
 * propagator is stored block by block.
 */
class TrajectoryEngine {
public:
    TrajectoryEngine(const CavityParams& params, const RowSplit& split, const TrajectoryConfig& cfg,
                     const std::optional<SectorState>& initial = std::nullopt)
        : params_(params), split_(split), cfg_(cfg) {
        split.validate();
        validate_config();
        gamma_ = params.gamma_eff();
        const double dt_phys = cfg.dt / gamma_;

        Eigen::MatrixXcd drift;  // d psi / dt = drift psi between jumps
        std::vector<int> labels;
        SectorState init_sector = initial.value_or(sector_product_state(split));
        init_sector.check_same(SectorState::zeros(split));

        if (cfg.model == Model::effective) {
            const Eigen::MatrixXcd low = detail::sector_lowering_matrix(split);
            const Eigen::VectorXd sz = detail::sector_sz_diagonal(split);
            drift = -0.5 * gamma_ * (low.adjoint() * low);
            drift.diagonal() += cplx{0.0, -params.qubit_splitting} * sz.cast<cplx>();
            jump_ = std::sqrt(gamma_) * low;
            brightness_ = {low};
            frozen_rate_ = params.qubit_splitting * sz;
            for (int i = 0; i <= split.m_top; ++i)
                for (int j = 0; j <= split.n_bottom; ++j) labels.push_back(i + j);
            initial_ = detail::to_vector(init_sector.amps);
            if (split.m_top <= split.n_bottom) reference_ = detail::to_vector(dark_sector_state(split).amps);
        } else {
            const CavityHamiltonian h(params, split);
            n_max_ = h.photon_cutoff();
            drift = cplx{0.0, -1.0} * h.matrix() - 0.5 * params.cavity_decay * (h.annihilation().adjoint() * h.annihilation());
            jump_ = std::sqrt(params.cavity_decay) * h.annihilation();
            brightness_ = {h.annihilation(), h.spin_lowering()};
            frozen_rate_ = h.matrix().diagonal().real();
            for (Eigen::Index k = 0; k < h.dim(); ++k) labels.push_back(static_cast<int>(h.excitation_number()(k)));
            initial_ = detail::to_vector(SpinPhotonState::from_sector(init_sector, n_max_).amps);
            if (split.m_top <= split.n_bottom)
                reference_ = detail::to_vector(SpinPhotonState::from_sector(dark_sector_state(split), n_max_).amps);
        }
        const double n0 = initial_.norm();
        if (!(n0 > 0.0)) throw ArgumentError("initial state must be nonzero");
        initial_ /= n0;
        build_blocks(drift, labels, dt_phys);
    }

    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] const TrajectoryConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] std::uint64_t step_count() const noexcept {
        return static_cast<std::uint64_t>(std::ceil(cfg_.t_max / cfg_.dt - 1e-9));
    }

    /// One unraveling with the stream (cfg.seed, index).
    [[nodiscard]] TrajectoryRecord run(std::uint64_t index) const {
        RngStream rng(cfg_.seed, index);
        return run(rng);
    }

    /// Norm-threshold unraveling: draw r, evolve the unnormalized no-jump
    /// state, jump once ||psi||^2 <= r, renormalize, redraw.
    [[nodiscard]] TrajectoryRecord run(RngStream& rng) const {
        TrajectoryRecord rec;
        Eigen::VectorXcd psi = initial_;
        Eigen::VectorXcd next(psi.size());
        double threshold = rng.uniform();
        double prev = psi.squaredNorm();
        const std::uint64_t steps = step_count();
        std::uint64_t s = 1;
        for (; s <= steps; ++s) {
            step(psi, next);
            psi.swap(next);
            const double n2 = psi.squaredNorm();
            if (n2 > prev * (1.0 + 1e-6))
                throw NumericalError("no-jump norm grew during a step; reduce dt (currently " + std::to_string(cfg_.dt) +
                                     "/Gamma)");
            if (n2 <= threshold) {
                const double t = static_cast<double>(s) * cfg_.dt;
                Eigen::VectorXcd jumped = jump_ * psi;
                const double jn = jumped.norm();
                if (jn > 0.0) {
                    psi = jumped / jn;
                    rec.jump_times.push_back(t);
                    ++rec.emitted_count;
                    if (cfg_.detector_efficiency >= 1.0 || rng.uniform() <= cfg_.detector_efficiency)
                        ++rec.detected_count;
                } else {
                    psi /= psi.norm();
                }
                threshold = rng.uniform();
            }
            prev = psi.squaredNorm();
            if (s % 64 == 0 && s < steps && is_stationary(psi)) {
                // Only the diagonal (w_q S^z + w_c n) part of the drift acts on a frozen state.
                const double t_rem = static_cast<double>(steps - s) * cfg_.dt / gamma_;
                for (Eigen::Index k = 0; k < psi.size(); ++k)
                    if (frozen_rate_(k) != 0.0) psi(k) *= std::exp(cplx{0.0, -frozen_rate_(k) * t_rem});
                break;
            }
        }
        rec.elapsed = static_cast<double>(steps) * cfg_.dt;
        rec.null = rec.detected_count == 0 && rec.elapsed >= cfg_.deadtime_factor;
        psi /= psi.norm();
        if (reference_.size() > 0) rec.fidelity = std::norm(reference_.dot(psi));
        if (cfg_.model == Model::effective) {
            SectorState fs = SectorState::zeros(split_);
            fs.amps = detail::to_std(psi);
            rec.final_state = std::move(fs);
        } else {
            SpinPhotonState fs = SpinPhotonState::zeros(split_, n_max_);
            fs.amps = detail::to_std(psi);
            rec.final_state = std::move(fs);
        }
        return rec;
    }

private:
    struct Block {
        std::vector<Eigen::Index> idx;
        Eigen::MatrixXcd propagator;
    };

    void validate_config() const {
        if (!(params_.cavity_decay > 0.0)) throw ConfigError("trajectories need a positive cavity decay rate");
        if (params_.coupling == 0.0) throw ConfigError("trajectories need a nonzero coupling (it sets the time unit)");
        if (!(cfg_.dt > 0.0)) throw ConfigError("dt must be positive");
        if (!(cfg_.t_max >= 0.0)) throw ConfigError("t_max must be non-negative");
        if (cfg_.n_traj < 1) throw ConfigError("n_traj must be at least 1");
        if (!(cfg_.detector_efficiency > 0.0 && cfg_.detector_efficiency <= 1.0))
            throw ConfigError("detector efficiency must lie in (0, 1]");
        if (cfg_.model == Model::full_cavity && cfg_.dt > 0.01 + 1e-15)
            throw ConfigError("full-cavity model requires dt <= 0.01/Gamma");
    }

    void build_blocks(const Eigen::MatrixXcd& drift, const std::vector<int>& labels, double dt) {
        std::map<int, std::vector<Eigen::Index>> groups;
        for (std::size_t k = 0; k < labels.size(); ++k) groups[labels[k]].push_back(static_cast<Eigen::Index>(k));
        for (Eigen::Index r = 0; r < drift.rows(); ++r)
            for (Eigen::Index c = 0; c < drift.cols(); ++c)
                if (labels[r] != labels[c] && std::abs(drift(r, c)) > 0.0)
                    throw ContractError("drift couples different conserved-number blocks");

        const Integrator integ = cfg_.resolved_integrator();
        for (auto& [label, idx] : groups) {
            const auto d = static_cast<Eigen::Index>(idx.size());
            Eigen::MatrixXcd a(d, d);
            for (Eigen::Index r = 0; r < d; ++r)
                for (Eigen::Index c = 0; c < d; ++c) a(r, c) = drift(idx[r], idx[c]) * dt;
            Eigen::MatrixXcd prop;
            if (integ == Integrator::exact) {
                prop = a.exp();
            } else {
                // Classic RK4 on a linear ODE is exactly this 4th-order Taylor polynomial.
                const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
                prop = id + a * (id + a * (id / 2.0 + a * (id / 6.0 + a / 24.0)));
            }
            blocks_.push_back({idx, std::move(prop)});
        }
    }

    void step(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
        Eigen::VectorXcd slice, res;
        for (const auto& b : blocks_) {
            const auto d = static_cast<Eigen::Index>(b.idx.size());
            slice.resize(d);
            bool any = false;
            for (Eigen::Index r = 0; r < d; ++r) {
                slice(r) = in(b.idx[r]);
                any = any || slice(r) != cplx{};
            }
            if (!any) {
                for (Eigen::Index r = 0; r < d; ++r) out(b.idx[r]) = cplx{};
                continue;
            }
            res.noalias() = b.propagator * slice;
            for (Eigen::Index r = 0; r < d; ++r) out(b.idx[r]) = res(r);
        }
    }

    /// No weight left on anything that can emit: the state is frozen.
    [[nodiscard]] bool is_stationary(const Eigen::VectorXcd& psi) const {
        const double n2 = psi.squaredNorm();
        for (const auto& op : brightness_)
            if ((op * psi).squaredNorm() > 1e-28 * n2) return false;
        return true;
    }

    CavityParams params_;
    RowSplit split_;
    TrajectoryConfig cfg_;
    double gamma_ = 1.0;
    int n_max_ = 0;
    Eigen::MatrixXcd jump_;
    std::vector<Eigen::MatrixXcd> brightness_;
    Eigen::VectorXd frozen_rate_;  ///< drift phase rate on states annihilated by every brightness_ operator
    Eigen::VectorXcd initial_, reference_;
    std::vector<Block> blocks_;
};

/// Single trajectory; builds a one-off engine.
inline TrajectoryRecord run_trajectory(const CavityParams& params, const RowSplit& split, const TrajectoryConfig& cfg,
                                       RngStream& rng, const std::optional<SectorState>& initial = std::nullopt) {
    return TrajectoryEngine(params, split, cfg, initial).run(rng);
}

/// cfg.n_traj trajectories, trajectory k on stream (cfg.seed, k). Output order
/// is the index order regardless of `threads` (0 = hardware concurrency).
inline std::vector<TrajectoryRecord> run_ensemble(const CavityParams& params, const RowSplit& split,
                                                  const TrajectoryConfig& cfg, unsigned threads = 1,
                                                  const std::optional<SectorState>& initial = std::nullopt) {
    const TrajectoryEngine engine(params, split, cfg, initial);
    std::vector<TrajectoryRecord> out(cfg.n_traj);
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.n_traj));
    if (threads <= 1) {
        for (std::uint64_t k = 0; k < cfg.n_traj; ++k) out[k] = engine.run(k);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t k = next++; k < cfg.n_traj; k = next++) out[k] = engine.run(k);
            } catch (...) {
                errors[w] = std::current_exception();
                next = cfg.n_traj;
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/// Null fraction with binomial standard error and mean RVB fidelity of null runs.
inline EnsembleStats estimate_null_probability(const std::vector<TrajectoryRecord>& records) {
    EnsembleStats st;
    st.n_traj = records.size();
    if (st.n_traj == 0) throw ArgumentError("no trajectories to aggregate");
    double fid = 0.0;
    std::uint64_t fid_count = 0;
    for (const auto& r : records) {
        if (!r.null) continue;
        ++st.n_null;
        if (!std::isnan(r.fidelity)) {
            fid += r.fidelity;
            ++fid_count;
        }
    }
    st.p_null_hat = static_cast<double>(st.n_null) / static_cast<double>(st.n_traj);
    st.std_err = std::sqrt(st.p_null_hat * (1.0 - st.p_null_hat) / static_cast<double>(st.n_traj));
    if (fid_count > 0) st.mean_fidelity_to_rvb = fid / static_cast<double>(fid_count);
    return st;
}

struct ConditionedState {
    SectorState state;     ///< normalized no-jump state
    double fidelity;       ///< |<RVB|state>|^2
    double survival;       ///< squared norm before normalization (probability of no emission so far)
};

/// Deterministic no-jump evolution of |up..up dn..dn> under the effective
/// drift for time t (units of 1/Gamma). The fidelity grows monotonically to 1.
inline ConditionedState conditioned_dark_state(const CavityParams& params, const RowSplit& split, double t) {
    split.require_dark();
    if (t < 0.0) throw ArgumentError("time must be non-negative");
    const Eigen::MatrixXcd low = detail::sector_lowering_matrix(split);
    const Eigen::VectorXd sz = detail::sector_sz_diagonal(split);
    // In units of 1/Gamma the decay part is -(1/2) S^+ S^-.
    Eigen::MatrixXcd gen = -0.5 * (low.adjoint() * low);
    gen.diagonal() += cplx{0.0, -params.qubit_splitting / params.gamma_eff()} * sz.cast<cplx>();
    const Eigen::VectorXcd psi0 = detail::to_vector(sector_product_state(split).amps);
    const Eigen::VectorXcd psi = (gen * t).exp() * psi0;
    const double surv = psi.squaredNorm();
    SectorState out = SectorState::zeros(split);
    out.amps = detail::to_std(psi / std::sqrt(surv));
    const double fid = std::norm(inner_product(dark_sector_state(split), out));
    return {std::move(out), fid, surv};
}

} // namespace dicke
