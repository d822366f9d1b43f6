#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "zosga/beamforming.hpp"
#include "zosga/channel.hpp"
#include "zosga/config.hpp"
#include "zosga/irs_state.hpp"
#include "zosga/optimizer.hpp"
#include "zosga/rng.hpp"

namespace zosga {

enum class Method { zosga_aa, zosga_ua, random_irs, no_irs };

inline Method parse_method(const std::string& tag) {
    if (tag == "zosga_aa") return Method::zosga_aa;
    if (tag == "zosga_ua") return Method::zosga_ua;
    if (tag == "random_irs") return Method::random_irs;
    if (tag == "no_irs") return Method::no_irs;
    throw ConfigError("unknown method tag '" + tag + "'");
}

inline const char* method_name(Method m) {
    switch (m) {
        case Method::zosga_aa: return "zosga_aa";
        case Method::zosga_ua: return "zosga_ua";
        case Method::random_irs: return "random_irs";
        case Method::no_irs: return "no_irs";
    }
    return "?";
}

struct SimulationResult {
    std::vector<double> sumrates;   // F(W*, H(theta^t, omega^{t+1})), t = 0..T-1
    double final_sumrate = 0.0;     // mean over the trailing tenth of the series
    std::uint64_t channel_checksum = 0;
    Trajectory trajectory;
};

namespace detail {

inline std::uint64_t fold_checksum(std::uint64_t acc, std::uint64_t v) {
    std::uint64_t h = acc;
    for (int b = 0; b < 64; b += 8) {
        h ^= (v >> b) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline double tail_mean(const std::vector<double>& series) {
    const size_t tail = std::max<size_t>(1, series.size() / 10);
    double s = 0.0;
    for (size_t i = series.size() - tail; i < series.size(); ++i) s += series[i];
    return s / static_cast<double>(tail);
}

} // namespace detail

// One seeded simulation: statistical CSI drawn once, then `iters` outer
// iterations with a fresh instantaneous realization each. Channel draws and
// algorithm randomness (initial phases, probe directions) come from separate
// derived streams so that every method consumes the identical realization
// sequence; the iterate-selection draw has its own stream.
inline SimulationResult run_simulation(const Scenario& sc, Method method,
                                       std::uint64_t sim_seed) {
    Scenario local = sc;
    if (method == Method::zosga_aa) local.amplitude_mode = AmplitudeMode::adjustable;
    if (method == Method::zosga_ua) local.amplitude_mode = AmplitudeMode::unit;

    const ChannelModel model(local);
    Rng channel_rng(derive_seed(sim_seed, 0));
    Rng algo_rng(derive_seed(sim_seed, 1));
    Rng select_rng(derive_seed(sim_seed, 2));

    const StatisticalCsi scsi = model.draw_statistical_csi(channel_rng);

    const long iters = local.iters;
    const Eigen::Map<const Eigen::VectorXd> weights(local.weights.data(),
                                                    local.num_users);
    const Eigen::Map<const Eigen::VectorXd> noise(local.noise.data(),
                                                  local.num_users);

    IrsState state = IrsState::neutral(local);
    const bool has_irs = state.num_panels() > 0;
    if (method == Method::no_irs) {
        for (auto& a : state.amplitudes) a.setZero();
    } else if (has_irs) {
        for (auto& p : state.phases)
            for (int e = 0; e < p.size(); ++e)
                p(e) = algo_rng.uniform(-std::numbers::pi, std::numbers::pi);
    }

    SimulationResult out;
    out.channel_checksum = 0xcbf29ce484222325ULL;
    out.sumrates.reserve(iters);

    const InnerOracle oracle = [&](const Eigen::MatrixXcd& h) {
        return wmmse_precoder(h, local.power, noise, weights, local.wmmse_iters);
    };

    const bool optimizing =
        (method == Method::zosga_aa || method == Method::zosga_ua) && has_irs;

    if (!optimizing) {
        for (long t = 0; t < iters; ++t) {
            const ChannelRealization omega = model.sample_realization(scsi, channel_rng);
            out.channel_checksum =
                detail::fold_checksum(out.channel_checksum, ChannelModel::checksum(omega));
            const Eigen::MatrixXcd h = model.effective_channel(state, omega);
            const PrecoderMatrix w = oracle(h);
            out.sumrates.push_back(weighted_sumrate(w.w, h, weights, noise).total);
            out.trajectory.channel_evaluations += 1;
        }
        out.final_sumrate = detail::tail_mean(out.sumrates);
        return out;
    }

    Eigen::VectorXd theta = state.flatten();
    const int s_dim = static_cast<int>(theta.size());

    ZosgaOptions opt;
    opt.mu = local.mu;
    opt.lower = state.lower_bounds();
    opt.upper = state.upper_bounds();
    opt.phase_mask = state.phase_mask();
    std::vector<bool> optimize;
    for (const auto& p : local.irs) optimize.push_back(p.optimize);
    opt.update_mask = state.update_mask(optimize);
    opt.wrap_phases = local.phase_wrap;

    // Algorithm 1 returns theta^{t*} with probability proportional to the
    // step size; the draw happens up front so that the selected iterate can
    // be captured without storing the full trajectory.
    std::vector<double> selection_weights;
    for (long t = 0; t <= iters; ++t)
        selection_weights.push_back(step_size(t, local.schedule, s_dim).phase);
    const long selected = select_iterate(selection_weights, select_rng);

    Trajectory& traj = out.trajectory;
    traj.selected = selected;
    traj.iterates.push_back(theta);
    traj.iterate_index.push_back(0);
    if (selected == 0) traj.selected_theta = theta;

    long channel_calls = 0;
    for (long t = 0; t < iters; ++t) {
        const ChannelRealization omega = model.sample_realization(scsi, channel_rng);
        out.channel_checksum =
            detail::fold_checksum(out.channel_checksum, ChannelModel::checksum(omega));
        const ChannelFn channel = [&](const Eigen::VectorXd& th) {
            ++channel_calls;
            return model.effective_channel_flat(th, omega);
        };
        Eigen::VectorXd u(s_dim);
        for (int i = 0; i < s_dim; ++i) u(i) = algo_rng.gaussian();
        const StepSizes eta = step_size(t, local.schedule, s_dim);

        const StepResult res =
            zosga_step(theta, channel, oracle, weights, noise, u, eta, opt);
        out.sumrates.push_back(res.sumrate);
        traj.steps_phase.push_back(eta.phase);
        traj.steps_amp.push_back(eta.amplitude);
        traj.max_wirtinger_norm = std::max(traj.max_wirtinger_norm, res.wirtinger_norm);
        theta = res.theta_next;

        if ((t + 1) % local.thin == 0 || t + 1 == iters) {
            traj.iterates.push_back(theta);
            traj.iterate_index.push_back(t + 1);
        }
        if (t + 1 == selected) traj.selected_theta = theta;
    }
    traj.channel_evaluations = channel_calls;
    out.final_sumrate = detail::tail_mean(out.sumrates);
    return out;
}

// Aggregate record of one (scenario, method) ensemble.
struct RunRecord {
    std::string scenario_hash;
    std::string method;
    std::uint64_t master_seed = 0;
    int n_sims = 0;
    long iters = 0;
    std::vector<double> mean_sumrate;
    std::vector<double> std_sumrate;
    std::vector<double> final_sumrates; // per simulation
    double wall_clock_seconds = 0.0;
    std::map<std::string, std::string> config;
};

namespace detail {

inline int worker_count(int n_sims) {
    int w = 0;
    if (const char* env = std::getenv("ZOSGA_WORKERS")) w = std::atoi(env);
    if (w < 1) w = static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    return std::min(w, n_sims);
}

} // namespace detail

// Runs n_sims independent simulations with per-simulation seeds derived from
// the master seed by counter. Execution may be parallel; aggregation is a
// sequential reduction over ascending simulation index, so the record does
// not depend on scheduling or worker count.
inline RunRecord run_ensemble(const Scenario& sc, Method method,
                              std::uint64_t master_seed, int n_sims) {
    if (n_sims < 1)
        throw std::invalid_argument("run_ensemble: n_sims must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<SimulationResult> results(n_sims);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        try {
            for (int i = next.fetch_add(1); i < n_sims; i = next.fetch_add(1))
                results[i] = run_simulation(sc, method, derive_seed(master_seed, i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    const int workers = detail::worker_count(n_sims);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    RunRecord rec;
    rec.scenario_hash = sc.hash();
    rec.method = method_name(method);
    rec.master_seed = master_seed;
    rec.n_sims = n_sims;
    rec.iters = sc.iters;
    rec.config = sc.canonical();

    const size_t t_len = results[0].sumrates.size();
    rec.mean_sumrate.assign(t_len, 0.0);
    rec.std_sumrate.assign(t_len, 0.0);
    for (size_t t = 0; t < t_len; ++t) {
        double s = 0.0;
        for (int i = 0; i < n_sims; ++i) s += results[i].sumrates[t];
        const double mean = s / n_sims;
        rec.mean_sumrate[t] = mean;
        if (n_sims > 1) {
            double q = 0.0;
            for (int i = 0; i < n_sims; ++i) {
                const double d = results[i].sumrates[t] - mean;
                q += d * d;
            }
            rec.std_sumrate[t] = std::sqrt(q / (n_sims - 1));
        }
    }
    for (int i = 0; i < n_sims; ++i)
        rec.final_sumrates.push_back(results[i].final_sumrate);

    rec.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

struct SweepSpec {
    std::string key;                 // accepts the rician.beta_ai_iu coupling alias
    std::vector<std::string> values;
    int n_sims = 1;
};

// One ensemble per (value, method); every point reuses the same master seed,
// so comparisons across methods and sweep values are seed-paired.
inline std::vector<RunRecord> run_sweep(const Scenario& sc, const SweepSpec& sweep,
                                        const std::vector<Method>& methods,
                                        std::uint64_t master_seed) {
    if (sweep.values.empty())
        throw std::invalid_argument("run_sweep: empty value list");
    if (methods.empty())
        throw std::invalid_argument("run_sweep: no methods");
    std::vector<RunRecord> records;
    for (const std::string& value : sweep.values) {
        Scenario point = sc;
        point.set_key(sweep.key, value);
        for (Method m : methods)
            records.push_back(run_ensemble(point, m, master_seed, sweep.n_sims));
    }
    return records;
}

// Empirical stand-ins for the schedule constants B_F and L_h0: maxima of the
// Wirtinger factor norm and of the probe difference quotient over random
// feasible iterates and fresh realizations.
struct GradientBounds {
    double b_f = 0.0;
    double l_h0 = 0.0;
};

inline GradientBounds estimate_gradient_bounds(const Scenario& sc,
                                               std::uint64_t seed, int draws,
                                               double mu = 1e-6) {
    const ChannelModel model(sc);
    Rng rng(seed);
    const StatisticalCsi scsi = model.draw_statistical_csi(rng);
    IrsState state = IrsState::neutral(sc);
    const Eigen::Map<const Eigen::VectorXd> weights(sc.weights.data(), sc.num_users);
    const Eigen::Map<const Eigen::VectorXd> noise(sc.noise.data(), sc.num_users);

    GradientBounds out;
    for (int d = 0; d < draws; ++d) {
        for (auto& p : state.phases)
            for (int e = 0; e < p.size(); ++e)
                p(e) = rng.uniform(-std::numbers::pi, std::numbers::pi);
        if (sc.amplitude_mode == AmplitudeMode::adjustable)
            for (auto& a : state.amplitudes)
                for (int e = 0; e < a.size(); ++e) a(e) = rng.uniform(0.0, 1.0);

        const ChannelRealization omega = model.sample_realization(scsi, rng);
        const Eigen::MatrixXcd h = model.effective_channel(state, omega);
        const PrecoderMatrix w =
            wmmse_precoder(h, sc.power, noise, weights, sc.wmmse_iters);
        out.b_f = std::max(out.b_f,
                           wirtinger_factor(w.w, h, weights, noise).norm());

        const Eigen::VectorXd theta = state.flatten();
        Eigen::VectorXd u(theta.size());
        for (int i = 0; i < u.size(); ++i) u(i) = rng.gaussian();
        const Eigen::MatrixXcd hp =
            model.effective_channel_flat(theta + mu * u, omega);
        const Eigen::MatrixXcd hm =
            model.effective_channel_flat(theta - mu * u, omega);
        const double un = u.norm();
        if (un > 0.0)
            out.l_h0 = std::max(out.l_h0, (hp - hm).norm() / (2.0 * mu * un));
    }
    return out;
}

} // namespace zosga
