#pragma once

#include <Eigen/Dense>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zosga/beamforming.hpp"
#include "zosga/gradients.hpp"
#include "zosga/rng.hpp"
#include "zosga/schedule.hpp"

namespace zosga {

using InnerOracle = std::function<PrecoderMatrix(const Eigen::MatrixXcd&)>;

// coordinatewise clamp; idempotent and nonexpansive
inline Eigen::VectorXd project_box(const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& lo,
                                   const Eigen::VectorXd& hi) {
    if (lo.size() != theta.size() || hi.size() != theta.size())
        throw std::invalid_argument("project_box: bounds dimension mismatch");
    for (int i = 0; i < theta.size(); ++i)
        if (lo(i) > hi(i))
            throw std::invalid_argument("project_box: lo > hi");
    return theta.cwiseMax(lo).cwiseMin(hi);
}

// randomized iterate selection: P(t* = t) proportional to the step size
inline int select_iterate(const std::vector<double>& steps, Rng& rng) {
    double total = 0.0;
    for (double s : steps) {
        if (s < 0.0)
            throw std::invalid_argument("select_iterate: negative step size");
        total += s;
    }
    if (steps.empty() || total <= 0.0)
        throw std::invalid_argument("select_iterate: need at least one positive step");
    const double x = rng.uniform01() * total;
    double acc = 0.0;
    for (size_t t = 0; t < steps.size(); ++t) {
        acc += steps[t];
        if (x <= acc) return static_cast<int>(t);
    }
    return static_cast<int>(steps.size() - 1);
}

struct ZosgaOptions {
    double mu = 1e-6;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    Eigen::ArrayXd phase_mask;  // 1 on phase coordinates, 0 on amplitudes
    Eigen::ArrayXd update_mask; // 0 freezes a coordinate
    bool wrap_phases = false;
};

struct StepResult {
    Eigen::VectorXd theta_next;
    double sumrate = 0.0;          // F(W*, H(theta, omega)), before the update
    Eigen::VectorXd quasi_grad;
    double wirtinger_norm = 0.0;   // ||D||_F at this iterate
    bool degenerate = false;
};

// One outer iteration: inner solve at the current iterate, two-point probe,
// quasi-gradient ascent step with per-block step sizes, box projection.
inline StepResult zosga_step(const Eigen::VectorXd& theta, const ChannelFn& channel,
                             const InnerOracle& inner, const Eigen::VectorXd& weights,
                             const Eigen::VectorXd& noise, const Eigen::VectorXd& u,
                             const StepSizes& eta, const ZosgaOptions& opt) {
    StepResult res;
    const Eigen::MatrixXcd h = channel(theta);
    const PrecoderMatrix w = inner(h);
    res.degenerate = w.degenerate;
    res.sumrate = weighted_sumrate(w.w, h, weights, noise).total;

    const WirtingerFactor d = wirtinger_factor(w.w, h, weights, noise);
    res.wirtinger_norm = d.norm();
    const ProbePair probe = probe_channel(theta, channel, u, opt.mu);
    res.quasi_grad = quasi_gradient(probe, d);

    const Eigen::ArrayXd eta_vec =
        (opt.phase_mask * eta.phase + (1.0 - opt.phase_mask) * eta.amplitude) *
        opt.update_mask;
    Eigen::VectorXd moved = theta.array() + eta_vec * res.quasi_grad.array();
    if (opt.wrap_phases) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        for (int i = 0; i < moved.size(); ++i) {
            if (opt.phase_mask(i) == 0.0) continue;
            moved(i) = std::remainder(moved(i), two_pi);
        }
    }
    res.theta_next = project_box(moved, opt.lower, opt.upper);
    return res;
}

// Iterate history of one optimization run. Sumrates and step sizes are kept
// per iteration; iterates are thinned.
struct Trajectory {
    std::vector<Eigen::VectorXd> iterates;
    std::vector<long> iterate_index;
    std::vector<double> sumrates;
    std::vector<double> steps_phase;
    std::vector<double> steps_amp;
    long selected = -1;
    Eigen::VectorXd selected_theta;
    double max_wirtinger_norm = 0.0;
    long channel_evaluations = 0;
};

} // namespace zosga
