#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace zosga {

enum class ScheduleMode { constant_theorem1, geometric_decay };

// Step-size schedule for the outer ascent. Two modes:
//  - constant_theorem1: the horizon-dependent constant step
//        eta = sqrt(delta_phi / (4 rho b_f^2 l_h0^2 (S^2 + 2S) (T+1)))
//    applied to both coordinate blocks,
//  - geometric_decay: per-block initial steps scaled by gamma^min(t, cutoff).
// delta_k and l_h1 are only consumed by the stationarity-bound diagnostic.
struct ScheduleParams {
    ScheduleMode mode = ScheduleMode::geometric_decay;

    // constant_theorem1 inputs
    double delta_phi = 1.0; // bound on the initial optimality gap
    double rho = 1.0;       // weak-convexity modulus
    double b_f = 1.0;       // bound on the Wirtinger factor norm
    double l_h0 = 1.0;      // channel Lipschitz constant
    long horizon = -1;      // T; required in constant mode

    // geometric_decay inputs
    double eta0_phase = 0.4;
    double eta0_amp = 0.01;
    double gamma = 0.9972;
    long cutoff = 1000;

    // extra constants for the bound diagnostic
    double l_h1 = 1.0;
    double delta_k = 1.0;
};

struct StepSizes {
    double phase = 0.0;
    double amplitude = 0.0;
};

inline StepSizes step_size(long t, const ScheduleParams& params, int s_dim) {
    if (t < 0)
        throw std::invalid_argument("step_size: iteration index must be >= 0");
    if (params.mode == ScheduleMode::constant_theorem1) {
        if (params.horizon < 0)
            throw std::invalid_argument("step_size: constant schedule requires a horizon");
        const double s = static_cast<double>(s_dim);
        const double denom = 4.0 * params.rho * params.b_f * params.b_f *
                             params.l_h0 * params.l_h0 * (s * s + 2.0 * s) *
                             static_cast<double>(params.horizon + 1);
        const double eta = std::sqrt(params.delta_phi / denom);
        return {eta, eta};
    }
    const double scale =
        std::pow(params.gamma, static_cast<double>(std::min(t, params.cutoff)));
    return {params.eta0_phase * scale, params.eta0_amp * scale};
}

// Moreau-envelope stationarity bound; a reporting diagnostic, never a control
// input to the optimizer.
inline double theorem1_bound(const ScheduleParams& params, int s_dim, int m,
                             int k, double mu, long t_horizon) {
    const double s = static_cast<double>(s_dim);
    const double sampling_term =
        std::sqrt(params.delta_phi * params.rho * params.b_f * params.b_f *
                  params.l_h0 * params.l_h0 * (s * s + 2.0 * s) /
                  static_cast<double>(t_horizon + 1));
    const double smoothing_term =
        mu * params.rho * params.delta_k * params.b_f * params.l_h1 *
        std::sqrt(s * static_cast<double>(m) * static_cast<double>(k));
    return 8.0 * (sampling_term + smoothing_term);
}

} // namespace zosga
