#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace zosga {

using ChannelFn = std::function<Eigen::MatrixXcd(const Eigen::VectorXd&)>;

// Wirtinger derivative of the weighted sumrate with respect to the
// unconjugated channel: column k holds alpha_k * d rate_k / d h_k evaluated
// at h_k, so that dF/dRe(H_mk) = 2 Re(D_mk) and dF/dIm(H_mk) = -2 Im(D_mk).
struct WirtingerFactor {
    Eigen::MatrixXcd d;
    double norm() const { return d.norm(); }
};

inline WirtingerFactor wirtinger_factor(const Eigen::MatrixXcd& w,
                                        const Eigen::MatrixXcd& h,
                                        const Eigen::VectorXd& weights,
                                        const Eigen::VectorXd& noise) {
    const int m = static_cast<int>(h.rows());
    const int k_users = static_cast<int>(h.cols());
    if (w.rows() != m || w.cols() != k_users || weights.size() != k_users ||
        noise.size() != k_users)
        throw std::invalid_argument("wirtinger_factor: dimension mismatch");

    WirtingerFactor out;
    out.d = Eigen::MatrixXcd::Zero(m, k_users);
    constexpr double ln2 = 0.6931471805599453;
    for (int k = 0; k < k_users; ++k) {
        const Eigen::VectorXcd& z = h.col(k);
        std::complex<double> gain_k = 0.0;
        double interf = 0.0;
        Eigen::VectorXcd cross = Eigen::VectorXcd::Zero(m);
        for (int j = 0; j < k_users; ++j) {
            const std::complex<double> g = z.dot(w.col(j)); // z^H w_j
            if (j == k) {
                gain_k = g;
            } else {
                interf += std::norm(g);
                cross += g * w.col(j).conjugate();
            }
        }
        const double denom_lin = interf + noise(k);
        const double sig = std::norm(gain_k);
        // d rate_k / d h_k = [ (I_k + s^2) (h^H w_k) conj(w_k)
        //                      - |h^H w_k|^2 sum_{j!=k} (h^H w_j) conj(w_j) ]
        //                    / ( ln2 (I_k + s^2) (I_k + s^2 + |h^H w_k|^2) )
        const double denom = ln2 * denom_lin * (denom_lin + sig);
        out.d.col(k) =
            weights(k) * (denom_lin * gain_k * w.col(k).conjugate() - sig * cross) /
            denom;
    }
    return out;
}

// Two-point probe of the effective channel along a fixed direction. The
// channel function is evaluated exactly twice, at theta +/- mu*u, with the
// perturbed points used as-is (no box projection).
struct ProbePair {
    Eigen::VectorXd u;
    double mu = 0.0;
    Eigen::MatrixXcd h_plus;
    Eigen::MatrixXcd h_minus;
    Eigen::MatrixXcd delta() const { return h_plus - h_minus; }
};

inline ProbePair probe_channel(const Eigen::VectorXd& theta, const ChannelFn& channel,
                               const Eigen::VectorXd& u, double mu) {
    if (mu <= 0.0)
        throw std::invalid_argument("probe_channel: mu must be > 0");
    if (u.size() != theta.size())
        throw std::invalid_argument("probe_channel: direction dimension mismatch");
    ProbePair p;
    p.u = u;
    p.mu = mu;
    p.h_plus = channel(theta + mu * u);
    p.h_minus = channel(theta - mu * u);
    if (p.h_plus.rows() != p.h_minus.rows() || p.h_plus.cols() != p.h_minus.cols())
        throw std::runtime_error("probe_channel: inconsistent channel dimensions");
    return p;
}

// Zeroth-order stochastic quasi-gradient: the probe difference is paired
// with the Wirtinger factor entrywise,
//   G = (u / mu) * [ <Re Delta, Re D>_F + <Im Delta, Re(jD)>_F ]
//     = (u / mu) * Re( sum_mk Delta(m,k) * D(m,k) ),
// an unbiased estimate of grad_theta F whenever the channel is affine in
// theta. Exactly linear in both the probe difference and the factor.
inline Eigen::VectorXd quasi_gradient(const ProbePair& probe,
                                      const WirtingerFactor& factor) {
    if (probe.h_plus.rows() != factor.d.rows() ||
        probe.h_plus.cols() != factor.d.cols())
        throw std::invalid_argument("quasi_gradient: dimension mismatch");
    const std::complex<double> paired =
        (probe.delta().array() * factor.d.array()).sum();
    return probe.u * (paired.real() / probe.mu);
}

} // namespace zosga
