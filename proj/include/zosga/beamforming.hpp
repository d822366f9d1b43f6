#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace zosga {

// AP precoder under the Frobenius power budget ||W||_F^2 <= P.
struct PrecoderMatrix {
    Eigen::MatrixXcd w;
    bool degenerate = false; // set when the input channel was identically zero
};

struct SumrateBreakdown {
    Eigen::VectorXd sinr;
    Eigen::VectorXd rate; // alpha_k * log2(1 + sinr_k)
    double total = 0.0;
};

inline double sinr(const Eigen::MatrixXcd& w, const Eigen::VectorXcd& h_k, int k,
                   double sigma2) {
    if (k < 0 || k >= w.cols())
        throw std::invalid_argument("sinr: user index out of range");
    if (sigma2 <= 0.0)
        throw std::invalid_argument("sinr: noise variance must be > 0");
    double interference = 0.0;
    for (int j = 0; j < w.cols(); ++j) {
        if (j == k) continue;
        interference += std::norm(h_k.dot(w.col(j)));
    }
    return std::norm(h_k.dot(w.col(k))) / (interference + sigma2);
}

inline SumrateBreakdown weighted_sumrate(const Eigen::MatrixXcd& w,
                                         const Eigen::MatrixXcd& h,
                                         const Eigen::VectorXd& weights,
                                         const Eigen::VectorXd& noise) {
    const int k_users = static_cast<int>(h.cols());
    if (w.rows() != h.rows() || w.cols() != h.cols() ||
        weights.size() != k_users || noise.size() != k_users)
        throw std::invalid_argument("weighted_sumrate: dimension mismatch");
    SumrateBreakdown out;
    out.sinr.resize(k_users);
    out.rate.resize(k_users);
    out.total = 0.0;
    for (int k = 0; k < k_users; ++k) { // fixed summation order
        out.sinr(k) = sinr(w, h.col(k), k, noise(k));
        out.rate(k) = weights(k) * std::log2(1.0 + out.sinr(k));
        out.total += out.rate(k);
    }
    return out;
}

namespace detail {

// Power used by w_j(lambda) = c_j (A + lambda I)^{-1} h_j given the
// eigen-decomposition A = Q diag(lam) Q^H. proj[j] = Q^H h_j.
inline double precoder_power(const Eigen::VectorXd& lam,
                             const std::vector<Eigen::VectorXcd>& proj,
                             const std::vector<double>& csq, double lambda,
                             double drop_below) {
    double p = 0.0;
    for (size_t j = 0; j < proj.size(); ++j) {
        if (csq[j] == 0.0) continue;
        double s = 0.0;
        for (int m = 0; m < lam.size(); ++m) {
            const double d = lam(m) + lambda;
            if (d <= drop_below) continue; // pseudo-inverse treatment of null modes
            s += std::norm(proj[j](m)) / (d * d);
        }
        p += csq[j] * s;
    }
    return p;
}

} // namespace detail

// WMMSE solver for max sum_k alpha_k log2(1 + SINR_k) s.t. ||W||_F^2 <= P.
// Standard three-block alternation: MMSE receive scalars, inverse-MSE
// weights, then the regularized precoder update with the dual multiplier
// found by bisection on the power residual (tolerance 1e-10, at most 100
// halvings). Each full round leaves the weighted sumrate non-decreasing;
// round_sumrates, when given, records the objective after every round.
inline PrecoderMatrix wmmse_precoder(const Eigen::MatrixXcd& h, double power,
                                     const Eigen::VectorXd& noise,
                                     const Eigen::VectorXd& weights, int iters,
                                     const Eigen::MatrixXcd* w_init = nullptr,
                                     std::vector<double>* round_sumrates = nullptr) {
    const int m = static_cast<int>(h.rows());
    const int k_users = static_cast<int>(h.cols());
    if (iters < 1)
        throw std::invalid_argument("wmmse_precoder: iters must be >= 1");
    if (noise.size() != k_users || weights.size() != k_users)
        throw std::invalid_argument("wmmse_precoder: dimension mismatch");
    if (power <= 0.0)
        throw std::invalid_argument("wmmse_precoder: power must be > 0");

    PrecoderMatrix out;
    if (h.norm() == 0.0) {
        out.w = Eigen::MatrixXcd::Zero(m, k_users);
        out.degenerate = true;
        return out;
    }

    Eigen::MatrixXcd w(m, k_users);
    if (w_init) {
        if (w_init->rows() != m || w_init->cols() != k_users)
            throw std::invalid_argument("wmmse_precoder: w_init dimension mismatch");
        w = *w_init;
        const double p0 = w.squaredNorm();
        if (p0 > power) w *= std::sqrt(power / p0);
    } else {
        // scaled matched-filter start
        w.setZero();
        for (int k = 0; k < k_users; ++k) {
            const double n = h.col(k).norm();
            if (n > 0.0) w.col(k) = std::sqrt(power / k_users) * h.col(k) / n;
        }
    }

    Eigen::VectorXcd u(k_users);
    Eigen::VectorXd v(k_users);
    for (int it = 0; it < iters; ++it) {
        // MMSE receive scalars and inverse-MSE weights
        for (int k = 0; k < k_users; ++k) {
            double total = noise(k);
            for (int j = 0; j < k_users; ++j)
                total += std::norm(h.col(k).dot(w.col(j)));
            const std::complex<double> gain = h.col(k).dot(w.col(k));
            u(k) = gain / total;
            const double mse = 1.0 - std::norm(gain) / total;
            v(k) = 1.0 / mse;
        }

        // precoder update: w_j = c_j (A + lambda I)^{-1} h_j with
        // A = sum_k alpha_k v_k |u_k|^2 h_k h_k^H and c_j = alpha_j v_j u_j
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
        std::vector<std::complex<double>> c(k_users);
        std::vector<double> csq(k_users);
        for (int k = 0; k < k_users; ++k) {
            a += weights(k) * v(k) * std::norm(u(k)) * h.col(k) * h.col(k).adjoint();
            c[k] = weights(k) * v(k) * u(k);
            csq[k] = std::norm(c[k]);
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
        const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
        std::vector<Eigen::VectorXcd> proj(k_users);
        for (int k = 0; k < k_users; ++k)
            proj[k] = es.eigenvectors().adjoint() * h.col(k);

        const double lam_max = lam.maxCoeff();
        const double null_tol = lam_max * 1e-13;

        double lambda = 0.0;
        if (detail::precoder_power(lam, proj, csq, 0.0, null_tol) > power) {
            // power(lambda) decreases monotonically; bracket and bisect
            double hi_sum = 0.0;
            for (int k = 0; k < k_users; ++k)
                hi_sum += csq[k] * h.col(k).squaredNorm();
            double lo = 0.0;
            double hi = std::sqrt(hi_sum / power);
            for (int step = 0; step < 100; ++step) {
                lambda = 0.5 * (lo + hi);
                const double p = detail::precoder_power(lam, proj, csq, lambda, null_tol);
                // the duality gap of the update is ~ lambda * residual, so a
                // plain residual threshold is not enough for monotonicity
                if (std::abs(p - power) <= 1e-10 &&
                    lambda * std::abs(p - power) <= 1e-12)
                    break;
                if (p > power) lo = lambda;
                else hi = lambda;
            }
            // land on the feasible side
            if (detail::precoder_power(lam, proj, csq, lambda, null_tol) > power)
                lambda = hi;
        }

        for (int k = 0; k < k_users; ++k) {
            Eigen::VectorXcd scaled(m);
            for (int i = 0; i < m; ++i) {
                const double d = lam(i) + lambda;
                scaled(i) = d > null_tol ? proj[k](i) / d : std::complex<double>(0.0);
            }
            w.col(k) = c[k] * (es.eigenvectors() * scaled);
        }

        if (round_sumrates)
            round_sumrates->push_back(weighted_sumrate(w, h, weights, noise).total);
    }

    out.w = std::move(w);
    return out;
}

} // namespace zosga
