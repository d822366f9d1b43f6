#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace zosga {

// Exponentially decaying spatial correlation Phi(i,j) = r^|i-j| together
// with its symmetric PSD square root, Phi = sqrt * sqrt^H.
struct CorrelationFactor {
    Eigen::MatrixXd phi;
    Eigen::MatrixXd sqrt;
};

inline CorrelationFactor correlation_matrix(double r, int n) {
    if (r < 0.0 || r >= 1.0)
        throw std::invalid_argument("correlation_matrix: r must lie in [0,1)");
    if (n < 1)
        throw std::invalid_argument("correlation_matrix: n must be >= 1");
    CorrelationFactor out;
    out.phi.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.phi(i, j) = std::pow(r, std::abs(i - j));
    // symmetric square root via eigen-decomposition; stable also for r
    // close to 1 where the matrix is near-singular
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.phi);
    Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
    out.sqrt = es.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
               es.eigenvectors().transpose();
    return out;
}

// Kronecker structure for a planar panel: horizontal axis varies slowest.
// Element index n on an N_h x N_v panel maps to (h, v) = (n / N_v, n % N_v),
// giving corr(n, n') = r_h^|h-h'| * r_v^|v-v'|.
inline CorrelationFactor irs_correlation(double r_h, double r_v, int n_h, int n_v) {
    const CorrelationFactor ch = correlation_matrix(r_h, n_h);
    const CorrelationFactor cv = correlation_matrix(r_v, n_v);
    auto kron = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
        Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                    a(i, j) * b;
        return out;
    };
    // (A x B)^(1/2) = A^(1/2) x B^(1/2) for symmetric PSD factors
    return {kron(ch.phi, cv.phi), kron(ch.sqrt, cv.sqrt)};
}

} // namespace zosga
