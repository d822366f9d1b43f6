#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "zosga/beamforming.hpp"
#include "zosga/config.hpp"
#include "zosga/rng.hpp"

namespace testsupport {

// one-sided critical values used by the statistical assertions
constexpr double kT95Dof49 = 1.6765508926168537;
constexpr double kT95Dof99 = 1.6603911559963895;
constexpr double kT99Dof99 = 2.364605861786943;
constexpr double kChi2_99Dof9 = 21.665994333461924;
constexpr double kZ995 = 2.5758293035489004;

inline Eigen::MatrixXcd random_cmatrix(int rows, int cols, zosga::Rng& rng) {
    Eigen::MatrixXcd m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = rng.cgaussian();
    return m;
}

inline Eigen::VectorXd random_vector(int n, zosga::Rng& rng) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
    return v;
}

// t statistic for mean(a - b) > 0, paired by index
struct PairedStats {
    double mean_diff = 0.0;
    double stderr_diff = 0.0;
    double t_stat = 0.0;
};

inline PairedStats paired_t(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("paired_t: need equal-length samples, n >= 2");
    const int n = static_cast<int>(a.size());
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += a[i] - b[i];
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i] - mean;
        var += d * d;
    }
    var /= (n - 1);
    PairedStats s;
    s.mean_diff = mean;
    s.stderr_diff = std::sqrt(var / n);
    s.t_stat = s.stderr_diff > 0.0 ? mean / s.stderr_diff : 0.0;
    return s;
}

// least-squares slope of y against 0..n-1 and its t statistic
struct SlopeFit {
    double slope = 0.0;
    double t_stat = 0.0;
};

inline SlopeFit ols_slope(const std::vector<double>& y) {
    const int n = static_cast<int>(y.size());
    if (n < 3) throw std::invalid_argument("ols_slope: need n >= 3");
    double xm = (n - 1) / 2.0, ym = 0.0;
    for (double v : y) ym += v;
    ym /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (i - xm) * (i - xm);
        sxy += (i - xm) * (y[i] - ym);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    double rss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - ym - f.slope * (i - xm);
        rss += r * r;
    }
    const double se = std::sqrt(rss / (n - 2) / sxx);
    f.t_stat = se > 0.0 ? f.slope / se : 0.0;
    return f;
}

// H(theta) = H0 + sum_s theta_s * J_s; the exact chain-rule gradient of the
// sumrate through a fixed Wirtinger factor is available in closed form
struct AffineChannel {
    Eigen::MatrixXcd h0;
    std::vector<Eigen::MatrixXcd> jac;

    static AffineChannel random(int m, int k, int s, zosga::Rng& rng) {
        AffineChannel c;
        c.h0 = random_cmatrix(m, k, rng);
        for (int i = 0; i < s; ++i) c.jac.push_back(random_cmatrix(m, k, rng));
        return c;
    }

    Eigen::MatrixXcd operator()(const Eigen::VectorXd& theta) const {
        Eigen::MatrixXcd h = h0;
        for (size_t s = 0; s < jac.size(); ++s) h += theta(static_cast<int>(s)) * jac[s];
        return h;
    }

    Eigen::MatrixXcd apply_jacobian(const Eigen::VectorXd& u) const {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(h0.rows(), h0.cols());
        for (size_t s = 0; s < jac.size(); ++s) out += u(static_cast<int>(s)) * jac[s];
        return out;
    }

    Eigen::VectorXd exact_gradient(const Eigen::MatrixXcd& d) const {
        Eigen::VectorXd g(static_cast<int>(jac.size()));
        for (size_t s = 0; s < jac.size(); ++s)
            g(static_cast<int>(s)) = 2.0 * (jac[s].array() * d.array()).sum().real();
        return g;
    }
};

// central finite differences of the weighted sumrate with respect to the
// real and imaginary parts of every channel entry
inline void sumrate_fd_gradient(const Eigen::MatrixXcd& w, const Eigen::MatrixXcd& h,
                                const Eigen::VectorXd& weights,
                                const Eigen::VectorXd& noise, double step,
                                Eigen::MatrixXd& d_re, Eigen::MatrixXd& d_im) {
    const int m = static_cast<int>(h.rows());
    const int k = static_cast<int>(h.cols());
    d_re.resize(m, k);
    d_im.resize(m, k);
    auto value = [&](const Eigen::MatrixXcd& hh) {
        return zosga::weighted_sumrate(w, hh, weights, noise).total;
    };
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) {
            Eigen::MatrixXcd hp = h, hm = h;
            hp(i, j) += step;
            hm(i, j) -= step;
            d_re(i, j) = (value(hp) - value(hm)) / (2.0 * step);
            hp = h;
            hm = h;
            hp(i, j) += std::complex<double>(0.0, step);
            hm(i, j) -= std::complex<double>(0.0, step);
            d_im(i, j) = (value(hp) - value(hm)) / (2.0 * step);
        }
}

// small two-user scenario used across the unit tests; one 2x2 panel close to
// the users so the reflected path carries weight
inline std::string unit_toy_text() {
    return R"(antennas = 2
users = 2
power_dbm = 5
noise_dbm = -80
pathloss.c0_db = -30
pathloss.ap_irs.alpha = 2.2
pathloss.irs_user.alpha = 2.2
pathloss.ap_user.alpha = 3.4
rician.beta_ai_db = 10
rician.beta_iu_db = 10
rician.beta_au = 0
corr.r_r = 0.3
corr.r_rk = 0.3
corr.r_d = 0.3
ap.position = 0,0
irs.0.nh = 2
irs.0.nv = 2
user.0.position = 48,0
user.1.position = 52,1
irs.0.position = 50,2
iters = 50
wmmse.iters = 20
mu = 1e-6
)";
}

inline zosga::Scenario unit_toy() { return zosga::Scenario::parse(unit_toy_text()); }

} // namespace testsupport
