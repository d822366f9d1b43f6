#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "zosga/config.hpp"
#include "zosga/correlation.hpp"
#include "zosga/irs_state.hpp"
#include "zosga/rng.hpp"

namespace zosga {

// amplitude-domain path loss factor L = sqrt(C0 d^-alpha)
inline double path_loss(double d, double alpha, double c0) {
    if (d <= 0.0)
        throw std::invalid_argument("path_loss: distance must be > 0");
    if (c0 <= 0.0)
        throw std::invalid_argument("path_loss: c0 must be > 0");
    return std::sqrt(c0 * std::pow(d, -alpha));
}

// Line-of-sight components, drawn once per simulation.
struct StatisticalCsi {
    std::vector<Eigen::MatrixXcd> ap_irs_los;                 // F_i: N x M
    std::vector<std::vector<Eigen::VectorXcd>> irs_user_los;  // [irs][user]: N
    std::vector<Eigen::VectorXcd> direct_los;                 // [user]: M
};

// One draw of all random links, mixed, correlated, and path-loss scaled.
struct ChannelRealization {
    std::vector<Eigen::MatrixXcd> ap_irs;                 // G_i: N x M
    std::vector<std::vector<Eigen::VectorXcd>> irs_user;  // h_r,k^i
    std::vector<Eigen::VectorXcd> direct;                 // h_d,k
};

// Rician ensemble for one scenario. Correlation square roots and path-loss
// factors are precomputed at construction; all sampling afterwards is a pure
// function of the generator passed in, so independent workers only need
// independent generators.
class ChannelModel {
public:
    explicit ChannelModel(const Scenario& sc)
        : m_(sc.num_antennas),
          k_(sc.num_users),
          mode_(sc.amplitude_mode),
          beta_iu_(sc.beta_iu),
          beta_ai_(sc.beta_ai),
          beta_au_(sc.beta_au) {
        for (const auto& p : sc.irs) sizes_.push_back(p.size());
        corr_d_ = correlation_matrix(sc.r_d, m_);
        for (const auto& p : sc.irs) {
            corr_r_.push_back(irs_correlation(sc.r_r, sc.r_r, p.nh, p.nv));
            corr_rk_.push_back(irs_correlation(sc.r_rk, sc.r_rk, p.nh, p.nv));
        }
        for (size_t i = 0; i < sizes_.size(); ++i) {
            loss_ap_irs_.push_back(path_loss(sc.dist_ap_irs[i], sc.alpha_ap_irs, sc.c0));
            std::vector<double> row;
            for (int k = 0; k < k_; ++k)
                row.push_back(path_loss(sc.dist_irs_user[i][k], sc.alpha_irs_user, sc.c0));
            loss_irs_user_.push_back(row);
        }
        for (int k = 0; k < k_; ++k)
            loss_ap_user_.push_back(path_loss(sc.dist_ap_user[k], sc.alpha_ap_user, sc.c0));
    }

    int num_antennas() const { return m_; }
    int num_users() const { return k_; }
    int num_irs() const { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& irs_sizes() const { return sizes_; }
    AmplitudeMode amplitude_mode() const { return mode_; }

    StatisticalCsi draw_statistical_csi(Rng& rng) const {
        StatisticalCsi s;
        draw_components(rng, s.ap_irs_los, s.irs_user_los, s.direct_los);
        return s;
    }

    // Eq-style Rician mixing: link = L * (sqrt(b/(1+b)) los
    //                                     + sqrt(1/(1+b)) correlated scattered)
    ChannelRealization sample_realization(const StatisticalCsi& scsi, Rng& rng) const {
        check_dims(scsi);
        std::vector<Eigen::MatrixXcd> f;
        std::vector<std::vector<Eigen::VectorXcd>> v_r;
        std::vector<Eigen::VectorXcd> v_d;
        draw_components(rng, f, v_r, v_d);

        const double a_ai = std::sqrt(beta_ai_ / (1.0 + beta_ai_));
        const double b_ai = std::sqrt(1.0 / (1.0 + beta_ai_));
        const double a_iu = std::sqrt(beta_iu_ / (1.0 + beta_iu_));
        const double b_iu = std::sqrt(1.0 / (1.0 + beta_iu_));
        const double a_au = std::sqrt(beta_au_ / (1.0 + beta_au_));
        const double b_au = std::sqrt(1.0 / (1.0 + beta_au_));

        ChannelRealization w;
        for (int i = 0; i < num_irs(); ++i) {
            w.ap_irs.push_back(loss_ap_irs_[i] *
                               (a_ai * scsi.ap_irs_los[i] +
                                b_ai * corr_r_[i].sqrt * f[i] * corr_d_.sqrt));
            std::vector<Eigen::VectorXcd> row;
            for (int k = 0; k < k_; ++k)
                row.push_back(loss_irs_user_[i][k] *
                              (a_iu * scsi.irs_user_los[i][k] +
                               b_iu * corr_rk_[i].sqrt * v_r[i][k]));
            w.irs_user.push_back(std::move(row));
        }
        for (int k = 0; k < k_; ++k)
            w.direct.push_back(loss_ap_user_[k] *
                               (a_au * scsi.direct_los[k] + b_au * corr_d_.sqrt * v_d[k]));
        return w;
    }

    // H(theta, omega); column k = sum_i G_i^H diag(A_i .* e^{-j phi_i}) h_r,k^i + h_d,k.
    // The two overloads funnel into the same kernel; this is the only place
    // the effective channel is evaluated.
    Eigen::MatrixXcd effective_channel(const IrsState& state,
                                       const ChannelRealization& w) const {
        return compose(state.coefficients(), w);
    }

    // raw flat-theta evaluation used by zeroth-order probing; coordinates are
    // taken as given, without box validation
    Eigen::MatrixXcd effective_channel_flat(const Eigen::VectorXd& theta,
                                            const ChannelRealization& w) const {
        std::vector<Eigen::VectorXcd> coeff;
        int off = 0;
        for (int n : sizes_) {
            if (mode_ == AmplitudeMode::adjustable) {
                if (off + 2 * n > theta.size())
                    throw std::runtime_error("effective_channel_flat: theta too short");
                Eigen::VectorXcd c(n);
                for (int e = 0; e < n; ++e)
                    c(e) = theta(off + n + e) *
                           std::exp(std::complex<double>(0.0, -theta(off + e)));
                coeff.push_back(std::move(c));
                off += 2 * n;
            } else {
                if (off + n > theta.size())
                    throw std::runtime_error("effective_channel_flat: theta too short");
                Eigen::VectorXcd c(n);
                for (int e = 0; e < n; ++e)
                    c(e) = std::exp(std::complex<double>(0.0, -theta(off + e)));
                coeff.push_back(std::move(c));
                off += n;
            }
        }
        if (off != theta.size())
            throw std::runtime_error("effective_channel_flat: theta dimension mismatch");
        return compose(coeff, w);
    }

    Eigen::MatrixXcd compose(const std::vector<Eigen::VectorXcd>& coeff,
                             const ChannelRealization& w) const {
        if (static_cast<int>(coeff.size()) != num_irs() ||
            static_cast<int>(w.direct.size()) != k_)
            throw std::runtime_error("effective_channel: dimension mismatch");
        Eigen::MatrixXcd h(m_, k_);
        for (int k = 0; k < k_; ++k) {
            Eigen::VectorXcd col = w.direct[k];
            for (int i = 0; i < num_irs(); ++i) {
                if (coeff[i].size() != sizes_[i] || w.irs_user[i][k].size() != sizes_[i] ||
                    w.ap_irs[i].rows() != sizes_[i] || w.ap_irs[i].cols() != m_)
                    throw std::runtime_error("effective_channel: dimension mismatch");
                col += w.ap_irs[i].adjoint() *
                       coeff[i].cwiseProduct(w.irs_user[i][k]);
            }
            h.col(k) = col;
        }
        return h;
    }

    // order-stable 64-bit digest of a realization, for paired-seed checks
    static std::uint64_t checksum(const ChannelRealization& w) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](double v) {
            std::uint64_t bits;
            static_assert(sizeof(bits) == sizeof(v));
            std::memcpy(&bits, &v, sizeof(bits));
            for (int b = 0; b < 64; b += 8) {
                h ^= (bits >> b) & 0xffULL;
                h *= 0x100000001b3ULL;
            }
        };
        for (const auto& g : w.ap_irs)
            for (int j = 0; j < g.cols(); ++j)
                for (int i = 0; i < g.rows(); ++i) {
                    mix(g(i, j).real());
                    mix(g(i, j).imag());
                }
        for (const auto& row : w.irs_user)
            for (const auto& v : row)
                for (int i = 0; i < v.size(); ++i) {
                    mix(v(i).real());
                    mix(v(i).imag());
                }
        for (const auto& v : w.direct)
            for (int i = 0; i < v.size(); ++i) {
                mix(v(i).real());
                mix(v(i).imag());
            }
        return h;
    }

private:
    // canonical draw order: per IRS the AP-IRS matrix (column-major), then
    // per IRS per user the IRS-user vectors, then per user the direct vectors
    void draw_components(Rng& rng, std::vector<Eigen::MatrixXcd>& f,
                         std::vector<std::vector<Eigen::VectorXcd>>& v_r,
                         std::vector<Eigen::VectorXcd>& v_d) const {
        f.clear();
        v_r.clear();
        v_d.clear();
        for (int n : sizes_) {
            Eigen::MatrixXcd g(n, m_);
            for (int j = 0; j < m_; ++j)
                for (int i = 0; i < n; ++i) g(i, j) = rng.cgaussian();
            f.push_back(std::move(g));
        }
        for (int n : sizes_) {
            std::vector<Eigen::VectorXcd> row;
            for (int k = 0; k < k_; ++k) {
                Eigen::VectorXcd v(n);
                for (int i = 0; i < n; ++i) v(i) = rng.cgaussian();
                row.push_back(std::move(v));
            }
            v_r.push_back(std::move(row));
        }
        for (int k = 0; k < k_; ++k) {
            Eigen::VectorXcd v(m_);
            for (int i = 0; i < m_; ++i) v(i) = rng.cgaussian();
            v_d.push_back(std::move(v));
        }
    }

    void check_dims(const StatisticalCsi& s) const {
        if (static_cast<int>(s.ap_irs_los.size()) != num_irs() ||
            static_cast<int>(s.direct_los.size()) != k_)
            throw std::runtime_error("statistical CSI does not match scenario");
        for (int i = 0; i < num_irs(); ++i)
            if (s.ap_irs_los[i].rows() != sizes_[i] || s.ap_irs_los[i].cols() != m_)
                throw std::runtime_error("statistical CSI does not match scenario");
    }

    int m_;
    int k_;
    AmplitudeMode mode_;
    std::vector<int> sizes_;
    double beta_iu_, beta_ai_, beta_au_;
    CorrelationFactor corr_d_;
    std::vector<CorrelationFactor> corr_r_;
    std::vector<CorrelationFactor> corr_rk_;
    std::vector<double> loss_ap_irs_;
    std::vector<std::vector<double>> loss_irs_user_;
    std::vector<double> loss_ap_user_;
};

} // namespace zosga
