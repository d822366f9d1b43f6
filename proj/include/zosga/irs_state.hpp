#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zosga/config.hpp"

namespace zosga {

// Tunable IRS parameters: per-panel phases in [-pi, pi] and amplitudes in
// [0, 1]. The flattened optimization variable theta concatenates, per panel,
// the phase block followed by the amplitude block; in unit mode amplitudes
// are pinned at 1 and only phase blocks appear, so S = sum N_i instead of
// sum 2 N_i.
struct IrsState {
    std::vector<Eigen::VectorXd> phases;
    std::vector<Eigen::VectorXd> amplitudes;
    AmplitudeMode mode = AmplitudeMode::adjustable;

    static IrsState neutral(const std::vector<int>& sizes, AmplitudeMode mode) {
        IrsState s;
        s.mode = mode;
        for (int n : sizes) {
            if (n < 1)
                throw std::invalid_argument("IrsState: panel size must be >= 1");
            s.phases.push_back(Eigen::VectorXd::Zero(n));
            s.amplitudes.push_back(Eigen::VectorXd::Ones(n));
        }
        return s;
    }

    static IrsState neutral(const Scenario& sc) {
        std::vector<int> sizes;
        for (const auto& p : sc.irs) sizes.push_back(p.size());
        return neutral(sizes, sc.amplitude_mode);
    }

    int num_panels() const { return static_cast<int>(phases.size()); }

    int dimension() const {
        int s = 0;
        for (const auto& p : phases)
            s += static_cast<int>(p.size()) * (mode == AmplitudeMode::adjustable ? 2 : 1);
        return s;
    }

    Eigen::VectorXd flatten() const {
        Eigen::VectorXd theta(dimension());
        int off = 0;
        for (int i = 0; i < num_panels(); ++i) {
            const int n = static_cast<int>(phases[i].size());
            theta.segment(off, n) = phases[i];
            off += n;
            if (mode == AmplitudeMode::adjustable) {
                theta.segment(off, n) = amplitudes[i];
                off += n;
            }
        }
        return theta;
    }

    void set_flat(const Eigen::VectorXd& theta) {
        if (theta.size() != dimension())
            throw std::invalid_argument("IrsState::set_flat: dimension mismatch");
        int off = 0;
        for (int i = 0; i < num_panels(); ++i) {
            const int n = static_cast<int>(phases[i].size());
            phases[i] = theta.segment(off, n);
            off += n;
            if (mode == AmplitudeMode::adjustable) {
                amplitudes[i] = theta.segment(off, n);
                off += n;
            }
        }
    }

    Eigen::VectorXd lower_bounds() const {
        return fill_blocks(-std::numbers::pi, 0.0);
    }

    Eigen::VectorXd upper_bounds() const {
        return fill_blocks(std::numbers::pi, 1.0);
    }

    // 1.0 on phase coordinates, 0.0 on amplitude coordinates
    Eigen::ArrayXd phase_mask() const { return fill_blocks(1.0, 0.0); }

    // 1.0 on coordinates belonging to panels marked for optimization
    Eigen::ArrayXd update_mask(const std::vector<bool>& optimize) const {
        if (optimize.size() != phases.size())
            throw std::invalid_argument("IrsState::update_mask: panel count mismatch");
        Eigen::ArrayXd m(dimension());
        int off = 0;
        for (int i = 0; i < num_panels(); ++i) {
            const int n = static_cast<int>(phases[i].size());
            const int width = mode == AmplitudeMode::adjustable ? 2 * n : n;
            m.segment(off, width).setConstant(optimize[i] ? 1.0 : 0.0);
            off += width;
        }
        return m;
    }

    // per-panel reflection coefficients A_i .* exp(-j phi_i)
    std::vector<Eigen::VectorXcd> coefficients() const {
        std::vector<Eigen::VectorXcd> out;
        out.reserve(phases.size());
        for (int i = 0; i < num_panels(); ++i) {
            const int n = static_cast<int>(phases[i].size());
            Eigen::VectorXcd c(n);
            for (int e = 0; e < n; ++e)
                c(e) = amplitudes[i](e) *
                       std::exp(std::complex<double>(0.0, -phases[i](e)));
            out.push_back(std::move(c));
        }
        return out;
    }

private:
    Eigen::VectorXd fill_blocks(double phase_value, double amp_value) const {
        Eigen::VectorXd v(dimension());
        int off = 0;
        for (int i = 0; i < num_panels(); ++i) {
            const int n = static_cast<int>(phases[i].size());
            v.segment(off, n).setConstant(phase_value);
            off += n;
            if (mode == AmplitudeMode::adjustable) {
                v.segment(off, n).setConstant(amp_value);
                off += n;
            }
        }
        return v;
    }
};

} // namespace zosga
