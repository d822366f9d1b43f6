#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "support/helpers.hpp"
#include "zosga/irs_state.hpp"
#include "zosga/optimizer.hpp"
#include "zosga/schedule.hpp"

using namespace zosga;
using testsupport::AffineChannel;
using testsupport::random_cmatrix;
using testsupport::random_vector;

TEST_CASE("constant schedule reproduces the closed form", "[optimizer]") {
    ScheduleParams p;
    p.mode = ScheduleMode::constant_theorem1;
    p.delta_phi = p.rho = p.b_f = p.l_h0 = 1.0;
    p.horizon = 0;
    const StepSizes eta = step_size(0, p, 1);
    REQUIRE(eta.phase == Catch::Approx(0.2886751345948129).margin(1e-12));
    REQUIRE(eta.amplitude == eta.phase);
    REQUIRE(step_size(17, p, 1).phase == eta.phase); // constant in t

    ScheduleParams missing = p;
    missing.horizon = -1;
    REQUIRE_THROWS_AS(step_size(0, missing, 1), std::invalid_argument);
}

TEST_CASE("decay schedule starts at the configured pair and freezes at the cutoff",
          "[optimizer]") {
    const ScheduleParams p; // defaults: 0.4 / 0.01, gamma 0.9972, cutoff 1000
    const StepSizes t0 = step_size(0, p, 8);
    REQUIRE(t0.phase == 0.4);
    REQUIRE(t0.amplitude == 0.01);
    const StepSizes tc = step_size(1000, p, 8);
    const StepSizes later = step_size(5000, p, 8);
    REQUIRE(tc.phase == later.phase);
    REQUIRE(tc.amplitude == later.amplitude);
    REQUIRE(tc.phase == Catch::Approx(0.4 * 0.060571709627823905).epsilon(1e-12));
    REQUIRE(step_size(999, p, 8).phase > tc.phase);
}

TEST_CASE("box projection clamps, is idempotent and nonexpansive", "[optimizer]") {
    Eigen::VectorXd lo(3), hi(3);
    lo << -std::numbers::pi, 0.0, -1.0;
    hi << std::numbers::pi, 1.0, 1.0;

    Eigen::VectorXd inside(3);
    inside << 0.5, 0.25, -0.75;
    REQUIRE(project_box(inside, lo, hi) == inside);

    Eigen::VectorXd outside(3);
    outside << 4.0, -0.2, 2.0;
    const Eigen::VectorXd proj = project_box(outside, lo, hi);
    REQUIRE(proj(0) == std::numbers::pi);
    REQUIRE(proj(1) == 0.0);
    REQUIRE(proj(2) == 1.0);
    REQUIRE(project_box(proj, lo, hi) == proj);

    Rng rng(301);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::VectorXd x = 4.0 * random_vector(3, rng);
        const Eigen::VectorXd y = 4.0 * random_vector(3, rng);
        REQUIRE((project_box(x, lo, hi) - project_box(y, lo, hi)).norm() <=
                (x - y).norm() + 1e-15);
    }

    Eigen::VectorXd bad_lo(3);
    bad_lo << 1.0, 0.0, 0.0;
    Eigen::VectorXd bad_hi(3);
    bad_hi << 0.0, 1.0, 1.0;
    REQUIRE_THROWS_AS(project_box(inside, bad_lo, bad_hi), std::invalid_argument);
}

TEST_CASE("iterate selection follows the step-size weights", "[optimizer]") {
    Rng rng(307);
    SECTION("a single positive weight is always chosen") {
        for (int i = 0; i < 50; ++i)
            REQUIRE(select_iterate({1.0, 0.0, 0.0}, rng) == 0);
    }
    SECTION("frequencies are proportional to weights") {
        int ones = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            if (select_iterate({1.0, 3.0}, rng) == 1) ++ones;
        REQUIRE(std::abs(static_cast<double>(ones) / n - 0.75) < 0.01);
    }
    SECTION("equal weights are uniform (chi-squared, 1% level)") {
        std::vector<double> steps(10, 0.3);
        std::vector<int> counts(10, 0);
        const int n = 100000;
        for (int i = 0; i < n; ++i) ++counts[select_iterate(steps, rng)];
        double chi2 = 0.0;
        for (int c : counts) {
            const double expected = n / 10.0;
            chi2 += (c - expected) * (c - expected) / expected;
        }
        REQUIRE(chi2 < testsupport::kChi2_99Dof9);
    }
    SECTION("degenerate weight lists are rejected") {
        REQUIRE_THROWS_AS(select_iterate({}, rng), std::invalid_argument);
        REQUIRE_THROWS_AS(select_iterate({0.0, 0.0}, rng), std::invalid_argument);
        REQUIRE_THROWS_AS(select_iterate({1.0, -1.0}, rng), std::invalid_argument);
    }
}

TEST_CASE("stationarity bound arithmetic", "[optimizer]") {
    ScheduleParams p;
    p.delta_phi = p.rho = p.b_f = p.l_h0 = p.l_h1 = p.delta_k = 1.0;
    REQUIRE(theorem1_bound(p, 1, 1, 1, 0.0, 0) ==
            Catch::Approx(13.856406460551018).margin(1e-12));
    // decays as 1/sqrt(T+1) when mu = 0
    const double b0 = theorem1_bound(p, 1, 1, 1, 0.0, 0);
    const double b1 = theorem1_bound(p, 1, 1, 1, 0.0, 999999);
    REQUIRE(b0 / b1 == Catch::Approx(std::sqrt(1e6)).epsilon(1e-9));
    // S doubling: (S^2 + 2S) goes 3 -> 8
    const double s1 = theorem1_bound(p, 1, 1, 1, 0.0, 0);
    const double s2 = theorem1_bound(p, 2, 1, 1, 0.0, 0);
    REQUIRE(s2 / s1 == Catch::Approx(std::sqrt(8.0 / 3.0)).margin(1e-12));
    // smoothing term enters linearly in mu
    const double with_mu = theorem1_bound(p, 1, 2, 3, 0.5, 0);
    REQUIRE(with_mu == Catch::Approx(8.0 * (std::sqrt(3.0) + 0.5 * std::sqrt(6.0)))
                           .margin(1e-12));
}

namespace {

ZosgaOptions wide_options(int s) {
    ZosgaOptions opt;
    opt.mu = 1e-6;
    opt.lower = Eigen::VectorXd::Constant(s, -100.0);
    opt.upper = Eigen::VectorXd::Constant(s, 100.0);
    opt.phase_mask = Eigen::ArrayXd::Ones(s);
    opt.update_mask = Eigen::ArrayXd::Ones(s);
    return opt;
}

} // namespace

TEST_CASE("zosga step fixed points", "[optimizer]") {
    Rng rng(311);
    const AffineChannel chan = AffineChannel::random(2, 1, 3, rng);
    const ChannelFn fn = [&](const Eigen::VectorXd& th) { return chan(th); };
    const Eigen::VectorXd theta = random_vector(3, rng);
    const Eigen::VectorXd u = random_vector(3, rng);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(1);
    const Eigen::VectorXd noise = Eigen::VectorXd::Constant(1, 0.5);
    const ZosgaOptions opt = wide_options(3);

    SECTION("zero inner solution freezes the iterate") {
        const InnerOracle zero = [](const Eigen::MatrixXcd& h) {
            PrecoderMatrix w;
            w.w = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
            return w;
        };
        const StepResult r = zosga_step(theta, fn, zero, ones, noise, u, {0.4, 0.01}, opt);
        REQUIRE(r.quasi_grad.norm() == 0.0);
        REQUIRE(r.theta_next == theta);
    }
    SECTION("zero step size freezes the iterate") {
        const InnerOracle mrt = [&](const Eigen::MatrixXcd& h) {
            PrecoderMatrix w;
            w.w = h / h.norm();
            return w;
        };
        const StepResult r = zosga_step(theta, fn, mrt, ones, noise, u, {0.0, 0.0}, opt);
        REQUIRE(r.theta_next == theta);
        REQUIRE(r.sumrate > 0.0);
    }
}

TEST_CASE("mean zosga update aligns with the analytic ascent direction", "[optimizer]") {
    Rng rng(313);
    const AffineChannel chan = AffineChannel::random(2, 1, 2, rng);
    const ChannelFn fn = [&](const Eigen::VectorXd& th) { return chan(th); };
    const Eigen::VectorXd theta = random_vector(2, rng);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(1);
    const Eigen::VectorXd noise = Eigen::VectorXd::Constant(1, 0.5);
    const ZosgaOptions opt = wide_options(2);

    Eigen::MatrixXcd w_fixed = random_cmatrix(2, 1, rng);
    w_fixed /= w_fixed.norm();
    const InnerOracle fixed = [&](const Eigen::MatrixXcd&) {
        PrecoderMatrix w;
        w.w = w_fixed;
        return w;
    };

    const Eigen::MatrixXcd h = chan(theta);
    const WirtingerFactor d = wirtinger_factor(w_fixed, h, ones, noise);
    const Eigen::VectorXd exact = chan.exact_gradient(d.d);

    Eigen::VectorXd mean_update = Eigen::VectorXd::Zero(2);
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd u = random_vector(2, rng);
        const StepResult r = zosga_step(theta, fn, fixed, ones, noise, u, {1.0, 1.0}, opt);
        mean_update += r.theta_next - theta;
    }
    mean_update /= n;
    const double cosine =
        mean_update.dot(exact) / (mean_update.norm() * exact.norm());
    REQUIRE(cosine > 0.95);
}

TEST_CASE("per-block steps and frozen coordinates", "[optimizer]") {
    Rng rng(317);
    const AffineChannel chan = AffineChannel::random(2, 1, 4, rng);
    const ChannelFn fn = [&](const Eigen::VectorXd& th) { return chan(th); };
    const Eigen::VectorXd theta = random_vector(4, rng);
    const Eigen::VectorXd u = random_vector(4, rng);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(1);
    const Eigen::VectorXd noise = Eigen::VectorXd::Constant(1, 0.5);

    Eigen::MatrixXcd w_fixed = random_cmatrix(2, 1, rng);
    const InnerOracle fixed = [&](const Eigen::MatrixXcd&) {
        PrecoderMatrix w;
        w.w = w_fixed;
        return w;
    };

    ZosgaOptions opt = wide_options(4);
    opt.phase_mask << 1.0, 1.0, 0.0, 0.0;   // coords 2,3 are amplitudes
    opt.update_mask << 1.0, 0.0, 1.0, 1.0;  // coord 1 frozen

    const StepResult r =
        zosga_step(theta, fn, fixed, ones, noise, u, {0.4, 0.01}, opt);
    const Eigen::VectorXd g = r.quasi_grad;
    REQUIRE(r.theta_next(0) == Catch::Approx(theta(0) + 0.4 * g(0)).epsilon(1e-12));
    REQUIRE(r.theta_next(1) == theta(1)); // frozen
    REQUIRE(r.theta_next(2) == Catch::Approx(theta(2) + 0.01 * g(2)).epsilon(1e-12));
    REQUIRE(r.theta_next(3) == Catch::Approx(theta(3) + 0.01 * g(3)).epsilon(1e-12));
}

TEST_CASE("IrsState flatten round-trips and modes size correctly", "[optimizer]") {
    Rng rng(331);
    IrsState aa = IrsState::neutral({4, 6}, AmplitudeMode::adjustable);
    REQUIRE(aa.dimension() == 20);
    for (auto& p : aa.phases)
        for (int e = 0; e < p.size(); ++e) p(e) = rng.uniform(-3.0, 3.0);
    for (auto& a : aa.amplitudes)
        for (int e = 0; e < a.size(); ++e) a(e) = rng.uniform01();
    const Eigen::VectorXd theta = aa.flatten();
    IrsState back = IrsState::neutral({4, 6}, AmplitudeMode::adjustable);
    back.set_flat(theta);
    REQUIRE(back.phases[1] == aa.phases[1]);
    REQUIRE(back.amplitudes[0] == aa.amplitudes[0]);
    REQUIRE(back.flatten() == theta);

    IrsState ua = IrsState::neutral({4, 6}, AmplitudeMode::unit);
    REQUIRE(ua.dimension() == 10); // phases only
    REQUIRE(ua.phase_mask().minCoeff() == 1.0);
    const Eigen::VectorXd lo = ua.lower_bounds();
    REQUIRE(lo.minCoeff() == -std::numbers::pi);
    REQUIRE(ua.upper_bounds().maxCoeff() == std::numbers::pi);

    // unit mode never moves amplitudes: they are not part of theta at all
    ua.set_flat(Eigen::VectorXd::Constant(10, 0.5));
    REQUIRE(ua.amplitudes[0] == Eigen::VectorXd::Ones(4));
    REQUIRE(ua.amplitudes[1] == Eigen::VectorXd::Ones(6));
}

TEST_CASE("phase wrap folds instead of clamping when enabled", "[optimizer]") {
    Rng rng(337);
    const AffineChannel chan = AffineChannel::random(1, 1, 1, rng);
    const ChannelFn fn = [&](const Eigen::VectorXd& th) { return chan(th); };
    const InnerOracle fixed = [&](const Eigen::MatrixXcd&) {
        PrecoderMatrix w;
        w.w = Eigen::MatrixXcd::Ones(1, 1);
        return w;
    };
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(1);
    const Eigen::VectorXd noise = Eigen::VectorXd::Constant(1, 0.5);

    ZosgaOptions opt;
    opt.mu = 1e-6;
    opt.lower = Eigen::VectorXd::Constant(1, -std::numbers::pi);
    opt.upper = Eigen::VectorXd::Constant(1, std::numbers::pi);
    opt.phase_mask = Eigen::ArrayXd::Ones(1);
    opt.update_mask = Eigen::ArrayXd::Zero(1); // isolate the projection path
    opt.wrap_phases = false;

    Eigen::VectorXd far(1);
    far << 4.0; // outside the box on purpose
    const StepResult clamped = zosga_step(far, fn, fixed, ones, noise,
                                          Eigen::VectorXd::Zero(1), {1.0, 1.0}, opt);
    REQUIRE(clamped.theta_next(0) == std::numbers::pi);

    opt.wrap_phases = true;
    const StepResult wrapped = zosga_step(far, fn, fixed, ones, noise,
                                          Eigen::VectorXd::Zero(1), {1.0, 1.0}, opt);
    REQUIRE(wrapped.theta_next(0) ==
            Catch::Approx(4.0 - 2.0 * std::numbers::pi).epsilon(1e-12));
}
