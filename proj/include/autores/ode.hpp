#pragma once

// Dormand-Prince 5(4) with PI step-size control and 4th-order dense output.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "autores/errors.hpp"

namespace autores::ode {

struct Options {
    double rtol = 1e-8;
    double atol = 1e-10;
    double h0 = 0.0;          ///< 0 selects an automatic initial step
    double h_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 20'000'000;
    double fixed_step = 0.0;  ///< > 0 disables error control
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
    double h_min = std::numeric_limits<double>::infinity();
    double h_max = 0.0;
    double max_error = 0.0;   ///< largest accepted scaled error estimate
};

/// Continuous extension over one accepted step.
template <int N>
struct DenseSegment {
    using State = Eigen::Matrix<double, N, 1>;
    double t0 = 0.0;
    double h = 0.0;
    State r1, r2, r3, r4, r5;

    [[nodiscard]] State operator()(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
};

template <int N>
struct Solution {
    using State = Eigen::Matrix<double, N, 1>;
    std::vector<double> t;
    std::vector<State> y;
    std::vector<DenseSegment<N>> segments;
    Stats stats;
    bool stopped = false;  ///< the stop predicate ended the run early

    [[nodiscard]] double t_begin() const { return t.front(); }
    [[nodiscard]] double t_end() const { return t.back(); }

    [[nodiscard]] std::size_t segment_index(double tq) const {
        if (segments.empty()) return 0;
        auto it = std::upper_bound(t.begin(), t.end(), tq);
        std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
        return std::min(i, segments.size() - 1);
    }

    [[nodiscard]] State at(double tq) const {
        if (tq < t.front() || tq > t.back())
            throw DomainError("dense output queried outside the integrated span");
        if (segments.empty()) return y.front();
        return segments[segment_index(tq)](tq);
    }
};

namespace detail {

// Butcher tableau and dense-output weights.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

template <int N>
double scaled_norm(const Eigen::Matrix<double, N, 1>& err, const Eigen::Matrix<double, N, 1>& y0,
                   const Eigen::Matrix<double, N, 1>& y1, const Options& o) {
    auto sc = (o.atol + o.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).matrix();
    return std::sqrt((err.array() / sc.array()).square().mean());
}

} // namespace detail

/// Integrates y' = f(t, y) from t0 to t1 (t1 > t0).
/// `stop(t, y)` is checked after every accepted step; returning true ends the run.
template <int N, class Rhs, class Stop>
Solution<N> integrate(Rhs&& f, double t0, double t1, const Eigen::Matrix<double, N, 1>& y0,
                      const Options& opt, Stop&& stop) {
    using namespace detail;
    using State = Eigen::Matrix<double, N, 1>;
    if (!(t1 > t0)) throw DomainError("integration span must be increasing");
    if (!(opt.rtol > 0.0) || !(opt.atol >= 0.0)) throw DomainError("tolerances must be positive");

    Solution<N> sol;
    sol.t.push_back(t0);
    sol.y.push_back(y0);

    double t = t0;
    State y = y0;
    State k1 = f(t, y);
    State k2, k3, k4, k5, k6, k7, ys, y1;
    sol.stats.rhs_evals = 1;
    const double span = t1 - t0;
    const bool fixed = opt.fixed_step > 0.0;

    double h;
    if (fixed) {
        h = opt.fixed_step;
    } else if (opt.h0 > 0.0) {
        h = opt.h0;
    } else {
        // Initial step guess from the local scale of y and y'.
        State sc = (opt.atol + opt.rtol * y.cwiseAbs().array()).matrix();
        double dnf = (k1.array() / sc.array()).square().mean();
        double dny = (y.array() / sc.array()).square().mean();
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min(h, span);
        State yt = y + h * k1;
        State k = f(t + h, yt);
        ++sol.stats.rhs_evals;
        double der2 = std::sqrt(((k - k1).array() / sc.array()).square().mean()) / h;
        double der12 = std::max(std::abs(der2), std::sqrt(dnf));
        double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3)
                                   : std::pow(0.01 / der12, 0.2);
        h = std::min({100 * h, h1, span});
    }
    h = std::min(h, opt.h_max);

    constexpr double beta = 0.04;
    constexpr double expo1 = 0.2 - beta * 0.75;
    constexpr double safe = 0.9, facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
    double facold = 1e-4;
    bool last_rejected = false;

    while (t < t1) {
        if (sol.stats.accepted + sol.stats.rejected >= opt.max_steps)
            throw NumericalError("step budget exhausted at t=" + std::to_string(t), t, t1);
        bool final_step = false;
        if (t + h >= t1 || t + 1.01 * h >= t1) {
            h = t1 - t;
            final_step = true;
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw NumericalError("step size underflow at t=" + std::to_string(t) +
                                     " (h=" + std::to_string(h) + ")",
                                 t, t + h);

        ys = y + h * a21 * k1;
        k2 = f(t + c2 * h, ys);
        ys = y + h * (a31 * k1 + a32 * k2);
        k3 = f(t + c3 * h, ys);
        ys = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        k4 = f(t + c4 * h, ys);
        ys = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        k5 = f(t + c5 * h, ys);
        ys = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        k6 = f(t + h, ys);
        y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        k7 = f(t + h, y1);
        sol.stats.rhs_evals += 6;

        State errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = fixed ? 0.0 : scaled_norm<N>(errv, y, y1, opt);
        if (!std::isfinite(err) || !y1.allFinite())
            throw NumericalError("non-finite state at t=" + std::to_string(t), t, t + h);

        double hnew = h;
        if (!fixed) {
            double fac11 = std::pow(err, expo1);
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(facc2, std::min(facc1, fac / safe));
            hnew = h / fac;
        }

        if (err <= 1.0) {
            facold = std::max(err, 1e-4);
            DenseSegment<N> seg;
            seg.t0 = t;
            seg.h = h;
            State ydiff = y1 - y;
            State bspl = h * k1 - ydiff;
            seg.r1 = y;
            seg.r2 = ydiff;
            seg.r3 = bspl;
            seg.r4 = ydiff - h * k7 - bspl;
            seg.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

            ++sol.stats.accepted;
            sol.stats.h_min = std::min(sol.stats.h_min, h);
            sol.stats.h_max = std::max(sol.stats.h_max, h);
            sol.stats.max_error = std::max(sol.stats.max_error, err);

            t = final_step ? t1 : t + h;
            y = y1;
            k1 = k7;
            sol.t.push_back(t);
            sol.y.push_back(y);
            sol.segments.push_back(seg);

            if (stop(t, y)) {
                sol.stopped = true;
                break;
            }
            if (!fixed) {
                if (last_rejected) hnew = std::min(hnew, h);
                last_rejected = false;
                h = std::min(hnew, opt.h_max);
            }
        } else {
            hnew = h / std::min(facc1, std::pow(err, expo1) / safe);
            last_rejected = true;
            ++sol.stats.rejected;
            h = hnew;
        }
    }
    return sol;
}

template <int N, class Rhs>
Solution<N> integrate(Rhs&& f, double t0, double t1, const Eigen::Matrix<double, N, 1>& y0,
                      const Options& opt) {
    return integrate<N>(std::forward<Rhs>(f), t0, t1, y0, opt,
                        [](double, const Eigen::Matrix<double, N, 1>&) { return false; });
}

} // namespace autores::ode
