#include "autores/stability.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "autores/errors.hpp"

namespace autores {

namespace {

// sin b − b, accurate for small b.
double sin_minus_id(double b) {
    if (std::abs(b) < 0.1) {
        const double b2 = b * b;
        return b * b2 * (-1.0 / 6 + b2 * (1.0 / 120 + b2 * (-1.0 / 5040 + b2 / 362880)));
    }
    return std::sin(b) - b;
}

// cos(a + b) − cos a + b sin a without cancellation.
double cos_second_diff(double a, double b) {
    const double s = std::sin(b / 2);
    return -2 * std::cos(a) * s * s - std::sin(a) * sin_minus_id(b);
}

void check_pairing(const PhaseRoot& root, const SeriesSolution& series, const ModelParams& params) {
    if (series.kind != series_case(root.multiplicity))
        throw ContractError("series case does not match the root multiplicity");
    if (std::abs(angle_diff(series.sigma, root.sigma)) > 1e-8)
        throw ContractError("series was built at a different root");
    if (std::abs(series.lambda - params.lambda) > 1e-12 * std::max(1.0, params.lambda))
        throw ContractError("series was built for a different lambda");
    if (std::abs(eval_phase(root.sigma, params.phase(), 0)) > 1e-6)
        throw ContractError("root does not solve the phase equation for these parameters");
}

Rational weight1(SeriesCase c) {
    switch (c) {
        case SeriesCase::Simple: return {0, 1};
        case SeriesCase::Double: return {3, 4};
        case SeriesCase::Triple: return {2, 3};
        default: return {5, 8};
    }
}

Rational weight2(SeriesCase c) {
    switch (c) {
        case SeriesCase::Simple: return {0, 1};
        case SeriesCase::Double: return {1, 2};
        case SeriesCase::Triple: return {1, 3};
        default: return {1, 4};
    }
}

Rational exponent_power(SeriesCase c) {
    switch (c) {
        case SeriesCase::Simple: return {1, 2};
        case SeriesCase::Double: return {1, 4};
        case SeriesCase::Triple: return {1, 6};
        default: return {1, 8};
    }
}

double frame_omega_sq(const SeriesSolution& s, const std::array<double, 5>& d) {
    switch (s.kind) {
        case SeriesCase::Simple: return d[1];
        case SeriesCase::Double: return s.psi_k(1) * d[2];
        case SeriesCase::Triple: return s.leading * s.leading * d[3] / 2;
        default: {
            const double xi = s.psi_k(1);
            return xi * xi * xi / 2;
        }
    }
}

} // namespace

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::string_view to_string(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::Stable: return "Stable";
        case StabilityStatus::StableWeighted: return "StableWeighted";
        default: return "Unstable";
    }
}

std::string_view to_string(ExponentKind k) {
    return k == ExponentKind::Oscillatory ? "oscillatory" : "real_saddle";
}

StabilityVerdict classify_stability(const PhaseRoot& root, const SeriesSolution& series,
                                    const ModelParams& params) {
    check_pairing(root, series, params);
    const auto d = eval_phase_all(series.sigma, params.phase());
    const double l4 = std::pow(params.lambda, 0.25);
    const double l4x4 = std::pow(4 * params.lambda, 0.25);

    StabilityVerdict v;
    v.kind = series.kind;
    v.exponent_model.power = exponent_power(series.kind);
    bool stable = false;
    switch (series.kind) {
        case SeriesCase::Simple:
            stable = d[1] > 0;
            v.branch = stable ? "simple.positive_slope" : "simple.negative_slope";
            v.exponent_model.coefficient = l4x4 * std::sqrt(std::abs(d[1]));
            break;
        case SeriesCase::Double: {
            const double s = series.psi_k(1) * d[2];
            stable = s > 0;
            v.branch = stable ? "double.aligned" : "double.opposed";
            v.exponent_model.coefficient = l4x4 * std::sqrt(std::abs(s));
            break;
        }
        case SeriesCase::Triple:
            stable = d[3] > 0;
            v.branch = stable ? "triple.positive" : "triple.negative";
            v.exponent_model.coefficient =
                l4 * std::sqrt(series.leading * series.leading * std::abs(d[3]));
            break;
        case SeriesCase::Quadruple: {
            stable = series.sign > 0;
            v.branch = stable ? "quadruple.plus" : "quadruple.minus";
            const double xi = std::abs(series.leading);
            v.exponent_model.coefficient = l4 * std::pow(xi, 1.5);
            break;
        }
    }
    if (stable) {
        v.status = series.kind == SeriesCase::Simple ? StabilityStatus::Stable
                                                     : StabilityStatus::StableWeighted;
        v.w1 = weight1(series.kind);
        v.w2 = weight2(series.kind);
        v.exponent_model.kind = ExponentKind::Oscillatory;
    } else {
        v.status = StabilityStatus::Unstable;
        v.exponent_model.kind = ExponentKind::RealSaddle;
    }
    return v;
}

Eigen::Matrix2d linearization_matrix(const ModelParams& params, double rho, double psi, double tau) {
    const double a = params.alpha_at(tau), b = params.beta_at(tau), g = params.gamma_at(tau);
    const double arg = 2 * psi + params.nu;
    Eigen::Matrix2d m;
    m(0, 0) = -g - b * std::sin(arg);
    m(0, 1) = a * std::cos(psi) - 2 * b * rho * std::cos(arg);
    m(1, 0) = 2 * rho - a * std::cos(psi) / (rho * rho);
    m(1, 1) = -a * std::sin(psi) / rho + 2 * b * std::sin(arg);
    return m;
}

Eigen::Matrix2d linearization_matrix(const SeriesSolution& series, const ModelParams& params,
                                     double tau) {
    const SeriesPoint sp = evaluate_series(series, tau);
    return linearization_matrix(params, sp.rho, sp.psi, tau);
}

std::pair<std::complex<double>, std::complex<double>> linearization_exponents(
    const PhaseRoot& root, const SeriesSolution& series, const ModelParams& params, double tau) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    check_pairing(root, series, params);
    const Eigen::Matrix2d m = linearization_matrix(series, params, tau);
    const double tr = m.trace();
    const double disc = tr * tr - 4 * m.determinant();
    const std::complex<double> sq = std::sqrt(std::complex<double>(disc, 0.0));
    return {(tr + sq) / 2.0, (tr - sq) / 2.0};
}

double fit_exponent_power(const PhaseRoot& root, const SeriesSolution& series,
                          const ModelParams& params, double tau_lo, double tau_hi, int points) {
    if (!(tau_hi > tau_lo && tau_lo > 0.0) || points < 2) throw DomainError("invalid fit range");
    Eigen::VectorXd x(points), y(points);
    for (int i = 0; i < points; ++i) {
        const double lt = std::log(tau_lo) + (std::log(tau_hi) - std::log(tau_lo)) * i / (points - 1);
        const auto [zp, zm] = linearization_exponents(root, series, params, std::exp(lt));
        x[i] = lt;
        y[i] = std::log(std::max(std::abs(zp), std::abs(zm)));
    }
    const double mx = x.mean(), my = y.mean();
    return ((x.array() - mx) * (y.array() - my)).sum() / (x.array() - mx).square().sum();
}

Eigen::Vector2d LyapunovFrame::to_scaled(double R, double Psi, double tau) const {
    return {std::pow(tau, w1.value()) * R, std::pow(tau, w2.value()) * Psi};
}

LyapunovFrame make_frame(const StabilityVerdict& verdict, const SeriesSolution& series,
                         const ModelParams& params, const FrameOptions& opt) {
    if (verdict.kind != series.kind) throw ContractError("verdict and series describe different cases");
    if (!(opt.radius > 0.0) || !(opt.tau_min > 0.0)) throw DomainError("invalid frame options");
    LyapunovFrame f;
    f.case_index = static_cast<int>(series.kind) + 1;
    f.w1 = weight1(series.kind);
    f.w2 = weight2(series.kind);
    f.omega_sq = frame_omega_sq(series, eval_phase_all(series.sigma, params.phase()));
    f.gamma0 = params.gamma_k(0);
    f.sqrt_lambda = std::sqrt(params.lambda);
    f.radius = opt.radius;
    f.tau_min = opt.tau_min;
    f.params = params;
    f.anchor = [series](double tau) {
        const SeriesPoint sp = evaluate_series(series, tau);
        return Eigen::Vector2d(sp.rho, sp.psi);
    };
    return f;
}

double hamiltonian(const ModelParams& params, double rho_star, double psi_star, double R, double Psi,
                   double tau) {
    const double a = params.alpha_at(tau), b = params.beta_at(tau), g = params.gamma_at(tau);
    const double A = 2 * psi_star + params.nu;
    const double t1 = cos_second_diff(psi_star, Psi);
    const double t2 = cos_second_diff(A, 2 * Psi);
    const double t3 = -2 * std::sin(A + Psi) * std::sin(Psi);
    return rho_star * R * R + a * t1 - b * rho_star / 2 * t2 + g * R * Psi + R * R * R / 3 -
           b * R / 2 * t3;
}

double lyapunov_scaled(const LyapunovFrame& frame, double r, double phi, double tau) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    if (std::hypot(r, phi) > frame.radius) throw DomainError("point lies outside the validity ball");
    const double w1 = frame.w1.value(), w2 = frame.w2.value();
    const Eigen::Vector2d star = frame.anchor(tau);
    const double R = std::pow(tau, -w1) * r, Psi = std::pow(tau, -w2) * phi;
    const double h = std::pow(tau, w1 + w2) * hamiltonian(frame.params, star[0], star[1], R, Psi, tau) -
                     w1 * r * phi / tau;
    return std::pow(tau, -frame.c()) * (h - frame.gamma0 * r * phi);
}

double lyapunov_value(const LyapunovFrame& frame, double R, double Psi, double tau) {
    const Eigen::Vector2d s = frame.to_scaled(R, Psi, tau);
    return lyapunov_scaled(frame, s[0], s[1], tau);
}

DecreaseReport verify_decrease(const LyapunovFrame& frame, const Trajectory& trajectory,
                               double kappa_margin, const DecreaseOptions& opt) {
    if (!(kappa_margin > 0.0 && kappa_margin < 1.0)) throw DomainError("kappa_margin must lie in (0, 1)");
    if (!(opt.fd_step > 0.0)) throw DomainError("fd_step must be positive");
    DecreaseReport rep;
    rep.kappa_margin = kappa_margin;
    rep.gamma_kappa = frame.gamma0 * (1 - kappa_margin) / (1 + kappa_margin);
    rep.tau_min = frame.tau_min;
    rep.radius = frame.radius;
    if (trajectory.size() == 0) return rep;

    const double h = opt.fd_step;
    const double t_lo = std::max(frame.tau_min, trajectory.tau[0]) + 2 * h;
    const double t_hi = trajectory.tau[trajectory.size() - 1] - 2 * h;

    // Scaled perturbation at τ, or nothing when it lies outside the ball.
    auto scaled = [&](double t) -> std::optional<Eigen::Vector2d> {
        const Eigen::Vector2d y = trajectory.at(t);
        const Eigen::Vector2d star = frame.anchor(t);
        const double Psi = std::remainder(y[1] - star[1], 2 * std::numbers::pi);
        const Eigen::Vector2d s = frame.to_scaled(y[0] - star[0], Psi, t);
        if (s.norm() > frame.radius) return std::nullopt;
        return s;
    };
    auto v_at = [&](double t) -> std::optional<double> {
        const auto s = scaled(t);
        if (!s) return std::nullopt;
        return lyapunov_scaled(frame, (*s)[0], (*s)[1], t);
    };

    std::vector<double> taus, values;
    for (Eigen::Index i = 0; i < trajectory.size(); ++i) {
        const double t = trajectory.tau[i];
        if (t < t_lo || t > t_hi) continue;
        const auto v = v_at(t);
        if (!v) {
            rep.exited_validity = true;
            rep.exit_tau = t;
            break;
        }
        taus.push_back(t);
        values.push_back(*v);
    }
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, std::abs(v));

    for (std::size_t k = 0; k < taus.size(); ++k) {
        const double t = taus[k], v = values[k];
        if (vmax > 0.0 && std::abs(v) < opt.noise_floor * vmax) {
            ++rep.skipped_below_floor;
            continue;
        }
        const auto vm2 = v_at(t - 2 * h), vm1 = v_at(t - h), vp1 = v_at(t + h), vp2 = v_at(t + 2 * h);
        if (!vm2 || !vm1 || !vp1 || !vp2) {
            rep.exited_validity = true;
            rep.exit_tau = t;
            break;
        }
        const double dv = (*vm2 - 8 * *vm1 + 8 * *vp1 - *vp2) / (12 * h);
        const double bound = -2 * rep.gamma_kappa * v;
        ++rep.checked;
        if (dv <= bound) ++rep.satisfied;
        if (bound != 0.0) rep.worst_ratio = std::min(rep.worst_ratio, dv / bound);
    }
    return rep;
}

PerturbationResponse perturbation_response(const StabilityVerdict& verdict, const SeriesSolution& series,
                                           const ModelParams& params, const PerturbationOptions& opt) {
    if (verdict.kind != series.kind) throw ContractError("verdict and series describe different cases");
    if (!(opt.tau1 > opt.window_start && opt.window_start >= opt.tau0))
        throw DomainError("perturbation window must lie inside the integration span");

    PerturbationResponse res;
    res.expected_stable = verdict.status != StabilityStatus::Unstable;

    IntegratorOptions io;
    io.mode = CoordinateMode::Cartesian;
    io.rtol = opt.rtol;
    io.atol = opt.atol;
    io.samples = static_cast<int>(std::ceil((opt.tau1 - opt.tau0) * 10)) + 1;

    auto off_series = [&](double t, double rho, double psi) {
        const SeriesPoint sp = evaluate_series(series, t);
        return std::hypot(rho - sp.rho, psi - sp.psi);
    };
    const SeriesPoint p0 = evaluate_series(series, opt.tau0);
    // The reference is the particular solution; once it leaves the series it is no longer useful.
    const Trajectory ref = integrate(params, p0.rho, p0.psi, opt.tau0, opt.tau1, io,
                                     [&](double t, double rho, double psi) {
                                         return off_series(t, rho, psi) > 1.0;
                                     });
    const double ref_end = ref.tau[ref.size() - 1];

    // Both tests use the weighted norm of the root's case, so a branch pair 2φτ^{−1/2} apart
    // (double roots) stays distinguishable.
    const double w1 = weight1(series.kind).value(), w2 = weight2(series.kind).value();
    auto weighted = [&](double t, const Eigen::Vector2d& d) {
        return std::max(std::pow(t, w1) * std::abs(d[0]), std::pow(t, w2) * std::abs(d[1]));
    };
    auto deviation = [&](double t, double rho, double psi) -> Eigen::Vector2d {
        if (t <= ref_end) {
            const Eigen::Vector2d r = ref.at(t);
            return {rho - r[0], psi - r[1]};
        }
        const SeriesPoint sp = evaluate_series(series, t);
        return {rho - sp.rho, psi - sp.psi};
    };
    const Trajectory pert = integrate(params, p0.rho + opt.size, p0.psi + opt.size, opt.tau0, opt.tau1,
                                      io, [&](double t, double rho, double psi) {
                                          return weighted(t, deviation(t, rho, psi)) > opt.departure;
                                      });

    res.initial_weighted = weighted(opt.tau0, Eigen::Vector2d(opt.size, opt.size));
    for (Eigen::Index i = 0; i < pert.size(); ++i) {
        const double t = pert.tau[i];
        const double n = weighted(t, deviation(t, pert.rho[i], pert.psi[i]));
        if (!res.departed && n > opt.departure) {
            res.departed = true;
            res.departure_tau = t;
        }
        if (t >= opt.window_start) res.sup_weighted = std::max(res.sup_weighted, n);
    }
    // A run stopped by the predicate ends just past the threshold.
    if (!res.departed && pert.tau[pert.size() - 1] < opt.tau1) {
        res.departed = true;
        res.departure_tau = pert.tau[pert.size() - 1];
    }
    res.decayed = !res.departed && res.sup_weighted <= opt.bound_factor * res.initial_weighted;
    return res;
}

} // namespace autores
