#include "autores/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "autores/errors.hpp"
#include "autores/parallel.hpp"

namespace autores {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

double nearest_branch(double wrapped, double reference) {
    return reference + angle_diff(wrapped, wrap_angle(reference));
}

Eigen::VectorXd linspace(double a, double b, int n) {
    if (n == 1) return Eigen::VectorXd::Constant(1, a);
    return Eigen::VectorXd::LinSpaced(n, a, b);
}

} // namespace

std::string_view to_string(CoordinateMode m) {
    return m == CoordinateMode::Polar ? "polar" : "cartesian";
}

Eigen::Vector2d polar_rhs(const ModelParams& p, double tau, const Eigen::Vector2d& y) {
    const double rho = y[0], psi = y[1];
    const double a = p.alpha_at(tau), b = p.beta_at(tau), g = p.gamma_at(tau);
    const double arg = 2 * psi + p.nu;
    return {-g * rho + a * std::sin(psi) - b * rho * std::sin(arg),
            rho * rho - p.lambda * tau + (a * std::cos(psi) - b * rho * std::cos(arg)) / rho};
}

Eigen::Vector2d cartesian_rhs(const ModelParams& p, double tau, const Eigen::Vector2d& uv) {
    const double u = uv[0], v = uv[1];
    const double a = p.alpha_at(tau), b = p.beta_at(tau), g = p.gamma_at(tau);
    const double w = u * u + v * v - p.lambda * tau;
    const double sn = std::sin(p.nu), cn = std::cos(p.nu);
    return {-g * u - w * v - b * (u * sn + v * cn),
            -g * v + a + w * u - b * (u * cn - v * sn)};
}

Eigen::Vector2d Trajectory::at(double t) const {
    if (!dense) {
        // Linear interpolation of the stored samples.
        if (tau.size() == 0 || t < tau[0] || t > tau[tau.size() - 1])
            throw DomainError("trajectory queried outside its span");
        auto it = std::upper_bound(tau.data(), tau.data() + tau.size(), t);
        Eigen::Index i = std::max<Eigen::Index>(1, std::min<Eigen::Index>(it - tau.data(), tau.size() - 1));
        const double s = (t - tau[i - 1]) / (tau[i] - tau[i - 1]);
        return {rho[i - 1] + s * (rho[i] - rho[i - 1]), psi[i - 1] + s * (psi[i] - psi[i - 1])};
    }
    const Eigen::Vector2d y = dense->at(t);
    if (meta.mode == CoordinateMode::Polar) return y;
    const double ref = step_psi[dense->segment_index(t)];
    return {y.norm(), nearest_branch(std::atan2(y[1], y[0]), ref)};
}

Trajectory Trajectory::from_samples(Eigen::VectorXd tau, Eigen::VectorXd rho, Eigen::VectorXd psi) {
    if (tau.size() != rho.size() || tau.size() != psi.size())
        throw DomainError("sample arrays differ in length");
    Trajectory tr;
    tr.tau = std::move(tau);
    tr.rho = std::move(rho);
    tr.psi = std::move(psi);
    tr.meta.method = "samples";
    return tr;
}

Trajectory integrate(const ModelParams& p, double rho0, double psi0, double tau0, double tau1,
                     const IntegratorOptions& opt) {
    return integrate(p, rho0, psi0, tau0, tau1, opt, StopPredicate{});
}

Trajectory integrate(const ModelParams& p, double rho0, double psi0, double tau0, double tau1,
                     const IntegratorOptions& opt, const StopPredicate& stop) {
    if (!(tau0 > 0.0)) throw DomainError("tau_span must start at a positive time");
    if (!(tau1 > tau0)) throw DomainError("tau_span must be increasing");
    if (!(rho0 > 0.0)) throw DomainError("rho0 must be positive");
    if (opt.samples < 2) throw DomainError("at least two output samples are required");

    ode::Options o;
    o.rtol = opt.rtol;
    o.atol = opt.atol;
    o.h_max = opt.h_max;
    o.max_steps = opt.max_steps;

    Trajectory tr;
    tr.meta.rtol = opt.rtol;
    tr.meta.atol = opt.atol;
    tr.meta.mode = opt.mode;

    if (opt.mode == CoordinateMode::Polar) {
        bool too_small = false;
        auto sol = ode::integrate<2>(
            [&](double t, const Eigen::Vector2d& y) { return polar_rhs(p, t, y); }, tau0, tau1,
            Eigen::Vector2d(rho0, psi0), o, [&](double t, const Eigen::Vector2d& y) {
                if (y[0] <= opt.rho_min) {
                    too_small = true;
                    return true;
                }
                return stop && stop(t, y[0], y[1]);
            });
        if (too_small)
            throw NumericalError("rho fell below rho_min at tau=" + std::to_string(sol.t_end()) +
                                     "; retry in cartesian mode",
                                 sol.t.size() > 1 ? sol.t[sol.t.size() - 2] : tau0, sol.t_end());
        tr.meta.stats = sol.stats;
        tr.step_psi.reserve(sol.y.size());
        for (const auto& y : sol.y) tr.step_psi.push_back(y[1]);
        tr.dense = std::move(sol);
    } else {
        // The stop predicate needs ψ unwrapped, so track it across accepted steps.
        double last_psi = psi0;
        std::vector<double> step_psi{psi0};
        auto sol = ode::integrate<2>(
            [&](double t, const Eigen::Vector2d& y) { return cartesian_rhs(p, t, y); }, tau0, tau1,
            Eigen::Vector2d(rho0 * std::cos(psi0), rho0 * std::sin(psi0)), o,
            [&](double t, const Eigen::Vector2d& y) {
                last_psi = nearest_branch(std::atan2(y[1], y[0]), last_psi);
                step_psi.push_back(last_psi);
                return stop && stop(t, y.norm(), last_psi);
            });
        tr.meta.stats = sol.stats;
        tr.step_psi = std::move(step_psi);
        tr.dense = std::move(sol);
    }

    const double t_end = tr.dense->t_end();
    tr.tau = linspace(tau0, t_end, opt.samples);
    tr.tau[tr.tau.size() - 1] = t_end;
    tr.rho.resize(tr.tau.size());
    tr.psi.resize(tr.tau.size());
    for (Eigen::Index i = 0; i < tr.tau.size(); ++i) {
        const Eigen::Vector2d rp = tr.at(tr.tau[i]);
        tr.rho[i] = rp[0];
        tr.psi[i] = rp[1];
    }
    return tr;
}

CaptureResult detect_capture(const Trajectory& traj, double lambda, const CaptureOptions& opt) {
    if (!(opt.window_fraction > 0.0 && opt.window_fraction <= 1.0))
        throw DomainError("window_fraction must lie in (0, 1]");
    const Eigen::Index n = traj.size();
    const Eigen::Index count =
        std::min<Eigen::Index>(n, static_cast<Eigen::Index>(std::ceil(opt.window_fraction * n)));
    if (count < 50) throw DomainError("capture window holds fewer than 50 samples");
    const Eigen::Index first = n - count;

    CaptureResult r;
    r.window_samples = count;
    double lo = traj.psi[first], hi = lo, sx = 0.0, sy = 0.0;
    for (Eigen::Index i = first; i < n; ++i) {
        const double target = std::sqrt(lambda * traj.tau[i]);
        r.max_amp_dev = std::max(r.max_amp_dev, std::abs(traj.rho[i] / target - 1.0));
        lo = std::min(lo, traj.psi[i]);
        hi = std::max(hi, traj.psi[i]);
        sx += std::cos(traj.psi[i]);
        sy += std::sin(traj.psi[i]);
    }
    if (!std::isfinite(r.max_amp_dev)) r.max_amp_dev = std::numeric_limits<double>::infinity();
    r.phase_range = hi - lo;
    r.captured = r.max_amp_dev < opt.tol_amp && r.phase_range < opt.tol_phase_range;
    if (r.captured) r.sigma_est = wrap_angle(std::atan2(sy, sx));
    return r;
}

OscillatorParams oscillator_from_model(const ModelParams& p, double epsilon) {
    OscillatorParams op;
    op.epsilon = epsilon;
    op.vartheta = p.lambda * epsilon * epsilon / 32;
    op.nu = -p.nu;
    op.A = [p](double s) { return s > 0.0 ? p.alpha_at(s / 4) : 0.0; };
    op.B = [p](double s) { return s > 0.0 ? p.beta_at(s / 4) : p.beta_k(0); };
    op.C = [p](double s) { return (s > 0.0 ? p.gamma_at(s / 4) : p.gamma_k(0)) / 2; };
    return op;
}

Eigen::VectorXd OscillatorRun::energy() const {
    return x.array().square() / 2 - epsilon * x.array().pow(4) / 24 + xdot.array().square() / 2;
}

Eigen::Vector2d oscillator_state_from_averaged(const OscillatorParams& op, double rho, double psi,
                                               double tau) {
    const double t = 4 * tau / op.epsilon;
    const double phase = t - op.vartheta * t * t - psi;
    const double freq = 1 - 2 * op.vartheta * t;
    return {2 * rho * std::cos(phase), -2 * rho * freq * std::sin(phase)};
}

OscillatorRun simulate_full_oscillator(const OscillatorParams& op, double t0, double t1, double x0,
                                       double xdot0, const OscillatorOptions& opt) {
    if (!(op.epsilon > 0.0 && op.epsilon <= 0.1)) throw DomainError("epsilon must lie in (0, 0.1]");
    if (!(op.vartheta > 0.0)) throw DomainError("vartheta must be positive");
    if (!(t1 > t0)) throw DomainError("t_span must be increasing");
    if (!(opt.sample_dt > 0.0)) throw DomainError("sample_dt must be positive");

    const double eps = op.epsilon;
    auto rhs = [&](double t, const Eigen::Vector2d& y) {
        const double s = eps * t;
        const double zeta = t - op.vartheta * t * t;
        const double x = y[0];
        const double force = x - eps * x * x * x / 6;
        return Eigen::Vector2d(y[1], eps * op.A(s) * std::cos(zeta) - eps * op.C(s) * y[1] -
                                         (1 + eps * op.B(s) * std::cos(2 * zeta - op.nu)) * force);
    };
    ode::Options o;
    o.rtol = opt.rtol;
    o.atol = opt.atol;
    o.h_max = 0.5;
    auto sol = ode::integrate<2>(rhs, t0, t1, Eigen::Vector2d(x0, xdot0), o);

    OscillatorRun run;
    run.epsilon = eps;
    run.vartheta = op.vartheta;
    run.nu = op.nu;
    run.lambda = op.lambda();
    run.stats = sol.stats;
    const int n = static_cast<int>(std::floor((t1 - t0) / opt.sample_dt)) + 1;
    run.t = linspace(t0, t0 + (n - 1) * opt.sample_dt, n);
    run.x.resize(n);
    run.xdot.resize(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d y = sol.at(std::min(run.t[i], t1));
        run.x[i] = y[0];
        run.xdot[i] = y[1];
    }
    return run;
}

Envelope oscillator_envelope(const OscillatorRun& run, double window) {
    if (!(window > 0.0)) throw DomainError("window must be positive");
    std::vector<double> tc, amp;
    const Eigen::Index n = run.t.size();
    Eigen::Index i = 0;
    while (i < n) {
        const double start = run.t[i];
        double m = 0.0;
        Eigen::Index j = i;
        for (; j < n && run.t[j] < start + window; ++j) m = std::max(m, std::abs(run.x[j]));
        if (j < n || run.t[n - 1] - start >= 0.999 * window) {
            tc.push_back(start + window / 2);
            amp.push_back(m);
        }
        i = j;
    }
    Envelope e;
    e.t = Eigen::Map<Eigen::VectorXd>(tc.data(), static_cast<Eigen::Index>(tc.size()));
    e.amplitude = Eigen::Map<Eigen::VectorXd>(amp.data(), static_cast<Eigen::Index>(amp.size()));
    return e;
}

BasinResult basin_sample(const ModelParams& p, const BasinSpec& spec, const IntegratorOptions& opt,
                         const CaptureOptions& cap) {
    if (spec.n_rho < 2 || spec.n_psi < 2) throw DomainError("basin resolution must be at least 2 per axis");
    if (!(spec.rho_min > 0.0) || !(spec.rho_max >= spec.rho_min))
        throw DomainError("basin rho range must be positive and ordered");

    IntegratorOptions o = opt;
    o.mode = CoordinateMode::Cartesian;
    const double hr = (spec.rho_max - spec.rho_min) / (spec.n_rho - 1);
    const double hp = (spec.psi_max - spec.psi_min) / (spec.n_psi - 1);

    BasinResult res;
    res.captured = Mask::Constant(spec.n_psi, spec.n_rho, false);
    const auto cells = static_cast<std::size_t>(spec.n_rho) * static_cast<std::size_t>(spec.n_psi);
    parallel_for(cells, [&](std::size_t c) {
        const int i = static_cast<int>(c % static_cast<std::size_t>(spec.n_rho));
        const int j = static_cast<int>(c / static_cast<std::size_t>(spec.n_rho));
        double rho0 = spec.rho_min + hr * i;
        double psi0 = spec.psi_min + hp * j;
        if (spec.jitter) {
            std::seed_seq seq{spec.seed, static_cast<std::uint64_t>(c)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> u(-0.5, 0.5);
            rho0 = std::max(rho0 + hr * u(rng), spec.rho_min * 0.5);
            psi0 += hp * u(rng);
        }
        bool ok = false;
        try {
            const Trajectory tr = integrate(p, rho0, psi0, spec.tau0, spec.tau1, o);
            ok = detect_capture(tr, p.lambda, cap).captured;
        } catch (const NumericalError&) {
            ok = false;
        }
        res.captured(j, i) = ok;
    });
    res.fraction = static_cast<double>(res.captured.count()) / static_cast<double>(cells);
    return res;
}

} // namespace autores
