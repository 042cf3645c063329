// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "autores/asymptotics.hpp"
#include "autores/figures.hpp"
#include "autores/io.hpp"
#include "autores/parallel.hpp"
#include "autores/partition.hpp"
#include "autores/phase_equation.hpp"
#include "autores/simulator.hpp"
#include "autores/stability.hpp"

using namespace autores;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) { return io::num(std::round(x * 1e6) / 1e6); }
std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

// A classified root together with the series branch it was built on.
struct Case {
    std::string tag;
    ModelParams params;
    PhaseRoot root;
    SeriesSolution series;
};

const PhaseRoot* root_near(const std::vector<PhaseRoot>& roots, double sigma, int multiplicity = 0) {
    for (const auto& r : roots)
        if (std::abs(angle_diff(r.sigma, sigma)) < 1e-3 && (multiplicity == 0 || r.multiplicity == multiplicity))
            return &r;
    return nullptr;
}

// Double-root point (δ, ν) for κ and a root at σ: P = P' = 0 solved for δ sin, δ cos.
PhaseParams double_point(double kappa, double sigma) {
    const double s = std::sin(sigma) - kappa, c = std::cos(sigma) / 2;
    double delta = -std::hypot(s, c);
    double nu = wrap_angle(std::atan2(s / delta, c / delta) - 2 * sigma);
    if (nu >= pi) {
        nu -= pi;
        delta = -delta;
    }
    return {delta, nu, kappa};
}

std::vector<Case> classified_cases() {
    RootOptions relaxed;
    relaxed.tol_root = 1e-6;
    std::vector<Case> out;
    auto add_all = [&](const std::string& tag, const ModelParams& m, const PhaseRoot& r) {
        const int order = max_series_order(series_case(r.multiplicity));
        if (r.multiplicity == 1 || r.multiplicity == 3) {
            const auto res = build_series(m, r, order);
            if (const auto* s = std::get_if<SeriesSolution>(&res)) out.push_back({tag, m, r, *s});
            return;
        }
        for (const auto& s : series_branches(m, r, order))
            out.push_back({tag + (s.sign > 0 ? "+" : "-"), m, r, s});
    };
    // Case I: every root at the black and blue parameters
    for (const auto& [tag, ph] : {std::pair{"black", PhaseParams{-2.0, 5 * pi / 6, 1.0}},
                                  std::pair{"blue", PhaseParams{-1.5, pi / 6, 0.25}}}) {
        const ModelParams m = ModelParams::from_phase(ph, 1.0);
        for (const auto& r : find_roots(ph)) add_all(std::string(tag) + "/s" + fmt(r.sigma), m, r);
    }
    // Case II: points on the kappa = 0.4 curve where P'' < 0 (a series exists with zero tails)
    for (double sigma : {pi / 2, 1.3, 1.2}) {
        const PhaseParams ph = double_point(0.4, sigma);
        const ModelParams m = ModelParams::from_phase(ph, 1.0);
        const auto roots = find_roots(ph, relaxed);
        if (const auto* r = root_near(roots, sigma, 2))
            add_all("double/d" + fmt(ph.delta), m, *r);
    }
    // Case III: cusp points kappa^2 + 3 delta^2 = 3/4
    for (double k : {0.3, 0.5, 0.6}) {
        const double d = -std::sqrt((0.75 - k * k) / 3), z = 4 * k / 3;
        const double p = (k * (2 * z * z - 1) - z * z * z) / d;
        for (double nu : {std::asin(p), pi - std::asin(p)}) {
            const PhaseParams ph{d, nu, k};
            const ModelParams m = ModelParams::from_phase(ph, 1.0);
            for (const auto& r : find_roots(ph, relaxed))
                if (r.multiplicity == 3) add_all("triple/k" + fmt(k) + "/nu" + fmt(nu), m, r);
        }
    }
    // Case IV: the quadruple point, with a first alpha tail large enough for clean fits
    {
        const PhaseParams ph{-0.25, pi / 2, 0.75};
        ModelParams m = ModelParams::from_phase(ph, 1.0);
        m.alpha = {1.0, 20.0};
        for (const auto& r : find_roots(ph, relaxed))
            if (r.multiplicity == 4) add_all("quadruple", m, r);
    }
    return out;
}

const std::vector<Case>& cases() {
    static const std::vector<Case> c = classified_cases();
    return c;
}

// 1 ---------------------------------------------------------------------------------------------
Outcome quadruple_identity() {
    const auto roots = find_roots(PhaseParams{-0.25, pi / 2, 0.75});
    if (roots.size() != 1) return {false, std::to_string(roots.size()) + " roots"};
    const auto& r = roots[0];
    double worst = 0;
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(r.derivs[j]));
    const double d4 = std::abs(r.derivs[4] - 3.0), ds = std::abs(r.sigma - pi / 2);
    return {worst < 1e-12 && d4 < 1e-12 && ds < 1e-12 && r.multiplicity == 4,
            "sigma-pi/2=" + sci(ds) + " max|P0..P3|=" + sci(worst) + " |P4-3|=" + sci(d4)};
}

// 2 ---------------------------------------------------------------------------------------------
Outcome region_consistency() {
    int checked = 0, bad = 0, skipped = 0;
    for (double k : {0.4, 0.9, 1.0, 1.6}) {
        const auto curves = bifurcation_curves(k);
        const SpecialPoints sp = special_points(k);
        std::atomic<int> c{0}, b{0}, s{0};
        parallel_for(200 * 100, [&](std::size_t idx) {
            const int i = static_cast<int>(idx % 200), j = static_cast<int>(idx / 200);
            const double d = -3.0 + 6.0 * i / 199, nu = pi * j / 100;
            if (distance_to_curves(curves, d, nu) <= 1e-3) {
                ++s;
                return;
            }
            const PhaseParams p{d, nu, k};
            const Region label = classify_region(p);
            const Region geom = region_from_curves(p, sp);
            const auto n = static_cast<int>(find_roots(p).size());
            ++c;
            if (label != geom || expected_root_count(geom) != n) ++b;
        });
        checked += c;
        bad += b;
        skipped += s;
    }
    return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " agree, " +
                          std::to_string(skipped) + " within 1e-3 of a curve"};
}

// 3 ---------------------------------------------------------------------------------------------
Outcome multiple_root_identities() {
    RootOptions relaxed;
    relaxed.tol_root = 1e-6;
    double e2 = 0, e3 = 0, ecusp = 0;
    int min_points = 1 << 30, triples = 0;
    for (double k : {0.4, 0.9, 1.0, 1.6}) {
        std::vector<PhaseParams> pts;
        for (const auto& c : bifurcation_curves(k, 401))
            for (const auto& piece : c.pieces)
                for (const auto& v : piece) pts.push_back({v[0], v[1], k});
        std::mutex mu;
        int found = 0;
        parallel_for(pts.size(), [&](std::size_t i) {
            const auto roots = find_roots(pts[i], relaxed);
            std::lock_guard lock(mu);
            bool any = false;
            for (const auto& r : roots) {
                if (r.multiplicity < 2) continue;
                any = true;
                e2 = std::max(e2, std::abs(r.derivs[2] - (-3 * std::sin(r.sigma) + 4 * k)));
                if (r.multiplicity >= 3) {
                    ++triples;
                    e3 = std::max(e3, std::abs(r.derivs[3] + 3 * std::cos(r.sigma)));
                    ecusp = std::max(ecusp, std::abs(k * k + 3 * pts[i].delta * pts[i].delta - 0.75));
                }
            }
            found += any;
        });
        min_points = std::min(min_points, found);
    }
    // cusp points are isolated, so add them explicitly
    for (const auto& c : cases())
        if (c.root.multiplicity == 3) {
            const double k = c.params.kappa(), d = c.params.delta();
            ++triples;
            e2 = std::max(e2, std::abs(c.root.derivs[2] - (-3 * std::sin(c.root.sigma) + 4 * k)));
            e3 = std::max(e3, std::abs(c.root.derivs[3] + 3 * std::cos(c.root.sigma)));
            ecusp = std::max(ecusp, std::abs(k * k + 3 * d * d - 0.75));
        }
    return {min_points >= 200 && e2 < 1e-8 && e3 < 1e-8 && ecusp < 1e-6 && triples > 0,
            "min curve points with a multiple root per kappa=" + std::to_string(min_points) +
                " max|P''+3sin-4k|=" + sci(e2) + " triple roots=" + std::to_string(triples) +
                " max|P'''+3cos|=" + sci(e3) + " max|k^2+3d^2-3/4|=" + sci(ecusp)};
}

// 4 ---------------------------------------------------------------------------------------------
Outcome residual_order() {
    const PhaseParams ph{-2.0, 5 * pi / 6, 1.0};
    const ModelParams m = ModelParams::from_phase(ph, 1.0);
    const auto roots = find_roots(ph);
    const PhaseRoot* r = root_near(roots, pi);
    if (!r) return {false, "no root at pi"};
    bool ok = true;
    std::string detail;
    for (int K = 0; K <= 3; ++K) {
        const auto s = std::get<SeriesSolution>(build_series(m, *r, K));
        std::vector<double> x, y;
        for (int i = 0; i <= 30; ++i) {
            const double t = std::pow(10.0, 3.0 + 3.0 * i / 30);
            x.push_back(std::log(t));
            y.push_back(std::log(residual_norm(s, m, t).max_abs()));
        }
        const double sl = slope(x, y), target = -(K + 1) / 2.0;
        ok = ok && std::abs(sl - target) < 0.15;
        detail += "K=" + std::to_string(K) + ":" + fmt(sl) + "(" + fmt(target) + ") ";
    }
    return {ok, detail};
}

// 5 ---------------------------------------------------------------------------------------------
Outcome perturbation_agreement() {
    const auto& cs = cases();
    std::vector<char> agree(cs.size());
    std::vector<std::string> verdict(cs.size());
    parallel_for(cs.size(), [&](std::size_t i) {
        const StabilityVerdict v = classify_stability(cs[i].root, cs[i].series, cs[i].params);
        verdict[i] = v.branch + ":" + std::string(to_string(v.status));
        agree[i] = perturbation_response(v, cs[i].series, cs[i].params).agrees();
    });
    std::set<int> mults;
    int ok = 0, stable = 0;
    std::string misses;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        mults.insert(cs[i].root.multiplicity);
        ok += agree[i];
        stable += verdict[i].find(":Unstable") == std::string::npos;
        if (!agree[i]) misses += " " + cs[i].tag + "[" + verdict[i] + "]";
    }
    const int n = static_cast<int>(cs.size());
    return {n >= 20 && mults.size() == 4 && ok == n,
            std::to_string(ok) + "/" + std::to_string(n) + " agree (" + std::to_string(stable) + " stable, " +
                std::to_string(n - stable) + " unstable, " + std::to_string(mults.size()) + " cases)" +
                (misses.empty() ? "" : "; disagree:" + misses)};
}

// Reference run on the series from τ=20 and a copy perturbed by 1e-3 at τ_in, both to τ_in + 40.
struct PerturbedPair {
    Trajectory ref;
    Trajectory pert;
};

PerturbedPair perturbed_pair(const Case& c, double t_in) {
    const SeriesPoint sp = evaluate_series(c.series, 20.0);
    IntegratorOptions o;
    o.mode = CoordinateMode::Cartesian;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    o.samples = 20001;
    Trajectory ref = integrate(c.params, sp.rho, sp.psi, 20.0, t_in + 40, o);
    const Eigen::Vector2d y = ref.at(t_in);
    Trajectory pert = integrate(c.params, y[0] + 1e-3, y[1] + 1e-3, t_in, t_in + 40, o);
    return {std::move(ref), std::move(pert)};
}

const Case* black_stable() {
    for (const auto& c : cases())
        if (c.tag.rfind("black", 0) == 0 && std::abs(angle_diff(c.root.sigma, pi)) < 1e-6) return &c;
    return nullptr;
}

// 6 ---------------------------------------------------------------------------------------------
Outcome exponential_rate() {
    const Case* c = black_stable();
    if (!c) return {false, "black stable root missing"};
    const auto [ref, pert] = perturbed_pair(*c, 50.0);
    // upper envelope of |Ψ|: maxima over unit windows while above the integration noise
    std::vector<double> x, y;
    double t0 = pert.tau[0], best = 0, at = t0;
    for (Eigen::Index i = 0; i < pert.size(); ++i) {
        const double t = pert.tau[i];
        const double Psi = std::abs(std::remainder(pert.psi[i] - ref.at(t)[1], 2 * pi));
        if (t >= t0 + 1.0) {
            if (best < 1e-9) break;
            x.push_back(at);
            y.push_back(std::log(best));
            t0 = t;
            best = 0;
        }
        if (Psi > best) {
            best = Psi;
            at = t;
        }
    }
    if (x.size() < 5) return {false, "decaying segment too short"};
    const double sl = slope(x, y), gamma0 = c->params.gamma_k(0);
    return {sl <= -0.5 * gamma0, "slope of log|Psi| envelope over [" + fmt(x.front()) + ", " + fmt(x.back()) +
                                     "] = " + fmt(sl) + ", bound -0.5*gamma0 = " + fmt(-0.5 * gamma0)};
}

// 7 ---------------------------------------------------------------------------------------------
Outcome lyapunov_decrease() {
    const Case* cI = black_stable();
    const Case* cII = nullptr;
    for (const auto& c : cases())
        if (c.root.multiplicity == 2 && std::abs(angle_diff(c.root.sigma, pi / 2)) < 1e-6 &&
            classify_stability(c.root, c.series, c.params).status == StabilityStatus::StableWeighted)
            cII = &c;
    if (!cI || !cII) return {false, "Case I or Case II root missing"};
    bool ok = true;
    std::string detail;
    for (const auto& [name, c] : {std::pair{"I", cI}, std::pair{"II", cII}}) {
        const auto [ref, pert] = perturbed_pair(*c, 50.0);
        LyapunovFrame f = make_frame(classify_stability(c->root, c->series, c->params), c->series, c->params);
        f.anchor = [r = ref](double t) { return r.at(t); };
        f.tau_min = 50.0;
        for (double km : {0.25, 0.5, 0.9}) {
            const DecreaseReport rep = verify_decrease(f, pert, km);
            ok = ok && rep.pass() && rep.checked > 0;
            detail += std::string("Case ") + name + " k=" + fmt(km) + ": " + std::to_string(rep.satisfied) + "/" +
                      std::to_string(rep.checked) + (rep.exited_validity ? " (left validity ball)" : "") +
                      " worst ratio " + fmt(rep.worst_ratio) + "; ";
        }
    }
    return {ok, detail};
}

// 8 ---------------------------------------------------------------------------------------------
Outcome exponent_powers() {
    const auto& cs = cases();
    std::vector<double> fit(cs.size());
    parallel_for(cs.size(), [&](std::size_t i) {
        fit[i] = fit_exponent_power(cs[i].root, cs[i].series, cs[i].params, 1e3, 1e6);
    });
    std::map<int, std::pair<double, double>> range;
    bool ok = true;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const int m = cs[i].root.multiplicity;
        const double target = 1.0 / (2 * m);
        ok = ok && std::abs(fit[i] - target) < 0.02;
        auto [it, fresh] = range.try_emplace(m, fit[i], fit[i]);
        if (!fresh) it->second = {std::min(it->second.first, fit[i]), std::max(it->second.second, fit[i])};
    }
    std::string detail;
    for (const auto& [m, r] : range)
        detail += "m=" + std::to_string(m) + " [" + fmt(r.first) + ", " + fmt(r.second) + "] vs 1/" +
                  std::to_string(2 * m) + "; ";
    return {ok && range.size() == 4, detail};
}

// 9 ---------------------------------------------------------------------------------------------
Outcome polar_vs_cartesian() {
    double worst = 0;
    std::string detail;
    for (const auto& run : capture_runs()) {
        const Trajectory tr = capture_trajectory(run);
        const ModelParams m = ModelParams::from_phase(run.phase, 1.0);
        IntegratorOptions po, co;
        co.mode = CoordinateMode::Cartesian;
        const Trajectory a = integrate(m, tr.rho[0], tr.psi[0], tr.tau[0], 1000.0, po);
        const Trajectory b = integrate(m, tr.rho[0], tr.psi[0], tr.tau[0], 1000.0, co);
        const double d = std::max((a.rho - b.rho).cwiseAbs().maxCoeff(), (a.psi - b.psi).cwiseAbs().maxCoeff());
        worst = std::max(worst, d);
        detail += run.label + " " + sci(d) + "; ";
    }
    return {worst < 1e-6, detail};
}

// 10 --------------------------------------------------------------------------------------------
std::vector<int> root_counts(const io::CsvTable& t, std::vector<double>& deltas) {
    std::vector<int> counts;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double d = t.number(i, "delta");
        if (!deltas.empty() && deltas.back() == d) continue;
        deltas.push_back(d);
        counts.push_back(static_cast<int>(t.number(i, "root_count")));
    }
    return counts;
}

Outcome figure_reproduction() {
    const fs::path dir = fs::temp_directory_path() / "autores_acceptance_figures";
    fs::remove_all(dir);
    fs::create_directories(dir);
    bool ok = true;
    std::string detail;

    (void)write_figure("fig6", dir);
    for (const auto& run : capture_runs()) {
        const io::CsvTable t = io::read_csv(dir / ("fig6_" + run.label + ".csv"));
        const Eigen::Index n = static_cast<Eigen::Index>(t.rows.size());
        Eigen::VectorXd tau(n), rho(n), psi(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto r = static_cast<std::size_t>(i);
            tau[i] = t.number(r, "tau");
            rho[i] = t.number(r, "rho");
            psi[i] = t.number(r, "psi");
        }
        const CaptureResult c = detect_capture(Trajectory::from_samples(tau, rho, psi), 1.0);
        const double err = c.sigma_est ? std::abs(angle_diff(*c.sigma_est, run.sigma_design)) : INFINITY;
        ok = ok && c.captured && err < 1e-2;
        detail += run.label + (c.captured ? " captured" : " NOT captured") + " |sigma-" + fmt(run.sigma_design) +
                  "|=" + sci(err) + "; ";
    }

    // fig2: every labelled grid point carries the root count of its region
    (void)write_figure("fig2", dir);
    std::map<std::string, int> expected;
    for (Region r : {Region::OmegaPlus, Region::OmegaMinus, Region::OmegaZero, Region::OmegaStar})
        expected[std::string(to_string(r))] = expected_root_count(r);
    int grid_bad = 0, grid_n = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("fig2_regions_", 0) != 0) continue;
        const io::CsvTable t = io::read_csv(entry.path());
        const std::size_t rc = t.column("region");
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const auto it = expected.find(t.rows[i][rc]);
            if (it == expected.end()) continue;
            ++grid_n;
            grid_bad += it->second != static_cast<int>(t.number(i, "root_count"));
        }
    }
    ok = ok && grid_bad == 0 && grid_n > 0;
    detail += "fig2 " + std::to_string(grid_n - grid_bad) + "/" + std::to_string(grid_n) + " labels match counts; ";

    // fig3: root-count changes along δ happen only across curve crossings
    (void)write_figure("fig3", dir);
    for (const auto& panel : root_panels("fig3")) {
        const io::CsvTable roots = io::read_csv(dir / ("fig3_" + panel.label + "_roots.csv"));
        const io::CsvTable trans = io::read_csv(dir / ("fig3_" + panel.label + "_transitions.csv"));
        std::vector<double> deltas;
        const std::vector<int> counts = root_counts(roots, deltas);
        std::vector<double> crossings;
        for (std::size_t i = 0; i < trans.rows.size(); ++i) crossings.push_back(trans.number(i, "delta"));
        // samples lying on a crossing carry a coalesced root and are left out
        std::vector<double> ds;
        std::vector<int> ns;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            const bool on_curve = std::any_of(crossings.begin(), crossings.end(),
                                              [&](double x) { return std::abs(x - deltas[i]) < 1e-9; });
            if (on_curve) continue;
            ds.push_back(deltas[i]);
            ns.push_back(counts[i]);
        }
        int changes = 0, unexplained = 0, odd = 0;
        for (int c : ns) odd += c != 0 && c != 2 && c != 4;
        for (std::size_t i = 1; i < ns.size(); ++i) {
            if (ns[i] == ns[i - 1]) continue;
            ++changes;
            const bool bracketed = std::any_of(crossings.begin(), crossings.end(),
                                               [&](double x) { return x > ds[i - 1] && x < ds[i]; });
            unexplained += !bracketed;
        }
        ok = ok && changes > 0 && unexplained == 0 && odd == 0;
        detail += "fig3(" + panel.label + ") " + std::to_string(changes) + " transitions, " +
                  std::to_string(unexplained) + " off-curve, " + std::to_string(odd) + " bad counts; ";
    }
    fs::remove_all(dir);
    return {ok, detail};
}

// 11 --------------------------------------------------------------------------------------------
Outcome averaging_correspondence() {
    const double eps = 0.01, t_a = 20.0, t_b = 50.0;
    double worst = 0;
    std::string detail;
    std::vector<CaptureRun> runs;
    for (const auto& run : capture_runs())
        if (run.label != "gray") runs.push_back(run);
    std::vector<double> err(runs.size());
    parallel_for(runs.size(), [&](std::size_t k) {
        const auto& run = runs[k];
        const ModelParams m = ModelParams::from_phase(run.phase, 1.0);
        const auto roots = find_roots(run.phase);
        const PhaseRoot* r = root_near(roots, run.sigma_design);
        const SeriesPoint sp = evaluate_series(std::get<SeriesSolution>(build_series(m, *r, 3)), t_a);
        IntegratorOptions o;
        o.mode = CoordinateMode::Cartesian;
        const Trajectory avg = integrate(m, sp.rho, sp.psi, t_a, t_b, o);
        const OscillatorParams op = oscillator_from_model(m, eps);  // ϑ = ε²/32 gives λ = 1
        const Eigen::Vector2d x0 = oscillator_state_from_averaged(op, sp.rho, sp.psi, t_a);
        const OscillatorRun full = simulate_full_oscillator(op, 4 * t_a / eps, 4 * t_b / eps, x0[0], x0[1]);
        const Envelope env = oscillator_envelope(full, 2 * pi);
        double e = 0;
        for (Eigen::Index i = 0; i < env.t.size(); ++i) {
            const double tau = eps * env.t[i] / 4;
            if (tau < t_a + 0.2 || tau > t_b - 0.2) continue;
            e = std::max(e, std::abs(env.amplitude[i] / (2 * avg.at(tau)[0]) - 1));
        }
        err[k] = e;
    });
    for (std::size_t k = 0; k < runs.size(); ++k) {
        worst = std::max(worst, err[k]);
        detail += runs[k].label + " max rel. envelope error " + fmt(err[k]) + "; ";
    }
    return {worst < 0.1, detail + "window tau in [20, 50], eps=0.01"};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "quadruple-point identity", 1.0, quadruple_identity},
        {2, "region labels vs root counts", 60.0, region_consistency},
        {3, "multiple-root identities on traced curves", 0.0, multiple_root_identities},
        {4, "series residual order", 0.0, residual_order},
        {5, "stability verdicts vs perturbed simulation", 300.0, perturbation_agreement},
        {6, "Case-I exponential rate", 0.0, exponential_rate},
        {7, "Lyapunov decrease (Case I, Case II)", 0.0, lyapunov_decrease},
        {8, "linearization exponent powers", 0.0, exponent_powers},
        {9, "polar vs Cartesian integration", 0.0, polar_vs_cartesian},
        {10, "figure datasets (fig6 capture, fig2/fig3 transitions)", 0.0, figure_reproduction},
        {11, "averaging correspondence with the full oscillator", 120.0, averaging_correspondence},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s <= 0.0 || dt < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d: %s  %s [%.2fs%s]  %s\n", c.id, pass ? "PASS" : "FAIL", c.name, dt,
                    in_time ? "" : ", over budget", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
