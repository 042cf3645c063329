// Command-line front end: every library operation plus the figure datasets.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "autores/asymptotics.hpp"
#include "autores/designer.hpp"
#include "autores/figures.hpp"
#include "autores/io.hpp"
#include "autores/partition.hpp"
#include "autores/phase_equation.hpp"
#include "autores/simulator.hpp"
#include "autores/stability.hpp"

using json = nlohmann::json;
using namespace autores;

namespace {

constexpr int kUsage = 1;
constexpr int kNumerical = 2;

struct ModelOpts {
    double delta = 0.0, nu = 0.0, kappa = 0.0, lambda = 1.0;
    std::vector<double> alpha_tail, beta_tail, gamma_tail;

    void add(CLI::App* app, bool tails = true) {
        app->add_option("--delta", delta, "parametric amplitude delta")->required();
        app->add_option("--nu", nu, "phase nu in radians")->required();
        app->add_option("--kappa", kappa, "dissipation kappa")->required();
        if (!tails) return;
        app->add_option("--lambda", lambda, "chirp rate lambda")->capture_default_str();
        app->add_option("--alpha-tail", alpha_tail, "alpha_1, alpha_2, ...")->delimiter(',');
        app->add_option("--beta-tail", beta_tail, "beta_1, beta_2, ...")->delimiter(',');
        app->add_option("--gamma-tail", gamma_tail, "gamma_1, gamma_2, ...")->delimiter(',');
    }
    [[nodiscard]] PhaseParams phase() const { return {delta, nu, kappa}; }
    [[nodiscard]] ModelParams model() const {
        if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
        ModelParams m = ModelParams::from_phase(phase(), lambda);
        m.alpha.insert(m.alpha.end(), alpha_tail.begin(), alpha_tail.end());
        m.beta.insert(m.beta.end(), beta_tail.begin(), beta_tail.end());
        m.gamma.insert(m.gamma.end(), gamma_tail.begin(), gamma_tail.end());
        return m;
    }
    [[nodiscard]] json to_json() const {
        return {{"delta", delta}, {"nu", nu}, {"kappa", kappa}, {"lambda", lambda},
                {"alpha_tail", alpha_tail}, {"beta_tail", beta_tail}, {"gamma_tail", gamma_tail}};
    }
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> meta() const {
        auto list = [](const std::vector<double>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + io::num(v[i]);
            return s;
        };
        return {{"delta", io::num(delta)},      {"nu", io::num(nu)},
                {"kappa", io::num(kappa)},      {"lambda", io::num(lambda)},
                {"alpha_tail", list(alpha_tail)}, {"beta_tail", list(beta_tail)},
                {"gamma_tail", list(gamma_tail)}};
    }
};

json root_json(const PhaseRoot& r) {
    return {{"sigma", r.sigma},
            {"multiplicity", r.multiplicity},
            {"derivatives", r.derivs},
            {"well_separated", r.well_separated}};
}

json series_json(const SeriesSolution& s) {
    return {{"case", std::string(to_string(s.kind))},
            {"sign", s.sign},
            {"sigma", s.sigma},
            {"step", "1/" + std::to_string(s.step_den)},
            {"order", s.order},
            {"leading", s.leading},
            {"rho_from_minus1", s.rho},
            {"psi", s.psi}};
}

std::vector<PhaseRoot> select_roots(const PhaseParams& p, std::optional<double> sigma) {
    RootOptions o;
    auto roots = find_roots(p, o);
    if (!sigma) return roots;
    const PhaseRoot* best = nullptr;
    for (const auto& r : roots)
        if (!best || std::abs(angle_diff(r.sigma, *sigma)) < std::abs(angle_diff(best->sigma, *sigma))) best = &r;
    if (!best) throw DomainError("the phase equation has no roots for these parameters");
    return {*best};
}

std::filesystem::path out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("AUTORES_OUT_DIR")) return env;
    return ".";
}

void emit_json(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    const std::filesystem::path p(out);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw DomainError("cannot open " + out + " for writing");
    f << j.dump(2) << '\n';
}

json envelope(const std::string& command, const json& params) {
    return {{"tool", std::string(io::tool_version)}, {"command", command}, {"params", params}};
}

// Reads `key=value` lines; keys are long option names without dashes.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw CLI::ValidationError("--config", "malformed line: " + line);
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

// Merges config entries into argv; flags given on the command line win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    if (path.empty()) return args;
    for (const auto& [k, v] : read_config(path)) {
        const std::string flag = "--" + k;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        if (v == "true") {
            args.push_back(flag);
        } else if (v != "false") {
            args.push_back(flag);
            args.push_back(v);
        }
    }
    return args;
}

std::string joined(const std::vector<std::string>& args) {
    std::string s = "autores";
    for (const auto& a : args) s += " " + a;
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Autoresonance under combined excitation: phase equation, partition, series, "
                 "stability, simulation and figure datasets.",
                 "autores"};
    app.set_version_flag("--version", std::string(io::tool_version));
    app.require_subcommand(1);

    std::string out;
    std::string format = "json";

    // roots
    ModelOpts m_roots;
    RootOptions ropt;
    auto* roots = app.add_subcommand("roots", "roots of the phase equation with multiplicities");
    m_roots.add(roots, false);
    roots->add_option("--tol-root", ropt.tol_root, "polishing tolerance")->capture_default_str();
    roots->add_option("--tol-sep", ropt.tol_sep, "separation tolerance")->capture_default_str();
    roots->add_option("--out", out, "output file (default stdout)");
    roots->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // region
    ModelOpts m_region;
    auto* region = app.add_subcommand("region", "region label of (delta, nu, kappa)");
    m_region.add(region, false);
    region->add_option("--out", out, "output file (default stdout)");

    // curves
    double c_kappa = 0.0;
    int c_res = 2001;
    auto* curves = app.add_subcommand("curves", "bifurcation curves s-, s0, s+ as CSV");
    curves->add_option("--kappa", c_kappa, "dissipation kappa")->required();
    curves->add_option("--resolution", c_res, "delta samples per piece")->capture_default_str();
    curves->add_option("--out", out, "output file (default $AUTORES_OUT_DIR/curves_k<kappa>.csv)");

    // domain
    GridSpec grid{-3.0, 3.0, 0.0, 2.0, 601, 201};
    auto* domain = app.add_subcommand("domain", "multiple-root domain mask over (delta, kappa)");
    domain->add_option("--delta-min", grid.x_min)->capture_default_str();
    domain->add_option("--delta-max", grid.x_max)->capture_default_str();
    domain->add_option("--kappa-min", grid.y_min)->capture_default_str();
    domain->add_option("--kappa-max", grid.y_max)->capture_default_str();
    domain->add_option("--nx", grid.nx)->capture_default_str()->check(CLI::Range(2, 100000));
    domain->add_option("--ny", grid.ny)->capture_default_str()->check(CLI::Range(2, 100000));
    domain->add_option("--out", out, "output file (default $AUTORES_OUT_DIR/domain.csv)");

    // series / residual / stability
    ModelOpts m_series;
    std::optional<double> sel_sigma;
    int order = -1;
    int sign = 0;
    double tau = 1e4;
    auto* series = app.add_subcommand("series", "asymptotic series coefficients at the roots");
    m_series.add(series);
    series->add_option("--sigma", sel_sigma, "use only the root nearest this phase");
    series->add_option("--order", order, "truncation order (default: case maximum)");
    series->add_option("--sign", sign, "branch sign for double/quadruple roots (default: both)")
        ->check(CLI::IsMember({-1, 1}));
    series->add_option("--out", out, "output file (default stdout)");

    auto* residual = app.add_subcommand("residual", "residuals of the truncated series");
    m_series.add(residual);
    residual->add_option("--sigma", sel_sigma, "use only the root nearest this phase");
    residual->add_option("--order", order, "truncation order (default: case maximum)");
    residual->add_option("--tau", tau, "slow time")->capture_default_str();
    residual->add_option("--out", out, "output file (default stdout)");

    bool fit = false;
    auto* stability = app.add_subcommand("stability", "stability verdicts and linearization exponents");
    m_series.add(stability);
    stability->add_option("--sigma", sel_sigma, "use only the root nearest this phase");
    stability->add_option("--tau", tau, "slow time for the exponents")->capture_default_str();
    stability->add_flag("--fit", fit, "also fit the growth power of |z| over [1e3, 1e6]");
    stability->add_option("--out", out, "output file (default stdout)");

    // simulate
    ModelOpts m_sim;
    IntegratorOptions iopt;
    std::optional<double> rho0, psi0;
    double tau0 = 20.0, tau1 = 200.0;
    std::string mode = "polar";
    auto* simulate = app.add_subcommand("simulate", "integrate the averaged system");
    m_sim.add(simulate);
    simulate->add_option("--rho0", rho0, "initial amplitude (default: stable series point)");
    simulate->add_option("--psi0", psi0, "initial phase (default: stable series point)");
    simulate->add_option("--sigma", sel_sigma, "series root used when rho0/psi0 are omitted");
    simulate->add_option("--tau0", tau0)->capture_default_str();
    simulate->add_option("--tau1", tau1)->capture_default_str();
    simulate->add_option("--rtol", iopt.rtol)->capture_default_str();
    simulate->add_option("--atol", iopt.atol)->capture_default_str();
    simulate->add_option("--samples", iopt.samples)->capture_default_str()->check(CLI::Range(2, 100000000));
    simulate->add_option("--mode", mode)->check(CLI::IsMember({"polar", "cartesian"}))->capture_default_str();
    simulate->add_option("--out", out, "output file (default $AUTORES_OUT_DIR/trajectory.csv)");

    // oscillator
    ModelOpts m_osc;
    double epsilon = 0.01;
    OscillatorOptions oopt;
    auto* oscillator = app.add_subcommand("oscillator", "integrate the full oscillator matched to the model");
    m_osc.add(oscillator);
    oscillator->add_option("--epsilon", epsilon)->capture_default_str();
    oscillator->add_option("--tau0", tau0, "start, in slow time")->capture_default_str();
    oscillator->add_option("--tau1", tau1, "end, in slow time")->capture_default_str();
    oscillator->add_option("--rho0", rho0, "initial amplitude (default: stable series point)");
    oscillator->add_option("--psi0", psi0, "initial phase (default: stable series point)");
    oscillator->add_option("--sigma", sel_sigma, "series root used when rho0/psi0 are omitted");
    oscillator->add_option("--sample-dt", oopt.sample_dt)->capture_default_str();
    oscillator->add_option("--rtol", oopt.rtol)->capture_default_str();
    oscillator->add_option("--atol", oopt.atol)->capture_default_str();
    oscillator->add_option("--out", out, "output file (default $AUTORES_OUT_DIR/oscillator.csv)");

    // basin
    ModelOpts m_basin;
    BasinSpec bspec;
    auto* basin = app.add_subcommand("basin", "capture mask over a grid of initial data");
    m_basin.add(basin);
    basin->add_option("--rho-min", bspec.rho_min)->required();
    basin->add_option("--rho-max", bspec.rho_max)->required();
    basin->add_option("--psi-min", bspec.psi_min)->required();
    basin->add_option("--psi-max", bspec.psi_max)->required();
    basin->add_option("--n-rho", bspec.n_rho)->capture_default_str()->check(CLI::Range(2, 100000));
    basin->add_option("--n-psi", bspec.n_psi)->capture_default_str()->check(CLI::Range(2, 100000));
    basin->add_option("--tau0", bspec.tau0)->capture_default_str();
    basin->add_option("--tau1", bspec.tau1)->capture_default_str();
    basin->add_option("--seed", bspec.seed)->capture_default_str();
    basin->add_flag("--jitter", bspec.jitter, "sample inside each cell");
    basin->add_option("--out", out, "output file (default $AUTORES_OUT_DIR/basin.csv)");

    // design
    DesignSpec dspec;
    auto* design = app.add_subcommand("design", "choose nu for a prescribed phase shift");
    design->add_option("--sigma", dspec.sigma_target, "target phase")->required();
    design->add_option("--kappa", dspec.kappa)->required();
    design->add_option("--delta", dspec.delta)->required();
    design->add_option("--out", out, "output file (default stdout)");

    // figure
    std::string fig_name;
    auto* figure = app.add_subcommand("figure", "emit the datasets of a figure");
    figure->add_option("name", fig_name)->required()->check(CLI::IsMember(figure_names()));
    figure->add_option("--out", out, "output directory (default $AUTORES_OUT_DIR or .)");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    const std::string regenerate = joined(args);

    try {
        if (*roots) {
            const auto rs = find_roots(m_roots.phase(), ropt);
            if (format == "csv") {
                io::CsvWriter w(out.empty() ? out_dir("") / "roots.csv" : std::filesystem::path(out),
                                {"roots", m_roots.meta(), regenerate, {}},
                                {"sigma", "multiplicity", "P0", "P1", "P2", "P3", "P4"});
                for (const auto& r : rs)
                    w.row({io::num(r.sigma), std::to_string(r.multiplicity), io::num(r.derivs[0]),
                           io::num(r.derivs[1]), io::num(r.derivs[2]), io::num(r.derivs[3]), io::num(r.derivs[4])});
            } else {
                json j = envelope("roots", m_roots.to_json());
                j["roots"] = json::array();
                for (const auto& r : rs) j["roots"].push_back(root_json(r));
                emit_json(j, out);
            }
        } else if (*region) {
            const PhaseParams p = m_region.phase();
            validate(p);
            json j = envelope("region", m_region.to_json());
            j["region"] = std::string(to_string(classify_region(p)));
            j["region_from_curves"] = std::string(to_string(region_from_curves(p)));
            j["root_count"] = find_roots(p).size();
            emit_json(j, out);
        } else if (*curves) {
            validate(PhaseParams{0.0, 0.0, c_kappa});
            const auto cs = bifurcation_curves(c_kappa, c_res);
            io::CsvWriter w(out.empty() ? out_dir("") / ("curves_k" + io::num(c_kappa) + ".csv")
                                        : std::filesystem::path(out),
                            {"bifurcation curves", {{"kappa", io::num(c_kappa)}, {"resolution", std::to_string(c_res)}},
                             regenerate, {}},
                            {"branch", "piece", "delta", "nu"});
            for (const auto& c : cs)
                for (std::size_t k = 0; k < c.pieces.size(); ++k)
                    for (const auto& v : c.pieces[k])
                        w.row({std::string(to_string(c.branch)), std::to_string(k), io::num(v[0]), io::num(v[1])});
            std::cout << w.path().string() << '\n';
        } else if (*domain) {
            const auto path = out.empty() ? out_dir("") / "domain.csv" : std::filesystem::path(out);
            io::write_mask(path, {"multiple-root domain mask (rows: kappa, columns: delta)", {}, regenerate, {}},
                           grid, multiple_root_domain(grid));
            std::cout << path.string() << '\n';
        } else if (*series || *residual || *stability) {
            const ModelParams mp = m_series.model();
            mp.validate_normalized();
            const char* name = *series ? "series" : *residual ? "residual" : "stability";
            json j = envelope(name, m_series.to_json());
            j["roots"] = json::array();
            for (const auto& r : select_roots(m_series.phase(), sel_sigma)) {
                json jr = root_json(r);
                const SeriesCase sc = series_case(r.multiplicity);
                const int k = order < 0 ? max_series_order(sc) : order;
                std::vector<SeriesResult> results;
                if (sign != 0 || sc == SeriesCase::Simple || sc == SeriesCase::Triple) {
                    results.push_back(build_series(mp, r, k, sign == 0 ? 1 : sign));
                } else {
                    results.push_back(build_series(mp, r, k, +1));
                    results.push_back(build_series(mp, r, k, -1));
                }
                jr["branches"] = json::array();
                for (const auto& res : results) {
                    if (const auto* ns = std::get_if<NoSeries>(&res)) {
                        jr["branches"].push_back({{"no_series", {{"condition", ns->condition}, {"value", ns->value}}}});
                        continue;
                    }
                    const auto& s = std::get<SeriesSolution>(res);
                    json jb = series_json(s);
                    if (*residual) {
                        const Residual rr = residual_norm(s, mp, tau);
                        jb["residual"] = {{"tau", tau}, {"r1", rr.r1}, {"r2", rr.r2}};
                    }
                    if (*stability) {
                        const StabilityVerdict v = classify_stability(r, s, mp);
                        const auto [zp, zm] = linearization_exponents(r, s, mp, tau);
                        jb["verdict"] = {{"status", std::string(to_string(v.status))},
                                         {"weights", {v.w1.str(), v.w2.str()}},
                                         {"branch", v.branch},
                                         {"exponent_model",
                                          {{"kind", std::string(to_string(v.exponent_model.kind))},
                                           {"power", v.exponent_model.power.str()},
                                           {"coefficient", v.exponent_model.coefficient}}}};
                        jb["exponents"] = {{"tau", tau},
                                           {"z_plus", {zp.real(), zp.imag()}},
                                           {"z_minus", {zm.real(), zm.imag()}}};
                        jb["lyapunov_omega_sq"] = make_frame(v, s, mp).omega_sq;
                        if (fit) jb["fitted_power"] = fit_exponent_power(r, s, mp);
                    }
                    jr["branches"].push_back(jb);
                }
                j["roots"].push_back(jr);
            }
            emit_json(j, out);
        } else if (*simulate || *oscillator) {
            const ModelOpts& mo = *simulate ? m_sim : m_osc;
            const ModelParams mp = mo.model();
            if (!rho0 || !psi0) {
                const PhaseRoot* pick = nullptr;
                const auto rs = find_roots(mo.phase());
                for (const auto& r : rs)
                    if (r.multiplicity == 1 && r.derivs[1] > 0 &&
                        (!pick || (sel_sigma && std::abs(angle_diff(r.sigma, *sel_sigma)) <
                                                    std::abs(angle_diff(pick->sigma, *sel_sigma)))))
                        pick = &r;
                if (!pick) throw DomainError("no stable simple root; pass --rho0 and --psi0");
                mp.validate_normalized();
                const auto s = std::get<SeriesSolution>(build_series(mp, *pick, 3));
                const SeriesPoint sp = evaluate_series(s, tau0);
                if (!rho0) rho0 = sp.rho;
                if (!psi0) psi0 = sp.psi;
            }
            auto meta = mo.meta();
            meta.emplace_back("rho0", io::num(*rho0));
            meta.emplace_back("psi0", io::num(*psi0));
            meta.emplace_back("tau0", io::num(tau0));
            meta.emplace_back("tau1", io::num(tau1));
            if (*simulate) {
                iopt.mode = mode == "polar" ? CoordinateMode::Polar : CoordinateMode::Cartesian;
                const Trajectory tr = integrate(mp, *rho0, *psi0, tau0, tau1, iopt);
                meta.emplace_back("mode", mode);
                meta.emplace_back("rtol", io::num(iopt.rtol));
                meta.emplace_back("atol", io::num(iopt.atol));
                io::CsvWriter w(out.empty() ? out_dir("") / "trajectory.csv" : std::filesystem::path(out),
                                {"averaged-system trajectory", meta, regenerate,
                                 {"method: " + tr.meta.method, "accepted_steps: " + std::to_string(tr.meta.stats.accepted),
                                  "rejected_steps: " + std::to_string(tr.meta.stats.rejected)}},
                                {"tau", "rho", "psi"});
                for (Eigen::Index i = 0; i < tr.size(); ++i) w.row(std::vector<double>{tr.tau[i], tr.rho[i], tr.psi[i]});
                std::cout << w.path().string() << '\n';
            } else {
                const OscillatorParams op = oscillator_from_model(mp, epsilon);
                const Eigen::Vector2d x0 = oscillator_state_from_averaged(op, *rho0, *psi0, tau0);
                const OscillatorRun run =
                    simulate_full_oscillator(op, 4 * tau0 / epsilon, 4 * tau1 / epsilon, x0[0], x0[1], oopt);
                meta.emplace_back("epsilon", io::num(epsilon));
                meta.emplace_back("vartheta", io::num(op.vartheta));
                meta.emplace_back("nu_oscillator", io::num(op.nu));
                io::CsvWriter w(out.empty() ? out_dir("") / "oscillator.csv" : std::filesystem::path(out),
                                {"full oscillator run", meta, regenerate, {}}, {"t", "x", "xdot"});
                for (Eigen::Index i = 0; i < run.t.size(); ++i)
                    w.row(std::vector<double>{run.t[i], run.x[i], run.xdot[i]});
                std::cout << w.path().string() << '\n';
            }
        } else if (*basin) {
            const ModelParams mp = m_basin.model();
            const BasinResult res = basin_sample(mp, bspec);
            const GridSpec g{bspec.rho_min, bspec.rho_max, bspec.psi_min, bspec.psi_max, bspec.n_rho, bspec.n_psi};
            auto meta = m_basin.meta();
            meta.emplace_back("seed", std::to_string(bspec.seed));
            meta.emplace_back("jitter", bspec.jitter ? "1" : "0");
            meta.emplace_back("tau0", io::num(bspec.tau0));
            meta.emplace_back("tau1", io::num(bspec.tau1));
            meta.emplace_back("capture_fraction", io::num(res.fraction));
            const auto path = out.empty() ? out_dir("") / "basin.csv" : std::filesystem::path(out);
            io::write_mask(path, {"capture mask (rows: psi0, columns: rho0; axis header reads rho for delta, psi for kappa)",
                                  meta, regenerate, {}},
                           g, res.captured);
            std::cout << path.string() << " fraction=" << io::num(res.fraction) << '\n';
        } else if (*design) {
            const Design d = design_excitation(dspec);
            json j = envelope("design", {{"sigma", dspec.sigma_target}, {"kappa", dspec.kappa}, {"delta", dspec.delta}});
            j["design"] = {{"delta", d.delta}, {"nu", d.nu}, {"recipe", d.recipe}};
            j["certificate"] = {{"P_value", d.certificate.P_value}, {"P_prime", d.certificate.P_prime}};
            emit_json(j, out);
        } else if (*figure) {
            for (const auto& f : write_figure(fig_name, out_dir(out))) std::cout << f.string() << '\n';
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return 0;
}
