#include "autores/figures.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "autores/asymptotics.hpp"
#include "autores/errors.hpp"
#include "autores/io.hpp"
#include "autores/model.hpp"
#include "autores/parallel.hpp"
#include "autores/partition.hpp"

namespace autores {

namespace {

constexpr double pi = std::numbers::pi;
const std::vector<double> panel_kappas{0.4, 0.9, 1.0, 1.6};

io::Meta meta(const std::string& fig, const std::string& dataset,
              std::vector<std::pair<std::string, std::string>> params) {
    return {fig + ": " + dataset, std::move(params), "autores figure " + fig + " --out <dir>", {}};
}

std::string kappa_tag(double k) {
    std::string s = io::num(k);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

void fig1(const std::filesystem::path& dir, std::vector<std::filesystem::path>& files) {
    for (double k : panel_kappas) {
        io::CsvWriter w(dir / ("fig1_k" + kappa_tag(k) + ".csv"),
                        meta("fig1", "p1 and p2 versus delta", {{"kappa", io::num(k)}}),
                        {"delta", "p1", "p2", "z1", "z2"});
        const int n = 1200;
        for (int i = 0; i < n; ++i) {
            const double d = -3.0 + 6.0 * (i + 0.5) / n;
            const auto [p1, p2] = p_functions(d, k);
            const auto [z1, z2] = z_functions(d, k);
            auto cell = [](const std::optional<double>& v) { return v ? io::num(*v) : std::string(); };
            w.row({io::num(d), cell(p1), cell(p2), cell(z1), cell(z2)});
        }
        files.push_back(w.path());
    }
}

void write_curves(const std::filesystem::path& path, const std::string& fig, double k,
                  const std::vector<BifurcationCurve>& curves) {
    io::CsvWriter w(path, meta(fig, "bifurcation curves", {{"kappa", io::num(k)}}),
                    {"branch", "piece", "delta", "nu"});
    for (const auto& c : curves)
        for (std::size_t p = 0; p < c.pieces.size(); ++p)
            for (const auto& v : c.pieces[p])
                w.row({std::string(to_string(c.branch)), std::to_string(p), io::num(v[0]), io::num(v[1])});
}

void fig2(const std::filesystem::path& dir, std::vector<std::filesystem::path>& files) {
    for (double k : panel_kappas) {
        const auto curves = bifurcation_curves(k);
        const auto curve_path = dir / ("fig2_curves_k" + kappa_tag(k) + ".csv");
        write_curves(curve_path, "fig2", k, curves);
        files.push_back(curve_path);

        const int nx = 241, ny = 121;
        std::vector<int> counts(static_cast<std::size_t>(nx * ny));
        std::vector<Region> labels(counts.size());
        parallel_for(counts.size(), [&](std::size_t c) {
            const int i = static_cast<int>(c % nx), j = static_cast<int>(c / nx);
            const PhaseParams p{-3.0 + 6.0 * i / (nx - 1), pi * j / ny, k};
            counts[c] = static_cast<int>(find_roots(p).size());
            labels[c] = classify_region(p);
        });
        io::CsvWriter w(dir / ("fig2_regions_k" + kappa_tag(k) + ".csv"),
                        meta("fig2", "region labels on a (delta, nu) grid",
                             {{"kappa", io::num(k)}, {"nx", std::to_string(nx)}, {"ny", std::to_string(ny)}}),
                        {"delta", "nu", "region", "root_count"});
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const auto c = static_cast<std::size_t>(j * nx + i);
                w.row({io::num(-3.0 + 6.0 * i / (nx - 1)), io::num(pi * j / ny),
                       std::string(to_string(labels[c])), std::to_string(counts[c])});
            }
        files.push_back(w.path());
    }
}

// Roots versus δ for one panel, plus the curve crossings and the degenerate roots at them.
void root_panel(const std::filesystem::path& dir, const std::string& fig, const RootPanel& panel,
                std::vector<std::filesystem::path>& files) {
    const std::vector<std::pair<std::string, std::string>> params{
        {"kappa", io::num(panel.kappa)}, {"nu", io::num(panel.nu)}};
    const int n = 1201;
    std::vector<std::vector<PhaseRoot>> roots(n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        roots[i] = find_roots(PhaseParams{-3.0 + 6.0 * static_cast<double>(i) / (n - 1), panel.nu, panel.kappa});
    });
    io::CsvWriter w(dir / (fig + "_" + panel.label + "_roots.csv"), meta(fig, "roots versus delta", params),
                    {"delta", "root_count", "sigma", "multiplicity", "P1", "P2", "P3", "P4", "stable"});
    for (int i = 0; i < n; ++i) {
        const double d = -3.0 + 6.0 * i / (n - 1);
        const auto count = std::to_string(roots[static_cast<std::size_t>(i)].size());
        if (roots[static_cast<std::size_t>(i)].empty()) w.row({io::num(d), count, "", "", "", "", "", "", ""});
        for (const auto& r : roots[static_cast<std::size_t>(i)])
            w.row({io::num(d), count, io::num(r.sigma), std::to_string(r.multiplicity),
                   io::num(r.derivs[1]), io::num(r.derivs[2]), io::num(r.derivs[3]), io::num(r.derivs[4]),
                   r.multiplicity == 1 && r.derivs[1] > 0 ? "1" : "0"});
    }
    files.push_back(w.path());

    const auto crossings = curve_crossings(bifurcation_curves(panel.kappa), panel.nu);
    io::CsvWriter t(dir / (fig + "_" + panel.label + "_transitions.csv"),
                    meta(fig, "curve crossings along delta", params),
                    {"branch", "delta", "sigma", "multiplicity", "P2", "P3", "P4"});
    RootOptions relaxed;
    relaxed.tol_root = 1e-6;
    for (const auto& c : crossings) {
        bool any = false;
        for (const auto& r : find_roots(PhaseParams{c.delta, panel.nu, panel.kappa}, relaxed)) {
            if (r.multiplicity < 2) continue;
            any = true;
            t.row({std::string(to_string(c.branch)), io::num(c.delta), io::num(r.sigma),
                   std::to_string(r.multiplicity), io::num(r.derivs[2]), io::num(r.derivs[3]),
                   io::num(r.derivs[4])});
        }
        if (!any) t.row({std::string(to_string(c.branch)), io::num(c.delta), "", "", "", "", ""});
    }
    files.push_back(t.path());
}

// Degenerate points of multiplicity 3 and 4 on the fig35 panels, from their closed forms.
void degenerate_points(const std::filesystem::path& dir, std::vector<std::filesystem::path>& files) {
    io::CsvWriter w(dir / "fig35_degenerate_points.csv",
                    meta("fig35", "roots of multiplicity 3 and 4", {}),
                    {"panel", "kappa", "delta", "nu", "sigma", "multiplicity", "P3", "P4"});
    RootOptions relaxed;
    relaxed.tol_root = 1e-6;
    for (const auto& panel : root_panels("fig35")) {
        double d = 0.0;
        if (panel.label == "a") d = -1.0 / std::sqrt(6.0);
        else if (panel.label == "b") d = -0.25;
        else continue;
        for (const auto& r : find_roots(PhaseParams{d, panel.nu, panel.kappa}, relaxed))
            if (r.multiplicity >= 3)
                w.row({panel.label, io::num(panel.kappa), io::num(d), io::num(panel.nu), io::num(r.sigma),
                       std::to_string(r.multiplicity), io::num(r.derivs[3]), io::num(r.derivs[4])});
    }
    files.push_back(w.path());
}

void fig4(const std::filesystem::path& dir, std::vector<std::filesystem::path>& files) {
    GridSpec g{-2.0, 2.0, 0.0, 2.0, 401, 201};
    const auto path = dir / "fig4_domain.csv";
    io::write_mask(path, meta("fig4", "multiple-root domain mask (rows: kappa, columns: delta)", {}), g,
                   multiple_root_domain(g));
    files.push_back(path);
}

void fig6(const std::filesystem::path& dir, std::vector<std::filesystem::path>& files) {
    for (const auto& run : capture_runs()) {
        const Trajectory tr = capture_trajectory(run);
        io::CsvWriter w(dir / ("fig6_" + run.label + ".csv"),
                        meta("fig6", run.label + " trajectory",
                             {{"lambda", "1"},
                              {"delta", io::num(run.phase.delta)},
                              {"nu", io::num(run.phase.nu)},
                              {"kappa", io::num(run.phase.kappa)},
                              {"sigma_design", io::num(run.sigma_design)},
                              {"tau0", io::num(run.tau0)},
                              {"offset", "0.001"},
                              {"tau1", "1000"},
                              {"rtol", io::num(tr.meta.rtol)},
                              {"atol", io::num(tr.meta.atol)}}),
                        {"tau", "rho", "psi"});
        for (Eigen::Index i = 0; i < tr.size(); ++i) w.row(std::vector<double>{tr.tau[i], tr.rho[i], tr.psi[i]});
        files.push_back(w.path());
    }
}

} // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "fig33", "fig34", "fig35", "fig6"};
    return names;
}

std::vector<RootPanel> root_panels(std::string_view figure) {
    if (figure == "fig35")
        return {{"a", 0.5, std::asin(19.0 * std::sqrt(6.0) / 54.0)},
                {"b", 0.75, pi / 2},
                {"c", std::sqrt(0.3), 2.79}};
    return {{"a", 0.4, pi / 2}, {"b", 0.9, pi / 2}, {"c", 1.6, pi / 4}};
}

std::vector<CaptureRun> capture_runs() {
    // The gray σ = 0 mode lies 0.076 rad from a saddle root; at moderate τ the 1/τ
    // corrections bring the two particular solutions together, so that run starts later.
    return {{"black", {-2.0, 5 * pi / 6, 1.0}, pi, 20.0},
            {"gray", {-2.0 / std::sqrt(3.0), 2 * pi / 3, 1.0}, 0.0, 400.0},
            {"blue", {-1.5, pi / 6, 0.25}, pi / 2, 20.0}};
}

Trajectory capture_trajectory(const CaptureRun& run) {
    const ModelParams mp = ModelParams::from_phase(run.phase, 1.0);
    const auto roots = find_roots(run.phase);
    const PhaseRoot* best = nullptr;
    for (const auto& r : roots)
        if (r.multiplicity == 1 && r.derivs[1] > 0 &&
            (!best || std::abs(angle_diff(r.sigma, run.sigma_design)) <
                          std::abs(angle_diff(best->sigma, run.sigma_design))))
            best = &r;
    if (!best) throw NumericalError("no stable simple root for capture run " + run.label);
    const auto series = std::get<SeriesSolution>(build_series(mp, *best, 3));
    const SeriesPoint p0 = evaluate_series(series, run.tau0);
    IntegratorOptions opt;
    opt.mode = CoordinateMode::Cartesian;
    return integrate(mp, p0.rho + 1e-3, p0.psi + 1e-3, run.tau0, 1000.0, opt);
}

std::vector<std::filesystem::path> write_figure(std::string_view name, const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    std::filesystem::create_directories(dir);
    const std::string fig(name);
    if (name == "fig1") fig1(dir, files);
    else if (name == "fig2") fig2(dir, files);
    else if (name == "fig3" || name == "fig33" || name == "fig34") {
        for (const auto& p : root_panels(name)) root_panel(dir, fig, p, files);
    } else if (name == "fig35") {
        for (const auto& p : root_panels(name)) root_panel(dir, fig, p, files);
        degenerate_points(dir, files);
    } else if (name == "fig4") fig4(dir, files);
    else if (name == "fig6") fig6(dir, files);
    else throw DomainError("unknown figure '" + fig + "'");
    return files;
}

} // namespace autores
