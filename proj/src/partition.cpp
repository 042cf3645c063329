#include "autores/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "autores/parallel.hpp"

namespace autores {

namespace {

constexpr double kSnap = 1e-12;
constexpr double kPi = std::numbers::pi;

std::optional<double> p_branch(int j, double delta, double kappa) {
    auto [p1, p2] = p_functions(delta, kappa);
    return j == 1 ? p1 : p2;
}

// δ in [a, b] where p_j(δ) = target, by sampling and bisection.
std::vector<double> crossings(int j, double a, double b, double kappa, double target,
                              int samples = 400) {
    std::vector<double> out;
    if (!(b > a)) return out;
    auto g = [&](double d) -> std::optional<double> {
        if (d == 0.0) return std::nullopt;
        auto p = p_branch(j, d, kappa);
        if (!p) return std::nullopt;
        return *p - target;
    };
    std::optional<double> prev;
    double prev_d = a;
    for (int i = 0; i <= samples; ++i) {
        const double d = a + (b - a) * i / samples;
        const auto v = g(d);
        // Endpoints are n/m points where p_j reaches 0 or 1, possibly tangentially.
        const bool end = i == 0 || i == samples;
        if (v && (*v == 0.0 || (end && std::abs(*v) < 1e-9))) {
            out.push_back(d);
        } else if (v && prev && *prev != 0.0 && ((*prev < 0.0) != (*v < 0.0))) {
            double lo = prev_d, hi = d, flo = *prev;
            for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const auto fm = g(mid);
                if (!fm) break;
                if ((*fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = *fm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev = v;
        prev_d = d;
    }
    return out;
}

struct Piece {
    Branch branch;
    int j;
    double a, b;
};

std::vector<Piece> pieces_for(const SpecialPoints& sp) {
    std::vector<Piece> out;
    out.push_back({Branch::SPlus, 1, sp.n2(), sp.m2});
    switch (sp.regime) {
        case Regime::Below34:
            out.push_back({Branch::SMinus, 1, sp.n1(), *sp.delta_star});
            out.push_back({Branch::SMinus, 2, sp.m1, *sp.delta_star});
            break;
        case Regime::From34To1:
            out.push_back({Branch::SMinus, 1, sp.n1(), sp.m1});
            out.push_back({Branch::SZero, 1, sp.m1, *sp.m3});
            break;
        case Regime::One:
            out.push_back({Branch::SMinus, 1, sp.n1(), sp.m1});
            out.push_back({Branch::SZero, 1, sp.m1, 0.0});
            break;
        case Regime::Above1:
            out.push_back({Branch::SMinus, 1, sp.n1(), sp.m1});
            out.push_back({Branch::SZero, 1, sp.m1, *sp.n3()});
            out.push_back({Branch::SZero, 1, *sp.m3, *sp.n4()});
            break;
    }
    return out;
}

std::vector<Polyline> trace(const Piece& pc, double kappa, int resolution) {
    std::vector<Polyline> done;
    Polyline lower, upper;
    auto flush = [&] {
        for (Polyline* pl : {&lower, &upper}) {
            if (pl->size() >= 2) done.push_back(std::move(*pl));
            pl->clear();
        }
    };
    for (int i = 0; i < resolution; ++i) {
        const double d = pc.a + (pc.b - pc.a) * i / (resolution - 1);
        std::optional<double> p;
        if (d != 0.0) p = p_branch(pc.j, d, kappa);
        if (!p || *p < -kSnap || *p > 1.0 + kSnap) {
            flush();
            continue;
        }
        // p within rounding of 1 is the fold at ν = π/2; asin would turn the last ulp into ~1e-8
        const double pv = std::abs(*p - 1.0) < 1e-12 ? 1.0 : std::clamp(*p, 0.0, 1.0);
        const double nu = std::asin(pv);
        lower.emplace_back(d, nu);
        if (kPi - nu < kPi) upper.emplace_back(d, kPi - nu);
    }
    flush();
    return done;
}

double segment_distance(const Eigen::Vector2d& q, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((q - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (a + t * ab - q).norm();
}

} // namespace

std::string_view to_string(Region r) {
    switch (r) {
        case Region::OmegaPlus: return "OmegaPlus";
        case Region::OmegaMinus: return "OmegaMinus";
        case Region::OmegaZero: return "OmegaZero";
        case Region::OmegaStar: return "OmegaStar";
        case Region::Boundary: return "Boundary";
    }
    return "?";
}

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::SMinus: return "sMinus";
        case Branch::SZero: return "sZero";
        case Branch::SPlus: return "sPlus";
    }
    return "?";
}

Regime regime_of(double kappa) {
    if (std::abs(kappa - 0.75) < kSnap) return Regime::From34To1;
    if (std::abs(kappa - 1.0) < kSnap) return Regime::One;
    if (kappa < 0.75) return Regime::Below34;
    if (kappa < 1.0) return Regime::From34To1;
    return Regime::Above1;
}

std::size_t BifurcationCurve::size() const {
    std::size_t n = 0;
    for (const auto& pl : pieces) n += pl.size();
    return n;
}

std::pair<std::optional<double>, std::optional<double>> z_functions(double delta, double kappa) {
    double disc = 4 * kappa * kappa + 12 * delta * delta - 3;
    if (std::abs(disc) < kSnap) disc = 0.0;
    if (disc < 0.0) return {std::nullopt, std::nullopt};
    const double r = std::sqrt(disc);
    return {(4 * kappa - r) / 3, (4 * kappa + r) / 3};
}

std::pair<std::optional<double>, std::optional<double>> p_functions(double delta, double kappa) {
    if (delta == 0.0) throw DomainError("p_j is singular at delta = 0");
    auto [z1, z2] = z_functions(delta, kappa);
    auto p = [&](std::optional<double> z) -> std::optional<double> {
        if (!z || std::abs(*z) > 1.0 + kSnap) return std::nullopt;
        const double s = std::clamp(*z, -1.0, 1.0);
        return (kappa * (2 * s * s - 1) - s * s * s) / delta;
    };
    return {p(z1), p(z2)};
}

std::optional<double> SpecialPoints::n3() const {
    if (n.size() >= 3) return n[1];
    return std::nullopt;
}

std::optional<double> SpecialPoints::n4() const {
    if (n.size() >= 4) return n[2];
    return std::nullopt;
}

SpecialPoints special_points(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
    SpecialPoints sp;
    sp.kappa = kappa;
    sp.regime = regime_of(kappa);
    if (sp.regime == Regime::One) kappa = 1.0;
    if (std::abs(kappa - 0.75) < kSnap) kappa = 0.75;

    // p₁ is bounded for 0 < |δ| ≤ κ+1; a sign change across δ = 0 is a pole unless κ = 1.
    const double lim = kappa + 1.0;
    const int samples = 40000;
    auto g = [&](double d) -> std::optional<double> {
        if (d == 0.0) return std::nullopt;
        return p_functions(d, kappa).first;
    };
    std::optional<double> prev;
    double prev_d = -lim;
    for (int i = 0; i <= samples; ++i) {
        const double d = -lim + 2 * lim * (i + 0.5) / (samples + 1);
        const auto v = g(d);
        if (v && prev && (*prev < 0.0) != (*v < 0.0) && !(prev_d < 0.0 && d > 0.0)) {
            double lo = prev_d, hi = d, flo = *prev;
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const auto fm = g(mid);
                if (!fm) break;
                if (*fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((*fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = *fm;
                } else {
                    hi = mid;
                }
            }
            const double r = std::abs(*g(lo)) <= std::abs(*g(hi)) ? lo : hi;
            if (std::abs(*g(r)) < 1e-9) sp.n.push_back(r);
        }
        prev = v;
        prev_d = d;
    }
    if (sp.regime == Regime::One) sp.n.push_back(0.0);
    std::sort(sp.n.begin(), sp.n.end());
    if (sp.n.size() < 2) throw NumericalError("failed to locate the roots of p1(., kappa) = 0", -lim, lim);

    sp.m2 = kappa + 1.0;
    if (sp.regime == Regime::Below34) {
        sp.m1 = kappa - 1.0;
    } else {
        sp.m1 = -(std::sqrt(2.0) * kappa + std::sqrt(2 * kappa * kappa - 1)) / std::sqrt(8.0);
        sp.m3 = kappa - 1.0;
    }
    if (kappa < std::sqrt(3.0) / 2) sp.delta_star = -std::sqrt((3 - 4 * kappa * kappa) / 12);
    return sp;
}

std::vector<BifurcationCurve> bifurcation_curves(double kappa, int resolution) {
    if (resolution < 2) throw DomainError("curve resolution must be at least 2");
    const SpecialPoints sp = special_points(kappa);
    std::vector<BifurcationCurve> out;
    auto slot = [&](Branch b) -> BifurcationCurve& {
        for (auto& c : out)
            if (c.branch == b) return c;
        out.push_back({b, kappa, {}});
        return out.back();
    };
    // Fixed emission order s₋, s₀, s₊.
    slot(Branch::SMinus);
    if (sp.regime != Regime::Below34) slot(Branch::SZero);
    slot(Branch::SPlus);
    for (const Piece& pc : pieces_for(sp)) {
        for (auto& pl : trace(pc, sp.regime == Regime::One ? 1.0 : kappa, resolution))
            slot(pc.branch).pieces.push_back(std::move(pl));
    }
    if (sp.regime == Regime::One) {
        Polyline axis;
        for (int i = 0; i < resolution; ++i) axis.emplace_back(0.0, kPi * i / resolution);
        slot(Branch::SZero).pieces.push_back(std::move(axis));
    }
    return out;
}

int expected_root_count(Region r) {
    switch (r) {
        case Region::OmegaPlus:
        case Region::OmegaMinus: return 4;
        case Region::OmegaZero: return 2;
        case Region::OmegaStar: return 0;
        case Region::Boundary: return -1;
    }
    return -1;
}

Region classify_region(const PhaseParams& p, const RootOptions& opt) {
    validate(p);
    const auto roots = find_roots(p, opt);
    for (const auto& r : roots)
        if (r.multiplicity >= 2) return Region::Boundary;
    switch (roots.size()) {
        // At δ = 0 the equation reads sin σ = κ with at most two roots, so the
        // four-root set splits into a component left of s₋ and one right of s₊.
        case 4: return p.delta > 0.0 ? Region::OmegaPlus : Region::OmegaMinus;
        case 2: return Region::OmegaZero;
        case 0: return Region::OmegaStar;
        default: return Region::Boundary;
    }
}

Region region_from_curves(const PhaseParams& p) {
    validate(p);
    return region_from_curves(p, special_points(p.kappa));
}

Region region_from_curves(const PhaseParams& p, const SpecialPoints& sp) {
    validate(p);
    if (regime_of(p.kappa) != sp.regime || std::abs(sp.kappa - p.kappa) > kSnap)
        throw ContractError("special points were computed for a different kappa");
    const double kappa = sp.regime == Regime::One ? 1.0 : p.kappa;
    const double d = p.delta;
    const double sv = std::sin(p.nu);

    const auto plus = crossings(1, sp.n2(), sp.m2, kappa, sv);
    if (!plus.empty() && d > *std::max_element(plus.begin(), plus.end())) return Region::OmegaPlus;

    std::vector<double> minus;
    if (sp.regime == Regime::Below34) {
        minus = crossings(1, sp.n1(), *sp.delta_star, kappa, sv);
        const auto m2 = crossings(2, sp.m1, *sp.delta_star, kappa, sv);
        minus.insert(minus.end(), m2.begin(), m2.end());
    } else {
        minus = crossings(1, sp.n1(), sp.m1, kappa, sv);
    }
    if (!minus.empty() && d < *std::min_element(minus.begin(), minus.end())) return Region::OmegaMinus;

    // Ω*: right of m₁, where sin ν exceeds p₁ (or p₁ is undefined). For κ > 1 the
    // s₀ piece on [m₃, n₄] bounds a further zero-root set where sin ν < p₁.
    double strip_end = 0.0;
    switch (sp.regime) {
        case Regime::Below34: return Region::OmegaZero;
        case Regime::From34To1: strip_end = *sp.m3; break;
        case Regime::One:
            if (d == 0.0) return Region::Boundary;
            strip_end = 0.0;
            break;
        case Regime::Above1: strip_end = *sp.m3; break;
    }
    auto p1_at = [&](double x) { return x != 0.0 ? p_functions(x, kappa).first : std::nullopt; };
    if (d >= sp.m1 && d <= strip_end) {
        const auto p1 = p1_at(d);
        if (!p1 || sv > *p1) return Region::OmegaStar;
    }
    if (sp.regime == Regime::Above1 && d > *sp.m3 && d <= *sp.n4()) {
        const auto p1 = p1_at(d);
        if (p1 && sv < *p1) return Region::OmegaStar;
    }
    return Region::OmegaZero;
}

double distance_to_curves(const std::vector<BifurcationCurve>& curves, double delta, double nu) {
    const Eigen::Vector2d q(delta, nu);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : curves) {
        for (const auto& pl : c.pieces) {
            if (pl.size() == 1) best = std::min(best, (pl.front() - q).norm());
            for (std::size_t i = 1; i < pl.size(); ++i)
                best = std::min(best, segment_distance(q, pl[i - 1], pl[i]));
        }
    }
    return best;
}

bool in_multiple_root_domain(double delta, double kappa) {
    if (delta == 0.0) return false;
    if (kappa * kappa + 3 * delta * delta < 0.75 - kSnap) return false;
    auto [z1, z2] = z_functions(delta, kappa);
    auto unit = [](std::optional<double> z) { return z && std::abs(*z) <= 1.0 + kSnap; };
    if (!unit(z1) && !unit(z2)) return false;
    auto [p1, p2] = p_functions(delta, kappa);
    auto in01 = [](std::optional<double> v) { return v && *v >= -kSnap && *v <= 1.0 + kSnap; };
    return in01(p1) || in01(p2);
}

Mask multiple_root_domain(const GridSpec& g) {
    if (g.nx < 2 || g.ny < 2) throw DomainError("grid resolution must be at least 2 per axis");
    Mask m(g.ny, g.nx);
    parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t j) {
        const int row = static_cast<int>(j);
        for (int i = 0; i < g.nx; ++i) m(row, i) = in_multiple_root_domain(g.x(i), g.y(row));
    });
    return m;
}

} // namespace autores

namespace autores {

std::vector<CurveCrossing> curve_crossings(const std::vector<BifurcationCurve>& curves, double nu) {
    // asin near ±1 loses half the digits, so tangential touches at sin ν = 1 sit ~1e-8 off the line
    constexpr double touch = 1e-7;
    std::vector<CurveCrossing> out;
    for (const auto& c : curves)
        for (const auto& pl : c.pieces)
            for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
                const double a = pl[i][1] - nu, b = pl[i + 1][1] - nu;
                if (std::abs(a) < touch) {
                    out.push_back({c.branch, pl[i][0]});
                } else if (a * b < 0.0) {
                    const double s = a / (a - b);
                    out.push_back({c.branch, pl[i][0] + s * (pl[i + 1][0] - pl[i][0])});
                }
                if (i + 2 == pl.size() && std::abs(b) < touch) out.push_back({c.branch, pl[i + 1][0]});
            }
    std::sort(out.begin(), out.end(),
              [](const CurveCrossing& x, const CurveCrossing& y) { return x.delta < y.delta; });
    std::vector<CurveCrossing> merged;
    for (const auto& x : out)
        if (merged.empty() || std::abs(x.delta - merged.back().delta) > 1e-6) merged.push_back(x);
    return merged;
}

} // namespace autores
