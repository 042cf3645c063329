#include "autores/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace autores {

namespace {

struct Ctx {
    double sl, lam, b0, delta;
    double a1, a2, b1, b2, g1, g2;
    double s1, c1, s2, c2;
    std::array<double, 5> d;
};

Ctx make_ctx(const ModelParams& p, double sigma) {
    Ctx c{};
    c.lam = p.lambda;
    c.sl = std::sqrt(p.lambda);
    c.b0 = p.beta_k(0);
    c.delta = c.b0 * c.sl;
    c.a1 = p.alpha_k(1);
    c.a2 = p.alpha_k(2);
    c.b1 = p.beta_k(1);
    c.b2 = p.beta_k(2);
    c.g1 = p.gamma_k(1);
    c.g2 = p.gamma_k(2);
    c.s1 = std::sin(sigma);
    c.c1 = std::cos(sigma);
    c.s2 = std::sin(2 * sigma + p.nu);
    c.c2 = std::cos(2 * sigma + p.nu);
    c.d = eval_phase_all(sigma, p.phase());
    return c;
}

// Shared A_k for the half-integer lattice.
double A1(const Ctx& c) { return (c.delta * c.c2 - c.c1) / c.sl; }
double A2(const Ctx& c, double psi1) { return -psi1 / c.sl * (2 * c.delta * c.s2 - c.s1); }
double A3(const Ctx& c, double rho1, double psi1, double psi2) {
    return -rho1 * rho1 + c.b1 * c.c2 - (c.a1 - rho1 / c.sl) * c.c1 / c.sl -
           psi2 / c.sl * (2 * c.delta * c.s2 - c.s1) -
           psi1 * psi1 / (2 * c.sl) * (4 * c.delta * c.c2 - c.c1);
}

SeriesSolution skeleton(SeriesCase kind, double sigma, int step_den, int order, double lambda) {
    SeriesSolution s;
    s.kind = kind;
    s.sigma = sigma;
    s.step_den = step_den;
    s.order = order;
    s.lambda = lambda;
    return s;
}

void truncate(SeriesSolution& s, int rho_last, int psi_last) {
    s.rho.resize(static_cast<std::size_t>(rho_last + 2), 0.0);
    s.psi.resize(static_cast<std::size_t>(psi_last + 1), 0.0);
}

SeriesResult simple(const ModelParams& p, const Ctx& c, double sigma, int K) {
    auto s = skeleton(SeriesCase::Simple, sigma, 2, K, p.lambda);
    const double P1 = c.d[1];
    const double rho1 = A1(c) / (2 * c.sl);
    const double psi1 = 0.0;
    const double rho2 = A2(c, psi1) / (2 * c.sl);
    const double B2 = -c.d[2] * psi1 * psi1 / 2 + (c.a1 - rho1 / c.sl) * c.s1 - c.b1 * c.sl * c.s2 -
                      (1 + 2 * c.g1) * c.sl / 2;
    const double psi2 = B2 / P1;
    const double rho3 = A3(c, rho1, psi1, psi2) / (2 * c.sl);
    const double B3 = -psi1 * psi2 * c.d[2] - rho2 / c.sl * c.s1 - psi1 * psi1 * psi1 / 6 * c.d[3] +
                      c.a1 * psi1 * c.c1 - 2 * psi1 * (c.b1 * c.sl + c.b0 * rho1) * c.c2;
    const double psi3 = B3 / P1;
    s.leading = psi2;
    s.rho = {c.sl, 0.0, rho1, rho2, rho3};
    s.psi = {sigma, psi1, psi2, psi3};
    truncate(s, K, K);
    return s;
}

SeriesResult double_root(const ModelParams& p, const Ctx& c, double sigma, int K, int sign) {
    const double P2 = c.d[2];
    const double C = double_root_C(p, sigma);
    if (!(P2 * C > 0.0)) return NoSeries{"P''(sigma)*C(sigma) > 0", P2 * C};
    const double phi = std::sqrt(2 * C / P2);
    auto s = skeleton(SeriesCase::Double, sigma, 2, K, p.lambda);
    s.sign = sign;
    s.leading = phi;
    const double psi1 = sign * phi;
    const double rho1 = A1(c) / (2 * c.sl);
    const double rho2 = A2(c, psi1) / (2 * c.sl);
    const double C2 = -psi1 * psi1 * psi1 / 6 * c.d[3] + c.a1 * psi1 * c.c1 -
                      2 * psi1 * (c.b1 * c.sl + c.b0 * rho1) * c.c2;
    const double psi2 = (C2 - c.s1 / c.sl * rho2) / (P2 * psi1);
    const double rho3 = A3(c, rho1, psi1, psi2) / (2 * c.sl);
    const double q = c.b1 * c.sl + c.b0 * rho1;
    const double C3 = rho1 / 2 - c.g1 * rho1 - c.g2 * c.sl - psi2 * psi2 / 2 * P2 -
                      psi1 * psi1 * psi2 / 2 * c.d[3] - std::pow(psi1, 4) / 24 * c.d[4] +
                      c.a1 * (psi2 * c.c1 - psi1 * psi1 * c.s1 / 2) + c.a2 * c.s1 -
                      (2 * psi2 * q + 2 * psi1 * c.b0 * rho2) * c.c2 +
                      (2 * psi1 * psi1 * q - c.b2 * c.sl - c.b1 * rho1) * c.s2;
    const double psi3 = (C3 - c.s1 / c.sl * rho3) / (P2 * psi1);
    s.rho = {c.sl, 0.0, rho1, rho2, rho3};
    s.psi = {sigma, psi1, psi2, psi3};
    truncate(s, K, K);
    return s;
}

SeriesResult triple_root(const ModelParams& p, const Ctx& c, double sigma, int K) {
    const double P3 = c.d[3], P4 = c.d[4];
    const double N = triple_root_N(p, sigma);
    if (N == 0.0) return NoSeries{"N(sigma) != 0", N};
    const double chi = std::cbrt(N / P3);
    auto s = skeleton(SeriesCase::Triple, sigma, 6, K, p.lambda);
    s.leading = chi;
    const double den = P3 * chi * chi / 2;
    const double psi2 = chi;
    const double rho3 = -c.c1 / (4 * c.lam);
    const double q = c.b1 * c.sl + c.b0 * rho3;
    const double rho4 = 0.0;
    const double psi3 = (0.0 - c.s1 / c.sl * rho4) / den;
    const double rho5 = psi2 * c.s1 / (2 * c.sl) / (2 * c.sl);
    const double N4 = -2 * psi2 * q * c.c2 + c.a1 * psi2 * c.c1 - P3 * psi2 * psi3 * psi3 / 2 -
                      P4 * std::pow(psi2, 4) / 24;
    const double psi4 = (N4 - c.s1 / c.sl * rho5) / den;
    const double rho6 = psi3 * c.s1 / (2 * c.sl) / (2 * c.sl);
    const double N5 = -2 * psi3 * q * c.c2 + c.a1 * psi3 * c.c1 -
                      P3 * (6 * psi2 * psi3 * psi4 + psi3 * psi3 * psi3) / 6 -
                      P4 * psi2 * psi2 * psi2 * psi3 / 6;
    const double psi5 = (N5 - c.s1 / c.sl * rho6) / den;
    const double rho7 = (psi4 * c.s1 - psi2 * psi2 * c.c1) / (2 * c.sl) / (2 * c.sl);
    s.rho = {c.sl, 0.0, 0.0, 0.0, rho3, rho4, rho5, rho6, rho7};
    s.psi = {sigma, 0.0, psi2, psi3, psi4, psi5};
    truncate(s, K + 2, K);
    return s;
}

SeriesResult quadruple_root(const ModelParams& p, const Ctx& c, double sigma, int K, int sign) {
    const double Q = quadruple_root_Q(p);
    if (!(Q > 0.0)) return NoSeries{"Q > 0", Q};
    const double xi = std::pow(Q, 0.25);
    auto s = skeleton(SeriesCase::Quadruple, sigma, 4, K, p.lambda);
    s.sign = sign;
    s.leading = xi;
    const double sl = c.sl;
    const double psi1 = sign * xi;
    const double p13 = psi1 * psi1 * psi1;
    const double rho2 = 0.0;
    const double rho3 = psi1 / (2 * sl) / (2 * sl);
    const double psi2 = (0.0 - 2 / sl * rho3) / p13;
    const double rho4 = psi2 / (2 * sl) / (2 * sl);
    const double Q3 = -c.a1 * psi1 * psi1 - 4 * c.b1 * sl * psi1 * psi1 + std::pow(psi1, 6) / 24 -
                      3 * psi1 * psi1 * psi2 * psi2 / 2 + psi1 * psi1 * rho2 / sl;
    const double psi3 = (Q3 - 2 / sl * rho4) / p13;
    const double rho5 = (p13 + 3 * psi3) / (6 * sl) / (2 * sl);
    const double Q4 = -2 * c.a1 * psi1 * psi2 - 8 * c.b1 * sl * psi1 * psi2 +
                      std::pow(psi1, 5) * psi2 / 4 - psi1 * psi2 * psi2 * psi2 -
                      3 * psi1 * psi1 * psi2 * psi3 - 2 * psi1 * psi2 * rho2 / sl +
                      psi1 * psi1 * rho3 / sl;
    const double psi4 = (Q4 - 2 / sl * rho5) / p13;
    const double rho6 = (psi1 * psi1 * psi2 + psi4 - 2 * sl * rho2 * rho2) / (2 * sl) / (2 * sl);
    s.rho = {sl, 0.0, 0.0, rho2, rho3, rho4, rho5, rho6};
    s.psi = {sigma, psi1, psi2, psi3, psi4};
    truncate(s, K + 2, K);
    return s;
}

} // namespace

std::string_view to_string(SeriesCase c) {
    switch (c) {
        case SeriesCase::Simple: return "Simple";
        case SeriesCase::Double: return "Double";
        case SeriesCase::Triple: return "Triple";
        case SeriesCase::Quadruple: return "Quadruple";
    }
    return "?";
}

SeriesCase series_case(int multiplicity) {
    switch (multiplicity) {
        case 1: return SeriesCase::Simple;
        case 2: return SeriesCase::Double;
        case 3: return SeriesCase::Triple;
        case 4: return SeriesCase::Quadruple;
        default: throw DomainError("root multiplicity must be 1..4");
    }
}

int max_series_order(SeriesCase c) {
    switch (c) {
        case SeriesCase::Simple: return 3;
        case SeriesCase::Double: return 3;
        case SeriesCase::Triple: return 5;
        case SeriesCase::Quadruple: return 4;
    }
    return 0;
}

double double_root_C(const ModelParams& p, double sigma) {
    const double sl = std::sqrt(p.lambda), lam = p.lambda;
    return (std::sin(2 * sigma) - 4 * lam * lam) / (8 * lam * sl) -
           (p.beta_k(1) * sl * std::sin(2 * sigma + p.nu) - p.alpha_k(1) * std::sin(sigma) +
            p.gamma_k(1) * sl);
}

double triple_root_N(const ModelParams& p, double sigma) {
    const double sl = std::sqrt(p.lambda), lam = p.lambda;
    return 3 * (std::sin(2 * sigma) - 4 * lam * lam) / (4 * lam * sl) -
           6 * (p.beta_k(1) * sl * std::sin(2 * sigma + p.nu) - p.alpha_k(1) * std::sin(sigma) +
                p.gamma_k(1) * sl);
}

double quadruple_root_Q(const ModelParams& p) {
    const double sl = std::sqrt(p.lambda);
    return 8 * p.alpha_k(1) + 4 * sl * (2 * p.beta_k(1) - 2 * p.gamma_k(1) - 1);
}

SeriesResult build_series(const ModelParams& params, const PhaseRoot& root, int order, int sign) {
    params.validate_normalized();
    const SeriesCase kind = series_case(root.multiplicity);
    if (order < 0 || order > max_series_order(kind))
        throw DomainError("unsupported series order " + std::to_string(order) + " for " +
                          std::string(to_string(kind)) + " root (max " +
                          std::to_string(max_series_order(kind)) + ")");
    if ((kind == SeriesCase::Double || kind == SeriesCase::Quadruple) && sign != 1 && sign != -1)
        throw DomainError("branch sign must be +1 or -1");
    const Ctx c = make_ctx(params, root.sigma);
    switch (kind) {
        case SeriesCase::Simple: return simple(params, c, root.sigma, order);
        case SeriesCase::Double: return double_root(params, c, root.sigma, order, sign);
        case SeriesCase::Triple: return triple_root(params, c, root.sigma, order);
        case SeriesCase::Quadruple: return quadruple_root(params, c, root.sigma, order, sign);
    }
    throw DomainError("unreachable series case");
}

std::vector<SeriesSolution> series_branches(const ModelParams& params, const PhaseRoot& root,
                                            int order) {
    const SeriesCase kind = series_case(root.multiplicity);
    const int K = std::min(order, max_series_order(kind));
    std::vector<SeriesSolution> out;
    const bool two = kind == SeriesCase::Double || kind == SeriesCase::Quadruple;
    for (int sign : two ? std::vector<int>{1, -1} : std::vector<int>{1}) {
        auto r = build_series(params, root, K, sign);
        if (auto* s = std::get_if<SeriesSolution>(&r)) out.push_back(*s);
    }
    return out;
}

SeriesPoint evaluate_series(const SeriesSolution& s, double tau) {
    if (!(tau > 0.0)) throw DomainError("series evaluated at tau <= 0");
    const double step = s.step();
    const double sq = std::sqrt(tau);
    SeriesPoint pt;
    double excess = s.rho_k(0);
    double dexcess = 0.0;
    for (int k = 1; k <= s.rho_last(); ++k) {
        const double tk = std::pow(tau, -k * step);
        excess += s.rho_k(k) * tk;
        dexcess += -k * step * s.rho_k(k) * tk / tau;
    }
    pt.rho_excess = excess + (s.rho_k(-1) - std::sqrt(s.lambda)) * sq;
    pt.rho = s.rho_k(-1) * sq + excess;
    pt.drho = s.rho_k(-1) / (2 * sq) + dexcess;
    double dpsi = 0.0;
    double hat = 0.0;
    for (int k = 1; k <= s.psi_last(); ++k) {
        const double tk = std::pow(tau, -k * step);
        hat += s.psi_k(k) * tk;
        dpsi += -k * step * s.psi_k(k) * tk / tau;
    }
    pt.psi = s.sigma + hat;
    pt.dpsi = dpsi;
    return pt;
}

double Residual::max_abs() const { return std::max(std::abs(r1), std::abs(r2)); }

Residual residual_norm(const SeriesSolution& s, const ModelParams& p, double tau) {
    const SeriesPoint pt = evaluate_series(s, tau);
    if (!(pt.rho > 0.0)) throw DomainError("series amplitude is not positive at this tau");
    const double a = p.alpha_at(tau), b = p.beta_at(tau), g = p.gamma_at(tau);
    const double sq = std::sqrt(tau);
    const double root_lt = std::sqrt(p.lambda * tau);
    Residual r;
    r.r1 = (pt.drho + g * pt.rho - a * std::sin(pt.psi) + b * pt.rho * std::sin(2 * pt.psi + p.nu)) / sq;
    const double rho2_minus = pt.rho_excess * (pt.rho + root_lt);  // ρ² − λτ
    r.r2 = (pt.dpsi - rho2_minus -
            (a * std::cos(pt.psi) - b * pt.rho * std::cos(2 * pt.psi + p.nu)) / pt.rho) /
           sq;
    return r;
}

} // namespace autores
