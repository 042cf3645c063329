#include "autores/designer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace autores {

namespace {

constexpr double pi = std::numbers::pi;

bool near(double a, double b) { return std::abs(angle_diff(a, b)) < 1e-12; }

std::string num(double x) { return std::to_string(x); }

} // namespace

Design design_excitation(const DesignSpec& spec) {
    const double k = spec.kappa, d = spec.delta, s = wrap_angle(spec.sigma_target);
    if (!(k > 0.0)) throw ConstraintViolation("kappa > 0", "kappa=" + num(k));
    if (!std::isfinite(d) || !std::isfinite(spec.sigma_target))
        throw DomainError("design inputs must be finite");

    Design out;
    out.delta = d;
    if (near(s, 0.0)) {
        const double bound = -std::sqrt(k * k + 0.25);
        if (!(d < bound)) throw ConstraintViolation("delta < -sqrt(kappa^2+1/4)", "delta=" + num(d));
        out.nu = pi - std::asin(-k / d);
        out.recipe = "sigma=0";
    } else if (near(s, pi)) {
        if (!(d < -k)) throw ConstraintViolation("delta < -kappa", "delta=" + num(d));
        out.nu = pi - std::asin(-k / d);
        out.recipe = "sigma=pi";
    } else if (near(s, pi / 2)) {
        const double x = d == 0.0 ? std::nan("") : (k - 1) / d;
        if (!(x > 0.0 && x <= 1.0))
            throw ConstraintViolation("0 < (kappa-1)/delta <= 1", "(kappa-1)/delta=" + num(x));
        out.nu = std::asin(x);
        if (!(d * std::cos(out.nu) < 0.0))
            throw ConstraintViolation("delta*cos(nu) < 0", "delta*cos(nu)=" + num(d * std::cos(out.nu)));
        out.recipe = "sigma=pi/2";
    } else {
        if (d == 0.0) throw ConstraintViolation("delta != 0", "delta=0");
        const double x = (std::sin(s) - k) / d;
        if (!(std::abs(x) <= 1.0))
            throw ConstraintViolation("|(sin(sigma)-kappa)/delta| <= 1", "value=" + num(x));
        const double a = std::asin(x);
        std::optional<double> best;
        double best_slope = -std::numeric_limits<double>::infinity();
        for (double arg : {a, pi - a}) {
            const double nu = wrap_angle(arg - 2 * s);
            if (nu >= pi) continue;
            const double slope = eval_phase(s, PhaseParams{d, nu, k}, 1);
            if (slope > best_slope) {
                best_slope = slope;
                best = nu;
            }
        }
        if (!best || !(best_slope > 0.0))
            throw ConstraintViolation("P'(sigma) > 0 for some nu in [0, pi)",
                                      "best P'=" + num(best_slope));
        out.nu = *best;
        out.recipe = "generic";
    }

    const PhaseParams p{d, out.nu, k};
    out.certificate = {eval_phase(s, p, 0), eval_phase(s, p, 1)};
    if (!(std::abs(out.certificate.P_value) < 1e-12))
        throw NumericalError("design certificate failed: |P(sigma)| = " + num(std::abs(out.certificate.P_value)));
    if (!(out.certificate.P_prime > 0.0))
        throw ConstraintViolation("P'(sigma) > 0", "P'=" + num(out.certificate.P_prime));
    return out;
}

} // namespace autores
